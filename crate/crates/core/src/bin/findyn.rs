use std::io::Write;

fn main() -> anyhow::Result<()> {
    let out = finite_dynamics::cli::run(std::env::args_os());
    std::io::stdout().write_all(&out.stdout)?;
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
