use finite_dynamics::quantum::{cyclotomic_factors, free_amplitude, interference, Source};

fn main() -> finite_dynamics::Result<()> {
    for x in [-3i64, -1, 1, 3] {
        let a = free_amplitude(x, 3)?;
        println!("A({x}, 3) = {a}  cyclotomic factors {:?}", cyclotomic_factors(&a, None)?);
    }
    let sources = [Source { position: -4, phase: 0 }, Source { position: 4, phase: 2 }];
    let p = interference(&sources, 20, 4)?;
    for pt in p.points.iter().filter(|pt| pt.x.abs() <= 6) {
        println!("{:>4} {:.6}", pt.x, pt.probability);
    }
    Ok(())
}
