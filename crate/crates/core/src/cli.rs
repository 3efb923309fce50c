//! Command-line front end. [`run`] parses arguments, runs the requested
//! analysis on a dedicated thread pool and returns the bytes to print.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ca::{eca, life, phase_portrait, verify_against_states, Automaton, LocalRule, StateGroup};
use crate::error::{Error, Result};
use crate::galois::interpolate;
use crate::group::{automorphisms, Graph, InternalSymmetry, Perm};
use crate::meso::{convex_intruders, intruders_json, micro_table, micro_table_brute, SpinModel};
use crate::quantum::{self, s3, CharTable, LocalModel};
use crate::relation::Relation;
use crate::emergence;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "findyn", version, about = "Finite dynamical systems: relations, symmetry, automata, statistics")]
pub struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relations on finite domains.
    #[command(subcommand)]
    Relation(RelationCmd),
    /// Elementary cellular automata.
    #[command(subcommand)]
    Eca(EcaCmd),
    /// Game of Life.
    #[command(subcommand)]
    Life(LifeCmd),
    /// Orbit-quotient phase portrait of a symmetric binary rule.
    Portrait(PortraitArgs),
    /// Exact microcanonical Ising statistics.
    Ising(IsingArgs),
    /// Finite-group path quantization.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Emergent space-time random walk.
    #[command(subcommand)]
    Emergence(EmergenceCmd),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

impl FormatArgs {
    fn pick(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            default
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum RelationCmd {
    /// Canonical decomposition of a relation file or an ECA rule.
    Decompose {
        #[arg(long, conflicts_with = "input")]
        wolfram: Option<u8>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EcaCmd {
    /// Reducibility of all 256 local relations.
    Survey {
        /// Per-rule details.
        #[arg(long)]
        detailed: bool,
        #[command(flatten)]
        format: FormatArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum LifeCmd {
    /// Relation analysis, and optionally orbit recurrence of a pattern.
    Analyze {
        #[arg(long, default_value = "B3/S23")]
        rule: String,
        /// Live cells, one `x y` per line.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        torus: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
}

#[derive(Args, Debug)]
pub struct PortraitArgs {
    /// Built-in graph name, e.g. `cube`, `torus_moore:4`.
    #[arg(long, default_value = "cube")]
    pub graph: String,
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    /// Symmetric rule number (bit `2n + c`).
    #[arg(long, conflicts_with = "bs")]
    pub rule: Option<String>,
    #[arg(long)]
    pub bs: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Also use the global 0<->1 exchange.
    #[arg(long)]
    pub flip: bool,
    /// Cross-check against the full state graph.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct IsingArgs {
    #[arg(long, default_value = "dodecahedron")]
    pub graph: String,
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub j: i64,
    /// External field as an integer or `a/b`.
    #[arg(long, default_value = "0")]
    pub field: String,
    /// Joint (E, M) counts.
    #[arg(long)]
    pub joint: bool,
    /// Enumerate every state instead of orbits.
    #[arg(long)]
    pub brute: bool,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Subcommand, Debug)]
pub enum QuantumCmd {
    /// Interference pattern of point sources on a line.
    Walk {
        #[arg(long, default_value_t = 20)]
        t: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// `position:phase` pairs, phase in units of 2 pi / m.
        #[arg(long, default_value = "-4:0,4:2", allow_hyphen_values = true)]
        sources: String,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// S3 embedding into its permutation representation.
    Embed {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        /// Additional random (alpha, beta) samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Two-symbol amplitudes of the local model on a graph.
    Local {
        #[arg(long, default_value = "buckyball")]
        graph: String,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        end: Option<usize>,
        /// Scan `(M_v, M_w)` up to this bound for vanishing amplitudes.
        #[arg(long)]
        scan: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmergenceCmd {
    /// Exact walk probabilities against the Gaussian approximation.
    Compare {
        #[arg(long, default_value_t = 200)]
        t: u64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        v: f64,
        #[command(flatten)]
        format: FormatArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text.into_bytes(), stderr: String::new() }
            } else {
                Output { code, stdout: Vec::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => return Output { code: EXIT_INPUT, stdout: Vec::new(), stderr: format!("thread pool: {e}\n") },
    };
    let result = pool.install(|| execute(&cli.command));
    match result {
        Ok(bytes) => match &cli.output {
            Some(path) => match std::fs::write(path, &bytes) {
                Ok(()) => Output::default(),
                Err(e) => Output { code: EXIT_INPUT, stdout: Vec::new(), stderr: format!("{}: {e}\n", path.display()) },
            },
            None => Output { code: EXIT_OK, stdout: bytes, stderr: String::new() },
        },
        Err(e) => Output { code: exit_code(&e), stdout: Vec::new(), stderr: format!("error: {e}\n") },
    }
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s.into_bytes()
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_graph(name: &str, file: &Option<PathBuf>) -> Result<Graph> {
    match file {
        Some(p) => Graph::parse(&read(p)?),
        None => Graph::named(name),
    }
}

pub fn execute(cmd: &Command) -> Result<Vec<u8>> {
    match cmd {
        Command::Relation(RelationCmd::Decompose { wolfram, input }) => relation_decompose(*wolfram, input),
        Command::Eca(EcaCmd::Survey { detailed, format }) => eca_survey(*detailed, format.pick(Format::Json)),
        Command::Life(LifeCmd::Analyze { rule, pattern, torus, steps }) => life_analyze(rule, pattern, *torus, *steps),
        Command::Portrait(a) => portrait(a),
        Command::Ising(a) => ising(a),
        Command::Quantum(QuantumCmd::Walk { t, m, sources, format }) => {
            quantum_walk(*t, *m, sources, format.pick(Format::Csv))
        }
        Command::Quantum(QuantumCmd::Embed { alpha, beta, samples, seed }) => {
            quantum_embed(*alpha, *beta, *samples, *seed)
        }
        Command::Quantum(QuantumCmd::Local { graph, t, start, end, scan }) => {
            quantum_local(graph, *t, *start, *end, *scan)
        }
        Command::Emergence(EmergenceCmd::Compare { t, v, format }) => {
            let rows = emergence::compare(*t, *v)?;
            Ok(match format.pick(Format::Csv) {
                Format::Csv => emergence::compare_csv(&rows).into_bytes(),
                Format::Json => json_bytes(&json!({ "t": t, "v": v, "rows": rows })),
            })
        }
    }
}

fn relation_decompose(wolfram: Option<u8>, input: &Option<PathBuf>) -> Result<Vec<u8>> {
    let r = match (wolfram, input) {
        (Some(n), _) => eca::eca_relation(n),
        (None, Some(p)) => Relation::parse_text(&read(p)?)?,
        (None, None) => return Err(Error::invalid("give --wolfram N or --input FILE")),
    };
    let d = r.decompose();
    if !d.verify() {
        return Err(Error::invariant("decomposition does not reconstruct the relation"));
    }
    let mut v = d.to_json();
    v["components"] = d
        .irreducible_components()
        .iter()
        .map(|c| json!({ "domain": c.domain().labels(), "bits": c.bits().to_bit_string() }))
        .collect();
    if r.domain().radices().iter().all(|&q| q == 2) {
        v["polynomial"] = json!(interpolate(&r, 2)?.to_string());
    }
    Ok(json_bytes(&v))
}

fn eca_survey(detailed: bool, format: Format) -> Result<Vec<u8>> {
    let s = eca::survey();
    Ok(match format {
        Format::Json if detailed => json_bytes(&s.to_json_detailed()),
        Format::Json => json_bytes(&s.to_json()),
        Format::Csv => {
            let mut out = String::from("rule,reducible,prime,consequences\n");
            for c in &s.rules {
                out.push_str(&format!("{},{},{},{}\n", c.rule, c.reducible, c.prime, c.consequences));
            }
            out.into_bytes()
        }
    })
}

fn life_analyze(rule: &str, pattern: &Option<PathBuf>, torus: usize, steps: usize) -> Result<Vec<u8>> {
    let rule = LocalRule::parse_bs(rule, 8)?;
    let r = life::life_relation_of(&rule)?;
    let cons = r.proper_consequences();
    let pf = r.principal_factor_with(&cons)?;
    let consequences: Vec<Value> = cons
        .iter()
        .map(|c| {
            Ok(json!({
                "domain": c.domain().labels(),
                "cardinality": c.cardinality(),
                "reducible": c.is_reducible(),
                "prime": c.is_prime(),
                "polynomial": interpolate(c, 2)?.to_string(),
            }))
        })
        .collect::<Result<_>>()?;
    let mut v = json!({
        "rule": rule.bs_string(),
        "cardinality": r.cardinality(),
        "functional_in_x10": r.is_functional(life::NEXT)?,
        "reducible": pf.is_trivial(),
        "prime": r.is_prime(),
        "polynomial": interpolate(&r, 2)?.to_string(),
        "consequences": consequences,
    });
    if let Some(p) = pattern {
        v["pattern"] = pattern_recurrence(&rule, &read(p)?, torus, steps)?;
    }
    Ok(json_bytes(&v))
}

fn pattern_recurrence(rule: &LocalRule, text: &str, n: usize, steps: usize) -> Result<Value> {
    let graph = Graph::torus_moore(n)?;
    let aut = automorphisms(&graph)?;
    let a = Automaton::new(rule.clone(), graph)?;
    let sg = StateGroup::new(&aut.group, 2)?;
    let start = life::parse_cells(text, n)?;
    let traj: Vec<u64> = a.trajectory(&start, steps)?.iter().map(|s| sg.space().encode(s)).collect();
    let labels = sg.orbit_labels(&traj);
    let mut recurrences = Vec::new();
    for t0 in 0..traj.len() {
        match sg.recurrence(&traj, t0) {
            Ok(r) => recurrences.push(json!({ "t0": r.t0, "t1": r.t1, "witness": r.witness.to_string() })),
            Err(Error::NoRecurrence(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let sizes: Vec<usize> = traj.iter().map(|&s| sg.orbit_size(s)).collect();
    Ok(json!({
        "torus": n,
        "group_order": aut.order(),
        "orbit_labels": labels,
        "orbit_sizes": sizes,
        "recurrences": recurrences,
    }))
}

fn portrait(a: &PortraitArgs) -> Result<Vec<u8>> {
    let graph = load_graph(&a.graph, &a.graph_file)?;
    let k = graph.valence().ok_or_else(|| Error::invalid("graph is not regular"))?;
    if a.q != 2 {
        return Err(Error::invalid("portraits of numbered rules need q = 2"));
    }
    let rule = match (&a.rule, &a.bs) {
        (Some(n), _) => {
            let n: BigUint = n.parse().map_err(|_| Error::invalid(format!("bad rule number {n:?}")))?;
            LocalRule::from_symmetric_number(&n, k)?
        }
        (None, Some(bs)) => LocalRule::parse_bs(bs, k)?,
        (None, None) => return Err(Error::invalid("give --rule N or --bs B../S..")),
    };
    let aut = automorphisms(&graph)?;
    let auto = Automaton::new(rule.clone(), graph)?;
    let internal = if a.flip {
        InternalSymmetry::Global(vec![Perm::from_images(vec![1, 0])?])
    } else {
        InternalSymmetry::None
    };
    let p = phase_portrait(&auto, &aut.group, &internal)?;
    for (c, sizes) in p.cycles.iter().zip(p.cycle_orbit_sizes()) {
        if sizes.iter().any(|&s| s != sizes[0]) {
            return Err(Error::invariant(format!("cycle {c:?} crosses orbits of sizes {sizes:?}")));
        }
    }
    if a.verify {
        verify_against_states(&auto, &p)?;
    }
    let mut v = p.to_json();
    v["rule"] = json!({
        "number": rule.symmetric_number().map(|n| n.to_string()),
        "bits": rule.symmetric_bit_string(),
        "bs": rule.bs_string(),
    });
    v["group_order"] = json!(aut.order());
    v["orbit_histogram"] = p.orbits.size_histogram().iter().map(|(s, c)| json!([s, c])).collect();
    Ok(json_bytes(&v))
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::invalid(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(a, b))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn ising(a: &IsingArgs) -> Result<Vec<u8>> {
    let graph = load_graph(&a.graph, &a.graph_file)?;
    let field = parse_rational(&a.field)?;
    let model = SpinModel::uniform(graph.clone(), a.j, field);
    let table = if a.brute {
        micro_table_brute(&model, a.joint)?
    } else {
        let aut = automorphisms(&graph)?;
        let flip = field == Rational64::from_integer(0) && !a.joint;
        micro_table(&model, &aut.group, flip, a.joint)?
    };
    if table.total() != 1u64 << graph.len() {
        return Err(Error::invariant("level counts do not sum to 2^N"));
    }
    Ok(match a.format.pick(Format::Csv) {
        Format::Csv => table.to_csv().into_bytes(),
        Format::Json => {
            let mut v = table.to_json();
            v["intruders"] = intruders_json(&convex_intruders(&table));
            json_bytes(&v)
        }
    })
}

fn quantum_walk(t: u32, m: u32, sources: &str, format: Format) -> Result<Vec<u8>> {
    let src = quantum::parse_sources(sources)?;
    let p = quantum::interference(&src, t, m)?;
    Ok(match format {
        Format::Csv => p.to_csv().into_bytes(),
        Format::Json => json_bytes(&p.to_json()),
    })
}

fn quantum_embed(alpha: f64, beta: f64, samples: usize, seed: u64) -> Result<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = vec![(alpha, beta)];
    for _ in 0..samples {
        params.push((rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)));
    }
    let reports: Vec<s3::EmbeddingReport> = params.iter().map(|&(a, b)| s3::embedding_check(a, b)).collect();
    let fmt_err = |e: f64| format!("{e:.3e}");
    let worst = reports.iter().all(|r| r.passes(quantum::TOLERANCE));
    let first = &reports[0];
    let table = CharTable::s3().check();
    let v = json!({
        "elements": s3::NAMES,
        "permutation_matrices": first.permutation_matrices,
        "samples": reports.len(),
        "all_within_tolerance": worst,
        "max_unitarity_error": fmt_err(reports.iter().map(|r| r.unitarity_error).fold(0.0, f64::max)),
        "max_conjugation_error": fmt_err(reports.iter().map(|r| r.conjugation_error).fold(0.0, f64::max)),
        "max_integrality_error": fmt_err(reports.iter().map(|r| r.integrality_error).fold(0.0, f64::max)),
        "character_table": {
            "orthogonal": table.orthogonal,
            "sum_of_squares": table.sum_of_squares,
            "dimensions_divide_order": table.dimensions_divide_order,
        },
    });
    if !worst {
        return Err(Error::invariant("embedding check exceeded tolerance"));
    }
    Ok(json_bytes(&v))
}

fn quantum_local(graph: &str, t: u32, start: usize, end: Option<usize>, scan: Option<u32>) -> Result<Vec<u8>> {
    let model = if graph == "buckyball" {
        LocalModel::buckyball()?
    } else {
        let g = Graph::named(graph)?;
        let aut = automorphisms(&g)?;
        let orbits = crate::group::edge_orbits(&g, &aut.group);
        let symbols: Vec<u8> = (0..orbits.len()).map(|i| (i.min(1)) as u8).collect();
        LocalModel::by_edge_orbits(g, &aut.group, &symbols)?
    };
    let amps = model.amplitudes(start, t)?;
    let targets: Vec<usize> = match end {
        Some(e) if e < amps.len() => vec![e],
        Some(e) => return Err(Error::invalid(format!("vertex {e} out of range"))),
        None => (0..amps.len()).collect(),
    };
    let rows: Vec<Value> = targets
        .iter()
        .map(|&x| {
            let mut row = json!({ "end": x, "amplitude": amps[x].to_string() });
            if let Some(b) = scan {
                if !amps[x].is_zero() {
                    row["vanishing"] = json!(quantum::vanishing_pairs(&amps[x], b)?);
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(json_bytes(&json!({ "graph": graph, "t": t, "start": start, "amplitudes": rows })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Output {
        run(std::iter::once("findyn").chain(args.iter().copied()))
    }

    #[test]
    fn survey_json() {
        let o = go(&["eca", "survey"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["reducible"], 118);
        assert_eq!(v["prime"], json!([105, 150]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["relation", "decompose"]).code, EXIT_INPUT);
        assert_eq!(go(&["bogus"]).code, EXIT_INPUT);
        assert_eq!(go(&["ising", "--graph", "torus_moore:6"]).code, EXIT_CAP);
        assert_eq!(go(&["--help"]).code, EXIT_OK);
        assert_eq!(exit_code(&Error::invariant("x")), EXIT_INVARIANT);
    }
}
