use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;
use triperm::doc::{emit_map, parse_map, poly_to_json, MapDocument};
use triperm::fastforward::{count_report, sparse_generate, FastForwardForm, DEFAULT_NAIVE_CAP};
use triperm::ffring::{MultCounter, PrimeModulus};
use triperm::trigroup::{conjugate_to_delta, standard_form_representative, TriangularPermutation};
use triperm::verify::{all_checks, run_check};
use triperm::zflow::{build_flow, level_flow};
use triperm::ErrorKind;

/// Largest |m| accepted by `iter --naive`.
const NAIVE_STEP_CAP: u128 = 1 << 32;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] triperm::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.kind() == ErrorKind::Usage => 2,
            CliError::Core(_) | CliError::Failed(_) => 1,
            CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "triperm", version, about = "Triangular permutations of F_p^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random triangular map, or a sparse fast-forward form when --budget is given.
    Gen(GenArgs),
    /// Orbit flag and invariants of a stored map.
    Inspect(InArg),
    /// Standard form and conjugation certificate.
    Canon {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One application of the map.
    Eval {
        #[command(flatten)]
        input: InArg,
        #[arg(short = 'v', long = "point")]
        point: String,
    },
    /// The m-th iterate at a point.
    Iter(IterArgs),
    /// Z-flows: all iterates as digit polynomials.
    #[command(subcommand)]
    Flow(FlowCommand),
    /// Run the invariant suite and print a JSON summary.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplication counts of sparse forms, one JSON record per budget.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InArg {
    /// Map document; `-` reads standard input.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// Monomials per component; switches to a fast-forward form.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Conjugate by a random lower triangular map (needs --budget).
    #[arg(long)]
    wrap: bool,
    /// Draw a maximal-orbit triangular map.
    #[arg(long)]
    maximal: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IterArgs {
    #[command(flatten)]
    input: InArg,
    #[arg(short = 'm', allow_hyphen_values = true)]
    m: i128,
    #[arg(short = 'v', long = "point")]
    point: String,
    /// Print a multiplication count record after the point.
    #[arg(long)]
    count_mults: bool,
    /// Apply the map m times instead of fast-forwarding.
    #[arg(long)]
    naive: bool,
}

#[derive(Subcommand)]
enum FlowCommand {
    /// Flow of a triangular map.
    Build {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangular map of a flow (or map) at exponent m.
    Specialize {
        #[command(flatten)]
        input: InArg,
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: i128,
    },
    /// Check each flow component against x_i + λ Q_{i-1} + lower terms.
    CheckW(InArg),
    /// One-digit flow of σ^(p^level); with -t, its value at t.
    Level {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        level: usize,
        #[arg(short = 't')]
        t: Option<u32>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// Comma-separated budgets.
    #[arg(long, default_value = "1")]
    budget: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    wrap: bool,
}

fn read_doc(arg: &InArg) -> CliResult<MapDocument> {
    let text = if arg.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io {
            path: arg.input.clone(),
            source,
        })?
    } else {
        fs::read_to_string(&arg.input).map_err(|source| CliError::Io {
            path: arg.input.clone(),
            source,
        })?
    };
    Ok(parse_map(&text)?)
}

fn read_triangular(arg: &InArg) -> CliResult<TriangularPermutation> {
    match read_doc(arg)? {
        MapDocument::Triangular(s) => Ok(s),
        MapDocument::FastForward(f) => Ok(f.to_triangular()?),
        other => Err(CliError::Usage(format!(
            "expected a triangular map, got a {} document",
            other.kind()
        ))),
    }
}

fn write_out(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_point(text: &str) -> CliResult<Vec<u32>> {
    text.split(',')
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad coordinate {d:?} in point {text:?}")))
        })
        .collect()
}

fn show_point(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn raw(text: String) -> Value {
    serde_json::from_str(&text).expect("emitted JSON parses")
}

fn gen(a: &GenArgs) -> CliResult<()> {
    let p = PrimeModulus::new(a.p)?;
    let doc = match a.budget {
        Some(budget) => {
            if a.maximal {
                return Err(CliError::Usage(
                    "--maximal applies to triangular maps; drop --budget".into(),
                ));
            }
            MapDocument::FastForward(sparse_generate(p, a.n, budget, a.seed, a.wrap)?)
        }
        None => {
            if a.wrap {
                return Err(CliError::Usage("--wrap needs --budget".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let s = if a.maximal {
                TriangularPermutation::random_maximal(p, a.n, &mut rng)?
            } else {
                TriangularPermutation::random(p, a.n, &mut rng)?
            };
            MapDocument::Triangular(s)
        }
    };
    write_out(a.out.as_deref(), &emit_map(&doc))
}

fn inspect(arg: &InArg) -> CliResult<()> {
    let doc = read_doc(arg)?;
    let record = match &doc {
        MapDocument::Triangular(s) => {
            let lambdas = match s.is_maximal_orbit() {
                Some(_) => json!(conjugate_to_delta(s)?.diag().lambdas()),
                None => Value::Null,
            };
            json!({
                "kind": doc.kind(),
                "p": s.modulus().get(),
                "n": s.n(),
                "map": s.to_string(),
                "maximal_orbit": s.is_maximal_orbit().is_some(),
                "top_coeffs": s.top_coeffs(),
                "lambdas": lambdas,
                "standard_form": s.is_standard_form(),
            })
        }
        MapDocument::FastForward(f) => json!({
            "kind": doc.kind(),
            "p": f.modulus().get(),
            "n": f.n(),
            "maximal_orbit": true,
            "lambdas": f.diag().lambdas(),
            "factors": f.factors().len(),
            "wrap": f.wrap().len(),
            "eval_cost": f.eval_cost(),
        }),
        MapDocument::Flow(fl) => json!({
            "kind": doc.kind(),
            "p": fl.modulus().get(),
            "n": fl.n(),
            "flow": fl.to_string(),
        }),
        MapDocument::Certificate {
            source,
            certificate,
        } => json!({
            "kind": doc.kind(),
            "p": source.modulus().get(),
            "n": source.n(),
            "source": source.to_string(),
            "phi": certificate.phi().to_string(),
            "lambdas": certificate.diag().lambdas(),
        }),
    };
    println!("{record}");
    Ok(())
}

fn canon(input: &InArg, out: Option<&Path>) -> CliResult<()> {
    let s = read_triangular(input)?;
    let certificate = conjugate_to_delta(&s)?;
    let (rep, e) = standard_form_representative(&s)?;
    write_out(
        out,
        &emit_map(&MapDocument::Certificate {
            source: s,
            certificate,
        }),
    )?;
    if out.is_some() {
        println!(
            "{}",
            json!({ "standard_form": rep.to_string(), "exponent": e.to_string() })
        );
    }
    Ok(())
}

fn eval(input: &InArg, point: &str) -> CliResult<()> {
    let v = parse_point(point)?;
    let w = match read_doc(input)? {
        MapDocument::Triangular(s) => s.apply(&v)?,
        MapDocument::FastForward(f) => f.apply(&v)?,
        MapDocument::Flow(fl) => fl.specialize(1).apply(&v)?,
        MapDocument::Certificate { source, .. } => source.apply(&v)?,
    };
    println!("{}", show_point(&w));
    Ok(())
}

/// Applies `step` (or its inverse) |m| times.
fn iterate<F>(m: i128, v: &[u32], mut step: F) -> CliResult<Vec<u32>>
where
    F: FnMut(&[u32]) -> CliResult<Vec<u32>>,
{
    if m.unsigned_abs() > NAIVE_STEP_CAP {
        return Err(triperm::Error::ResourceLimit {
            what: "naive iteration",
            size: m.unsigned_abs(),
            cap: NAIVE_STEP_CAP,
        }
        .into());
    }
    let mut w = v.to_vec();
    for _ in 0..m.unsigned_abs() {
        w = step(&w)?;
    }
    Ok(w)
}

fn iter(a: &IterArgs) -> CliResult<()> {
    let v = parse_point(&a.point)?;
    let mut counter = MultCounter::new();
    let (w, method) = match read_doc(&a.input)? {
        MapDocument::FastForward(f) if a.naive => {
            let w = if a.m >= 0 {
                iterate(a.m, &v, |u| Ok(f.eval_power(1, u, &mut counter)?))?
            } else {
                iterate(a.m, &v, |u| Ok(f.eval_power(-1, u, &mut counter)?))?
            };
            (w, "naive")
        }
        MapDocument::FastForward(f) => (f.eval_power(a.m, &v, &mut counter)?, "fastforward"),
        MapDocument::Triangular(s) => {
            if a.naive {
                let step = if a.m >= 0 { s } else { s.invert() };
                (
                    iterate(a.m, &v, |u| Ok(step.apply_counted(u, &mut counter)?))?,
                    "naive",
                )
            } else if s.is_maximal_orbit().is_some() {
                let f = FastForwardForm::from_triangular(&s)?;
                (f.eval_power(a.m, &v, &mut counter)?, "fastforward")
            } else {
                (s.power(a.m).apply_counted(&v, &mut counter)?, "power")
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "iter needs a triangular map or fast-forward form, got a {} document",
                other.kind()
            )))
        }
    };
    println!("{}", show_point(&w));
    if a.count_mults {
        println!(
            "{}",
            json!({ "m": a.m.to_string(), "method": method, "mults": counter.count() })
        );
    }
    Ok(())
}

fn flow(cmd: &FlowCommand) -> CliResult<()> {
    match cmd {
        FlowCommand::Build { input, out } => {
            let s = read_triangular(input)?;
            write_out(
                out.as_deref(),
                &emit_map(&MapDocument::Flow(build_flow(&s)?)),
            )
        }
        FlowCommand::Specialize { input, m } => {
            let s = match read_doc(input)? {
                MapDocument::Flow(fl) => fl.specialize(*m),
                MapDocument::Triangular(s) => build_flow(&s)?.specialize(*m),
                other => {
                    return Err(CliError::Usage(format!(
                        "specialize needs a flow or triangular map, got a {} document",
                        other.kind()
                    )))
                }
            };
            print!("{}", emit_map(&MapDocument::Triangular(s)));
            Ok(())
        }
        FlowCommand::CheckW(input) => {
            let fl = match read_doc(input)? {
                MapDocument::Flow(fl) => fl,
                MapDocument::Triangular(s) => build_flow(&s)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "check-w needs a flow or triangular map, got a {} document",
                        other.kind()
                    )))
                }
            };
            let comps = fl.w_membership();
            let rows: Vec<Value> = comps
                .iter()
                .map(|c| json!({ "index": c.index, "lambda": c.lambda, "pass": c.pass }))
                .collect();
            println!(
                "{}",
                json!({ "pass": comps.iter().all(|c| c.pass), "components": rows })
            );
            Ok(())
        }
        FlowCommand::Level { input, level, t } => {
            let s = read_triangular(input)?;
            let lf = level_flow(&s, *level)?;
            match t {
                Some(t) => print!("{}", emit_map(&MapDocument::Triangular(lf.specialize(*t)?))),
                None => {
                    let comps: Vec<Value> = lf
                        .components()
                        .iter()
                        .map(|g| raw(poly_to_json(g)))
                        .collect();
                    println!(
                        "{}",
                        json!({ "p": lf.modulus().get(), "n": lf.n(), "level": lf.level(), "components": comps })
                    );
                }
            }
            Ok(())
        }
    }
}

fn verify(seed: u64) -> CliResult<()> {
    let reports: Vec<_> = all_checks().iter().map(|c| run_check(c, seed)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "name": r.name, "passed": r.passed(), "millis": r.millis as u64, "detail": r.detail() }))
        .collect();
    println!(
        "{}",
        json!({ "seed": seed, "passed": passed, "checks": rows })
    );
    if passed {
        Ok(())
    } else {
        let failed: Vec<_> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name)
            .collect();
        Err(CliError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn bench(a: &BenchArgs) -> CliResult<()> {
    let p = PrimeModulus::new(a.p)?;
    let budgets = a
        .budget
        .split(',')
        .map(|b| {
            b.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad budget {b:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for budget in budgets {
        let form = sparse_generate(p, a.n, budget, a.seed, a.wrap)?;
        let r = count_report(&form, a.trials, a.seed, DEFAULT_NAIVE_CAP)?;
        let record = json!({
            "p": r.p,
            "n": r.n,
            "budget": r.budget,
            "trials": r.trials,
            "ff_mults_mean": r.ff_mults_mean,
            "ff_mults_max": r.ff_mults_max,
            "naive_mults_mean": r.naive_mults_mean,
        });
        writeln!(out, "{record}").map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Inspect(a) => inspect(a),
        Command::Canon { input, out } => canon(input, out.as_deref()),
        Command::Eval { input, point } => eval(input, point),
        Command::Iter(a) => iter(a),
        Command::Flow(cmd) => flow(cmd),
        Command::Verify { seed } => verify(*seed),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("triperm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
