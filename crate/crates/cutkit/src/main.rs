use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use cutkit::experiment::{self, Suite};
use cutkit::format::{self, FileFormat, Instance};
use cutkit::gen::{self, GenKind, GenParams};
use cutkit::report::{self, CertStatus, SolutionReport};
use cutkit::solve::{self, Problem, Request, SolveError, Variant};
use cutkit_core::kcut::EnumMethod;
use cutkit_core::oracle::OracleBudget;
use serde_json::json;

#[derive(Parser)]
#[command(name = "cutkit", version, about = "Double cuts, bicuts, linear 3-cuts and separating k-cuts")]
struct Cli {
    /// Worker threads for the parallel loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance to stdout.
    Gen(GenArgs),
    /// Run the polynomial solver and print a report.
    Solve(RunArgs),
    /// Run the exhaustive oracle and print a report.
    Oracle {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10)]
        max_nodes: usize,
        #[arg(long)]
        max_space: Option<u64>,
        /// Give up after this many seconds.
        #[arg(long)]
        time_cap: Option<f64>,
    },
    /// Re-check a saved JSON report against its instance.
    Verify {
        input: PathBuf,
        report: PathBuf,
    },
    /// Print a CSV experiment table.
    Experiment {
        suite: Suite,
        #[arg(long, env = "CUTKIT_SEED", default_value_t = 1)]
        seed: u64,
        /// Node counts for the `ratios` suite.
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 5, 6])]
        sizes: Vec<usize>,
        /// Instances per size (per seed for `gadgets`).
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Convert between the text and JSON formats.
    Fmt {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FileFormat::Json)]
        to: FileFormat,
        /// Sort arcs into canonical order.
        #[arg(long)]
        canonical: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0.35)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    min_weight: u64,
    #[arg(long, default_value_t = 3)]
    max_weight: u64,
    #[arg(long, default_value_t = 2)]
    a: usize,
    #[arg(long, default_value_t = 4)]
    b: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, env = "CUTKIT_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FileFormat::Text)]
    format: FileFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum EnumArg {
    Auto,
    Exact,
    Randomized,
}

#[derive(Args)]
struct RunArgs {
    problem: Problem,
    /// Instance file (text or JSON, detected); `-` reads stdin.
    input: PathBuf,
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, env = "CUTKIT_SEED", default_value_t = 1)]
    seed: u64,
    /// Terminal overrides (1-based), winning over `t` lines.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Multiway terminals (1-based).
    #[arg(long, value_delimiter = ',')]
    terminals: Vec<usize>,
    /// Fixed set Z or W for the intersection / complement variants (1-based).
    #[arg(long, value_delimiter = ',')]
    set: Vec<usize>,
    /// Contraction trials for k-cut enumeration.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long = "enum", value_enum, default_value_t = EnumArg::Auto)]
    enum_method: EnumArg,
    /// Sample this many tuples in the global bicut loop (drops the guarantee).
    #[arg(long)]
    tuple_limit: Option<usize>,
    /// Also run the oracle and record its value.
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let src = read_input(path).map_err(|e| Failure::usage(format!("{e:#}")))?;
    format::parse(&src).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// An error with its exit status.
struct Failure {
    code: u8,
    kind: &'static str,
    msg: String,
}

impl Failure {
    fn usage(msg: String) -> Self {
        Failure { code: 2, kind: "usage", msg }
    }

    fn internal(e: anyhow::Error) -> Self {
        Failure { code: 1, kind: "internal", msg: format!("{e:#}") }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure { code: e.exit_code() as u8, kind: e.kind(), msg: e.to_string() }
    }
}

fn one_to_zero(v: usize, what: &str) -> Result<usize, Failure> {
    v.checked_sub(1).ok_or_else(|| Failure::usage(format!("{what}: node ids are 1-based")))
}

fn request(a: &RunArgs) -> Result<Request, Failure> {
    let mut req = Request::new(a.problem);
    if let Some(v) = a.variant {
        req.variant = v;
    }
    req.k = a.k;
    req.seed = a.seed;
    req.trials = a.trials;
    req.tuple_limit = a.tuple_limit;
    req.enum_method = match a.enum_method {
        EnumArg::Auto => EnumMethod::Auto,
        EnumArg::Exact => EnumMethod::Exact,
        EnumArg::Randomized => EnumMethod::Randomized,
    };
    for (name, v) in [("s", a.s), ("t", a.t), ("r", a.r)] {
        if let Some(v) = v {
            req.overrides.insert(name.to_string(), one_to_zero(v, "--s/--t/--r")?);
        }
    }
    req.set = a.set.iter().map(|&v| one_to_zero(v, "--set")).collect::<Result<_, _>>()?;
    req.terminal_list = a.terminals.iter().map(|&v| one_to_zero(v, "--terminals")).collect::<Result<_, _>>()?;
    Ok(req)
}

fn print_report(rep: &SolutionReport, fmt: ReportFormat) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match fmt {
        ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(rep)?)?,
        ReportFormat::Text => write!(out, "{}", rep.to_text())?,
    }
    Ok(())
}

fn run(a: &RunArgs, budget: Option<OracleBudget>) -> Result<(), Failure> {
    let inst = load(&a.input)?;
    let req = request(a)?;
    if req.tuple_limit.is_some() && budget.is_none() {
        eprintln!("warning: --tuple-limit samples the tuple loop; the (2 - 1/448) guarantee no longer applies");
    }
    let start = Instant::now();
    let out = match &budget {
        Some(b) => solve::run_oracle(&inst, &req, b)?,
        None => solve::solve(&inst, &req)?,
    };
    let elapsed = start.elapsed();
    let mut rep = SolutionReport::new(&inst, req.problem, req.variant, req.k, out, req.seed);
    rep.wall_time_ms = elapsed.as_secs_f64() * 1e3;
    if a.with_oracle && budget.is_none() {
        rep.oracle_value = Some(solve::run_oracle(&inst, &req, &OracleBudget::default())?.value);
    }
    print_report(&rep, a.format).map_err(Failure::internal)?;
    if rep.certificate == CertStatus::Invalid {
        return Err(Failure::internal(anyhow!("certificate check failed: {}", rep.certificate_detail.unwrap_or_default())));
    }
    Ok(())
}

fn verify(input: &Path, report_path: &Path) -> Result<(), Failure> {
    let inst = load(input)?;
    let src = read_input(report_path).map_err(|e| Failure::usage(format!("{e:#}")))?;
    let rep: SolutionReport = serde_json::from_str(&src).map_err(|e| Failure::usage(format!("{}: {e}", report_path.display())))?;
    let verdict = report::check(&inst, rep.problem, rep.variant, rep.k, rep.value, &rep.payload);
    let body = match &verdict {
        Ok(()) => json!({ "certificate": "valid", "value": rep.value }),
        Err(why) => json!({ "certificate": "invalid", "reason": why }),
    };
    println!("{body}");
    verdict.map_err(|why| Failure { code: 1, kind: "invalid", msg: why })
}

fn main_inner(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::internal(e.into()))?;
    }
    match cli.cmd {
        Cmd::Gen(g) => {
            let p = GenParams {
                n: g.n,
                density: g.density,
                min_weight: g.min_weight,
                max_weight: g.max_weight,
                a: g.a,
                b: g.b,
                k: g.k,
                seed: g.seed,
            };
            if !(0.0..=1.0).contains(&p.density) || p.min_weight > p.max_weight || p.n == 0 {
                return Err(Failure::usage("need n >= 1, density in [0, 1], min-weight <= max-weight".into()));
            }
            let inst = gen::generate(g.kind, &p).map_err(|e| Failure::from(SolveError::from(e)))?;
            print!("{}", format::emit(&inst, g.format));
            Ok(())
        }
        Cmd::Solve(a) => run(&a, None),
        Cmd::Oracle { run: a, max_nodes, max_space, time_cap } => {
            let mut b = OracleBudget { max_nodes, ..OracleBudget::default() };
            if let Some(s) = max_space {
                b.max_space = s;
            }
            b.time_cap = time_cap.map(Duration::from_secs_f64);
            run(&a, Some(b))
        }
        Cmd::Verify { input, report } => verify(&input, &report),
        Cmd::Experiment { suite, seed, sizes, count } => {
            let csv = match suite {
                Suite::Ratios => experiment::to_csv(&experiment::ratios(seed, &sizes, count)),
                Suite::Gap => experiment::to_csv(&experiment::gap(&experiment::GAP_FAMILY).map_err(|e| Failure::from(SolveError::from(e)))?),
                Suite::Gadgets => experiment::to_csv(&experiment::gadgets_suite(seed, count)),
            };
            print!("{csv}");
            Ok(())
        }
        Cmd::Fmt { input, to, canonical } => {
            let mut inst = load(&input)?;
            if canonical {
                inst = inst.canonical();
            }
            print!("{}", format::emit(&inst, to));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code == 3 || f.code == 4 {
                println!("{}", json!({ "error": f.kind, "reason": f.msg }));
            }
            eprintln!("cutkit: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
