use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use polydyn::algebra::{hom_count, hom_enumerate, DEFAULT_CAP};
use polydyn::category::cofree_truncation;
use polydyn::dynamics::Mdds;
use polydyn::laws::{self, LawConfig, SEED_ENV};
use polydyn::{json, FinPoly, PolyError};
use polydyn_wiring::{compile_machines, compile_system, compile_wiring, parse, validate, WiringError, WiringSpec};
use serde_json::{json, Value};

/// Polynomial functors, lenses and wiring diagrams over finite sets.
#[derive(Parser)]
#[command(name = "polydyn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a wiring program, including its machine tables.
    Check { file: PathBuf },
    /// Compile a wiring program to its lens, written as JSON.
    Compile {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a wiring program whose boxes all have machines.
    Simulate(SimulateArgs),
    /// Count or enumerate the lenses between two polynomials.
    Hom(HomArgs),
    /// Run the seeded law suites and report failures as JSON.
    Laws(LawArgs),
    /// Print the canonical form of a polynomial.
    Canon { poly: PathBuf },
    /// Unroll one box's machine into its depth-n strategy tree.
    Unroll {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Position counts of the cofree comonoid's stages up to a depth.
    Cofree {
        poly: PathBuf,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Args)]
struct SimulateArgs {
    file: PathBuf,
    #[arg(long)]
    steps: usize,
    /// Outer directions, one per step: a JSON array of labels or one label
    /// per line. Required unless the outer interface is `y`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the trace here instead of standard output.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TraceFormat::Json)]
    format: TraceFormat,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "enumerate"])))]
struct HomArgs {
    p: PathBuf,
    q: PathBuf,
    #[arg(long)]
    count: bool,
    #[arg(long, requires = "out")]
    enumerate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LawArgs {
    /// `all`, a module (core, algebra, comonoid, dynamics) or a suite name.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 3)]
    size_bound: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

/// Exit 1: the input is well-formed but fails a check. Exit 2: the request
/// itself cannot be served.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<WiringError> for Failure {
    fn from(e: WiringError) -> Self {
        match e {
            WiringError::Core(e) => e.into(),
            e => Failure::Check(e.to_string()),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::TooLarge { .. } | PolyError::Json(_) => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path) -> Result<FinPoly, Failure> {
    json::poly_from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<WiringSpec, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Check(format!("{}:{e}", path.display())))
}

fn validated(path: &Path) -> Result<WiringSpec, Failure> {
    let spec = read_spec(path)?;
    let report = validate(&spec);
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(|v| format!("{}:{v}", path.display())).collect();
        return Err(Failure::Check(lines.join("\n")));
    }
    Ok(spec)
}

fn check(file: &Path) -> Outcome {
    let spec = validated(file)?;
    let machines = compile_machines(&spec)?;
    let connections =
        spec.connects().count() + spec.mode_blocks().flat_map(|b| &b.modes).map(|m| m.connects.len()).sum::<usize>();
    println!(
        "{}: ok ({} boxes, {} connections, {} machines)",
        file.display(),
        spec.boxes().count(),
        connections,
        machines.len()
    );
    Ok(())
}

fn compile(file: &Path, out: &Path) -> Outcome {
    let lens = compile_wiring(&validated(file)?)?;
    write(out, &json::lens_to_string(&lens))?;
    println!("{} -> {}", lens.dom().algebraic(), lens.cod().algebraic());
    Ok(())
}

fn read_inputs(path: &Path) -> Result<Vec<String>, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    } else {
        Ok(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect())
    }
}

fn simulate(args: &SimulateArgs) -> Outcome {
    let sys = compile_system(&validated(&args.file)?)?;
    let closed = *sys.mdds.interface() == FinPoly::y();
    let trace = match &args.input {
        None if closed => sys.mdds.run_closed(sys.initial, args.steps)?,
        None => {
            return Err(Failure::Usage(format!(
                "the outer interface is {}; pass the inputs with --input",
                sys.mdds.interface().algebraic()
            )))
        }
        Some(path) => {
            let inputs = read_inputs(path)?;
            if inputs.len() < args.steps {
                return Err(Failure::Usage(format!(
                    "{}: {} inputs for {} steps",
                    path.display(),
                    inputs.len(),
                    args.steps
                )));
            }
            sys.mdds.run_open(sys.initial, &inputs[..args.steps])?
        }
    };
    let text = match args.format {
        TraceFormat::Json => json::to_string(&trace.to_value()),
        TraceFormat::Csv => trace.to_csv(),
    };
    match &args.trace {
        Some(path) => {
            write(path, &text)?;
            println!("{} steps, final state {}", trace.len(), trace.final_state);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn hom(args: &HomArgs) -> Outcome {
    let (p, q) = (read_poly(&args.p)?, read_poly(&args.q)?);
    if args.count {
        println!("{}", hom_count(&p, &q));
        return Ok(());
    }
    let lenses = hom_enumerate(&p, &q, DEFAULT_CAP)?;
    let all: Vec<Value> = lenses.iter().map(json::lens_to_value).collect();
    write(args.out.as_deref().expect("required by clap"), &json::to_string(&Value::Array(all)))?;
    println!("{}", lenses.len());
    Ok(())
}

fn run_laws(args: &LawArgs) -> Outcome {
    let cfg = LawConfig {
        size_bound: args.size_bound,
        samples: args.samples,
        seed: args.seed,
    };
    let reports = laws::run(&args.suite, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.is_ok()).map(|r| r.suite.as_str()).collect();
    let out = json!({
        "ok": failed.is_empty(),
        "suites": reports.iter().map(|r| r.to_value()).collect::<Vec<_>>(),
    });
    print!("{}", json::to_string(&out));
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("law failures in {}", failed.join(", "))))
    }
}

fn canon(path: &Path) -> Outcome {
    let p = read_poly(path)?.canonical_form();
    print!("{}", json::poly_to_string(&p));
    Ok(())
}

fn unroll(file: &Path, box_name: &str, depth: usize, format: TreeFormat) -> Outcome {
    let spec = read_spec(file)?;
    let machines = compile_machines(&spec)?;
    let bound = machines
        .iter()
        .find(|m| m.owner == box_name)
        .ok_or_else(|| Failure::Usage(format!("no machine for box `{box_name}`")))?;
    let tree = Mdds::from_moore(&bound.machine).unroll(bound.machine.initial, depth);
    match format {
        TreeFormat::Json => print!("{}", json::to_string(&tree.to_value())),
        TreeFormat::Dot => print!("{}", tree.to_dot()),
    }
    Ok(())
}

fn cofree(path: &Path, depth: usize) -> Outcome {
    let p = read_poly(path)?;
    let chain = cofree_truncation(&p, depth, DEFAULT_CAP)?;
    let out = json!({
        "poly": p.algebraic(),
        "depth": depth,
        "position_counts": chain.position_counts(),
    });
    print!("{}", json::to_string(&out));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => check(file),
        Command::Compile { file, out } => compile(file, out),
        Command::Simulate(args) => simulate(args),
        Command::Hom(args) => hom(args),
        Command::Laws(args) => run_laws(args),
        Command::Canon { poly } => canon(poly),
        Command::Unroll {
            file,
            box_name,
            depth,
            format,
        } => unroll(file, box_name, *depth, *format),
        Command::Cofree { poly, depth } => cofree(poly, *depth),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
