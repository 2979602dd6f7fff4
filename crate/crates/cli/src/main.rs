use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbch::hermitian::BoundReport;
use hbch::quantum::{lengthen, run_pipeline, scan, LengthChoice, PipelineConfig, ScanGrid, Selection};
use hbch::{BoundError, CodeError, ConwayTable, CosetError, CosetListing, CosetSystem, FieldTower, GfError, QuantumError};

mod harness;
mod render;

#[derive(Parser, Debug)]
#[command(name = "hbch", version, about = "Homothetic-BCH codes and the quantum stabilizer codes they yield")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Conway polynomial table replacing the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    conway: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclotomic cosets of {0, …, n−1} under multiplication by q².
    Cosets {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
    },
    /// Sharp bound L: closed forms, brute force and the prior bound.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n1: u64,
    },
    /// Build one code and report its quantum parameters.
    Construct(ConstructArgs),
    /// Re-derive every bundled reference claim and print PASS/FAIL.
    Examples {
        #[arg(long)]
        json: bool,
    },
    /// Run the pipeline over a grid and print one record per code.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    n1: u64,
    #[arg(long, default_value_t = 1)]
    lambda: u64,
    #[arg(long, conflicts_with = "cosets", required_unless_present = "cosets")]
    tau: Option<usize>,
    /// Comma-separated coset representatives.
    #[arg(long, value_delimiter = ',')]
    cosets: Option<Vec<u32>>,
    /// Include the zero coset.
    #[arg(long)]
    zero: bool,
    /// Lengthening steps to append.
    #[arg(long)]
    lengthen: Option<u32>,
    /// Write the classical generator matrix here.
    #[arg(long, value_name = "PATH")]
    dump: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_delimiter = ',')]
    q: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    s: Vec<u32>,
    /// Explicit lengths; defaults to every closed-form family length.
    #[arg(long, value_delimiter = ',')]
    n1: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1)]
    lambda_max: u64,
    #[arg(long, default_value_t = 1)]
    tau_max: usize,
    /// Also try the zero coset where allowed.
    #[arg(long)]
    zero: bool,
    /// Add the reference configurations.
    #[arg(long)]
    pinned: bool,
    /// Maximum pipeline runs.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Exit code 2 for bad input, 1 for anything that should not happen.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

impl From<QuantumError> for Failure {
    fn from(e: QuantumError) -> Self {
        let msg = e.to_string();
        match e {
            QuantumError::NotSelfOrthogonal(..) => Failure::Internal(msg),
            QuantumError::Code(CodeError::TooLarge { .. }) => Failure::Input(msg),
            QuantumError::Field(GfError::ReducibleModulus | GfError::NonPrimitiveModulus) => Failure::Internal(msg),
            QuantumError::Bound(BoundError::NoSolution(_)) => Failure::Internal(msg),
            _ => Failure::Input(msg),
        }
    }
}

impl From<CosetError> for Failure {
    fn from(e: CosetError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        QuantumError::from(e).into()
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        QuantumError::from(e).into()
    }
}

fn load_table(path: &Option<PathBuf>) -> Result<Option<ConwayTable>, Failure> {
    let Some(path) = path else { return Ok(None) };
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ConwayTable::parse(&text)
        .map(Some)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn build_tower(q: u32, s: u32, table: Option<&ConwayTable>) -> Result<Arc<FieldTower>, GfError> {
    let t = match table {
        Some(t) => FieldTower::with_table(q, s, t)?,
        None => FieldTower::new(q, s)?,
    };
    Ok(Arc::new(t))
}

fn construct(args: ConstructArgs, table: Option<&ConwayTable>, format: Format) -> Result<String, Failure> {
    let selection = match (args.tau, args.cosets) {
        (Some(t), _) => Selection::Tau(t),
        (None, Some(reps)) => Selection::Representatives(reps),
        (None, None) => unreachable!("clap requires one of --tau and --cosets"),
    };
    let cfg = PipelineConfig {
        q: args.q,
        s: args.s,
        n1: args.n1,
        lambda: args.lambda,
        selection,
        include_zero: args.zero,
    };
    if args.lengthen == Some(0) {
        return Err(QuantumError::ZeroSteps.into());
    }
    cfg.validate()?;
    let tower = build_tower(cfg.q, cfg.s, table)?;
    let out = run_pipeline(tower, &cfg)?;
    let lengthened = match args.lengthen {
        Some(t) => (1..=t).map(|i| lengthen(&out.report.params, i)).collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    if let Some(path) = &args.dump {
        fs::write(path, out.code.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(render::construct(&out.report, &lengthened, format))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let table = load_table(&cli.conway)?;
    let table = table.as_ref();
    match cli.command {
        Command::Cosets { n, q } => {
            let listing = CosetListing::from(&CosetSystem::new(n, q)?);
            Ok(render::cosets(&listing, cli.format))
        }
        Command::Bound { q, s, n1 } => {
            let report = BoundReport::compute(q, s, n1)?;
            Ok(render::bound(&report, cli.format))
        }
        Command::Construct(args) => construct(args, table, cli.format),
        Command::Examples { json } => {
            let format = if json { Format::Json } else { cli.format };
            let verdicts = harness::run_all(table, cli.seed);
            let text = render::verdicts(&verdicts, format);
            if verdicts.iter().all(|v| v.pass) {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Internal(format!(
                    "{} of {} claims failed",
                    verdicts.iter().filter(|v| !v.pass).count(),
                    verdicts.len()
                )))
            }
        }
        Command::Scan(args) => {
            if args.jobs == 0 {
                return Err(Failure::Input("--jobs must be at least 1".into()));
            }
            let grid = ScanGrid {
                qs: args.q,
                ss: args.s,
                lengths: args.n1.map_or(LengthChoice::CaseForms, LengthChoice::Explicit),
                lambda_max: args.lambda_max,
                tau_max: args.tau_max,
                with_zero: args.zero,
                pinned: if args.pinned { hbch::quantum::reference_configs() } else { Vec::new() },
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(args.jobs)
                .build()
                .map_err(|e| Failure::Internal(e.to_string()))?;
            let found = pool.install(|| scan(&grid, args.budget, table))?;
            Ok(render::records(&found, cli.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Input(msg) | Failure::Internal(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
