use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rescuenet::config::{FleetGridEntry, ScenarioConfig};
use rescuenet::model::{advise, CapacityMode, HalvingSchedule};
use rescuenet::sweep::{run_distance_sweep, run_radius_sweep, SweepResult, SweptVariable};
use rescuenet::{csv_io, report, RayonExecutor, Result};

#[derive(Parser)]
#[command(
    name = "rescuenet",
    version,
    about = "Post-disaster UAV-assisted cellular network simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ergodic capacity versus disaster radius over a homogeneous town.
    SweepRadius(RunArgs),
    /// Ergodic capacity versus disaster-to-town-center distance over a Gaussian town.
    SweepDistance(RunArgs),
    /// Search a grid of fleets for the highest ergodic capacity.
    Advise(AdviseArgs),
    /// Check a configuration file and report the first invalid field.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Truncated,
    Conditional,
}

impl From<ModeArg> for CapacityMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Truncated => CapacityMode::Truncated,
            ModeArg::Conditional => CapacityMode::Conditional,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Fleet grid entry `platform:n1,n2,...`; repeatable.
    #[arg(long = "fleet")]
    fleets: Vec<FleetGridEntry>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of axis points.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct AdviseArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Disaster radius in km.
    #[arg(long)]
    rho_d: Option<f64>,
    /// Disaster distance from the town center in km.
    #[arg(long)]
    r_c: Option<f64>,
}

fn load(common: &CommonArgs, preset: fn() -> ScenarioConfig) -> Result<ScenarioConfig> {
    let mut config = match &common.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => preset(),
    };
    if let Some(seed) = common.seed {
        config.sweep.seed = seed;
    }
    if let Some(n) = common.iterations {
        config.sweep.iterations = n;
    }
    if let Some(mode) = common.mode {
        config.capacity_mode = mode.into();
    }
    if common.workers.is_some() {
        config.sweep.workers = common.workers;
    }
    Ok(config)
}

fn write_sweep(result: &SweepResult, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => csv_io::emit_csv(result, path),
        None => csv_io::write_csv(result, std::io::stdout().lock()).map_err(|source| {
            rescuenet::Error::Csv {
                path: "<stdout>".into(),
                source,
            }
        }),
    }
}

fn sweep(args: RunArgs, variable: SweptVariable) -> Result<()> {
    let preset = match variable {
        SweptVariable::DisasterRadius => ScenarioConfig::radius_campaign,
        SweptVariable::CenterDistance => ScenarioConfig::distance_campaign,
    };
    let mut config = load(&args.common, preset)?;
    if let Some(points) = args.points {
        config.sweep.points = points;
        config.sweep.values = None;
    }
    if !args.common.fleets.is_empty() {
        config.sweep.fleets = Some(args.common.fleets.clone());
    }
    let scenario = config.scenario()?;
    let plan = config.sweep_plan(variable)?;
    let executor = RayonExecutor::new(config.sweep.workers);
    let result = match variable {
        SweptVariable::DisasterRadius => run_radius_sweep(&plan, &scenario, &executor)?,
        SweptVariable::CenterDistance => run_distance_sweep(&plan, &scenario, &executor)?,
    };
    write_sweep(&result, &args.common.out)
}

fn run_advise(args: AdviseArgs) -> Result<()> {
    let mut config = load(&args.common, ScenarioConfig::distance_campaign)?;
    if let Some(rho) = args.rho_d {
        config.disaster.radius_km = rho;
    }
    if let Some(rc) = args.r_c {
        config.disaster.center_distance_km = rc;
    }
    if !args.common.fleets.is_empty() {
        config.advisor.candidates = Some(args.common.fleets.clone());
    }
    let schedule = match args.common.iterations {
        Some(n) => HalvingSchedule::new(vec![(n / 16).max(1), (n / 4).max(1), n]),
        None => config.halving_schedule(),
    };
    let scenario = config.scenario()?;
    let candidates = config.advisor_candidates()?;
    let executor = RayonExecutor::new(config.sweep.workers);
    let seed = config.sweep.seed;
    let outcome = advise(&scenario, &candidates, &schedule, seed, &executor)?;
    let mode = scenario.mode.as_str();
    match &args.common.out {
        Some(path) => report::emit_report(&outcome, mode, seed, path)?,
        None => report::write_report(&outcome, mode, seed, std::io::stdout().lock()).map_err(
            |source| rescuenet::Error::Csv {
                path: "<stdout>".into(),
                source,
            },
        )?,
    }
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", report::recommendation(&outcome));
    Ok(())
}

fn validate(path: PathBuf) -> Result<()> {
    let config = ScenarioConfig::load(&path)?;
    config.validate()?;
    config.scenario()?;
    println!("{}: ok", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SweepRadius(args) => sweep(args, SweptVariable::DisasterRadius),
        Command::SweepDistance(args) => sweep(args, SweptVariable::CenterDistance),
        Command::Advise(args) => run_advise(args),
        Command::ValidateConfig { config } => validate(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
