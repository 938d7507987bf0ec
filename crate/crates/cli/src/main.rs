//! `untrapped` command line: run scenarios and print or emit reports.
//!
//! Exit codes: 0 all bounds hold, 1 numerical failure, 2 a bound check
//! failed, 3 a hypothesis is violated, 4 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use untrapped::dirac::HalfInt;
use untrapped::scenario::{
    builtin_scenario, emit, load_scenario, report_json, run, DataSource, Format, Numeric, RunReport, Scenario,
    SurfaceSpec, Task, BUILTIN_SCENARIOS,
};

const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "untrapped", version, about = "Spinorial bounds on spheres in spherically symmetric initial data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task the scenario lists.
    Verify(ScenarioArgs),
    /// Dirac spectrum of a sphere of revolution.
    Spectrum(SpectrumArgs),
    /// Constraint fields and the dominant energy condition.
    Constraints(ScenarioArgs),
    /// Apparent horizons and the table of sphere slices.
    ScanHorizons(ScenarioArgs),
    /// Solve the Jang equation on the scenario domain.
    Jang(ScenarioArgs),
    /// List the built-in scenarios.
    List,
}

#[derive(Args)]
struct Output {
    /// Directory for report.json and CSV tables; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid size override.
    #[arg(long)]
    grid: Option<usize>,
    /// Relative tolerance of the equality flags.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file, or `builtin:NAME`.
    scenario: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Sphere,
    Spheroid,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Profile CSV with columns `t,f`.
    profile: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "profile")]
    family: Option<Family>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Equatorial radius of the spheroid.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Polar semi-axis of the spheroid.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Largest angular mode, as `7/2` or `3.5`.
    #[arg(long)]
    k_max: Option<HalfInt>,
    #[command(flatten)]
    output: Output,
}

fn load(arg: &str) -> untrapped::Result<Scenario> {
    match arg.strip_prefix("builtin:") {
        Some(name) => builtin_scenario(name),
        None => load_scenario(arg),
    }
}

fn apply_overrides(sc: &mut Scenario, out: &Output) -> anyhow::Result<()> {
    if let Some(n) = out.grid {
        if n < 64 {
            bail!("--grid must be at least 64");
        }
        sc.numeric.n = n;
        if let DataSource::Initial { grid, csv: None, .. } = &mut sc.data {
            grid.n = n;
        }
    }
    if let Some(tol) = out.tol {
        if tol.is_nan() || tol <= 0.0 {
            bail!("--tol must be positive");
        }
        sc.numeric.tol = tol;
    }
    Ok(())
}

fn scenario_for(args: &ScenarioArgs, only: Option<Task>) -> anyhow::Result<Scenario> {
    let mut sc = load(&args.scenario).with_context(|| format!("loading {}", args.scenario))?;
    if let Some(task) = only {
        if matches!(sc.data, DataSource::Surface(_)) {
            bail!("{task:?} needs initial data, {} describes a bare surface", args.scenario);
        }
        sc.tasks = vec![task];
    }
    apply_overrides(&mut sc, &args.output)?;
    Ok(sc)
}

fn spectrum_scenario(args: &SpectrumArgs) -> anyhow::Result<Scenario> {
    let surface = match (&args.profile, args.family) {
        (Some(path), None) => SurfaceSpec::Csv { path: path.clone() },
        (None, Some(Family::Sphere)) => SurfaceSpec::Sphere { radius: args.radius },
        (None, Some(Family::Spheroid)) => SurfaceSpec::Spheroid {
            a: args.a,
            c: args.c,
            n: untrapped::dirac::DEFAULT_SAMPLES,
        },
        _ => bail!("spectrum needs a profile CSV or --family"),
    };
    let mut numeric = Numeric::default();
    if let Some(k) = args.k_max {
        numeric.k_max = k;
    }
    let mut sc = Scenario {
        name: "spectrum".into(),
        data: DataSource::Surface(surface),
        domain: None,
        tasks: vec![Task::Spectrum],
        numeric,
    };
    apply_overrides(&mut sc, &args.output)?;
    Ok(sc)
}

fn finish(report: &RunReport, out: &Output) -> anyhow::Result<()> {
    match &out.out {
        Some(dir) => {
            let format = match out.format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Csv => Format::CsvBundle,
            };
            for path in emit(report, format, dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print!("{}", report_json(report)?),
    }
    eprintln!("{}: exit {} ({})", report.name, report.exit_status, report.exit_reason);
    Ok(())
}

fn execute(command: Command) -> anyhow::Result<u8> {
    let (sc, out) = match command {
        Command::List => {
            for (name, _) in BUILTIN_SCENARIOS {
                println!("builtin:{name}");
            }
            return Ok(0);
        }
        Command::Verify(a) => (scenario_for(&a, None)?, a.output),
        Command::Constraints(a) => (scenario_for(&a, Some(Task::Constraints))?, a.output),
        Command::ScanHorizons(a) => (scenario_for(&a, Some(Task::Horizons))?, a.output),
        Command::Jang(a) => (scenario_for(&a, Some(Task::Jang))?, a.output),
        Command::Spectrum(a) => (spectrum_scenario(&a)?, a.output),
    };
    let report = run(&sc);
    finish(&report, &out)?;
    Ok(u8::try_from(report.exit_status).unwrap_or(EXIT_INPUT))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own status 2 would read as "bound check failed"
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
