//! Command-line interface: series generation, root tables, separability
//! verdicts, asymptotic sweeps and scenario runs.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on numerical
//! failures.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ssa_roots::formats::{self, RootRow, RootSide};
use ssa_roots::scenario::{
    self, estimated_root_rows, exact_root_rows, run_scenario, ScenarioConfig, ScenarioError,
    ScenarioKind, WindowSpec,
};
use ssa_roots_core::asymptotics::{angular_equidistribution, classify_roots, normalize_weight};
use ssa_roots_core::separability::{check_left_separable, check_two_sided, numeric_separability};

#[derive(Parser)]
#[command(
    name = "ssa-roots",
    about = "Signal and extraneous roots of linear-recurrent time series",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a series from a model file and write it as CSV (n,re,im).
    Generate(GenerateArgs),
    /// Compute signal and extraneous roots of the forecasting recursion.
    Roots(RootsArgs),
    /// Decide exact weak separability of two models.
    Separability(SeparabilityArgs),
    /// Sweep the extraneous-root diagnostics over a list of degrees.
    Sweep(SweepArgs),
    /// Run a predefined experiment scenario from a config file.
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Model JSON file.
    #[arg(long)]
    model: PathBuf,
    /// Number of samples.
    #[arg(long = "len", short = 'n')]
    len: usize,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RootsArgs {
    /// Model JSON file (exact route).
    #[arg(long, conflicts_with = "series")]
    model: Option<PathBuf>,
    /// Series CSV file (estimation route; requires --dim).
    #[arg(long, requires = "dim")]
    series: Option<PathBuf>,
    /// Signal-subspace dimension for the estimation route.
    #[arg(long)]
    dim: Option<usize>,
    /// Window length L.
    #[arg(long, short = 'L')]
    window: usize,
    /// Compute the backward recursion's roots instead of the forward ones.
    #[arg(long, conflicts_with = "both")]
    backward: bool,
    /// Compute both sides.
    #[arg(long)]
    both: bool,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the singular values of the trajectory matrix (estimation
    /// route only) as CSV to this path.
    #[arg(long, requires = "series")]
    singular_values: Option<PathBuf>,
}

#[derive(Args)]
struct SeparabilityArgs {
    /// First model JSON file.
    #[arg(long)]
    first: PathBuf,
    /// Second model JSON file.
    #[arg(long)]
    second: PathBuf,
    /// Window length L.
    #[arg(long, short = 'L')]
    window: usize,
    /// Series length N (enables the two-sided verdict and the numeric test).
    #[arg(long, short = 'n')]
    len: usize,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Model JSON file; its characteristic polynomial defines the weight.
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated list of extraneous-polynomial degrees.
    #[arg(long = "degrees", value_delimiter = ',')]
    degrees: Vec<usize>,
    /// Classification annulus width as a fraction of the critical radius.
    #[arg(long, default_value_t = 0.15)]
    delta_fraction: f64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario config JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scenario name override.
    #[arg(long)]
    scenario: Option<String>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Noise standard deviation override.
    #[arg(long)]
    noise_std: Option<f64>,
    /// Series length override.
    #[arg(long = "len", short = 'n')]
    len: Option<usize>,
    /// Window length(s) override, comma separated.
    #[arg(long, short = 'L', value_delimiter = ',')]
    window: Option<Vec<usize>>,
    /// Output directory override.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Numerical(String),
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        // Errors raised while reading inputs are configuration problems,
        // including structurally invalid models.
        CliError::Config(e.to_string())
    }
}

impl From<ssa_roots_core::Error> for CliError {
    fn from(e: ssa_roots_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Config(msg) => CliError::Config(msg),
            ScenarioError::Numerical(err) => CliError::Numerical(err.to_string()),
            ScenarioError::Format(err) => CliError::Config(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("io error: {e}"))
    }
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let model = formats::read_model(&args.model)?;
    let series = model.generate(args.len);
    emit(args.output.as_ref(), &formats::series_to_csv(&series))
}

fn cmd_roots(args: &RootsArgs) -> Result<(), CliError> {
    let sides: Vec<RootSide> = if args.both {
        vec![RootSide::Forward, RootSide::Backward]
    } else if args.backward {
        vec![RootSide::Backward]
    } else {
        vec![RootSide::Forward]
    };
    let mut rows: Vec<RootRow> = Vec::new();
    if let Some(model_path) = &args.model {
        let model = formats::read_model(model_path)?;
        for side in sides {
            rows.extend(exact_root_rows(&model, args.window, side).map_err(CliError::from)?);
        }
    } else if let Some(series_path) = &args.series {
        let series = formats::read_series(series_path)?;
        let dim = args.dim.expect("clap enforces --dim with --series");
        if let Some(sv_path) = &args.singular_values {
            let x = ssa_roots_core::trajectory::TrajectoryMatrix::hankel(&series, args.window)?;
            fs::write(
                sv_path,
                formats::singular_values_to_csv(&x.singular_values()),
            )?;
        }
        for side in sides {
            let input = match side {
                RootSide::Forward => series.clone(),
                RootSide::Backward => series.reversed(),
            };
            let mut side_rows =
                estimated_root_rows(&input, args.window, dim).map_err(CliError::from)?;
            for r in &mut side_rows {
                r.side = side;
            }
            rows.extend(side_rows);
        }
    } else {
        return Err(CliError::Config(
            "either --model or --series is required".into(),
        ));
    }
    // Drop the window column for the plain subcommand output.
    for r in &mut rows {
        r.window = None;
    }
    emit(args.output.as_ref(), &formats::roots_to_csv(&rows))
}

fn cmd_separability(args: &SeparabilityArgs) -> Result<(), CliError> {
    let first = formats::read_model(&args.first)?;
    let second = formats::read_model(&args.second)?;
    if args.window <= 1 || 2 * args.window > args.len {
        return Err(CliError::Config(format!(
            "L: window {} out of range for N = {}",
            args.window, args.len
        )));
    }
    let left = check_left_separable(&first, &second, args.window);
    let two = check_two_sided(&first, &second, args.window, args.len)?;
    let numeric = numeric_separability(
        &first.generate(args.len),
        &second.generate(args.len),
        args.window,
    )?;
    let out = serde_json::json!({
        "L": args.window,
        "N": args.len,
        "left": scenario::verdict_to_json(&left),
        "two_sided": scenario::verdict_to_json(&two),
        "numeric_left": numeric,
    });
    let text = serde_json::to_string_pretty(&out).map_err(|e| CliError::Config(e.to_string()))?;
    emit(args.output.as_ref(), &format!("{text}\n"))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let model = formats::read_model(&args.model)?;
    if args.degrees.is_empty() {
        return Err(CliError::Config(
            "degrees: at least one degree is required".into(),
        ));
    }
    if !(args.delta_fraction > 0.0 && args.delta_fraction < 1.0) {
        return Err(CliError::Config(
            "delta_fraction: must lie in (0, 1)".into(),
        ));
    }
    let weight = normalize_weight(&model.char_poly(), None)?;
    let delta = args.delta_fraction * weight.rho;
    let mut out = String::from("n,mean_modulus,max_gap_error,spurious_count\n");
    for &n in &args.degrees {
        let h = weight.extraneous(n)?;
        let roots = h.roots()?;
        let diag = classify_roots(&roots, &weight, delta);
        let leading_angles: Vec<f64> = weight
            .leading
            .iter()
            .map(|&i| weight.clusters[i].value.arg())
            .collect();
        let gap = if diag.general.len() >= 3 {
            angular_equidistribution(&diag.general, n, &leading_angles)?
        } else {
            f64::NAN
        };
        out.push_str(&format!(
            "{n},{},{},{}\n",
            diag.mean_modulus,
            gap,
            diag.spurious.len()
        ));
    }
    emit(args.output.as_ref(), &out)
}

fn cmd_scenario(args: &ScenarioArgs) -> Result<(), CliError> {
    let mut cfg: ScenarioConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config: {e}")))?
        }
        None => {
            let name = args.scenario.as_deref().ok_or_else(|| {
                CliError::Config("scenario: --config or --scenario required".into())
            })?;
            ScenarioConfig {
                scenario: parse_scenario(name)?,
                model: None,
                len: None,
                windows: None,
                subspace_dim: None,
                noise_std: 0.0,
                seed: None,
                output_dir: PathBuf::from("out"),
            }
        }
    };
    if let Some(name) = &args.scenario {
        cfg.scenario = parse_scenario(name)?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    if let Some(noise) = args.noise_std {
        cfg.noise_std = noise;
    }
    if let Some(len) = args.len {
        cfg.len = Some(len);
    }
    if let Some(ws) = &args.window {
        cfg.windows = Some(WindowSpec::Many(ws.clone()));
    }
    if let Some(dir) = &args.output_dir {
        cfg.output_dir = dir.clone();
    }
    let report = run_scenario(&cfg)?;
    for f in &report.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn parse_scenario(name: &str) -> Result<ScenarioKind, CliError> {
    match name {
        "sep_constant" => Ok(ScenarioKind::SepConstant),
        "sep_exponent" => Ok(ScenarioKind::SepExponent),
        "sep_conjugate" => Ok(ScenarioKind::SepConjugate),
        "extsam" => Ok(ScenarioKind::Extsam),
        "noised" => Ok(ScenarioKind::Noised),
        "mult" => Ok(ScenarioKind::Mult),
        "custom" => Ok(ScenarioKind::Custom),
        other => Err(CliError::Config(format!(
            "scenario: unknown scenario '{other}'"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Roots(args) => cmd_roots(args),
        Command::Separability(args) => cmd_separability(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Scenario(args) => cmd_scenario(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
