//! `nuqc` — evaluate quantum-correlation measures for two-flavor neutrino
//! oscillations under dephasing, from the command line.
//!
//! Exit codes: 0 ok, 1 domain error, 2 usage error, 3 validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nuqc::error::Error;
use nuqc::oracle::validate::{self, ValidationConfig, ValidationOutcome};
use nuqc::scan::{
    emit, emit_to_path, gamma_table, OutputFormat, PresetName, ScanConfig, SweepRecord,
};
use nuqc::sensitivity::{Measure, SensitivityReport};
use nuqc::{
    apply_dephasing, benchmark_gamma, build_state, correlation_set, CorrelationSet, MixingSector,
    OscillationPoint,
};

#[derive(Parser)]
#[command(
    name = "nuqc",
    version,
    about = "Quantum correlations in two-flavor neutrino oscillations under dephasing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate probabilities, correlation measures and sensitivities at one point
    Point(PointArgs),
    /// Baseline sweep over an experiment preset, emitted as CSV or JSONL
    Sweep(SweepArgs),
    /// Effective dephasing strengths at the benchmark baselines
    GammaTable(GammaTableArgs),
    /// Run the closed-form vs oracle equivalence suites
    Validate(ValidateArgs),
    /// Analytic partial derivatives at one point
    Sensitivity(PointArgs),
}

/// Oscillation-sector selection shared by `point` and `sensitivity`.
#[derive(Args)]
struct SectorArgs {
    /// Experiment preset: kamland, minos or dayabay
    #[arg(long, conflicts_with_all = ["theta", "dm2"])]
    preset: Option<String>,
    /// Mixing angle in radians (with --dm2, instead of a preset)
    #[arg(long, requires = "dm2")]
    theta: Option<f64>,
    /// Mass splitting in eV²
    #[arg(long, requires = "theta")]
    dm2: Option<f64>,
}

impl SectorArgs {
    fn resolve(&self) -> Result<MixingSector, Error> {
        match (&self.preset, self.theta, self.dm2) {
            (Some(name), None, None) => Ok(nuqc::preset(name.parse::<PresetName>()?).sector),
            (None, Some(theta), Some(dm2)) => MixingSector::new(theta, dm2, "custom"),
            _ => Err(Error::Domain(
                "give either --preset or both --theta and --dm2".into(),
            )),
        }
    }
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    sector: SectorArgs,
    /// Baseline in km
    #[arg(long = "L")]
    l: f64,
    /// Energy in GeV (or MeV with --mev)
    #[arg(long = "E")]
    e: f64,
    /// Interpret --E in MeV
    #[arg(long)]
    mev: bool,
    /// Dephasing as a fraction r of the Γ₉₀ bound, γ = 1 - exp(-r Γ₉₀ L)
    #[arg(long, conflicts_with = "gamma")]
    r: Option<f64>,
    /// Dephasing strength γ between 0 and 1, given directly
    #[arg(long)]
    gamma: Option<f64>,
    /// Measure whose response factor dM/dP is reported
    #[arg(long, value_enum, default_value = "lqu")]
    measure: MeasureArg,
    /// Emit one JSON object instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum MeasureArg {
    Lqu,
    Discord,
    Concurrence,
    Eof,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Lqu => Measure::Lqu,
            MeasureArg::Discord => Measure::Discord,
            MeasureArg::Concurrence => Measure::Concurrence,
            MeasureArg::Eof => Measure::Eof,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Experiment preset: kamland, minos or dayabay
    #[arg(long)]
    preset: Option<String>,
    /// Fractions of the Γ₉₀ bound, comma separated
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    r: Option<Vec<f64>>,
    /// Number of baseline grid points per r value
    #[arg(long)]
    grid: Option<usize>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file overriding preset fields and sweep options
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the lower end of the baseline range, km
    #[arg(long)]
    l_min: Option<f64>,
    /// Override the upper end of the baseline range, km
    #[arg(long)]
    l_max: Option<f64>,
    /// Override the reference energy, GeV (or MeV with --mev)
    #[arg(long = "E")]
    e: Option<f64>,
    /// Interpret --E in MeV
    #[arg(long)]
    mev: bool,
}

#[derive(Args)]
struct GammaTableArgs {
    /// Emit JSON instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Random samples per closed-form suite (the discord suite draws half)
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed; identical seeds give byte-identical reports
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the line-delimited JSON discrepancy report
    #[arg(long)]
    report: Option<PathBuf>,
    /// Measurement grid resolution per axis for the discord oracle
    #[arg(long, default_value_t = 64)]
    grid_n: usize,
    /// TOML config file (consulted for report_path)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit a JSON summary instead of text
    #[arg(long)]
    json: bool,
    /// Self-test hook: force every comparison to count as a violation
    #[arg(long, hide = true)]
    corrupt_tolerances: bool,
}

#[derive(Serialize)]
struct PointInputs {
    theta: f64,
    dm2: f64,
    label: String,
    l_km: f64,
    e_gev: f64,
    r: Option<f64>,
    gamma: f64,
}

#[derive(Serialize)]
struct PointOutput {
    inputs: PointInputs,
    phase: f64,
    p_survive: f64,
    p_transition: f64,
    correlations: CorrelationSet,
    sensitivity: SensitivityReport,
}

fn evaluate_point(args: &PointArgs) -> Result<PointOutput, Error> {
    let sector = args.sector.resolve()?;
    let e_gev = if args.mev { args.e * 1e-3 } else { args.e };
    let point = OscillationPoint::new(args.l, e_gev)?;
    if let Some(r) = args.r {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!(
                "bound fraction r must lie in [0,1], got {r}"
            )));
        }
    }
    let gamma = match (args.r, args.gamma) {
        (Some(r), None) => benchmark_gamma(r, args.l),
        (None, Some(g)) => g,
        (None, None) => 0.0,
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let phi = nuqc::phase(&sector, &point);
    let probs = nuqc::probabilities(&sector, phi);
    let state = apply_dephasing(&build_state(&nuqc::amplitudes(&sector, phi))?, gamma)?;
    let correlations = correlation_set(&state)?;
    let sensitivity = nuqc::sensitivity::report(&sector, &point, gamma, args.measure.into())?;
    Ok(PointOutput {
        inputs: PointInputs {
            theta: sector.theta(),
            dm2: sector.delta_m2(),
            label: sector.label().to_string(),
            l_km: args.l,
            e_gev,
            r: args.r,
            gamma,
        },
        phase: phi,
        p_survive: probs.p_survive,
        p_transition: probs.p_transition,
        correlations,
        sensitivity,
    })
}

fn print_sensitivity_table(s: &SensitivityReport) {
    println!("  dP/dtheta      {:+.12e}", s.dp_dtheta);
    println!("  dP/ddm2        {:+.12e}", s.dp_ddm2);
    println!("  dP/dL          {:+.12e}", s.dp_dl);
    println!("  dP/dE          {:+.12e}", s.dp_de);
    match s.dm_dp {
        Some(v) => println!("  dM/dP ({})    {:+.12e}", s.measure, v),
        None => println!("  dM/dP ({})    singular at this P", s.measure),
    }
    println!("  dC/dgamma      {:+.12e}", s.dc_dgamma);
    println!("  dQ/dgamma      {:+.12e}", s.dq_dgamma);
}

fn run_point(args: PointArgs) -> Result<u8, Error> {
    let out = evaluate_point(&args)?;
    if args.json {
        println!("{}", serde_json::to_string(&out).expect("serializable"));
        return Ok(0);
    }
    println!(
        "point: {} sector, L = {} km, E = {} GeV",
        out.inputs.label, out.inputs.l_km, out.inputs.e_gev
    );
    println!("  theta          {:.12}", out.inputs.theta);
    println!("  dm2            {:.6e}", out.inputs.dm2);
    println!("  phase          {:.12}", out.phase);
    match out.inputs.r {
        Some(r) => println!("  gamma          {:.6e} (r = {r})", out.inputs.gamma),
        None => println!("  gamma          {:.6e}", out.inputs.gamma),
    }
    println!("  p_survive      {:.12}", out.p_survive);
    println!("  p_transition   {:.12}", out.p_transition);
    println!("  concurrence    {:.12}", out.correlations.concurrence);
    println!("  eof            {:.12}", out.correlations.eof);
    println!(
        "  discord        {:.12} ({} branch)",
        out.correlations.discord, out.correlations.branch_taken
    );
    println!("  lqu            {:.12}", out.correlations.lqu);
    println!("sensitivities:");
    print_sensitivity_table(&out.sensitivity);
    Ok(0)
}

fn run_sensitivity(args: PointArgs) -> Result<u8, Error> {
    let out = evaluate_point(&args)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&out.sensitivity).expect("serializable")
        );
        return Ok(0);
    }
    println!(
        "sensitivity: {} sector, L = {} km, E = {} GeV, gamma = {:.6e}",
        out.inputs.label, out.inputs.l_km, out.inputs.e_gev, out.inputs.gamma
    );
    print_sensitivity_table(&out.sensitivity);
    Ok(0)
}

fn run_sweep(args: SweepArgs) -> Result<u8, Error> {
    let mut config = match &args.config {
        Some(path) => ScanConfig::from_path(path)?,
        None => ScanConfig::default(),
    };
    if let Some(name) = &args.preset {
        // CLI wins over the config file
        config.preset = Some(name.parse::<PresetName>()?.to_string());
    }
    let mut preset = config.resolve_preset(None)?;
    if let Some(lo) = args.l_min {
        preset.baseline_range_km.0 = lo;
    }
    if let Some(hi) = args.l_max {
        preset.baseline_range_km.1 = hi;
    }
    if let Some(e) = args.e {
        preset.reference_energy_gev = if args.mev { e * 1e-3 } else { e };
    }
    let r_values = args
        .r
        .or(config.r_values)
        .unwrap_or_else(|| vec![0.0, 0.25, 0.5, 1.0]);
    let grid = args.grid.or(config.grid).unwrap_or(500);
    let format = args
        .format
        .map(OutputFormat::from)
        .or(config.format)
        .unwrap_or(OutputFormat::Csv);

    let records: Vec<SweepRecord> = nuqc::sweep(&preset, &r_values, grid)?;
    match args.out.or(config.output) {
        Some(path) => emit_to_path(&records, format, &path)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&records, format, &mut lock)?;
        }
    }
    Ok(0)
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Jsonl => OutputFormat::Jsonl,
        }
    }
}

fn run_gamma_table(args: GammaTableArgs) -> Result<u8, Error> {
    let table = gamma_table();
    if args.json {
        println!("{}", serde_json::to_string(&table).expect("serializable"));
        return Ok(0);
    }
    println!(
        "{:<10} {:>14} {:>14}",
        "experiment", "baseline_km", "gamma90"
    );
    for row in table {
        println!(
            "{:<10} {:>14} {:>14.6e}",
            row.experiment.to_string(),
            row.baseline_km,
            row.gamma
        );
    }
    Ok(0)
}

#[derive(Serialize)]
struct ValidateSummary<'a> {
    seed: u64,
    samples_checked: usize,
    violations: usize,
    max_deviation_concurrence: f64,
    max_deviation_lqu: f64,
    max_deviation_discord: f64,
    report: &'a str,
    passed: bool,
}

fn run_validate(args: ValidateArgs) -> Result<u8, Error> {
    if args.samples < 1 {
        return Err(Error::Domain("--samples must be at least 1".into()));
    }
    let config_file = match &args.config {
        Some(path) => ScanConfig::from_path(path)?,
        None => ScanConfig::default(),
    };
    let mut config = ValidationConfig::with_samples(args.samples, args.seed);
    config.discord_grid_n = args.grid_n;
    if args.corrupt_tolerances {
        config.tol_concurrence = -1.0;
        config.tol_lqu = -1.0;
        config.tol_discord = -1.0;
    }
    let outcome: ValidationOutcome = validate::run(&config);
    let report_path = args
        .report
        .or(config_file.report_path)
        .unwrap_or_else(|| PathBuf::from("discrepancies.jsonl"));
    validate::write_report(&outcome, &report_path)?;

    let summary = ValidateSummary {
        seed: args.seed,
        samples_checked: outcome.samples_checked,
        violations: outcome.discrepancies.len(),
        max_deviation_concurrence: outcome.max_deviation_concurrence,
        max_deviation_lqu: outcome.max_deviation_lqu,
        max_deviation_discord: outcome.max_deviation_discord,
        report: &report_path.display().to_string(),
        passed: outcome.passed(),
    };
    if args.json {
        println!("{}", serde_json::to_string(&summary).expect("serializable"));
    } else {
        println!(
            "validate: {} samples, {} violations (report: {})",
            summary.samples_checked, summary.violations, summary.report
        );
        println!(
            "  max deviation  concurrence {:.3e} (tol {:.0e})",
            summary.max_deviation_concurrence, config.tol_concurrence
        );
        println!(
            "  max deviation  lqu         {:.3e} (tol {:.0e})",
            summary.max_deviation_lqu, config.tol_lqu
        );
        println!(
            "  max deviation  discord     {:.3e} (tol {:.0e})",
            summary.max_deviation_discord, config.tol_discord
        );
        println!(
            "  result         {}",
            if summary.passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(if outcome.passed() { 0 } else { 3 })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Point(args) => run_point(args),
        Command::Sweep(args) => run_sweep(args),
        Command::GammaTable(args) => run_gamma_table(args),
        Command::Validate(args) => run_validate(args),
        Command::Sensitivity(args) => run_sensitivity(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
