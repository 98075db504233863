//! Experiment presets, the baseline sweep engine, the dephasing-bound table
//! and deterministic CSV/JSONL emission.
//!
//! Presets carry the published two-flavor parameters of three reactor and
//! accelerator experiments. Sweeps run over a uniform baseline grid at the
//! preset's reference energy for each requested fraction r of the Γ₉₀
//! damping bound; when the requested range spans less than half an
//! oscillation period (ΔΦ < π) it is extended to cover one and the
//! extension is logged.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{apply_dephasing, benchmark_gamma, build_state};
use crate::correlations::{correlation_set, DiscordBranch};
use crate::error::{Error, Result};
use crate::exec;
use crate::oscillation::{
    amplitudes, phase, probabilities, MixingSector, OscillationPoint, PHASE_CONSTANT,
};

/// The three supported experiment presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetName {
    Kamland,
    Minos,
    Dayabay,
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetName::Kamland => write!(f, "kamland"),
            PresetName::Minos => write!(f, "minos"),
            PresetName::Dayabay => write!(f, "dayabay"),
        }
    }
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kamland" => Ok(PresetName::Kamland),
            "minos" => Ok(PresetName::Minos),
            "dayabay" | "daya-bay" | "daya_bay" => Ok(PresetName::Dayabay),
            other => Err(Error::domain(format!(
                "unknown preset '{other}' (expected kamland, minos or dayabay)"
            ))),
        }
    }
}

/// How to read the solar-sector angle value 0.47: as tan²θ (the standard
/// reporting convention, the default) or as tan²2θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KamlandAngleConvention {
    #[default]
    Tan2Theta,
    Tan2TwoTheta,
}

/// A two-flavor experiment configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPreset {
    pub name: PresetName,
    pub sector: MixingSector,
    pub baseline_range_km: (f64, f64),
    pub energy_range_gev: (f64, f64),
    /// Energy used for one-dimensional baseline sweeps.
    pub reference_energy_gev: f64,
}

/// Preset with the default angle conventions.
pub fn preset(name: PresetName) -> ExperimentPreset {
    preset_with(name, KamlandAngleConvention::default())
}

/// Preset with an explicit solar-angle convention.
pub fn preset_with(name: PresetName, kamland_angle: KamlandAngleConvention) -> ExperimentPreset {
    match name {
        PresetName::Kamland => {
            let theta = match kamland_angle {
                // tan²θ₁₂ = 0.47
                KamlandAngleConvention::Tan2Theta => 0.47f64.sqrt().atan(),
                // tan²2θ₁₂ = 0.47
                KamlandAngleConvention::Tan2TwoTheta => 0.5 * 0.47f64.sqrt().atan(),
            };
            ExperimentPreset {
                name,
                sector: MixingSector::new(theta, 7.49e-5, "solar").expect("valid solar sector"),
                baseline_range_km: (0.0, 180.0),
                energy_range_gev: (0.002, 0.010),
                reference_energy_gev: 0.004,
            }
        }
        PresetName::Minos => {
            // sin²2θ₂₃ = 0.95
            let theta = 0.5 * 0.95f64.sqrt().asin();
            ExperimentPreset {
                name,
                sector: MixingSector::new(theta, 2.32e-3, "atmospheric")
                    .expect("valid atmospheric sector"),
                baseline_range_km: (0.0, 735.0),
                energy_range_gev: (0.5, 50.0),
                reference_energy_gev: 3.0,
            }
        }
        PresetName::Dayabay => {
            // sin²2θ₁₃ = 0.084, Δm²_ee as the effective splitting
            let theta = 0.5 * 0.084f64.sqrt().asin();
            ExperimentPreset {
                name,
                sector: MixingSector::new(theta, 2.42e-3, "reactor").expect("valid reactor sector"),
                baseline_range_km: (0.0, 2.0),
                energy_range_gev: (0.001, 0.008),
                reference_energy_gev: 0.004,
            }
        }
    }
}

/// One sweep grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(rename = "L_km")]
    pub l_km: f64,
    #[serde(rename = "E_gev")]
    pub e_gev: f64,
    pub r: f64,
    pub gamma: f64,
    pub p_survive: f64,
    pub p_transition: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub discord: f64,
    pub lqu: f64,
    pub branch_taken: DiscordBranch,
}

/// The baseline range actually swept: the preset's range, extended when its
/// phase span ΔΦ at the reference energy falls short of π.
pub fn resolve_baseline_range(preset: &ExperimentPreset) -> (f64, f64) {
    let (lmin, lmax) = preset.baseline_range_km;
    let e = preset.reference_energy_gev;
    let dphi_dl = PHASE_CONSTANT * preset.sector.delta_m2() / e;
    let span = (lmax - lmin) * dphi_dl;
    if span >= std::f64::consts::PI {
        (lmin, lmax)
    } else {
        let extended = lmin + std::f64::consts::PI / dphi_dl;
        log::info!(
            "{} baseline range [{lmin}, {lmax}] km spans {span:.4} rad < pi at E = {e} GeV; extending to [{lmin}, {extended:.4}] km",
            preset.name
        );
        (lmin, extended)
    }
}

fn sweep_cell(
    preset: &ExperimentPreset,
    range: (f64, f64),
    grid: usize,
    r: f64,
    index: usize,
) -> SweepRecord {
    let (lmin, lmax) = range;
    let l = lmin + (lmax - lmin) * index as f64 / (grid - 1) as f64;
    let e = preset.reference_energy_gev;
    let point = OscillationPoint::new(l, e).expect("grid points are valid");
    let phi = phase(&preset.sector, &point);
    let gamma = benchmark_gamma(r, l);
    let probs = probabilities(&preset.sector, phi);
    let state = build_state(&amplitudes(&preset.sector, phi)).expect("pure state is normalized");
    let dephased = apply_dephasing(&state, gamma).expect("benchmark gamma in range");
    let cs = correlation_set(&dephased).expect("pipeline state is valid");
    SweepRecord {
        l_km: l,
        e_gev: e,
        r,
        gamma,
        p_survive: probs.p_survive,
        p_transition: probs.p_transition,
        concurrence: cs.concurrence,
        eof: cs.eof,
        discord: cs.discord,
        lqu: cs.lqu,
        branch_taken: cs.branch_taken,
    }
}

fn check_sweep_args(preset: &ExperimentPreset, r_values: &[f64], grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(Error::domain(format!(
            "sweep grid must have at least 2 points, got {grid}"
        )));
    }
    if r_values.is_empty() {
        return Err(Error::domain("sweep needs at least one r value"));
    }
    for &r in r_values {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain(format!(
                "bound fraction r must lie in [0,1], got {r}"
            )));
        }
    }
    let (lmin, lmax) = preset.baseline_range_km;
    if !(lmin.is_finite() && lmax.is_finite()) || lmin < 0.0 || lmax <= lmin {
        return Err(Error::domain(format!(
            "baseline range must be ordered and nonnegative, got [{lmin}, {lmax}]"
        )));
    }
    if !preset.reference_energy_gev.is_finite() || preset.reference_energy_gev <= 0.0 {
        return Err(Error::domain(format!(
            "reference energy must be positive, got {}",
            preset.reference_energy_gev
        )));
    }
    Ok(())
}

/// Sweep the preset's baseline range at its reference energy for every r,
/// emitting records in (r, L) lexicographic order. Grid cells are
/// independent and evaluated on the thread pool when the `parallel` feature
/// is enabled; ordering and bytes are identical either way.
pub fn sweep(preset: &ExperimentPreset, r_values: &[f64], grid: usize) -> Result<Vec<SweepRecord>> {
    check_sweep_args(preset, r_values, grid)?;
    let range = resolve_baseline_range(preset);
    Ok(exec::map_indexed(r_values.len() * grid, |k| {
        sweep_cell(preset, range, grid, r_values[k / grid], k % grid)
    }))
}

/// Reference single-threaded sweep.
pub fn sweep_serial(
    preset: &ExperimentPreset,
    r_values: &[f64],
    grid: usize,
) -> Result<Vec<SweepRecord>> {
    check_sweep_args(preset, r_values, grid)?;
    let range = resolve_baseline_range(preset);
    Ok((0..r_values.len() * grid)
        .map(|k| sweep_cell(preset, range, grid, r_values[k / grid], k % grid))
        .collect())
}

/// One row of the dephasing-bound table.
#[derive(Debug, Clone, Serialize)]
pub struct GammaRow {
    pub experiment: PresetName,
    pub baseline_km: f64,
    /// γ₉₀ = 1 - e^{-Γ₉₀ L}.
    pub gamma: f64,
}

/// Effective dephasing strengths at the characteristic baselines, from the
/// energy-independent Γ₉₀ bound.
pub fn gamma_table() -> [GammaRow; 3] {
    let row = |experiment, baseline_km| GammaRow {
        experiment,
        baseline_km,
        gamma: benchmark_gamma(1.0, baseline_km),
    };
    [
        row(PresetName::Kamland, 180.0),
        row(PresetName::Minos, 735.0),
        row(PresetName::Dayabay, 1.912),
    ]
}

/// Output format for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(Error::domain(format!(
                "unknown output format '{other}' (expected csv or jsonl)"
            ))),
        }
    }
}

const CSV_HEADER: &str =
    "L_km,E_gev,r,gamma,p_survive,p_transition,concurrence,eof,discord,lqu,branch_taken";

/// 12 significant digits, deterministic.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Serialize sweep records: CSV with the field-name header, or one JSON
/// object per line. Numbers carry 12 significant digits in both formats.
pub fn emit<W: Write>(records: &[SweepRecord], format: OutputFormat, out: &mut W) -> Result<()> {
    if records.is_empty() {
        return Err(Error::domain("refusing to emit an empty record set"));
    }
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    sig12(r.l_km),
                    sig12(r.e_gev),
                    sig12(r.r),
                    sig12(r.gamma),
                    sig12(r.p_survive),
                    sig12(r.p_transition),
                    sig12(r.concurrence),
                    sig12(r.eof),
                    sig12(r.discord),
                    sig12(r.lqu),
                    r.branch_taken
                )?;
            }
        }
        OutputFormat::Jsonl => {
            for r in records {
                writeln!(
                    out,
                    "{{\"L_km\":{},\"E_gev\":{},\"r\":{},\"gamma\":{},\"p_survive\":{},\"p_transition\":{},\"concurrence\":{},\"eof\":{},\"discord\":{},\"lqu\":{},\"branch_taken\":\"{}\"}}",
                    sig12(r.l_km),
                    sig12(r.e_gev),
                    sig12(r.r),
                    sig12(r.gamma),
                    sig12(r.p_survive),
                    sig12(r.p_transition),
                    sig12(r.concurrence),
                    sig12(r.eof),
                    sig12(r.discord),
                    sig12(r.lqu),
                    r.branch_taken
                )?;
            }
        }
    }
    Ok(())
}

/// [`emit`] into a file.
pub fn emit_to_path(records: &[SweepRecord], format: OutputFormat, path: &Path) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    emit(records, format, &mut file)?;
    file.flush()?;
    Ok(())
}

/// Flat key-value configuration file (TOML), overriding preset fields and
/// sweep options. Unknown keys are rejected.
///
/// ```toml
/// preset = "kamland"
/// grid = 500
/// r_values = [0.0, 0.25, 0.5, 1.0]
/// format = "csv"
/// output = "sweep.csv"
/// report_path = "discrepancies.jsonl"
/// kamland_tan2_double_angle = false
/// theta = 0.6010
/// dm2 = 7.49e-5
/// baseline_min_km = 0.0
/// baseline_max_km = 180.0
/// energy_min_gev = 0.002
/// energy_max_gev = 0.010
/// reference_energy_gev = 0.004
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub preset: Option<String>,
    pub grid: Option<usize>,
    pub r_values: Option<Vec<f64>>,
    pub format: Option<OutputFormat>,
    pub output: Option<std::path::PathBuf>,
    /// Where the oracle discrepancy report is written.
    pub report_path: Option<std::path::PathBuf>,
    /// Read the solar angle value as tan²2θ instead of tan²θ.
    pub kamland_tan2_double_angle: Option<bool>,
    pub theta: Option<f64>,
    pub dm2: Option<f64>,
    pub baseline_min_km: Option<f64>,
    pub baseline_max_km: Option<f64>,
    pub energy_min_gev: Option<f64>,
    pub energy_max_gev: Option<f64>,
    pub reference_energy_gev: Option<f64>,
}

impl ScanConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// The preset named by the config (with the configured angle
    /// convention), or `fallback` when none is named, with field overrides
    /// applied.
    pub fn resolve_preset(&self, fallback: Option<PresetName>) -> Result<ExperimentPreset> {
        let name = match &self.preset {
            Some(s) => s.parse()?,
            None => fallback.ok_or_else(|| Error::domain("no preset named"))?,
        };
        let convention = if self.kamland_tan2_double_angle.unwrap_or(false) {
            KamlandAngleConvention::Tan2TwoTheta
        } else {
            KamlandAngleConvention::Tan2Theta
        };
        let mut p = preset_with(name, convention);
        if self.theta.is_some() || self.dm2.is_some() {
            p.sector = MixingSector::new(
                self.theta.unwrap_or(p.sector.theta()),
                self.dm2.unwrap_or(p.sector.delta_m2()),
                p.sector.label().to_string(),
            )?;
        }
        if let Some(lo) = self.baseline_min_km {
            p.baseline_range_km.0 = lo;
        }
        if let Some(hi) = self.baseline_max_km {
            p.baseline_range_km.1 = hi;
        }
        if let Some(lo) = self.energy_min_gev {
            p.energy_range_gev.0 = lo;
        }
        if let Some(hi) = self.energy_max_gev {
            p.energy_range_gev.1 = hi;
        }
        if let Some(e) = self.reference_energy_gev {
            p.reference_energy_gev = e;
        }
        if p.baseline_range_km.0 < 0.0 || p.baseline_range_km.1 <= p.baseline_range_km.0 {
            return Err(Error::domain(format!(
                "baseline range must be ordered and nonnegative, got {:?}",
                p.baseline_range_km
            )));
        }
        if p.reference_energy_gev <= 0.0 {
            return Err(Error::domain("reference energy must be positive"));
        }
        Ok(p)
    }
}
