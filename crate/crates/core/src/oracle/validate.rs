//! Randomized closed-form vs oracle equivalence sweeps with a persisted
//! discrepancy report. Sampling is fully determined by a 64-bit seed; the
//! sample set is drawn up front so the parallel and serial drivers visit
//! identical states in identical order.

use std::io::Write;
use std::path::Path;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{apply_dephasing, build_state, XState};
use crate::correlations::{concurrence_closed, discord_closed, lqu_closed};
use crate::error::Result;
use crate::exec;
use crate::oracle::{discord_numeric, lift_to_full, lqu_numeric, wootters_concurrence};
use crate::oscillation::{amplitudes, MixingSector, TransitionProbabilities};

/// Which closed form a comparison exercised.
pub const MEASURE_CONCURRENCE: &str = "concurrence";
pub const MEASURE_LQU: &str = "lqu";
pub const MEASURE_DISCORD: &str = "discord";

/// Sample counts, tolerances and seed for one validation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub seed: u64,
    pub samples_concurrence: usize,
    pub samples_lqu: usize,
    pub samples_discord: usize,
    /// Grid resolution per axis for the discord measurement search.
    pub discord_grid_n: usize,
    pub tol_concurrence: f64,
    pub tol_lqu: f64,
    pub tol_discord: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples_concurrence: 1000,
            samples_lqu: 1000,
            samples_discord: 500,
            discord_grid_n: 64,
            tol_concurrence: 1e-9,
            tol_lqu: 1e-9,
            tol_discord: 1e-3,
        }
    }
}

impl ValidationConfig {
    /// Same proportions as the default, scaled to `samples` concurrence/LQU
    /// draws (discord gets half, minimum one).
    pub fn with_samples(samples: usize, seed: u64) -> Self {
        Self {
            seed,
            samples_concurrence: samples,
            samples_lqu: samples,
            samples_discord: (samples / 2).max(1),
            ..Self::default()
        }
    }
}

/// One closed-form vs oracle violation, serialized as a JSON line of the
/// discrepancy report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Discrepancy {
    pub p_survive: f64,
    pub p_transition: f64,
    pub gamma: f64,
    pub closed_value: f64,
    pub oracle_value: f64,
    pub measure: String,
}

/// Outcome of one validation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub samples_checked: usize,
    pub max_deviation_concurrence: f64,
    pub max_deviation_lqu: f64,
    pub max_deviation_discord: f64,
    pub discrepancies: Vec<Discrepancy>,
}

impl ValidationOutcome {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// A randomly drawn (θ, Φ, γ) triple and the dephased state it produces.
#[derive(Debug, Clone, Copy)]
struct Sample {
    theta: f64,
    phi: f64,
    gamma: f64,
}

impl Sample {
    fn state(&self) -> XState {
        let sector = MixingSector::new(self.theta, 1e-3, "sample").expect("valid sampled angle");
        let amps = amplitudes(&sector, self.phi);
        let pure = build_state(&amps).expect("amplitudes are normalized");
        apply_dephasing(&pure, self.gamma).expect("sampled gamma in range")
    }

    fn probabilities(&self, state: &XState) -> TransitionProbabilities {
        TransitionProbabilities {
            p_survive: state.rho33(),
            p_transition: state.rho22(),
        }
    }
}

fn draw_samples(seed: u64, stream: u64, count: usize) -> Vec<Sample> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ stream);
    let theta_dist = Uniform::new(0.0, std::f64::consts::FRAC_PI_2);
    let phi_dist = Uniform::new(0.0, std::f64::consts::PI);
    let gamma_dist = Uniform::new_inclusive(0.0, 1.0);
    (0..count)
        .map(|_| Sample {
            theta: theta_dist.sample(&mut rng),
            phi: phi_dist.sample(&mut rng),
            gamma: gamma_dist.sample(&mut rng),
        })
        .collect()
}

struct Comparison {
    deviation: f64,
    discrepancy: Option<Discrepancy>,
}

fn compare(sample: &Sample, measure: &'static str, tol: f64, grid_n: usize) -> Comparison {
    let state = sample.state();
    let p = sample.probabilities(&state);
    let full = lift_to_full(&state).expect("pipeline states are valid density matrices");
    let (closed, oracle) = match measure {
        MEASURE_CONCURRENCE => (
            concurrence_closed(&p, sample.gamma).expect("gamma in range"),
            wootters_concurrence(&full).expect("valid density matrix"),
        ),
        MEASURE_LQU => (
            lqu_closed(&p, sample.gamma).expect("gamma in range"),
            lqu_numeric(&full).expect("valid density matrix"),
        ),
        MEASURE_DISCORD => (
            discord_closed(&p, sample.gamma).expect("gamma in range").0,
            discord_numeric(&full, grid_n).expect("valid density matrix"),
        ),
        other => panic!("unknown measure {other}"),
    };
    let deviation = (closed - oracle).abs();
    let discrepancy = (deviation > tol).then(|| Discrepancy {
        p_survive: p.p_survive,
        p_transition: p.p_transition,
        gamma: sample.gamma,
        closed_value: closed,
        oracle_value: oracle,
        measure: measure.to_string(),
    });
    Comparison {
        deviation,
        discrepancy,
    }
}

fn run_impl(config: &ValidationConfig, parallel: bool) -> ValidationOutcome {
    let suites: [(&'static str, usize, f64); 3] = [
        (
            MEASURE_CONCURRENCE,
            config.samples_concurrence,
            config.tol_concurrence,
        ),
        (MEASURE_LQU, config.samples_lqu, config.tol_lqu),
        (MEASURE_DISCORD, config.samples_discord, config.tol_discord),
    ];
    let mut outcome = ValidationOutcome {
        samples_checked: 0,
        max_deviation_concurrence: 0.0,
        max_deviation_lqu: 0.0,
        max_deviation_discord: 0.0,
        discrepancies: Vec::new(),
    };
    for (stream, (measure, count, tol)) in suites.into_iter().enumerate() {
        let samples = draw_samples(config.seed, stream as u64, count);
        let grid_n = config.discord_grid_n;
        let comparisons: Vec<Comparison> = if parallel {
            exec::map_indexed(samples.len(), |i| {
                compare(&samples[i], measure, tol, grid_n)
            })
        } else {
            (0..samples.len())
                .map(|i| compare(&samples[i], measure, tol, grid_n))
                .collect()
        };
        let max_dev = comparisons.iter().map(|c| c.deviation).fold(0.0, f64::max);
        match measure {
            MEASURE_CONCURRENCE => outcome.max_deviation_concurrence = max_dev,
            MEASURE_LQU => outcome.max_deviation_lqu = max_dev,
            _ => outcome.max_deviation_discord = max_dev,
        }
        outcome.samples_checked += comparisons.len();
        outcome
            .discrepancies
            .extend(comparisons.into_iter().filter_map(|c| c.discrepancy));
    }
    outcome
}

/// Run all three equivalence suites. Uses the thread pool when the
/// `parallel` feature is enabled; results are identical either way.
pub fn run(config: &ValidationConfig) -> ValidationOutcome {
    run_impl(config, true)
}

/// Reference single-threaded driver.
pub fn run_serial(config: &ValidationConfig) -> ValidationOutcome {
    run_impl(config, false)
}

/// Write the discrepancy report as line-delimited JSON (one record per
/// violation; an empty file when the run was clean).
pub fn write_report(outcome: &ValidationOutcome, path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    for d in &outcome.discrepancies {
        let line = serde_json::to_string(d).expect("discrepancy records serialize");
        writeln!(file, "{line}")?;
    }
    Ok(())
}
