//! Analytic partial derivatives of the transition probability and of the
//! correlation measures, plus the finite-difference machinery used to verify
//! them.
//!
//! With P = sin²(2θ) sin²Φ and Φ = 1.267 Δm² L / E:
//!
//! - ∂P/∂θ    = 2 sin(4θ) sin²Φ
//! - ∂P/∂Δm²  = sin²(2θ) sin(2Φ) · 1.267 L / E
//! - ∂P/∂L    = sin²(2θ) sin(2Φ) · 1.267 Δm² / E
//! - ∂P/∂E    = -sin²(2θ) sin(2Φ) · 1.267 Δm² L / E²
//!
//! and in probability space d𝒰/dP = 4(1-2P), dQ/dP = 2(1-2P) (unitary
//! branch), d𝒞/dP = (1-2P)/√(P(1-P)), with the EOF factor composed through
//! dE_F/d𝒞. Dephasing responses: ∂𝒞_D/∂γ = -2√(P(1-P)),
//! ∂Q_D/∂γ = -4(1-γ)P(1-P), while ∂P/∂γ = 0 identically.

use serde::{Deserialize, Serialize};

use crate::channel::XState;
use crate::error::{Error, Result};
use crate::oscillation::{
    phase, MixingSector, OscillationPoint, TransitionProbabilities, PHASE_CONSTANT,
};

/// Oscillation parameter selector for [`dp_dx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OscParam {
    Theta,
    Dm2,
    Baseline,
    Energy,
}

/// Correlation measure selector for [`response_factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Lqu,
    Discord,
    Concurrence,
    Eof,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Measure::Lqu => write!(f, "lqu"),
            Measure::Discord => write!(f, "discord"),
            Measure::Concurrence => write!(f, "concurrence"),
            Measure::Eof => write!(f, "eof"),
        }
    }
}

/// ∂P_αβ/∂x for x ∈ {θ, Δm², L, E}.
pub fn dp_dx(sector: &MixingSector, point: &OscillationPoint, which: OscParam) -> f64 {
    let phi = phase(sector, point);
    let sin2_2t = sector.sin2_2theta();
    let sin_2phi = (2.0 * phi).sin();
    match which {
        OscParam::Theta => {
            let s = phi.sin();
            2.0 * (4.0 * sector.theta()).sin() * s * s
        }
        OscParam::Dm2 => {
            sin2_2t * sin_2phi * PHASE_CONSTANT * point.baseline_km() / point.energy_gev()
        }
        OscParam::Baseline => {
            sin2_2t * sin_2phi * PHASE_CONSTANT * sector.delta_m2() / point.energy_gev()
        }
        OscParam::Energy => {
            -sin2_2t * sin_2phi * PHASE_CONSTANT * sector.delta_m2() * point.baseline_km()
                / (point.energy_gev() * point.energy_gev())
        }
    }
}

/// dM/dP of the selected measure at transition probability P (pure state,
/// γ = 0).
///
/// The concurrence and EOF factors are singular at P ∈ {0, 1}; at P = 1/2
/// the EOF factor takes its limit value 0 (d𝒞/dP vanishes there). The
/// discord factor is the unitary quadratic-branch expression.
pub fn response_factor(measure: Measure, p_transition: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_transition) {
        return Err(Error::domain(format!(
            "transition probability must lie in [0,1], got {p_transition}"
        )));
    }
    let p = p_transition;
    match measure {
        Measure::Lqu => Ok(4.0 * (1.0 - 2.0 * p)),
        Measure::Discord => Ok(2.0 * (1.0 - 2.0 * p)),
        Measure::Concurrence | Measure::Eof => {
            if p == 0.0 || p == 1.0 {
                return Err(Error::Singularity(format!(
                    "d{measure}/dP diverges at P = {p}"
                )));
            }
            let dc_dp = (1.0 - 2.0 * p) / (p * (1.0 - p)).sqrt();
            if measure == Measure::Concurrence {
                return Ok(dc_dp);
            }
            if dc_dp == 0.0 {
                // P = 1/2: dE_F/d𝒞 has a finite limit but 0·limit = 0
                return Ok(0.0);
            }
            let c = 2.0 * (p * (1.0 - p)).sqrt();
            let root = (1.0 - c * c).max(0.0).sqrt();
            // dE_F/dC = -(C / 2√(1-C²)) log₂((1-√(1-C²))/(1+√(1-C²))),
            // rewritten through (1-r)/(1+r) = C²/(1+r)² so the log argument
            // never cancels to 0 at small C. Rounding reaches C = 1 for p
            // within ~1e-9 of 1/2; the limit there is log₂e.
            let de_dc = if root == 0.0 {
                std::f64::consts::LOG2_E
            } else {
                -(c / root) * (c.log2() - (1.0 + root).log2())
            };
            Ok(de_dc * dc_dp)
        }
    }
}

/// (∂𝒞_D/∂γ, ∂Q_D/∂γ) at transition probability P and dephasing γ.
pub fn dephasing_sensitivity(p_transition: f64, gamma: f64) -> (f64, f64) {
    let p = p_transition;
    let dc = -2.0 * (p * (1.0 - p)).max(0.0).sqrt();
    let dq = -4.0 * (1.0 - gamma) * p * (1.0 - p);
    (dc, dq)
}

/// Check that the phase-damping channel leaves the populations bit-identical
/// (∂P/∂γ = 0). Returns `true` when they are.
pub fn probability_gamma_invariance(p: &TransitionProbabilities, gamma: f64) -> Result<bool> {
    let coherence = (p.p_survive * p.p_transition).max(0.0).sqrt();
    let state = XState::new(
        p.p_transition,
        p.p_survive,
        num_complex::Complex64::new(coherence, 0.0),
        0.0,
    )?;
    let dephased = state.dephased(gamma)?;
    Ok(dephased.rho22().to_bits() == state.rho22().to_bits()
        && dephased.rho33().to_bits() == state.rho33().to_bits())
}

/// The partials bundled for one evaluation point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub dp_dtheta: f64,
    pub dp_ddm2: f64,
    pub dp_dl: f64,
    pub dp_de: f64,
    /// The measure `dm_dp` refers to.
    pub measure: Measure,
    /// dM/dP of `measure`; `None` where the factor is singular.
    pub dm_dp: Option<f64>,
    pub dc_dgamma: f64,
    pub dq_dgamma: f64,
}

/// Evaluate every partial at one (sector, point, γ) with the response factor
/// of `measure`.
pub fn report(
    sector: &MixingSector,
    point: &OscillationPoint,
    gamma: f64,
    measure: Measure,
) -> Result<SensitivityReport> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain(format!(
            "dephasing strength must lie in [0,1], got {gamma}"
        )));
    }
    let p = crate::oscillation::probabilities(sector, phase(sector, point));
    let dm_dp = match response_factor(measure, p.p_transition) {
        Ok(v) => Some(v),
        Err(Error::Singularity(_)) => None,
        Err(e) => return Err(e),
    };
    let (dc_dgamma, dq_dgamma) = dephasing_sensitivity(p.p_transition, gamma);
    Ok(SensitivityReport {
        dp_dtheta: dp_dx(sector, point, OscParam::Theta),
        dp_ddm2: dp_dx(sector, point, OscParam::Dm2),
        dp_dl: dp_dx(sector, point, OscParam::Baseline),
        dp_de: dp_dx(sector, point, OscParam::Energy),
        measure,
        dm_dp,
        dc_dgamma,
        dq_dgamma,
    })
}

/// Richardson-extrapolated central difference of `f` at `x` with base step
/// `h`: (4 D(h/2) - D(h)) / 3 where D(h) = (f(x+h) - f(x-h)) / 2h.
pub fn richardson_central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |step: f64| (f(x + step) - f(x - step)) / (2.0 * step);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}
