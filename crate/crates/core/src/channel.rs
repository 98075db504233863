//! The effective two-qubit X-state of the flavor system and the phase-damping
//! channel acting on it.
//!
//! The state lives on the {|βα⟩, |αβ⟩} block of the basis
//! {|ββ⟩, |βα⟩, |αβ⟩, |αα⟩}, with ρ₁₁ = ρ₄₄ = 0. Dephasing multiplies the
//! coherence ρ₂₃ by (1 - γ) and leaves the populations untouched; γ is tied
//! to the Lindblad damping rate by γ(L, E) = 1 - e^{-Γ(E) L}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oscillation::FlavorAmplitudes;

/// Energy-independent 90% C.L. damping bound Γ₉₀ in GeV (Model-A).
pub const GAMMA_90_GEV: f64 = 5.1e-24;

/// Natural-unit length conversion, 1 km = 5.07e18 GeV⁻¹.
pub const KM_IN_INVERSE_GEV: f64 = 5.07e18;

/// Convert a baseline in km to natural units (GeV⁻¹). `length_km` must be ≥ 0.
pub fn km_to_inverse_gev(length_km: f64) -> f64 {
    length_km * KM_IN_INVERSE_GEV
}

/// A power-law Lindblad damping model Γ(E) = Γ(E₀) (E/E₀)ⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LindbladSpec {
    /// Damping rate Γ(E₀) in GeV.
    pub gamma0_gev: f64,
    /// Power-law index n of the energy dependence.
    pub exponent_n: i32,
    /// Reference energy E₀ in GeV.
    pub e0_gev: f64,
}

impl LindbladSpec {
    pub fn new(gamma0_gev: f64, exponent_n: i32, e0_gev: f64) -> Result<Self> {
        if !gamma0_gev.is_finite() || gamma0_gev < 0.0 {
            return Err(Error::domain(format!(
                "damping rate must be finite and >= 0 GeV, got {gamma0_gev}"
            )));
        }
        if !e0_gev.is_finite() || e0_gev <= 0.0 {
            return Err(Error::domain(format!(
                "reference energy must be positive, got {e0_gev}"
            )));
        }
        Ok(Self {
            gamma0_gev,
            exponent_n,
            e0_gev,
        })
    }

    /// Power-law model with the default reference energy E₀ = 1 GeV.
    pub fn power_law(gamma0_gev: f64, exponent_n: i32) -> Result<Self> {
        Self::new(gamma0_gev, exponent_n, 1.0)
    }

    /// Energy-independent model at the Γ₉₀ benchmark bound.
    pub fn model_a_bound() -> Self {
        Self {
            gamma0_gev: GAMMA_90_GEV,
            exponent_n: 0,
            e0_gev: 1.0,
        }
    }

    /// Γ(E) in GeV at the given energy.
    pub fn rate_at(&self, energy_gev: f64) -> f64 {
        self.gamma0_gev * (energy_gev / self.e0_gev).powi(self.exponent_n)
    }
}

/// Effective dephasing strength γ(L, E) = 1 - e^{-Γ(E) L} ∈ [0, 1).
pub fn gamma_from_lindblad(spec: &LindbladSpec, energy_gev: f64, baseline_km: f64) -> f64 {
    1.0 - (-spec.rate_at(energy_gev) * km_to_inverse_gev(baseline_km)).exp()
}

/// Constrained benchmark γ_r(L) = 1 - exp(-r Γ₉₀ L) with r the fraction of
/// the Γ₉₀ bound. Requires 0 ≤ r ≤ 1.
pub fn benchmark_gamma(r: f64, baseline_km: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&r),
        "bound fraction r must lie in [0,1], got {r}"
    );
    1.0 - (-(r * GAMMA_90_GEV) * km_to_inverse_gev(baseline_km)).exp()
}

/// The nonzero block of the effective two-qubit density matrix, plus the
/// dephasing strength already absorbed into the coherence.
///
/// Convention: ρ₂₂ = |ã_αβ|² (population of |βα⟩), ρ₃₃ = |ã_αα|²,
/// ρ₂₃ = ã_αα ã*_αβ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    rho22: f64,
    rho33: f64,
    rho23: Complex64,
    gamma: f64,
}

impl XState {
    /// Build from raw block entries, checking trace, positivity of the block
    /// and the γ range.
    pub fn new(rho22: f64, rho33: f64, rho23: Complex64, gamma: f64) -> Result<Self> {
        if !(rho22.is_finite() && rho33.is_finite() && rho23.re.is_finite() && rho23.im.is_finite())
        {
            return Err(Error::domain("X-state entries must be finite"));
        }
        if rho22 < -1e-12 || rho33 < -1e-12 || (rho22 + rho33 - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "populations must be nonnegative and sum to 1, got ({rho22}, {rho33})"
            )));
        }
        if rho23.norm_sqr() > rho22 * rho33 + 1e-12 {
            return Err(Error::domain(
                "coherence violates positivity: |rho23|^2 > rho22 * rho33",
            ));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::domain(format!(
                "dephasing strength must lie in [0,1], got {gamma}"
            )));
        }
        Ok(Self {
            rho22,
            rho33,
            rho23,
            gamma,
        })
    }

    /// Pure X-state from normalized flavor amplitudes (γ = 0, positivity
    /// saturated: |ρ₂₃|² = ρ₂₂ ρ₃₃).
    pub fn from_amplitudes(amps: &FlavorAmplitudes) -> Result<Self> {
        let norm = amps.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "amplitudes are not normalized: |a|^2 = {norm}"
            )));
        }
        Ok(Self {
            rho22: amps.a_transition.norm_sqr(),
            rho33: amps.a_survive.norm_sqr(),
            rho23: amps.a_survive * amps.a_transition.conj(),
            gamma: 0.0,
        })
    }

    /// Apply the phase-damping channel: populations are kept bit-identical,
    /// the coherence is scaled by (1 - γ). Strengths compose as
    /// (1 - γ') = (1 - γ_old)(1 - γ).
    pub fn dephased(&self, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::domain(format!(
                "dephasing strength must lie in [0,1], got {gamma}"
            )));
        }
        Ok(Self {
            rho22: self.rho22,
            rho33: self.rho33,
            rho23: self.rho23 * (1.0 - gamma),
            gamma: 1.0 - (1.0 - self.gamma) * (1.0 - gamma),
        })
    }

    /// Population of |βα⟩ (equals P_αβ for the oscillation state).
    pub fn rho22(&self) -> f64 {
        self.rho22
    }

    /// Population of |αβ⟩ (equals P_αα for the oscillation state).
    pub fn rho33(&self) -> f64 {
        self.rho33
    }

    /// Coherence ρ₂₃.
    pub fn rho23(&self) -> Complex64 {
        self.rho23
    }

    /// Total dephasing strength absorbed into ρ₂₃ so far.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Pure state followed by dephasing, as one step.
pub fn build_state(amps: &FlavorAmplitudes) -> Result<XState> {
    XState::from_amplitudes(amps)
}

/// See [`XState::dephased`].
pub fn apply_dephasing(state: &XState, gamma: f64) -> Result<XState> {
    state.dephased(gamma)
}
