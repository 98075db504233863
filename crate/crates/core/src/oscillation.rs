//! Two-flavor oscillation kinematics: phase, flavor amplitudes, survival and
//! transition probabilities, and the coherence term of the flavor state.
//!
//! Everything downstream depends on a single dimensionless phase
//! Φ = 1.267 Δm²(eV²) L(km) / E(GeV), with the ultra-relativistic
//! identification t ≃ L. A global phase is divided out of the amplitudes so
//! that they depend only on the relative phase 2Φ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Engineering constant in Φ = 1.267 Δm²(eV²) L(km) / E(GeV).
pub const PHASE_CONSTANT: f64 = 1.267;

/// A two-flavor oscillation sector: mixing angle, mass splitting and a label
/// identifying the channel ("solar", "atmospheric", "reactor", ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingSector {
    theta: f64,
    delta_m2: f64,
    label: String,
}

impl MixingSector {
    /// `theta` in radians with 0 ≤ θ < π/2, `delta_m2` in eV² with Δm² > 0.
    pub fn new(theta: f64, delta_m2: f64, label: impl Into<String>) -> Result<Self> {
        if !theta.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::domain(format!(
                "mixing angle must satisfy 0 <= theta < pi/2, got {theta}"
            )));
        }
        if !delta_m2.is_finite() || delta_m2 <= 0.0 {
            return Err(Error::domain(format!(
                "mass splitting must be positive and finite, got {delta_m2}"
            )));
        }
        Ok(Self {
            theta,
            delta_m2,
            label: label.into(),
        })
    }

    /// Mixing angle θ in radians.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Mass-squared difference Δm² in eV².
    pub fn delta_m2(&self) -> f64 {
        self.delta_m2
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Oscillation amplitude sin²(2θ).
    pub fn sin2_2theta(&self) -> f64 {
        let s = (2.0 * self.theta).sin();
        s * s
    }
}

/// A baseline/energy point (L in km, E in GeV). L = 0 is allowed as the
/// production point; E must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationPoint {
    baseline_km: f64,
    energy_gev: f64,
}

impl OscillationPoint {
    pub fn new(baseline_km: f64, energy_gev: f64) -> Result<Self> {
        if !baseline_km.is_finite() || baseline_km < 0.0 {
            return Err(Error::domain(format!(
                "baseline must be finite and >= 0 km, got {baseline_km}"
            )));
        }
        if !energy_gev.is_finite() || energy_gev <= 0.0 {
            return Err(Error::domain(format!(
                "energy must be finite and > 0 GeV, got {energy_gev}"
            )));
        }
        Ok(Self {
            baseline_km,
            energy_gev,
        })
    }

    /// Convenience constructor for energies quoted in MeV.
    pub fn with_energy_mev(baseline_km: f64, energy_mev: f64) -> Result<Self> {
        Self::new(baseline_km, energy_mev * 1e-3)
    }

    pub fn baseline_km(&self) -> f64 {
        self.baseline_km
    }

    pub fn energy_gev(&self) -> f64 {
        self.energy_gev
    }
}

/// Complex flavor amplitudes of the evolved state, with the global phase of
/// the survival channel divided out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorAmplitudes {
    /// ã_αα, the amplitude to remain in the produced flavor.
    pub a_survive: Complex64,
    /// ã_αβ, the amplitude to transition to the other flavor.
    pub a_transition: Complex64,
}

impl FlavorAmplitudes {
    /// |ã_αα|² + |ã_αβ|², equal to 1 for any physical amplitude pair.
    pub fn norm_sqr(&self) -> f64 {
        self.a_survive.norm_sqr() + self.a_transition.norm_sqr()
    }
}

/// Survival and transition probabilities, summing to one by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbabilities {
    pub p_survive: f64,
    pub p_transition: f64,
}

impl TransitionProbabilities {
    /// Build from the transition probability alone; the survival probability
    /// is its complement.
    pub fn from_transition(p_transition: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_transition) {
            return Err(Error::domain(format!(
                "transition probability must lie in [0,1], got {p_transition}"
            )));
        }
        Ok(Self {
            p_survive: 1.0 - p_transition,
            p_transition,
        })
    }
}

/// Oscillation phase Φ = 1.267 Δm² L / E (dimensionless, ≥ 0).
pub fn phase(sector: &MixingSector, point: &OscillationPoint) -> f64 {
    PHASE_CONSTANT * sector.delta_m2() * point.baseline_km() / point.energy_gev()
}

/// Flavor amplitudes at phase Φ:
/// ã_αα = cos²θ + sin²θ e^{-2iΦ}, ã_αβ = sinθ cosθ (e^{-2iΦ} - 1).
pub fn amplitudes(sector: &MixingSector, phi: f64) -> FlavorAmplitudes {
    let (s, c) = sector.theta().sin_cos();
    let relative = Complex64::from_polar(1.0, -2.0 * phi);
    FlavorAmplitudes {
        a_survive: Complex64::new(c * c, 0.0) + relative * (s * s),
        a_transition: (relative - Complex64::new(1.0, 0.0)) * (s * c),
    }
}

/// Survival/transition probabilities at phase Φ:
/// P_αβ = sin²(2θ) sin²Φ, P_αα = 1 - P_αβ.
pub fn probabilities(sector: &MixingSector, phi: f64) -> TransitionProbabilities {
    let sin_phi = phi.sin();
    let p_transition = sector.sin2_2theta() * sin_phi * sin_phi;
    TransitionProbabilities {
        p_survive: 1.0 - p_transition,
        p_transition,
    }
}

/// Coherence term ρ₂₃ = ã_αα ã*_αβ of the flavor state. For the pure state
/// |ρ₂₃|² = P_αα P_αβ.
pub fn coherence(sector: &MixingSector, phi: f64) -> Complex64 {
    let a = amplitudes(sector, phi);
    a.a_survive * a.a_transition.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn sector(theta: f64) -> MixingSector {
        MixingSector::new(theta, 2.32e-3, "test").unwrap()
    }

    #[test]
    fn phase_matches_direct_arithmetic() {
        // KamLAND-like point
        let s = MixingSector::new(0.6, 7.49e-5, "solar").unwrap();
        let p = OscillationPoint::new(180.0, 0.004).unwrap();
        assert_abs_diff_eq!(
            phase(&s, &p),
            1.267 * 7.49e-5 * 180.0 / 0.004,
            epsilon = 1e-15
        );
        // MINOS row of the experiment table
        let s = MixingSector::new(0.67, 2.32e-3, "atmospheric").unwrap();
        let p = OscillationPoint::new(735.0, 3.0).unwrap();
        let expect = 1.267 * 2.32e-3 * 735.0 / 3.0;
        assert_abs_diff_eq!(phase(&s, &p), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(expect, 0.7201628, epsilon = 1e-7);
    }

    #[test]
    fn phase_zero_baseline() {
        let s = sector(0.5);
        let p = OscillationPoint::new(0.0, 3.0).unwrap();
        assert_eq!(phase(&s, &p), 0.0);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(MixingSector::new(-0.1, 1e-3, "x").is_err());
        assert!(MixingSector::new(FRAC_PI_2, 1e-3, "x").is_err());
        assert!(MixingSector::new(0.5, 0.0, "x").is_err());
        assert!(MixingSector::new(f64::NAN, 1e-3, "x").is_err());
        assert!(OscillationPoint::new(-1.0, 3.0).is_err());
        assert!(OscillationPoint::new(100.0, 0.0).is_err());
        assert!(OscillationPoint::new(f64::INFINITY, 3.0).is_err());
    }

    #[test]
    fn amplitudes_no_mixing() {
        let a = amplitudes(&sector(0.0), 1.3);
        assert_abs_diff_eq!(a.a_survive.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.a_survive.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.a_transition.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn amplitudes_zero_phase() {
        let a = amplitudes(&sector(0.7), 0.0);
        assert_abs_diff_eq!(
            (a.a_survive - Complex64::new(1.0, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(a.a_transition.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn amplitudes_maximal_mixing_half_period() {
        // θ = π/4, 2Φ = π: full conversion, ã_αα = 0, |ã_αβ| = 1
        let a = amplitudes(&sector(FRAC_PI_4), PI / 2.0);
        assert_abs_diff_eq!(a.a_survive.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.a_transition.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.a_transition.re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn probabilities_trivial_points() {
        let p = probabilities(&sector(FRAC_PI_4), FRAC_PI_2);
        assert_abs_diff_eq!(p.p_survive, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.p_transition, 1.0, epsilon = 1e-15);
        for phi in [0.0, 0.3, 2.0, 11.0] {
            let p = probabilities(&sector(0.0), phi);
            assert_eq!(p.p_survive, 1.0);
            assert_eq!(p.p_transition, 0.0);
        }
    }

    #[test]
    fn probabilities_dayabay_amplitude() {
        // sin²2θ = 0.084 at oscillation maximum gives P_αβ = 0.084
        let theta = 0.5 * (0.084f64.sqrt()).asin();
        let p = probabilities(&sector(theta), FRAC_PI_2);
        assert_abs_diff_eq!(p.p_transition, 0.084, epsilon = 1e-12);
    }

    #[test]
    fn coherence_trivial_and_derived() {
        assert_abs_diff_eq!(coherence(&sector(0.0), 1.0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(coherence(&sector(0.9), 0.0).norm(), 0.0, epsilon = 1e-15);
        // θ = π/4, 2Φ = π/2: sc [0 + 0 + i] = i/2
        let rho23 = coherence(&sector(FRAC_PI_4), FRAC_PI_2 / 2.0);
        assert_abs_diff_eq!(rho23.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho23.im, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn kinematic_invariants_hold_over_ten_thousand_samples() {
        use rand::distributions::{Distribution, Uniform};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
        let theta_dist = Uniform::new(0.0, FRAC_PI_2);
        let phi_dist = Uniform::new(0.0, 2.0 * PI);
        for _ in 0..10_000 {
            let s = sector(theta_dist.sample(&mut rng));
            let phi = phi_dist.sample(&mut rng);
            let a = amplitudes(&s, phi);
            let p = probabilities(&s, phi);
            assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
            assert!((p.p_survive - a.a_survive.norm_sqr()).abs() < 1e-12);
            assert!((p.p_transition - a.a_transition.norm_sqr()).abs() < 1e-12);
            let rho23 = coherence(&s, phi);
            assert!((rho23.norm_sqr() - p.p_survive * p.p_transition).abs() < 1e-12);
        }
    }

    #[test]
    fn coherence_matches_quoted_form() {
        // sc[-cos2θ + cos2θ cos2Φ + i sin2Φ] over a parameter sweep
        for &theta in &[0.1f64, 0.35, 0.6010, 0.9, 1.4] {
            for &phi in &[0.0f64, 0.2, 0.77, 1.9, 3.0] {
                let s = sector(theta);
                let (sn, cs) = theta.sin_cos();
                let c2t = (2.0 * theta).cos();
                let expect = Complex64::new(
                    sn * cs * (-c2t + c2t * (2.0 * phi).cos()),
                    sn * cs * (2.0 * phi).sin(),
                );
                let got = coherence(&s, phi);
                assert_abs_diff_eq!((got - expect).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }
}
