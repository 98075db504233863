//! Closed-form correlation measures for the dephased flavor X-state:
//! concurrence, entanglement of formation, quantum discord (two-extremum
//! analytic form) and local quantum uncertainty.
//!
//! All four are functions of the transition probability P = P_αβ and the
//! dephasing strength γ:
//!
//! - 𝒞 = 2(1-γ)√(P_αα P_αβ)
//! - E_F = h(½(1 + √(1-𝒞²)))
//! - Q = min(Q₁, Q₂) with Q₁ the entropy branch and Q₂ = 2(1-γ)² P_αα P_αβ
//! - 𝒰 = 1 - max[0, P_αβ + P_αα (1 - 4(1-γ)² P_αβ / (1 + 2√((2-γ)γ P_αα P_αβ)))]
//!
//! Conventions: 0·log₂0 = 0, and square-root arguments within 1e-12 of zero
//! are clipped to zero.

use serde::{Deserialize, Serialize};

use crate::channel::XState;
use crate::error::{Error, Result};
use crate::oscillation::TransitionProbabilities;

/// Which extremum of the analytic discord attained the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscordBranch {
    /// The measurement-entropy branch Q₁.
    Entropy,
    /// The quadratic branch Q₂ = 2|ρ₂₃|². Ties are reported as quadratic.
    Quadratic,
}

impl std::fmt::Display for DiscordBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiscordBranch::Entropy => write!(f, "entropy"),
            DiscordBranch::Quadratic => write!(f, "quadratic"),
        }
    }
}

/// The four measures evaluated on one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSet {
    pub concurrence: f64,
    pub eof: f64,
    pub discord: f64,
    pub lqu: f64,
    pub branch_taken: DiscordBranch,
}

/// x log₂ x with the 0·log₂0 = 0 convention.
fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Clip a square-root argument that is within `slack` below zero.
fn clip_nonneg(x: f64, slack: f64) -> f64 {
    if x < 0.0 && x > -slack {
        0.0
    } else {
        x
    }
}

/// Binary entropy h(x) = -x log₂ x - (1-x) log₂(1-x) in bits.
///
/// Accepts x within 1e-12 outside the unit interval (clamped); anything
/// further out is a domain error.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::domain(format!(
            "binary entropy argument must lie in [0,1], got {x}"
        )));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(entropy_unchecked(x))
}

fn entropy_unchecked(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    // + 0.0 turns the -0.0 arising at the endpoints into +0.0
    -xlog2(x) - xlog2(1.0 - x) + 0.0
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain(format!(
            "dephasing strength must lie in [0,1], got {gamma}"
        )));
    }
    Ok(())
}

/// Concurrence of the dephased state, 𝒞 = 2(1-γ)√(P_αα P_αβ).
pub fn concurrence_closed(p: &TransitionProbabilities, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let prod = clip_nonneg(p.p_survive * p.p_transition, 1e-12);
    Ok((2.0 * (1.0 - gamma) * prod.sqrt()).clamp(0.0, 1.0))
}

/// Entanglement of formation, E_F = h(½(1 + √(1-𝒞²))).
pub fn eof_closed(p: &TransitionProbabilities, gamma: f64) -> Result<f64> {
    let c = concurrence_closed(p, gamma)?;
    Ok(eof_from_concurrence(c))
}

/// E_F as a function of the concurrence alone.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let root = clip_nonneg(1.0 - c * c, 1e-12).sqrt();
    entropy_unchecked(0.5 * (1.0 + root))
}

/// Analytic quantum discord of the dephased state: min(Q₁, Q₂) with
///
/// Q₁ = H(P_αα) + λ₁ log₂ λ₁ + λ₂ log₂ λ₂ + H(λ₁),
/// λ_{1,2} = ½(1 ± √((2P_αα-1)² + 4(1-γ)² P_αα P_αβ)),
/// Q₂ = 2(1-γ)² P_αα P_αβ.
///
/// Ties within 1e-12 are reported as the quadratic branch.
pub fn discord_closed(p: &TransitionProbabilities, gamma: f64) -> Result<(f64, DiscordBranch)> {
    check_gamma(gamma)?;
    let (paa, pab) = (p.p_survive, p.p_transition);
    let damp = (1.0 - gamma) * (1.0 - gamma);
    let disc = (2.0 * paa - 1.0).powi(2) + 4.0 * damp * paa * pab;
    let root = clip_nonneg(disc, 1e-12).sqrt().min(1.0);
    let lam1 = 0.5 * (1.0 + root);
    let lam2 = 0.5 * (1.0 - root);
    let q1 = entropy_unchecked(paa) + xlog2(lam1) + xlog2(lam2) + entropy_unchecked(lam1);
    let q2 = 2.0 * damp * paa * pab;
    if q1 < q2 - 1e-12 {
        Ok((q1.clamp(0.0, 1.0), DiscordBranch::Entropy))
    } else {
        Ok((q2.min(q1).clamp(0.0, 1.0), DiscordBranch::Quadratic))
    }
}

/// Local quantum uncertainty of the dephased state,
/// 𝒰 = 1 - max[0, P_αβ + P_αα (1 - 4(1-γ)² P_αβ / (1 + 2√((2-γ)γ P_αα P_αβ)))].
///
/// Reduces to 4 P_αα P_αβ at γ = 0 and to 0 at γ = 1.
pub fn lqu_closed(p: &TransitionProbabilities, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let (paa, pab) = (p.p_survive, p.p_transition);
    let damp = (1.0 - gamma) * (1.0 - gamma);
    let u = clip_nonneg((2.0 - gamma) * gamma * paa * pab, 1e-12).sqrt();
    let w33 = pab + paa * (1.0 - 4.0 * damp * pab / (1.0 + 2.0 * u));
    Ok((1.0 - w33.max(0.0)).clamp(0.0, 1.0))
}

/// Evaluate all four measures on an X-state, reading P_αα = ρ₃₃ and
/// P_αβ = ρ₂₂. The effective dephasing is taken from the state itself,
/// 1 - γ = |ρ₂₃| / √(ρ₂₂ ρ₃₃), so the result depends only on the entries;
/// the provenance field is consulted only when a population vanishes (where
/// every measure is zero for any γ anyway).
pub fn correlation_set(state: &XState) -> Result<CorrelationSet> {
    let p = TransitionProbabilities {
        p_survive: state.rho33(),
        p_transition: state.rho22(),
    };
    let product = state.rho22() * state.rho33();
    let gamma = if product > 0.0 {
        let g = (1.0 - state.rho23().norm() / product.sqrt()).clamp(0.0, 1.0);
        // coherence saturated within the positivity slack is purity; a
        // residual 1e-16 here would leak through the sqrt(gamma) terms
        if g < 1e-12 {
            0.0
        } else {
            g
        }
    } else {
        state.gamma()
    };
    let concurrence = concurrence_closed(&p, gamma)?;
    let eof = eof_from_concurrence(concurrence);
    let (discord, branch_taken) = discord_closed(&p, gamma)?;
    let lqu = lqu_closed(&p, gamma)?;
    Ok(CorrelationSet {
        concurrence,
        eof,
        discord,
        lqu,
        branch_taken,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply_dephasing, build_state};
    use crate::oscillation::{amplitudes, MixingSector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn probs(p_transition: f64) -> TransitionProbabilities {
        TransitionProbabilities::from_transition(p_transition).unwrap()
    }

    #[test]
    fn entropy_endpoints_and_symmetry() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // positive zero specifically, so serialized output never shows -0
        assert_eq!(binary_entropy(1.0).unwrap().to_bits(), 0.0f64.to_bits());
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_abs_diff_eq!(
            binary_entropy(0.084).unwrap(),
            0.41611895125187054,
            epsilon = 1e-12
        );
        for &x in &[0.01, 0.2, 0.37, 0.499] {
            assert_abs_diff_eq!(
                binary_entropy(x).unwrap(),
                binary_entropy(1.0 - x).unwrap(),
                epsilon = 1e-15
            );
        }
        assert!(binary_entropy(-0.001).is_err());
        assert!(binary_entropy(1.001).is_err());
        // within slack: clamped, not rejected
        assert_eq!(binary_entropy(-1e-13).unwrap(), 0.0);
    }

    #[test]
    fn concurrence_values() {
        assert_abs_diff_eq!(
            concurrence_closed(&probs(0.5), 0.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(concurrence_closed(&probs(0.0), 0.3).unwrap(), 0.0);
        assert_abs_diff_eq!(
            concurrence_closed(&probs(0.5), 0.5).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(concurrence_closed(&probs(0.5), 1.5).is_err());
    }

    #[test]
    fn eof_values() {
        assert_abs_diff_eq!(eof_closed(&probs(0.5), 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(eof_from_concurrence(0.0), 0.0);
        // Peak of the small-angle sweep: P = 0.084
        assert_abs_diff_eq!(
            eof_closed(&probs(0.084), 0.0).unwrap(),
            0.41611895125187054,
            epsilon = 1e-12
        );
        // monotone in concurrence
        let mut last = -1.0;
        for i in 0..=100 {
            let c = i as f64 / 100.0;
            let e = eof_from_concurrence(c);
            assert!(e >= last);
            last = e;
        }
    }

    #[test]
    fn discord_values() {
        let (q, _) = discord_closed(&probs(0.0), 0.0).unwrap();
        assert_eq!(q, 0.0);
        let (q, b) = discord_closed(&probs(0.5), 0.0).unwrap();
        assert_abs_diff_eq!(q, 0.5, epsilon = 1e-15);
        assert_eq!(b, DiscordBranch::Quadratic);
        let (q, _) = discord_closed(&probs(0.084), 0.0).unwrap();
        assert_abs_diff_eq!(q, 0.153888, epsilon = 1e-12);
    }

    #[test]
    fn discord_pure_state_spectrum() {
        // at γ=0 the eigenvalue formula must give {1, 0} for every P
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let disc = (2.0 * (1.0 - p) - 1.0).powi(2) + 4.0 * p * (1.0 - p);
            assert_abs_diff_eq!(disc, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn lqu_values() {
        assert_abs_diff_eq!(lqu_closed(&probs(0.5), 0.0).unwrap(), 1.0, epsilon = 1e-15);
        for &p in &[0.0, 0.1, 0.5, 0.9, 1.0] {
            assert_abs_diff_eq!(lqu_closed(&probs(p), 1.0).unwrap(), 0.0, epsilon = 1e-15);
        }
        // balanced state: 𝒰 = (1-γ)²/(1+√(γ(2-γ))) = 1 - √(γ(2-γ))
        for &g in &[0.0f64, 0.1, 0.36, 0.7, 0.95] {
            let expect = 1.0 - (g * (2.0 - g)).sqrt();
            assert_abs_diff_eq!(lqu_closed(&probs(0.5), g).unwrap(), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn correlation_set_bundles() {
        // pure maximal admixture
        let amps = amplitudes(
            &MixingSector::new(FRAC_PI_4, 1e-3, "t").unwrap(),
            FRAC_PI_2 / 2.0,
        );
        let cs = correlation_set(&build_state(&amps).unwrap()).unwrap();
        assert_abs_diff_eq!(cs.concurrence, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cs.eof, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cs.discord, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(cs.lqu, 1.0, epsilon = 1e-12);

        // fully dephased balanced state
        let dead = apply_dephasing(&build_state(&amps).unwrap(), 1.0).unwrap();
        let cs = correlation_set(&dead).unwrap();
        assert_abs_diff_eq!(cs.concurrence, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cs.eof, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cs.discord, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cs.lqu, 0.0, epsilon = 1e-15);

        // small-angle peak P = 0.084
        let theta = 0.5 * (0.084f64.sqrt()).asin();
        let amps = amplitudes(&MixingSector::new(theta, 1e-3, "t").unwrap(), FRAC_PI_2);
        let cs = correlation_set(&build_state(&amps).unwrap()).unwrap();
        assert_abs_diff_eq!(cs.concurrence, 0.5547756303227459, epsilon = 1e-9);
        assert_abs_diff_eq!(cs.eof, 0.4161189512518705, epsilon = 1e-9);
        assert_abs_diff_eq!(cs.discord, 0.153888, epsilon = 1e-9);
        assert_abs_diff_eq!(cs.lqu, 0.307776, epsilon = 1e-9);
    }

    #[test]
    fn correlation_set_reads_dephasing_from_the_coherence() {
        // a block with no coherence is fully dephased no matter what the
        // provenance field says
        let bare = XState::new(0.5, 0.5, num_complex::Complex64::new(0.0, 0.0), 0.0).unwrap();
        let cs = correlation_set(&bare).unwrap();
        assert_eq!(
            (cs.concurrence, cs.eof, cs.discord, cs.lqu),
            (0.0, 0.0, 0.0, 0.0)
        );

        // half-strength coherence behaves as gamma = 1/2
        let half = XState::new(0.5, 0.5, num_complex::Complex64::new(0.25, 0.0), 0.5).unwrap();
        let cs = correlation_set(&half).unwrap();
        assert_abs_diff_eq!(cs.concurrence, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn monotone_decay_in_gamma() {
        for i in 1..20 {
            let p = probs(i as f64 / 20.0);
            let mut prev: Option<(f64, f64, f64, f64)> = None;
            for j in 0..=40 {
                let g = j as f64 / 40.0;
                let cur = (
                    concurrence_closed(&p, g).unwrap(),
                    eof_closed(&p, g).unwrap(),
                    discord_closed(&p, g).unwrap().0,
                    lqu_closed(&p, g).unwrap(),
                );
                if let Some(prev) = prev {
                    assert!(cur.0 <= prev.0 + 1e-12, "concurrence rose at P={p:?} g={g}");
                    assert!(cur.1 <= prev.1 + 1e-12, "eof rose at P={p:?} g={g}");
                    assert!(cur.2 <= prev.2 + 1e-12, "discord rose at P={p:?} g={g}");
                    assert!(cur.3 <= prev.3 + 1e-12, "lqu rose at P={p:?} g={g}");
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn endpoints_vanish() {
        for &p in &[0.0, 1.0] {
            for &g in &[0.0, 0.3, 1.0] {
                assert_eq!(concurrence_closed(&probs(p), g).unwrap(), 0.0);
                assert_eq!(eof_closed(&probs(p), g).unwrap(), 0.0);
                assert_eq!(discord_closed(&probs(p), g).unwrap().0, 0.0);
                assert_abs_diff_eq!(lqu_closed(&probs(p), g).unwrap(), 0.0, epsilon = 1e-15);
            }
        }
    }
}
