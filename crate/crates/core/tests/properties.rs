//! Property tests for the algebraic invariants of the oscillation, channel
//! and correlation layers.

use proptest::prelude::*;

use nuqc::channel::{apply_dephasing, build_state, XState};
use nuqc::correlations::{
    concurrence_closed, correlation_set, discord_closed, eof_closed, lqu_closed, DiscordBranch,
};
use nuqc::oscillation::{
    amplitudes, coherence, probabilities, MixingSector, TransitionProbabilities,
};

fn sector(theta: f64) -> MixingSector {
    MixingSector::new(theta, 1e-3, "prop").unwrap()
}

fn theta_range() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::FRAC_PI_2
}

fn phi_range() -> impl Strategy<Value = f64> {
    0.0..(4.0 * std::f64::consts::PI)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn amplitudes_stay_normalized(theta in theta_range(), phi in phi_range()) {
        let a = amplitudes(&sector(theta), phi);
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probabilities_equal_squared_amplitudes(theta in theta_range(), phi in phi_range()) {
        let s = sector(theta);
        let a = amplitudes(&s, phi);
        let p = probabilities(&s, phi);
        prop_assert!((p.p_survive - a.a_survive.norm_sqr()).abs() < 1e-12);
        prop_assert!((p.p_transition - a.a_transition.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn coherence_modulus_matches_probability_product(theta in theta_range(), phi in phi_range()) {
        let s = sector(theta);
        let p = probabilities(&s, phi);
        let rho23 = coherence(&s, phi);
        prop_assert!((rho23.norm_sqr() - p.p_survive * p.p_transition).abs() < 1e-12);
    }

    #[test]
    fn probabilities_are_pi_periodic(theta in theta_range(), phi in phi_range()) {
        let s = sector(theta);
        let a = probabilities(&s, phi);
        let b = probabilities(&s, phi + std::f64::consts::PI);
        prop_assert!((a.p_transition - b.p_transition).abs() < 1e-12);
        prop_assert!((a.p_survive - b.p_survive).abs() < 1e-12);
    }

    #[test]
    fn dephasing_preserves_trace_and_positivity(
        theta in theta_range(),
        phi in phi_range(),
        gamma in 0.0f64..=1.0,
    ) {
        let state = build_state(&amplitudes(&sector(theta), phi)).unwrap();
        let d = apply_dephasing(&state, gamma).unwrap();
        prop_assert_eq!(d.rho22().to_bits(), state.rho22().to_bits());
        prop_assert_eq!(d.rho33().to_bits(), state.rho33().to_bits());
        prop_assert!((d.rho22() + d.rho33() - 1.0).abs() < 1e-12);
        prop_assert!(d.rho23().norm_sqr() <= d.rho22() * d.rho33() + 1e-12);
        // round-trip through the validating constructor
        prop_assert!(XState::new(d.rho22(), d.rho33(), d.rho23(), d.gamma()).is_ok());
    }

    #[test]
    fn pure_state_lqu_is_squared_concurrence(theta in theta_range(), phi in phi_range()) {
        let s = sector(theta);
        let p = probabilities(&s, phi);
        let c = concurrence_closed(&p, 0.0).unwrap();
        let u = lqu_closed(&p, 0.0).unwrap();
        prop_assert!((u - c * c).abs() < 1e-12);
    }

    #[test]
    fn quadratic_branch_wins_at_gamma_zero(p in 0.0f64..=1.0) {
        let probs = TransitionProbabilities::from_transition(p).unwrap();
        let (q, branch) = discord_closed(&probs, 0.0).unwrap();
        prop_assert_eq!(branch, DiscordBranch::Quadratic);
        prop_assert!((q - 2.0 * p * (1.0 - p)).abs() < 1e-12);
    }

    #[test]
    fn measures_stay_in_unit_interval(
        theta in theta_range(),
        phi in phi_range(),
        gamma in 0.0f64..=1.0,
    ) {
        let state = apply_dephasing(
            &build_state(&amplitudes(&sector(theta), phi)).unwrap(),
            gamma,
        )
        .unwrap();
        let cs = correlation_set(&state).unwrap();
        for v in [cs.concurrence, cs.eof, cs.discord, cs.lqu] {
            prop_assert!((0.0..=1.0).contains(&v), "value {} out of range", v);
        }
    }

    #[test]
    fn measures_do_not_grow_under_extra_dephasing(
        theta in 0.05f64..1.5,
        phi in phi_range(),
        gamma in 0.0f64..0.99,
        extra in 0.0f64..=1.0,
    ) {
        let base = apply_dephasing(
            &build_state(&amplitudes(&sector(theta), phi)).unwrap(),
            gamma,
        )
        .unwrap();
        let more = apply_dephasing(&base, extra).unwrap();
        let a = correlation_set(&base).unwrap();
        let b = correlation_set(&more).unwrap();
        prop_assert!(b.concurrence <= a.concurrence + 1e-12);
        prop_assert!(b.eof <= a.eof + 1e-12);
        prop_assert!(b.discord <= a.discord + 1e-12);
        prop_assert!(b.lqu <= a.lqu + 1e-12);
    }

    #[test]
    fn eof_monotone_in_concurrence(p1 in 0.0f64..=0.5, p2 in 0.0f64..=0.5, g in 0.0f64..=1.0) {
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let a = TransitionProbabilities::from_transition(lo).unwrap();
        let b = TransitionProbabilities::from_transition(hi).unwrap();
        // on [0, 1/2] the concurrence grows with P, so EOF must too
        prop_assert!(
            eof_closed(&a, g).unwrap() <= eof_closed(&b, g).unwrap() + 1e-12
        );
    }
}
