//! Quantum-correlation measures for two-flavor neutrino oscillations under a
//! phase-damping channel.
//!
//! The crate maps the evolved flavor state onto an effective two-qubit
//! X-state, applies Lindblad-constrained dephasing, and evaluates four
//! correlation quantifiers in closed form — concurrence, entanglement of
//! formation, quantum discord and local quantum uncertainty — together with
//! their sensitivities to the oscillation and dephasing parameters.
//!
//! Module map:
//!
//! - [`oscillation`]: phase, amplitudes, probabilities, coherence
//! - [`channel`]: X-state construction, phase damping, Γ ↔ γ conversion
//! - [`correlations`]: the four closed-form measures
//! - [`oracle`]: convention-free 4×4 density-matrix validators and the
//!   randomized closed-form vs oracle sweeps
//! - [`sensitivity`]: analytic partials with finite-difference verification
//! - [`scan`]: experiment presets, baseline sweeps, deterministic output
//!
//! Sweeps and validation batches fan out over rayon when the `parallel`
//! feature (on by default) is enabled; outputs are byte-identical to the
//! sequential fallback.
//!
//! ```
//! use nuqc::{preset, PresetName, OscillationPoint};
//!
//! // MINOS-like point at the far detector
//! let p = preset(PresetName::Minos);
//! let point = OscillationPoint::new(735.0, 3.0)?;
//! let phi = nuqc::phase(&p.sector, &point);
//! let pure = nuqc::build_state(&nuqc::amplitudes(&p.sector, phi))?;
//!
//! // coherent propagation: LQU is the squared concurrence
//! let coherent = nuqc::correlation_set(&pure)?;
//! assert!((coherent.lqu - coherent.concurrence.powi(2)).abs() < 1e-12);
//!
//! // dephasing at the full Γ₉₀ bound suppresses every measure
//! let gamma = nuqc::benchmark_gamma(1.0, point.baseline_km());
//! let damped = nuqc::correlation_set(&nuqc::apply_dephasing(&pure, gamma)?)?;
//! assert!(damped.concurrence < coherent.concurrence);
//! assert!(damped.lqu < coherent.lqu);
//! # Ok::<(), nuqc::Error>(())
//! ```

pub mod channel;
pub mod correlations;
pub mod error;
mod exec;
pub mod oracle;
pub mod oscillation;
pub mod scan;
pub mod sensitivity;

pub use channel::{
    apply_dephasing, benchmark_gamma, build_state, gamma_from_lindblad, km_to_inverse_gev,
    LindbladSpec, XState, GAMMA_90_GEV, KM_IN_INVERSE_GEV,
};
pub use correlations::{
    binary_entropy, concurrence_closed, correlation_set, discord_closed, eof_closed, lqu_closed,
    CorrelationSet, DiscordBranch,
};
pub use error::{Error, Result};
pub use oscillation::{
    amplitudes, coherence, phase, probabilities, FlavorAmplitudes, MixingSector, OscillationPoint,
    TransitionProbabilities,
};
pub use scan::{
    emit, emit_to_path, gamma_table, preset, preset_with, sweep, sweep_serial, ExperimentPreset,
    KamlandAngleConvention, OutputFormat, PresetName, ScanConfig, SweepRecord,
};
pub use sensitivity::{Measure, OscParam, SensitivityReport};
