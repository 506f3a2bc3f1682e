//! Collapse and revival dynamics of exciton-polariton emission from a
//! semiconductor microcavity.
//!
//! A quantum well exciton mode coupled to a single cavity mode exchanges
//! energy at the Rabi rate, and weak exciton-exciton interaction dephases the
//! oscillation across number components so the emitted intensity collapses
//! and later revives. This crate evaluates the closed-form intensity of that
//! process for excitonic number and coherent initial states (photons in
//! vacuum), validates it against exact state-vector propagation in the
//! truncated two-mode Fock space, and extracts collapse/revival observables
//! from the resulting traces.
//!
//! Modules:
//! - [`model`]: parameters, Hopfield diagonalization, material constants
//! - [`closedform`]: analytic intensity evaluators and envelopes
//! - [`oracle`]: exact blockwise Fock-space propagation (secular and full)
//! - [`analysis`]: revival detection, carrier estimation, trace comparison
//! - [`wigner`]: rotation matrix elements used by both routes
//! - [`cli`]: scenario configs, figure presets, deterministic CSV emission
//!
//! The runnable examples under `examples/` walk through each capability; the
//! thin `polariton-revival` binary exposes the same machinery as
//! `simulate`, `compare`, `analyze` and `presets` subcommands.

pub mod analysis;
pub mod cli;
pub mod closedform;
pub mod model;
pub mod oracle;
pub mod state;
pub mod wigner;

pub use analysis::{
    carrier_frequency, collapse_time_estimate, compare_traces, detect_revivals, RevivalReport,
    TraceComparison,
};
pub use closedform::{
    cross_coherence_number, envelope_coherent, envelope_number, intensity_coherent,
    intensity_coherent_resonant, intensity_number, intensity_number_resonant, wigner_d_top_row,
};
pub use model::{
    build_polariton_basis, material_coefficients, MaterialInputs, ModelError, ModelParams,
    PolaritonBasis,
};
pub use oracle::{
    build_block, coherent_truncation, expectation_total_number, oracle_intensity, secular_spectrum,
    BlockMode, FockBlock, OracleError, PropagationPath, StateVector,
};
pub use state::{InitialState, IntensityTrace, Method, TimeGrid};
