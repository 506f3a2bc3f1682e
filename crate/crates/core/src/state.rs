//! Initial states, time grids and intensity traces shared by the evaluators,
//! the oracle and the CLI.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::model::ModelParams;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("invalid initial state: {0}")]
    InvalidState(String),
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
}

/// Initial excitonic state; the cavity mode always starts in vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// Exciton number state |N⟩.
    Number { n: u64 },
    /// Excitonic coherent state with mean occupation `nbar` and phase `phi`
    /// (the phase never reaches any observable but is carried for
    /// completeness; it is stored reduced to [0, 2π)).
    Coherent { nbar: f64, phi: f64 },
}

impl InitialState {
    pub fn number(n: u64) -> Self {
        InitialState::Number { n }
    }

    pub fn coherent(nbar: f64, phi: f64) -> Result<Self, StateError> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(StateError::InvalidState(format!(
                "nbar must be finite and >= 0, got {nbar}"
            )));
        }
        if !phi.is_finite() {
            return Err(StateError::InvalidState(format!(
                "phi must be finite, got {phi}"
            )));
        }
        Ok(InitialState::Coherent {
            nbar,
            phi: phi.rem_euclid(TAU),
        })
    }

    /// Mean initial excitation (N or ⟨N⟩).
    pub fn excitation(&self) -> f64 {
        match self {
            InitialState::Number { n } => *n as f64,
            InitialState::Coherent { nbar, .. } => *nbar,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            InitialState::Number { .. } => "number",
            InitialState::Coherent { .. } => "coherent",
        }
    }
}

/// Uniform grid of `n_samples` times on [0, t_end] inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_end: f64,
    pub n_samples: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, n_samples: usize) -> Result<Self, StateError> {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(StateError::InvalidGrid(format!(
                "t_end must be > 0, got {t_end}"
            )));
        }
        if n_samples < 2 {
            return Err(StateError::InvalidGrid(format!(
                "n_samples must be >= 2, got {n_samples}"
            )));
        }
        Ok(Self { t_end, n_samples })
    }

    pub fn spacing(&self) -> f64 {
        self.t_end / (self.n_samples - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let denom = (self.n_samples - 1) as f64;
        (0..self.n_samples)
            .map(|k| self.t_end * k as f64 / denom)
            .collect()
    }
}

/// How a trace was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedGeneral,
    ClosedResonant,
    OracleSecular,
    OracleFull,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedGeneral => "closed_general",
            Method::ClosedResonant => "closed_resonant",
            Method::OracleSecular => "oracle_secular",
            Method::OracleFull => "oracle_full",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "closed_general" => Some(Method::ClosedGeneral),
            "closed_resonant" => Some(Method::ClosedResonant),
            "oracle_secular" => Some(Method::OracleSecular),
            "oracle_full" => Some(Method::OracleFull),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Time-resolved cavity photon number ⟨a†a⟩(t) with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityTrace {
    pub times: Vec<f64>,
    pub intensity: Vec<f64>,
    pub method: Method,
    pub state: InitialState,
    /// Parameters that generated the trace (also used by the analysis module
    /// to compensate the known cross-coherence decay when locating revivals).
    pub params: ModelParams,
    /// Canonical textual digest of `params`.
    pub params_digest: String,
    /// Set when the excitation pushes past the weak-nonlinearity advisory
    /// (excitation · max(A,B) > 0.2 g). Informational only.
    pub weak_nonlinearity_flagged: bool,
    /// Fock truncation used for coherent-state oracle runs, with whether the
    /// truncated amplitudes were renormalized.
    pub truncation: Option<Truncation>,
}

/// Coherent-state truncation provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub n_max: u64,
    pub renormalized: bool,
}

impl IntensityTrace {
    pub fn new(
        times: Vec<f64>,
        intensity: Vec<f64>,
        method: Method,
        state: InitialState,
        params: ModelParams,
    ) -> Self {
        debug_assert_eq!(times.len(), intensity.len());
        let digest = params.digest();
        let flagged = !params.weakly_nonlinear(state.excitation());
        IntensityTrace {
            times,
            intensity,
            method,
            state,
            params,
            params_digest: digest,
            weak_nonlinearity_flagged: flagged,
            truncation: None,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        if self.times.len() > 1 {
            self.times[1] - self.times[0]
        } else {
            0.0
        }
    }
}
