use std::fmt;

use crate::quantities::Dimension;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: cannot use {found} where {expected} is required")]
    DimensionMismatch { expected: Dimension, found: Dimension },

    #[error("unknown unit `{0}`")]
    UnknownUnit(String),

    #[error("cannot parse quantity `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("repulsive effective trap: a01 = {a01:e} m must be smaller than a00 = {a00:e} m")]
    RepulsiveTrap { a01: f64, a00: f64 },

    #[error("no interaction: the collisional phase rate is zero")]
    NoInteraction,

    #[error("pair-energy oracle failed: {0}")]
    OracleFailure(OracleDiagnostics),

    #[error("scale equation integration failed at t = {t:e} s (step {step:e} s): {reason}")]
    Stiffness { t: f64, step: f64, reason: &'static str },

    #[error("grid propagation lost norm: drift {drift:e} exceeds {tolerance:e} after {steps} steps")]
    Discretization { drift: f64, tolerance: f64, steps: usize },

    #[error("phase overshoot during ramps: target {target} rad is below the ramp phase 2*phi_a = {ramp_phase} rad")]
    PhaseOvershoot { target: f64, ramp_phase: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Context reported when the bracketed pair-energy search cannot proceed.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleDiagnostics {
    pub scattering_parameter: f64,
    pub bracket: (f64, f64),
    pub residuals: (f64, f64),
    pub message: &'static str,
}

impl fmt::Display for OracleDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (a_s/a_rel = {:e}, nu bracket [{:e}, {:e}], residuals [{:e}, {:e}])",
            self.message, self.scattering_parameter, self.bracket.0, self.bracket.1, self.residuals.0, self.residuals.1
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
