//! Compression and decompression of the effective trap.
//!
//! A ramp is a trajectory ω̃(t) between two effective frequencies. The
//! exact width evolution of the stored wave packet follows from the scale
//! equation in [`ermakov`]; [`tdse`] propagates the same problem on a grid
//! as an independent check, and [`phase`] integrates the collisional phase
//! picked up along the way.

pub mod ermakov;
pub mod phase;
pub mod tdse;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use ermakov::{
    axis_survival, ermakov_evolve, excitation_probability, run_ramp, RampResult, ScaleSample, ScaleTrajectory,
};
pub use phase::{phase_accumulate, PhaseSegment};
pub use tdse::{tdse_oracle, tdse_trace, TdseSettings};

/// Default number of quadrature intervals for ramp phases.
pub const DEFAULT_SAMPLE_COUNT: usize = 10_000;

/// Interpolation law between the start and end frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RampShape {
    /// ω̃ linear in time.
    Linear,
    /// ω̃ geometric in time (log ω̃ linear).
    Exponential,
    /// log ω̃ follows the quintic smoothstep 10u³ − 15u⁴ + 6u⁵, so ω̃ has
    /// zero first and second derivative at both ends.
    Smoothstep,
}

impl RampShape {
    pub const ALL: [RampShape; 3] = [RampShape::Linear, RampShape::Exponential, RampShape::Smoothstep];

    pub fn name(self) -> &'static str {
        match self {
            RampShape::Linear => "linear",
            RampShape::Exponential => "exponential",
            RampShape::Smoothstep => "smoothstep",
        }
    }

    /// Frequency at normalized time `u` ∈ [0, 1].
    fn interpolate(self, start: f64, end: f64, u: f64) -> f64 {
        match self {
            RampShape::Linear => start + (end - start) * u,
            RampShape::Exponential => start * (end / start).powf(u),
            RampShape::Smoothstep => {
                let s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
                start * (end / start).powf(s)
            }
        }
    }
}

impl fmt::Display for RampShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RampShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(RampShape::Linear),
            "exponential" | "exp" => Ok(RampShape::Exponential),
            "smoothstep" | "smooth" => Ok(RampShape::Smoothstep),
            other => Err(Error::InvalidInput(format!(
                "unknown ramp shape `{other}` (expected linear, exponential or smoothstep)"
            ))),
        }
    }
}

/// Effective-frequency trajectory over `[0, duration]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RampSchedule {
    /// rad/s
    pub omega_start: f64,
    /// rad/s
    pub omega_end: f64,
    /// s
    pub duration: f64,
    pub shape: RampShape,
    /// Quadrature intervals for the ramp phase.
    pub sample_count: usize,
}

impl RampSchedule {
    pub fn new(omega_start: f64, omega_end: f64, duration: f64, shape: RampShape) -> Result<Self> {
        let r = Self { omega_start, omega_end, duration, shape, sample_count: DEFAULT_SAMPLE_COUNT };
        r.validate()?;
        Ok(r)
    }

    /// Constant frequency for `duration`.
    pub fn constant(omega: f64, duration: f64) -> Result<Self> {
        Self::new(omega, omega, duration, RampShape::Linear)
    }

    pub fn with_sample_count(mut self, n: usize) -> Result<Self> {
        self.sample_count = n;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("start", self.omega_start), ("end", self.omega_end)] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidInput(format!("ramp {name} frequency must be positive, got {w}")));
            }
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return Err(Error::InvalidInput(format!("ramp duration must be non-negative, got {}", self.duration)));
        }
        if self.sample_count < 2 {
            return Err(Error::InvalidInput("ramp needs at least 2 quadrature samples".into()));
        }
        Ok(())
    }

    /// ω̃(t); clamped to the endpoints outside `[0, duration]`.
    pub fn omega_at(&self, t: f64) -> f64 {
        if self.duration == 0.0 || t >= self.duration {
            return self.omega_end;
        }
        if t <= 0.0 {
            return self.omega_start;
        }
        self.shape.interpolate(self.omega_start, self.omega_end, t / self.duration)
    }

    /// The time-reversed ramp (decompression for a compression ramp).
    pub fn reversed(&self) -> Self {
        Self { omega_start: self.omega_end, omega_end: self.omega_start, ..*self }
    }

    pub fn max_omega(&self) -> f64 {
        self.omega_start.max(self.omega_end)
    }

    pub fn is_constant(&self) -> bool {
        self.omega_start == self.omega_end
    }
}
