//! Collisional phase φ = ∫ ΔE(ω̃(t))/ħ dt along a trap schedule.

use serde::Serialize;

use super::RampSchedule;
use crate::error::{Error, Result};
use crate::medium::EffectiveMedium;
use crate::quantities::Constants;
use crate::twobody::shift_at;

/// Relative convergence target of the ramp quadrature.
pub const PHASE_RTOL: f64 = 1e-8;

const MAX_INTERVALS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseSegment {
    /// The wave packet follows the instantaneous ground state of the ramp.
    Ramp(RampSchedule),
    /// Fixed effective frequency (rad/s) for a duration (s).
    Hold { omega: f64, duration: f64 },
}

pub fn phase_accumulate(med: &EffectiveMedium, segment: &PhaseSegment, c: &Constants) -> Result<f64> {
    match *segment {
        PhaseSegment::Hold { omega, duration } => {
            if !(omega > 0.0) || !(duration >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "hold needs a positive frequency and non-negative duration, got {omega} rad/s, {duration} s"
                )));
            }
            Ok(shift_at(med, omega, c) * duration / c.hbar)
        }
        PhaseSegment::Ramp(r) => {
            r.validate()?;
            if r.duration == 0.0 || med.ubar12 == 0.0 {
                return Ok(0.0);
            }
            // ΔE ∝ ω̃^(3/2): integrate the dimensionless profile once and rescale.
            let w_ref = r.omega_start;
            let profile = |t: f64| (r.omega_at(t) / w_ref).powf(1.5);
            let integral = simpson_converged(profile, r.duration, r.sample_count)?;
            Ok(shift_at(med, w_ref, c) / c.hbar * integral)
        }
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, length: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = length / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for k in 1..n {
        let v = f(h * k as f64);
        if k % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(length))
}

/// Composite Simpson, doubling the interval count until two successive
/// estimates agree to [`PHASE_RTOL`], then Richardson-corrected.
fn simpson_converged<F: Fn(f64) -> f64>(f: F, length: f64, intervals: usize) -> Result<f64> {
    let mut n = intervals.max(2);
    let mut coarse = simpson(&f, length, n);
    loop {
        n *= 2;
        let fine = simpson(&f, length, n);
        let delta = fine - coarse;
        if delta.abs() <= PHASE_RTOL * fine.abs() {
            return Ok(fine + delta / 15.0);
        }
        if n >= MAX_INTERVALS {
            return Err(Error::InvalidInput(format!("ramp phase quadrature did not converge with {n} intervals")));
        }
        coarse = fine;
    }
}
