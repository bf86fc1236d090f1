//! Scale-equation treatment of a Gaussian in a time-dependent harmonic trap.
//!
//! A state that starts in the ground state of frequency ω₀ stays Gaussian,
//! ψ(x, t) ∝ b^(-1/2) φ₀(x/b) exp(i m ḃ x² / (2ħ b)), with
//! b̈ + ω̃(t)² b = ω₀² / b³, b(0) = 1, ḃ(0) = 0. The equation is integrated
//! in the dimensionless time τ = ω₀ t.

use serde::Serialize;

use super::phase::{phase_accumulate, PhaseSegment};
use super::RampSchedule;
use crate::error::{Error, Result};
use crate::medium::EffectiveMedium;
use crate::ode::Dopri5;
use crate::quantities::Constants;

/// Relative local tolerance of the scale-equation integration.
pub const SCALE_RTOL: f64 = 1e-10;

/// Default number of trajectory samples returned by [`ermakov_evolve`].
pub const DEFAULT_TRAJECTORY_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleSample {
    /// s
    pub t: f64,
    /// Instantaneous ω̃(t), rad/s.
    pub omega: f64,
    pub b: f64,
    /// db/dt, 1/s
    pub b_dot: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleTrajectory {
    /// Frequency whose ground state the evolution starts from, rad/s.
    pub omega_ref: f64,
    pub samples: Vec<ScaleSample>,
}

impl ScaleTrajectory {
    pub fn last(&self) -> &ScaleSample {
        self.samples.last().expect("trajectory has at least one sample")
    }

    /// 1 − survival³ against the instantaneous ground state at each sample.
    pub fn excitation_so_far(&self) -> Vec<f64> {
        self.samples.iter().map(|s| 1.0 - axis_survival(self.omega_ref, s.b, s.b_dot, s.omega).powi(3)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RampResult {
    pub excitation_probability: f64,
    /// Collisional phase accumulated along the ramp, rad.
    pub adiabatic_phase: f64,
    pub scale_trajectory: ScaleTrajectory,
}

/// Integrate the scale equation over the ramp, sampling `points` equally
/// spaced times (a zero-duration ramp yields a single sample).
pub fn ermakov_evolve(r: &RampSchedule, points: usize) -> Result<ScaleTrajectory> {
    ermakov_evolve_with(r, points, SCALE_RTOL)
}

pub(crate) fn ermakov_evolve_with(r: &RampSchedule, points: usize, rtol: f64) -> Result<ScaleTrajectory> {
    r.validate()?;
    let w0 = r.omega_start;
    if r.duration == 0.0 {
        return Ok(ScaleTrajectory {
            omega_ref: w0,
            samples: vec![ScaleSample { t: 0.0, omega: r.omega_end, b: 1.0, b_dot: 0.0 }],
        });
    }
    if points < 2 {
        return Err(Error::InvalidInput("a finite ramp needs at least 2 trajectory points".into()));
    }

    let tau_end = w0 * r.duration;
    let rhs = |tau: f64, y: &[f64; 2]| {
        let w = r.omega_at(tau / w0) / w0;
        [y[1], -w * w * y[0] + 1.0 / y[0].powi(3)]
    };
    let solver = Dopri5::new(rtol, rtol * 1e-2);

    let mut samples = Vec::with_capacity(points);
    samples.push(ScaleSample { t: 0.0, omega: r.omega_start, b: 1.0, b_dot: 0.0 });
    let mut y = [1.0, 0.0];
    let mut tau = 0.0;
    let mut step = 0.0;
    for k in 1..points {
        let tau_next = if k == points - 1 { tau_end } else { tau_end * k as f64 / (points - 1) as f64 };
        y = solver.advance(&rhs, tau, y, tau_next, &mut step).map_err(|e| Error::Stiffness {
            t: e.t / w0,
            step: e.step / w0,
            reason: e.reason,
        })?;
        tau = tau_next;
        let t = tau / w0;
        samples.push(ScaleSample { t, omega: r.omega_at(t), b: y[0], b_dot: y[1] * w0 });
    }
    Ok(ScaleTrajectory { omega_ref: w0, samples })
}

/// Per-axis probability that the scaled Gaussian is in the ground state of
/// frequency `omega_target`: 2√(Re α · β)/|α + β| with α = ω_ref/b² − iḃ/b
/// and β = ω_target (both in units of m/ħ).
pub fn axis_survival(omega_ref: f64, b: f64, b_dot: f64, omega_target: f64) -> f64 {
    let alpha_re = omega_ref / (b * b);
    let alpha_im = -b_dot / b;
    let sum_re = alpha_re + omega_target;
    let modulus = sum_re.hypot(alpha_im);
    (2.0 * (alpha_re * omega_target).sqrt() / modulus).min(1.0)
}

/// Excitation probability of the isotropic 3D state at the end of the
/// trajectory, relative to the ground state of `omega_end`.
pub fn excitation_probability(trajectory: &ScaleTrajectory, omega_end: f64) -> f64 {
    let end = trajectory.last();
    let survival = axis_survival(trajectory.omega_ref, end.b, end.b_dot, omega_end);
    (1.0 - survival.powi(3)).clamp(0.0, 1.0)
}

/// Scale trajectory, excitation probability and ramp phase in one go.
pub fn run_ramp(med: &EffectiveMedium, r: &RampSchedule, c: &Constants, points: usize) -> Result<RampResult> {
    let scale_trajectory = ermakov_evolve(r, points)?;
    Ok(RampResult {
        excitation_probability: excitation_probability(&scale_trajectory, r.omega_end),
        adiabatic_phase: phase_accumulate(med, &PhaseSegment::Ramp(*r), c)?,
        scale_trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::RampShape;
    use crate::quantities::hz;

    fn p_exc(r: &RampSchedule) -> f64 {
        excitation_probability(&ermakov_evolve(r, 2).unwrap(), r.omega_end)
    }

    #[test]
    fn constant_ramp_is_a_fixed_point() {
        let r = RampSchedule::constant(hz(10.0), 0.5).unwrap();
        let traj = ermakov_evolve(&r, 51).unwrap();
        for s in &traj.samples {
            assert!((s.b - 1.0).abs() < 1e-12 && s.b_dot.abs() < 1e-10, "{s:?}");
        }
        assert!(excitation_probability(&traj, r.omega_end) < 1e-10);
    }

    #[test]
    fn sudden_quench_matches_gaussian_overlap() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 0.0, RampShape::Smoothstep).unwrap();
        let traj = ermakov_evolve(&r, 100).unwrap();
        assert_eq!(traj.samples.len(), 1);
        assert_eq!((traj.last().b, traj.last().b_dot), (1.0, 0.0));
        let axis = axis_survival(hz(10.0), 1.0, 0.0, hz(80.0));
        assert!((axis - 0.6285).abs() < 1e-4, "{axis}");
        let p = excitation_probability(&traj, r.omega_end);
        assert!((p - 0.752).abs() < 1e-3, "{p}");
    }

    #[test]
    fn very_short_ramp_barely_moves() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 1e-7, RampShape::Linear).unwrap();
        let end = *ermakov_evolve(&r, 2).unwrap().last();
        assert!((end.b - 1.0).abs() < 1e-6 && end.b_dot.abs() < 1e-2, "{end:?}");
    }

    #[test]
    fn adiabatic_limit_follows_instantaneous_width() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 10.0, RampShape::Smoothstep).unwrap();
        let traj = ermakov_evolve(&r, 2001).unwrap();
        let spread = traj.samples.iter().map(|s| (s.b - (hz(10.0) / s.omega).sqrt()).abs()).fold(0.0, f64::max);
        assert!(spread < 1e-4, "{spread}");
        let end = traj.last();
        assert!((end.b - (10.0f64 / 80.0).sqrt()).abs() < 1e-6, "{end:?}");
    }

    #[test]
    fn paper_ramp_is_adiabatic_enough() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 0.14, RampShape::Smoothstep).unwrap();
        let p = p_exc(&r);
        assert!(p < 0.002, "{p}");
        assert!(p > 0.0);
    }

    #[test]
    fn halving_tolerance_does_not_move_result() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 0.14, RampShape::Linear).unwrap();
        let coarse = ermakov_evolve_with(&r, 2, SCALE_RTOL).unwrap();
        let fine = ermakov_evolve_with(&r, 2, SCALE_RTOL / 64.0).unwrap();
        let d = excitation_probability(&coarse, r.omega_end) - excitation_probability(&fine, r.omega_end);
        assert!(d.abs() < 1e-6, "{d}");
    }

    #[test]
    fn long_smoothstep_is_deeply_adiabatic() {
        let r = RampSchedule::new(hz(10.0), hz(80.0), 2.0, RampShape::Smoothstep).unwrap();
        assert!(p_exc(&r) < 1e-6);
    }

    #[test]
    fn frequency_scale_covariance() {
        for shape in RampShape::ALL {
            let r = RampSchedule::new(hz(10.0), hz(80.0), 0.1, shape).unwrap();
            let base = p_exc(&r);
            for k in [0.5, 3.0, 17.0] {
                let scaled = RampSchedule::new(k * hz(10.0), k * hz(80.0), 0.1 / k, shape).unwrap();
                assert!((p_exc(&scaled) - base).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn probability_stays_in_unit_interval() {
        for shape in RampShape::ALL {
            for ta in [0.0, 1e-3, 0.02, 0.07, 0.3] {
                let p = p_exc(&RampSchedule::new(hz(80.0), hz(5.0), ta, shape).unwrap());
                assert!((0.0..=1.0).contains(&p), "{p}");
            }
        }
    }
}
