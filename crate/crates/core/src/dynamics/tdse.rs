//! Grid propagation of one trap axis, used to check the scale-equation
//! excitation probabilities.
//!
//! Units: lengths in √(ħ/(mω_start)), times in 1/ω_start. The Hamiltonian
//! −½∂ₓ² + ½w(τ)²x² is discretized with the fourth-order five-point
//! Laplacian on a uniform grid with hard walls and stepped with
//! Crank–Nicolson at the interval midpoint. Start and reference states are
//! the discrete ground states of the same operator, so the spatial
//! truncation error cancels to leading order.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::RampSchedule;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdseSettings {
    /// Grid half-width in units of the widest ground-state length.
    pub half_width: f64,
    /// Grid points per narrowest ground-state length.
    pub points_per_width: f64,
    /// Crank–Nicolson steps per period of the largest frequency.
    pub steps_per_period: f64,
    /// Allowed |‖ψ‖² − 1| at the end of the run.
    pub norm_tolerance: f64,
}

impl Default for TdseSettings {
    fn default() -> Self {
        Self { half_width: 10.0, points_per_width: 25.0, steps_per_period: 400.0, norm_tolerance: 1e-8 }
    }
}

impl TdseSettings {
    fn validate(&self) -> Result<()> {
        if !(self.half_width >= 4.0) {
            return Err(Error::InvalidInput(format!(
                "grid must span at least 8 ground-state widths, half-width is {}",
                self.half_width
            )));
        }
        if !(self.steps_per_period >= 100.0) {
            return Err(Error::InvalidInput(format!(
                "time step must resolve the trap period by at least 100 steps, got {}",
                self.steps_per_period
            )));
        }
        if !(self.points_per_width >= 4.0) {
            return Err(Error::InvalidInput(format!(
                "grid must resolve the ground state by at least 4 points, got {}",
                self.points_per_width
            )));
        }
        Ok(())
    }
}

/// 3D excitation probability at the end of the ramp, from grid propagation.
pub fn tdse_oracle(r: &RampSchedule, settings: &TdseSettings) -> Result<f64> {
    let trace = tdse_trace(r, settings, &[r.duration])?;
    Ok(trace[0])
}

/// 3D excitation probability relative to the instantaneous ground state at
/// each of `times` (seconds, ascending, within the ramp).
pub fn tdse_trace(r: &RampSchedule, settings: &TdseSettings, times: &[f64]) -> Result<Vec<f64>> {
    r.validate()?;
    settings.validate()?;
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidInput("trace times must be ascending".into()));
    }
    if times.iter().any(|&t| !(0.0..=r.duration).contains(&t)) {
        return Err(Error::InvalidInput("trace times must lie within the ramp".into()));
    }

    let w0 = r.omega_start;
    let w_of = |tau: f64| r.omega_at(tau / w0) / w0;
    let grid = Grid::new(r, settings);

    let mut psi = grid.ground_state(1.0);
    let mut work = Workspace::new(grid.len());
    let period = 2.0 * PI / (r.max_omega() / w0);
    let dt_max = period / settings.steps_per_period;

    let mut out = Vec::with_capacity(times.len());
    let mut tau = 0.0;
    let mut steps = 0usize;
    for &t in times {
        let tau_target = t * w0;
        let span = tau_target - tau;
        let n = (span / dt_max).ceil() as usize;
        if n > 0 {
            let dt = span / n as f64;
            for k in 0..n {
                let w = w_of(tau + (k as f64 + 0.5) * dt);
                grid.crank_nicolson_step(&mut psi, w, dt, &mut work);
            }
            steps += n;
        }
        tau = tau_target;
        // a zero-length ramp is a sudden quench onto the final trap
        let w_now = if r.duration == 0.0 { r.omega_end / w0 } else { w_of(tau) };
        let reference = grid.ground_state(w_now);
        let overlap: Complex64 = reference.iter().zip(&psi).map(|(g, p)| g.conj() * p).sum();
        out.push((1.0 - overlap.norm_sqr().powi(3)).clamp(0.0, 1.0));
    }

    let norm: f64 = psi.iter().map(|p| p.norm_sqr()).sum();
    let drift = (norm - 1.0).abs();
    if drift > settings.norm_tolerance {
        return Err(Error::Discretization { drift, tolerance: settings.norm_tolerance, steps });
    }
    Ok(out)
}

struct Grid {
    x: Vec<f64>,
    /// −½·(−30/12)/h² and the two off-diagonal kinetic couplings.
    kin_diag: f64,
    kin_off1: f64,
    kin_off2: f64,
}

struct Workspace {
    diag: Vec<Complex64>,
    up1: Vec<Complex64>,
    up2: Vec<Complex64>,
    low1: Vec<Complex64>,
    rhs: Vec<Complex64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); n];
        Self { diag: z.clone(), up1: z.clone(), up2: z.clone(), low1: z.clone(), rhs: z }
    }
}

impl Grid {
    fn new(r: &RampSchedule, settings: &TdseSettings) -> Self {
        let w_min = r.omega_start.min(r.omega_end) / r.omega_start;
        let w_max = r.max_omega() / r.omega_start;
        let widest = 1.0 / w_min.sqrt();
        let narrowest = 1.0 / w_max.sqrt();
        let half = settings.half_width * widest;
        let h_target = narrowest / settings.points_per_width;
        let cells = (2.0 * half / h_target).ceil() as usize;
        let cells = cells + cells % 2;
        let h = 2.0 * half / cells as f64;
        // walls sit at ±half; unknowns are the interior nodes
        let x: Vec<f64> = (1..cells).map(|i| -half + h * i as f64).collect();
        let inv = 1.0 / (12.0 * h * h);
        Self { x, kin_diag: 0.5 * 30.0 * inv, kin_off1: -0.5 * 16.0 * inv, kin_off2: 0.5 * inv }
    }

    fn len(&self) -> usize {
        self.x.len()
    }

    fn potential_diag(&self, w: f64, i: usize) -> f64 {
        self.kin_diag + 0.5 * w * w * self.x[i] * self.x[i]
    }

    /// Normalized discrete ground state of H(w), by shifted inverse iteration.
    fn ground_state(&self, w: f64) -> Vec<Complex64> {
        let n = self.len();
        let shift = 0.4 * w;
        let mut v: Vec<Complex64> = self.x.iter().map(|&x| Complex64::new((-0.5 * w * x * x).exp(), 0.0)).collect();
        normalize(&mut v);
        let mut work = Workspace::new(n);
        let one = Complex64::new(1.0, 0.0);
        for _ in 0..200 {
            for i in 0..n {
                work.diag[i] = one * (self.potential_diag(w, i) - shift);
            }
            work.rhs.copy_from_slice(&v);
            let off1 = one * self.kin_off1;
            let off2 = one * self.kin_off2;
            solve_penta(&mut work, off1, off2);
            let mut next = work.rhs.clone();
            normalize(&mut next);
            // fix the sign convention so successive iterates are comparable
            let centre = next[n / 2];
            if centre.re < 0.0 {
                next.iter_mut().for_each(|c| *c = -*c);
            }
            let change: f64 = next.iter().zip(&v).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            v = next;
            if change < 1e-14 {
                break;
            }
        }
        v
    }

    /// (1 + i dt H/2) ψ' = (1 − i dt H/2) ψ
    fn crank_nicolson_step(&self, psi: &mut [Complex64], w: f64, dt: f64, work: &mut Workspace) {
        let n = self.len();
        let half = Complex64::new(0.0, 0.5 * dt);
        let o1 = half * self.kin_off1;
        let o2 = half * self.kin_off2;
        for i in 0..n {
            let d = half * self.potential_diag(w, i);
            let mut acc = (Complex64::new(1.0, 0.0) - d) * psi[i];
            if i >= 1 {
                acc -= o1 * psi[i - 1];
            }
            if i + 1 < n {
                acc -= o1 * psi[i + 1];
            }
            if i >= 2 {
                acc -= o2 * psi[i - 2];
            }
            if i + 2 < n {
                acc -= o2 * psi[i + 2];
            }
            work.rhs[i] = acc;
            work.diag[i] = Complex64::new(1.0, 0.0) + d;
        }
        solve_penta(work, o1, o2);
        psi.copy_from_slice(&work.rhs);
    }
}

/// Solve the symmetric pentadiagonal system with diagonal `work.diag` and
/// constant off-diagonals `o1` (distance 1) and `o2` (distance 2) by banded
/// elimination without pivoting. The solution replaces `work.rhs`.
///
/// Both uses have a positive-definite Hermitian part (SPD for the
/// inverse iteration, identity for Crank–Nicolson), for which elimination
/// without pivoting is stable.
fn solve_penta(work: &mut Workspace, o1: Complex64, o2: Complex64) {
    let n = work.diag.len();
    let Workspace { diag, up1, up2, low1, rhs } = work;
    for i in 0..n {
        up1[i] = o1;
        up2[i] = o2;
        low1[i] = o1;
    }
    for i in 0..n {
        let pivot = diag[i];
        if i + 1 < n {
            let m = low1[i + 1] / pivot;
            diag[i + 1] -= m * up1[i];
            if i + 2 < n {
                up1[i + 1] -= m * up2[i];
            }
            rhs[i + 1] = rhs[i + 1] - m * rhs[i];
        }
        if i + 2 < n {
            let m = o2 / pivot;
            low1[i + 2] -= m * up1[i];
            diag[i + 2] -= m * up2[i];
            rhs[i + 2] = rhs[i + 2] - m * rhs[i];
        }
    }
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= up1[i] * rhs[i + 1];
        }
        if i + 2 < n {
            acc -= up2[i] * rhs[i + 2];
        }
        rhs[i] = acc / diag[i];
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|c| *c /= norm);
}
