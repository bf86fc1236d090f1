use serde::Serialize;

use crate::dynamics::{ermakov_evolve, excitation_probability, RampSchedule, RampShape};
use crate::error::{Error, Result};

/// Shortest ramp time considered, s.
pub const DESIGN_GRID_MIN: f64 = 1e-4;
/// Longest ramp time considered, s.
pub const DESIGN_GRID_MAX: f64 = 1e2;
/// Ratio between neighbouring grid times.
pub const DESIGN_GRID_RATIO: f64 = 1.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RampDesign {
    /// s
    pub ramp_time: f64,
    pub excitation_probability: f64,
    /// False when no grid time met the bound; `ramp_time` is then the grid maximum.
    pub achieved: bool,
}

/// Smallest ramp time on a geometric grid whose excitation probability,
/// and that of the next two grid times, stays at or below `p_max`.
///
/// P_exc(t_a) oscillates, so a single crossing is not trusted.
pub fn design_ramp(omega_0: f64, omega_1: f64, p_max: f64, shape: RampShape) -> Result<RampDesign> {
    if !(p_max > 0.0 && p_max < 1.0) {
        return Err(Error::InvalidInput(format!("P_max must lie in (0, 1), got {p_max}")));
    }
    RampSchedule::new(omega_0, omega_1, DESIGN_GRID_MIN, shape)?;

    let grid = grid_times();
    let p_at = |t: f64| -> Result<f64> {
        let r = RampSchedule::new(omega_0, omega_1, t, shape)?;
        Ok(excitation_probability(&ermakov_evolve(&r, 2)?, r.omega_end))
    };

    let mut probs: Vec<f64> = Vec::with_capacity(grid.len());
    for (i, &t) in grid.iter().enumerate() {
        probs.push(p_at(t)?);
        if i >= 2 && probs[i - 2..=i].iter().all(|&p| p <= p_max) {
            return Ok(RampDesign { ramp_time: grid[i - 2], excitation_probability: probs[i - 2], achieved: true });
        }
    }
    let last = grid.len() - 1;
    Ok(RampDesign { ramp_time: grid[last], excitation_probability: probs[last], achieved: probs[last] <= p_max })
}

fn grid_times() -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let t = DESIGN_GRID_MIN * DESIGN_GRID_RATIO.powi(k);
        if t >= DESIGN_GRID_MAX {
            out.push(DESIGN_GRID_MAX);
            break;
        }
        out.push(t);
        k += 1;
    }
    out
}
