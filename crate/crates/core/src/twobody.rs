//! Two stored excitations in the effective trap.
//!
//! The pair separates into a centre-of-mass part that stays in the trap
//! ground state and a relative part `r = (x1 - x2)/√2` of mass m with a
//! contact coupling ū12. To first order the relative ground state is shifted
//! by ΔE = ū12·s⁻³; [`exact_pair_energy`] solves the regularized contact
//! problem exactly and serves as the oracle for that first-order result.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, OracleDiagnostics, Result};
use crate::medium::{real_trap_frequency, EffectiveMedium, ScatteringSet};
use crate::quantities::Constants;

/// s / l for a Gaussian ground state, √(π / (8 ln 2)).
pub fn scale_per_fwhm() -> f64 {
    (PI / (8.0 * 2f64.ln())).sqrt()
}

/// Geometry of the spin-wave ground state in the effective trap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapState {
    /// Bare trap frequency implied by κ, rad/s.
    pub omega: f64,
    /// Effective trap frequency, rad/s.
    pub omega_tilde: f64,
    /// Ground-state scale √(πħ/(mω̃)), m.
    pub s: f64,
    /// Full width at half maximum of the ground-state density, m.
    pub l: f64,
}

pub fn trap_state_from_effective(omega_tilde: f64, s: &ScatteringSet, c: &Constants) -> Result<TrapState> {
    if !(omega_tilde > 0.0 && omega_tilde.is_finite()) {
        return Err(Error::InvalidInput(format!("effective trap frequency must be positive, got {omega_tilde}")));
    }
    let scale = (PI * c.hbar / (c.atom_mass * omega_tilde)).sqrt();
    Ok(TrapState { omega: real_trap_frequency(omega_tilde, s)?, omega_tilde, s: scale, l: scale / scale_per_fwhm() })
}

/// Inverse of [`trap_state_from_effective`]: the effective frequency whose
/// ground state has FWHM `l`.
pub fn trap_state_from_fwhm(l: f64, s: &ScatteringSet, c: &Constants) -> Result<TrapState> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidInput(format!("ground-state width must be positive, got {l}")));
    }
    let scale = scale_per_fwhm() * l;
    let omega_tilde = PI * c.hbar / (c.atom_mass * scale * scale);
    trap_state_from_effective(omega_tilde, s, c)
}

/// First-order collisional shift and the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftResult {
    /// J
    pub delta_e: f64,
    /// ΔE/ħ, rad/s
    pub phase_rate: f64,
    /// ΔE/(ħω̃); the size of the admixture of excited relative states.
    pub fidelity_metric: f64,
}

/// ΔE at effective frequency `omega_tilde` without building a [`TrapState`].
pub fn shift_at(med: &EffectiveMedium, omega_tilde: f64, c: &Constants) -> f64 {
    let s = (PI * c.hbar / (c.atom_mass * omega_tilde)).sqrt();
    med.ubar12 / s.powi(3)
}

pub fn energy_shift(med: &EffectiveMedium, t: &TrapState, c: &Constants) -> ShiftResult {
    let delta_e = med.ubar12 / t.s.powi(3);
    ShiftResult { delta_e, phase_rate: delta_e / c.hbar, fidelity_metric: delta_e / (c.hbar * t.omega_tilde) }
}

/// Hold time needed to accumulate `target_phase` at a constant shift.
pub fn time_for_phase(target_phase: f64, shift: &ShiftResult) -> Result<f64> {
    if shift.phase_rate == 0.0 {
        return Err(Error::NoInteraction);
    }
    if shift.phase_rate < 0.0 || !shift.phase_rate.is_finite() {
        return Err(Error::InvalidInput(format!("phase rate must be positive, got {} rad/s", shift.phase_rate)));
    }
    if !(target_phase >= 0.0 && target_phase.is_finite()) {
        return Err(Error::InvalidInput(format!("target phase must be non-negative, got {target_phase}")));
    }
    Ok(target_phase / shift.phase_rate)
}

/// Largest |a_s/a_rel| accepted by [`exact_pair_energy`].
pub const PERTURBATIVE_BRANCH_GUARD: f64 = 0.5;

/// Exact energy of the relative-motion ground branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactPairEnergy {
    /// Relative-motion energy (2ν + 3/2)ħω̃, J.
    pub energy: f64,
    /// a_s/a_rel with a_s = m·ū12/(2πħ²) and a_rel = √(ħ/(mω̃)).
    pub scattering_parameter: f64,
    pub nu: f64,
}

impl ExactPairEnergy {
    /// Energy above the noninteracting value (3/2)ħω̃.
    pub fn shift(&self, t: &TrapState, c: &Constants) -> f64 {
        self.energy - 1.5 * c.hbar * t.omega_tilde
    }
}

/// a_s/a_rel for the relative-coordinate problem.
pub fn scattering_parameter(med: &EffectiveMedium, t: &TrapState, c: &Constants) -> f64 {
    let a_s = c.atom_mass * med.ubar12 / (2.0 * PI * c.hbar * c.hbar);
    let a_rel = (c.hbar / (c.atom_mass * t.omega_tilde)).sqrt();
    a_s / a_rel
}

pub fn exact_pair_energy(med: &EffectiveMedium, t: &TrapState, c: &Constants) -> Result<ExactPairEnergy> {
    let x = scattering_parameter(med, t, c);
    if !(x.abs() < PERTURBATIVE_BRANCH_GUARD) {
        return Err(Error::InvalidInput(format!(
            "|a_s/a_rel| = {:e} is outside the perturbative branch guard {PERTURBATIVE_BRANCH_GUARD}",
            x.abs()
        )));
    }
    let nu = ground_branch_nu(x)?;
    Ok(ExactPairEnergy { energy: (2.0 * nu + 1.5) * c.hbar * t.omega_tilde, scattering_parameter: x, nu })
}

/// Residual of the contact-interaction quantization condition written as
/// Γ(−ν−½) / (2Γ(−ν)) − a_s/a_rel, which is finite and increasing on
/// the ground branch −½ < ν < ½.
fn branch_residual(nu: f64, x: f64) -> f64 {
    libm::tgamma(-nu - 0.5) / (2.0 * libm::tgamma(-nu)) - x
}

/// Solve the quantization condition 2Γ(−ν)/Γ(−ν−½) = a_rel/a_s for ν on
/// the branch that reduces to the noninteracting ground state (ν = 0).
///
/// No perturbative guard is applied. The branch spans −½ < ν < ½: ν → −½
/// (energy ½ħω̃) as x → −∞ and ν → ½ as x → +∞.
pub fn ground_branch_nu(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("scattering parameter must be finite, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let fail = |lo: f64, hi: f64, message: &'static str| {
        Error::OracleFailure(OracleDiagnostics {
            scattering_parameter: x,
            bracket: (lo, hi),
            residuals: (branch_residual(lo, x), branch_residual(hi, x)),
            message,
        })
    };

    // Start at ±1e-4 ħω̃ around (3/2)ħω̃ and widen geometrically toward the branch ends.
    let mut lo = -5e-5;
    let mut hi = 5e-5;
    let widen = |edge: f64, limit: f64| {
        let doubled = 2.0 * edge;
        if doubled.abs() < limit.abs() {
            doubled
        } else {
            0.5 * (edge + limit)
        }
    };
    let mut widenings = 0;
    while branch_residual(lo, x) > 0.0 {
        lo = widen(lo, -0.5);
        widenings += 1;
        if widenings > 2000 || lo <= -0.5 {
            return Err(fail(lo, hi, "root not bracketed below the noninteracting energy"));
        }
    }
    while branch_residual(hi, x) < 0.0 {
        hi = widen(hi, 0.5);
        widenings += 1;
        if widenings > 2000 || hi >= 0.5 {
            return Err(fail(lo, hi, "root not bracketed above the noninteracting energy"));
        }
    }
    let (f_lo, f_hi) = (branch_residual(lo, x), branch_residual(hi, x));
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(fail(lo, hi, "residual is not a number"));
    }

    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = branch_residual(mid, x);
        if f_mid.is_nan() {
            return Err(fail(lo, hi, "residual is not a number"));
        }
        if f_mid > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
