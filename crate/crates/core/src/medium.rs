//! Effective single-excitation physics on top of the condensate background.
//!
//! A spin wave in level `i` sees the bare trap reduced by the mean field of
//! the level-0 condensate, and two spin waves interact through a strength
//! in which the direct and condensate-mediated terms nearly cancel.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantities::Constants;

/// Default fraction of the condensate diameter a stored wave packet may fill.
pub const DEFAULT_CONTAINMENT_THRESHOLD: f64 = 0.5;

/// s-wave scattering lengths (m) between the condensate level 0 and the
/// two storage levels 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringSet {
    pub a00: f64,
    pub a01: f64,
    pub a02: f64,
    pub a12: f64,
    /// Same-level lengths; only needed for the self-interaction strengths.
    pub a11: Option<f64>,
    pub a22: Option<f64>,
    /// Feshbach enhancement applied to `a12` only. 1 means no enhancement.
    pub feshbach_factor: f64,
}

impl ScatteringSet {
    /// Rb-87 with level 0 in the lower and levels 1, 2 in the upper hyperfine manifold.
    pub fn rb87() -> Self {
        Self { a00: 5.39e-9, a01: 5.24e-9, a02: 5.24e-9, a12: 5.58e-9, a11: None, a22: None, feshbach_factor: 1.0 }
    }

    pub fn with_feshbach(mut self, factor: f64) -> Self {
        self.feshbach_factor = factor;
        self
    }

    /// Inter-level length after Feshbach enhancement.
    pub fn enhanced_a12(&self) -> f64 {
        self.feshbach_factor * self.a12
    }

    /// κ = 1 − a01/a00; the factor scaling the bare trap into the effective one.
    pub fn trap_scale(&self) -> f64 {
        1.0 - self.a01 / self.a00
    }

    pub fn validate(&self) -> Result<()> {
        let lengths = [("a00", self.a00), ("a01", self.a01), ("a02", self.a02), ("a12", self.a12)];
        for (name, v) in lengths {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be a positive length, got {v}")));
            }
        }
        for (name, v) in [("a11", self.a11), ("a22", self.a22)] {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(Error::InvalidInput(format!("{name} must be finite, got {v}")));
                }
            }
        }
        if !(self.feshbach_factor > 0.0 && self.feshbach_factor.is_finite()) {
            return Err(Error::InvalidInput(format!("Feshbach factor must be positive, got {}", self.feshbach_factor)));
        }
        if self.a01 >= self.a00 {
            return Err(Error::RepulsiveTrap { a01: self.a01, a00: self.a00 });
        }
        Ok(())
    }
}

impl Default for ScatteringSet {
    fn default() -> Self {
        Self::rb87()
    }
}

/// Effective trap scale and interaction strengths (J m³) felt by spin waves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveMedium {
    pub trap_scale: f64,
    pub u11: Option<f64>,
    pub u22: Option<f64>,
    pub u12: f64,
    /// Coupling in the scaled relative coordinate, u12·2^(-3/2).
    pub ubar12: f64,
}

pub fn effective_interactions(s: &ScatteringSet, c: &Constants) -> Result<EffectiveMedium> {
    s.validate()?;
    let g = |a: f64| c.contact_coupling(a);
    let mediated = |ai: f64, aj: f64| ai * aj / s.a00;
    let u12 = g(s.enhanced_a12() - mediated(s.a01, s.a02));
    Ok(EffectiveMedium {
        trap_scale: s.trap_scale(),
        u11: s.a11.map(|a11| g(a11 - mediated(s.a01, s.a01))),
        u22: s.a22.map(|a22| g(a22 - mediated(s.a02, s.a02))),
        u12,
        ubar12: u12 * 2f64.powf(-1.5),
    })
}

/// ω̃ = √κ·ω for a spin wave in a bare harmonic trap of angular frequency `omega`.
pub fn effective_trap_frequency(omega: f64, s: &ScatteringSet) -> Result<f64> {
    let kappa = s.trap_scale();
    if kappa <= 0.0 {
        return Err(Error::RepulsiveTrap { a01: s.a01, a00: s.a00 });
    }
    Ok(kappa.sqrt() * omega)
}

/// Bare trap frequency that produces a given effective frequency.
pub fn real_trap_frequency(omega_tilde: f64, s: &ScatteringSet) -> Result<f64> {
    let kappa = s.trap_scale();
    if kappa <= 0.0 {
        return Err(Error::RepulsiveTrap { a01: s.a01, a00: s.a00 });
    }
    Ok(omega_tilde / kappa.sqrt())
}

/// Thomas–Fermi ground state of the level-0 condensate in an isotropic trap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CondensateProfile {
    pub atom_number: f64,
    /// J
    pub chemical_potential: f64,
    /// m
    pub tf_radius: f64,
    /// m
    pub tf_diameter: f64,
    /// m⁻³
    pub peak_density: f64,
}

pub fn thomas_fermi(atom_number: f64, omega: f64, a00: f64, c: &Constants) -> Result<CondensateProfile> {
    if !(atom_number >= 1.0 && atom_number.is_finite()) {
        return Err(Error::InvalidInput(format!("atom number must be at least 1, got {atom_number}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidInput(format!("trap frequency must be positive, got {omega}")));
    }
    if !(a00 > 0.0 && a00.is_finite()) {
        return Err(Error::InvalidInput(format!("a00 must be positive, got {a00}")));
    }
    let a_ho = (c.hbar / (c.atom_mass * omega)).sqrt();
    let x = 15.0 * atom_number * a00 / a_ho;
    let tf_radius = a_ho * x.powf(0.2);
    let chemical_potential = 0.5 * c.hbar * omega * x.powf(0.4);
    Ok(CondensateProfile {
        atom_number,
        chemical_potential,
        tf_radius,
        tf_diameter: 2.0 * tf_radius,
        peak_density: chemical_potential / c.contact_coupling(a00),
    })
}

/// Result of comparing a wave-packet size against the condensate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Containment {
    /// Wave-packet FWHM over condensate diameter.
    pub ratio: f64,
    pub threshold: f64,
    pub pass: bool,
}

pub fn containment_check(profile: &CondensateProfile, fwhm: f64, threshold: f64) -> Containment {
    let ratio = fwhm / profile.tf_diameter;
    Containment { ratio, threshold, pass: ratio < threshold }
}

/// The scattering-length combination F·a12 − a01·a02/a00 (m) that sets ū12.
pub fn effective_length(s: &ScatteringSet) -> f64 {
    s.enhanced_a12() - s.a01 * s.a02 / s.a00
}

/// Prefactor √2·π·ħ²/m linking `effective_length` to ū12.
pub fn ubar_prefactor(c: &Constants) -> f64 {
    2f64.sqrt() * PI * c.hbar * c.hbar / c.atom_mass
}
