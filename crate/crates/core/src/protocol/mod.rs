//! The assembled gate: compress, hold, decompress.
//!
//! [`simulate_gate`] evaluates one schedule end to end and checks it
//! against the feasibility bounds; [`design_ramp`], [`sensitivity_report`]
//! and [`sweep`] are built on top of it.

mod design;
mod report;
mod sensitivity;
mod sweep;

use std::f64::consts::PI;

use serde::Serialize;

use crate::dynamics::{axis_survival, ermakov_evolve, phase_accumulate, PhaseSegment, RampSchedule, RampShape};
use crate::error::{Error, Result};
use crate::medium::{
    containment_check, effective_interactions, real_trap_frequency, thomas_fermi, CondensateProfile, Containment,
    ScatteringSet, DEFAULT_CONTAINMENT_THRESHOLD,
};
use crate::quantities::{hz, Constants};
use crate::twobody::{energy_shift, time_for_phase, trap_state_from_effective, ShiftResult};

pub use design::{design_ramp, RampDesign, DESIGN_GRID_MAX, DESIGN_GRID_MIN, DESIGN_GRID_RATIO};
pub use report::{GateDocument, Measure};
pub use sensitivity::{sensitivity_report, Parameter, SensitivityReport, SensitivityRow};
pub use sweep::{sweep, SweepAxis, SweepRow};

/// Default bound on the excitation probability of one ramp.
pub const DEFAULT_P_EXC_MAX: f64 = 0.002;
/// Default bound on ΔE/(ħω̃) in the compressed trap.
pub const DEFAULT_FIDELITY_MAX: f64 = 1e-2;

/// How long to hold the compressed trap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoldSpec {
    /// Fixed hold time, s.
    Time(f64),
    /// Total phase 2φ_a + φ_f to reach, rad; the hold time is solved for.
    TargetPhase(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateConfig {
    pub scattering: ScatteringSet,
    /// Effective frequency during storage, rad/s.
    pub omega_tilde_0: f64,
    /// Effective frequency while holding, rad/s.
    pub omega_tilde_1: f64,
    pub ramp_shape: RampShape,
    /// Duration of each ramp, s.
    pub ramp_time: f64,
    pub hold: HoldSpec,
    pub atom_number: f64,
    /// Bare-over-effective trap frequency ratio for the condensate profile.
    /// `None` derives it from the scattering lengths as 1/√κ.
    pub trap_ratio: Option<f64>,
    pub containment_threshold: f64,
    pub p_exc_max: f64,
    pub fidelity_max: f64,
}

impl GateConfig {
    /// Rb-87 with F = 3, compression 2π·10 → 2π·80 Hz in 0.14 s, a target
    /// phase of π and 10⁵ condensate atoms in a 2π·50 Hz bare trap.
    pub fn paper() -> Self {
        Self {
            scattering: ScatteringSet::rb87().with_feshbach(3.0),
            omega_tilde_0: hz(10.0),
            omega_tilde_1: hz(80.0),
            ramp_shape: RampShape::Smoothstep,
            ramp_time: 0.14,
            hold: HoldSpec::TargetPhase(PI),
            atom_number: 1e5,
            trap_ratio: Some(5.0),
            containment_threshold: DEFAULT_CONTAINMENT_THRESHOLD,
            p_exc_max: DEFAULT_P_EXC_MAX,
            fidelity_max: DEFAULT_FIDELITY_MAX,
        }
    }

    /// Stay at the storage frequency: no ramps, hold at ω̃₀.
    pub fn without_compression(mut self) -> Self {
        self.omega_tilde_1 = self.omega_tilde_0;
        self.ramp_time = 0.0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.scattering.validate()?;
        if !(self.omega_tilde_0 > 0.0 && self.omega_tilde_0.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "omega_tilde_0 must be positive, got {} rad/s",
                self.omega_tilde_0
            )));
        }
        if !(self.omega_tilde_1 >= self.omega_tilde_0) || !self.omega_tilde_1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ω̃₁ < ω̃₀: the hold frequency 2π·{} Hz is below the storage frequency 2π·{} Hz",
                self.omega_tilde_1 / (2.0 * PI),
                self.omega_tilde_0 / (2.0 * PI)
            )));
        }
        if !(self.ramp_time >= 0.0 && self.ramp_time.is_finite()) {
            return Err(Error::InvalidInput(format!("ramp time must be non-negative, got {}", self.ramp_time)));
        }
        match self.hold {
            HoldSpec::Time(t) if !(t >= 0.0 && t.is_finite()) => {
                return Err(Error::InvalidInput(format!("hold time must be non-negative, got {t}")));
            }
            HoldSpec::TargetPhase(p) if !(p >= 0.0 && p.is_finite()) => {
                return Err(Error::InvalidInput(format!("target phase must be non-negative, got {p}")));
            }
            _ => {}
        }
        if !(self.atom_number >= 1.0) {
            return Err(Error::InvalidInput(format!("atom number must be at least 1, got {}", self.atom_number)));
        }
        if let Some(k) = self.trap_ratio {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::InvalidInput(format!("trap ratio must be positive, got {k}")));
            }
        }
        for (name, v) in [
            ("containment threshold", self.containment_threshold),
            ("excitation bound", self.p_exc_max),
            ("fidelity bound", self.fidelity_max),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn compression_ramp(&self) -> Result<RampSchedule> {
        RampSchedule::new(self.omega_tilde_0, self.omega_tilde_1, self.ramp_time, self.ramp_shape)
    }

    fn real_frequency(&self, omega_tilde: f64) -> Result<f64> {
        match self.trap_ratio {
            Some(k) => Ok(k * omega_tilde),
            None => real_trap_frequency(omega_tilde, &self.scattering),
        }
    }
}

impl Default for GateConfig {
    fn default() -> Self {
        Self::paper()
    }
}

/// Trap, wave-packet and condensate at one of the two frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StageReport {
    /// rad/s
    pub omega_tilde: f64,
    /// Bare trap frequency, rad/s.
    pub omega: f64,
    /// Spin-wave FWHM, m.
    pub l: f64,
    pub condensate: CondensateProfile,
    pub containment: Containment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub containment_storage: bool,
    pub containment_hold: bool,
    pub fidelity: bool,
    pub adiabaticity: bool,
}

impl Flags {
    pub fn all_pass(&self) -> bool {
        self.containment_storage && self.containment_hold && self.fidelity && self.adiabaticity
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.containment_storage {
            out.push("containment at storage frequency");
        }
        if !self.containment_hold {
            out.push("containment at hold frequency");
        }
        if !self.fidelity {
            out.push("fidelity metric");
        }
        if !self.adiabaticity {
            out.push("ramp excitation");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReport {
    pub config: GateConfig,
    /// Phase of one ramp, rad.
    pub phi_a: f64,
    /// Phase of the hold, rad.
    pub phi_f: f64,
    /// 2·phi_a + phi_f, rad.
    pub phi_total: f64,
    /// s
    pub t_a: f64,
    /// s
    pub t_f: f64,
    /// 2·t_a + t_f, s.
    pub t_total: f64,
    pub p_exc_compression: f64,
    pub p_exc_decompression: f64,
    /// Both ramps treated as independent: 1 − (S_c·S_d)³ with per-axis survivals.
    pub p_exc_roundtrip: f64,
    /// Collisional shift in the hold trap.
    pub hold_shift: ShiftResult,
    pub storage: StageReport,
    pub hold: StageReport,
    pub flags: Flags,
}

impl GateReport {
    pub fn document(&self) -> GateDocument {
        GateDocument::from_report(self)
    }
}

pub fn simulate_gate(cfg: &GateConfig, c: &Constants) -> Result<GateReport> {
    c.validate()?;
    cfg.validate()?;
    let med = effective_interactions(&cfg.scattering, c)?;
    let ramp = cfg.compression_ramp()?;

    let compress = ermakov_evolve(&ramp, 2)?;
    let decompress = ermakov_evolve(&ramp.reversed(), 2)?;
    let survive = |traj: &crate::dynamics::ScaleTrajectory, target: f64| {
        let end = traj.last();
        axis_survival(traj.omega_ref, end.b, end.b_dot, target)
    };
    let s_c = survive(&compress, ramp.omega_end);
    let s_d = survive(&decompress, ramp.omega_start);
    let p_exc_compression = (1.0 - s_c.powi(3)).clamp(0.0, 1.0);
    let p_exc_decompression = (1.0 - s_d.powi(3)).clamp(0.0, 1.0);
    let p_exc_roundtrip = (1.0 - (s_c * s_d).powi(3)).clamp(0.0, 1.0);

    let phi_a = phase_accumulate(&med, &PhaseSegment::Ramp(ramp), c)?;
    let hold_trap = trap_state_from_effective(cfg.omega_tilde_1, &cfg.scattering, c)?;
    let hold_shift = energy_shift(&med, &hold_trap, c);

    let t_f = match cfg.hold {
        HoldSpec::Time(t) => t,
        HoldSpec::TargetPhase(target) => {
            let ramp_phase = 2.0 * phi_a;
            if target < ramp_phase {
                return Err(Error::PhaseOvershoot { target, ramp_phase });
            }
            time_for_phase(target - ramp_phase, &hold_shift)?
        }
    };
    let phi_f = phase_accumulate(&med, &PhaseSegment::Hold { omega: cfg.omega_tilde_1, duration: t_f }, c)?;

    let storage = stage(cfg, cfg.omega_tilde_0, c)?;
    let hold = stage(cfg, cfg.omega_tilde_1, c)?;
    let flags = Flags {
        containment_storage: storage.containment.pass,
        containment_hold: hold.containment.pass,
        fidelity: hold_shift.fidelity_metric.abs() < cfg.fidelity_max,
        adiabaticity: p_exc_compression <= cfg.p_exc_max && p_exc_decompression <= cfg.p_exc_max,
    };

    Ok(GateReport {
        config: *cfg,
        phi_a,
        phi_f,
        phi_total: 2.0 * phi_a + phi_f,
        t_a: cfg.ramp_time,
        t_f,
        t_total: 2.0 * cfg.ramp_time + t_f,
        p_exc_compression,
        p_exc_decompression,
        p_exc_roundtrip,
        hold_shift,
        storage,
        hold,
        flags,
    })
}

fn stage(cfg: &GateConfig, omega_tilde: f64, c: &Constants) -> Result<StageReport> {
    let trap = trap_state_from_effective(omega_tilde, &cfg.scattering, c)?;
    let omega = cfg.real_frequency(omega_tilde)?;
    let condensate = thomas_fermi(cfg.atom_number, omega, cfg.scattering.a00, c)?;
    let containment = containment_check(&condensate, trap.l, cfg.containment_threshold);
    Ok(StageReport { omega_tilde, omega, l: trap.l, condensate, containment })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn paper_scenario() {
        let c = Constants::RB87;
        let r = simulate_gate(&GateConfig::paper(), &c).unwrap();
        assert!(rel(r.t_total, 1.01) < 0.15, "{}", r.t_total);
        assert!(rel(r.phi_total, PI) < 1e-8);
        assert!(r.phi_a < 0.1 * r.phi_f);
        assert!(r.flags.all_pass(), "{:?}", r.flags);
        assert!(rel(r.hold.l, 2.84e-6) < 0.03);
        assert!(rel(r.hold.condensate.tf_diameter, 7.4e-6) < 0.1);
    }

    #[test]
    fn composition_identities_are_exact() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper();
        cfg.hold = HoldSpec::Time(0.5);
        let r = simulate_gate(&cfg, &c).unwrap();
        assert_eq!(r.phi_total, 2.0 * r.phi_a + r.phi_f);
        assert_eq!(r.t_total, 2.0 * r.t_a + r.t_f);
        assert_eq!(r.t_f, 0.5);
    }

    #[test]
    fn uncompressed_baseline() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper().without_compression();
        cfg.scattering.feshbach_factor = 1.0;
        let r = simulate_gate(&cfg, &c).unwrap();
        assert!((r.t_f - 360.0).abs() < 0.3 * 360.0, "{}", r.t_f);
        assert_eq!(r.phi_a, 0.0);
        assert_eq!(r.p_exc_roundtrip, 0.0);
    }

    #[test]
    fn zero_target_without_ramps() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper();
        cfg.ramp_time = 0.0;
        cfg.hold = HoldSpec::TargetPhase(0.0);
        let r = simulate_gate(&cfg, &c).unwrap();
        assert_eq!(r.t_total, 0.0);
        assert_eq!(r.phi_total, 0.0);
        // sudden quench: flagged, not an error
        assert!(!r.flags.adiabaticity);
    }

    #[test]
    fn overshoot_is_an_error() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper();
        cfg.hold = HoldSpec::TargetPhase(1e-3);
        assert!(matches!(simulate_gate(&cfg, &c), Err(Error::PhaseOvershoot { .. })));
    }

    #[test]
    fn decreasing_frequencies_rejected() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper();
        cfg.omega_tilde_0 = hz(10.0);
        cfg.omega_tilde_1 = hz(5.0);
        let err = simulate_gate(&cfg, &c).unwrap_err();
        assert!(err.to_string().contains("ω̃₁ < ω̃₀"), "{err}");
    }

    #[test]
    fn target_phase_round_trip() {
        let c = Constants::RB87;
        let first = simulate_gate(&GateConfig::paper(), &c).unwrap();
        let mut cfg = GateConfig::paper();
        cfg.hold = HoldSpec::Time(first.t_f);
        let second = simulate_gate(&cfg, &c).unwrap();
        assert!(rel(second.phi_total, PI) < 1e-8);
    }

    #[test]
    fn roundtrip_excitation_bounded_by_single_ramps() {
        let c = Constants::RB87;
        for shape in RampShape::ALL {
            for ta in [0.0, 0.02, 0.14] {
                let mut cfg = GateConfig::paper();
                cfg.ramp_shape = shape;
                cfg.ramp_time = ta;
                let r = simulate_gate(&cfg, &c).unwrap();
                let single = r.p_exc_compression.max(r.p_exc_decompression);
                assert!(r.p_exc_roundtrip <= 2.0 * single + 1e-12);
                // time reversal: both ramps excite equally
                assert!((r.p_exc_compression - r.p_exc_decompression).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn derived_trap_ratio_shrinks_condensate() {
        let c = Constants::RB87;
        let mut cfg = GateConfig::paper();
        cfg.trap_ratio = None;
        let r = simulate_gate(&cfg, &c).unwrap();
        let expected = 1.0 / cfg.scattering.trap_scale().sqrt();
        assert!(rel(r.storage.omega / r.storage.omega_tilde, expected) < 1e-12);
        let paper = simulate_gate(&GateConfig::paper(), &c).unwrap();
        assert!(r.storage.condensate.tf_diameter < paper.storage.condensate.tf_diameter);
    }
}
