//! Serializable view of a [`GateReport`] with every physical value tagged
//! by its unit, in the units a lab notebook would use.

use serde::Serialize;

use super::{Flags, GateReport, HoldSpec, StageReport};
use crate::quantities::{to_hz, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measure {
    pub value: f64,
    pub unit: &'static str,
}

impl Measure {
    /// Convert an SI value into `unit`.
    pub fn from_si(si: f64, unit: Unit) -> Self {
        Self { value: si / unit.si_factor(), unit: unit.label() }
    }

    fn plain(value: f64) -> Self {
        Self { value, unit: "1" }
    }

    /// Ordinary frequency ω/2π, Hz.
    fn freq(omega: f64) -> Self {
        Self { value: to_hz(omega), unit: "Hz" }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputsDoc {
    pub feshbach_factor: f64,
    pub omega_tilde_0: Measure,
    pub omega_tilde_1: Measure,
    pub ramp_shape: String,
    pub ramp_time: Measure,
    pub target_phase: Option<Measure>,
    pub atom_number: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingDoc {
    pub t_a: Measure,
    pub t_f: Measure,
    pub t_total: Measure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDoc {
    pub phi_a: Measure,
    pub phi_f: Measure,
    pub phi_total: Measure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcitationDoc {
    pub compression: f64,
    pub decompression: f64,
    pub roundtrip: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftDoc {
    pub delta_e: Measure,
    pub phase_rate: Measure,
    pub fidelity_metric: Measure,
    pub fidelity_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageDoc {
    pub omega_tilde: Measure,
    pub omega: Measure,
    pub fwhm: Measure,
    pub tf_diameter: Measure,
    pub chemical_potential: Measure,
    pub peak_density: Measure,
    pub containment_ratio: Measure,
    pub containment_pass: bool,
}

impl StageDoc {
    fn new(s: &StageReport) -> Self {
        Self {
            omega_tilde: Measure::freq(s.omega_tilde),
            omega: Measure::freq(s.omega),
            fwhm: Measure::from_si(s.l, Unit::Micrometer),
            tf_diameter: Measure::from_si(s.condensate.tf_diameter, Unit::Micrometer),
            chemical_potential: Measure::from_si(s.condensate.chemical_potential, Unit::Joule),
            peak_density: Measure::from_si(s.condensate.peak_density, Unit::PerCubicCentimeter),
            containment_ratio: Measure::plain(s.containment.ratio),
            containment_pass: s.containment.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateDocument {
    pub inputs: InputsDoc,
    pub timing: TimingDoc,
    pub phase: PhaseDoc,
    pub excitation: ExcitationDoc,
    pub hold_shift: ShiftDoc,
    pub storage: StageDoc,
    pub hold: StageDoc,
    pub flags: Flags,
    pub all_pass: bool,
}

impl GateDocument {
    pub fn from_report(r: &GateReport) -> Self {
        let cfg = &r.config;
        let s = |t: f64| Measure::from_si(t, Unit::Second);
        let rad = |p: f64| Measure::from_si(p, Unit::Radian);
        Self {
            inputs: InputsDoc {
                feshbach_factor: cfg.scattering.feshbach_factor,
                omega_tilde_0: Measure::freq(cfg.omega_tilde_0),
                omega_tilde_1: Measure::freq(cfg.omega_tilde_1),
                ramp_shape: cfg.ramp_shape.name().to_string(),
                ramp_time: s(cfg.ramp_time),
                target_phase: match cfg.hold {
                    HoldSpec::TargetPhase(p) => Some(rad(p)),
                    HoldSpec::Time(_) => None,
                },
                atom_number: cfg.atom_number,
            },
            timing: TimingDoc { t_a: s(r.t_a), t_f: s(r.t_f), t_total: s(r.t_total) },
            phase: PhaseDoc { phi_a: rad(r.phi_a), phi_f: rad(r.phi_f), phi_total: rad(r.phi_total) },
            excitation: ExcitationDoc {
                compression: r.p_exc_compression,
                decompression: r.p_exc_decompression,
                roundtrip: r.p_exc_roundtrip,
                bound: cfg.p_exc_max,
            },
            hold_shift: ShiftDoc {
                delta_e: Measure::from_si(r.hold_shift.delta_e, Unit::Joule),
                phase_rate: Measure { value: r.hold_shift.phase_rate, unit: "rad/s" },
                fidelity_metric: Measure::plain(r.hold_shift.fidelity_metric),
                fidelity_bound: cfg.fidelity_max,
            },
            storage: StageDoc::new(&r.storage),
            hold: StageDoc::new(&r.hold),
            flags: r.flags,
            all_pass: r.flags.all_pass(),
        }
    }
}
