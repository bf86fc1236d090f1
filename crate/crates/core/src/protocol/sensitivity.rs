use std::fmt;

use serde::Serialize;

use super::GateConfig;
use crate::error::{Error, Result};
use crate::medium::{effective_interactions, ScatteringSet};
use crate::quantities::Constants;
use crate::twobody::{energy_shift, trap_state_from_effective};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    A00,
    A01,
    A02,
    A12,
}

impl Parameter {
    pub const ALL: [Parameter; 4] = [Parameter::A00, Parameter::A01, Parameter::A02, Parameter::A12];

    fn apply(self, s: &mut ScatteringSet, factor: f64) {
        match self {
            Parameter::A00 => s.a00 *= factor,
            Parameter::A01 => s.a01 *= factor,
            Parameter::A02 => s.a02 *= factor,
            Parameter::A12 => s.a12 *= factor,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::A00 => "a00",
            Parameter::A01 => "a01",
            Parameter::A02 => "a02",
            Parameter::A12 => "a12",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRow {
    pub parameter: Parameter,
    /// Signed relative change applied to the parameter.
    pub perturbation: f64,
    /// Perturbed shift in the hold trap, J; `None` for flagged rows.
    pub delta_e: Option<f64>,
    /// (ΔE' − ΔE)/ΔE; `None` when the baseline shift is zero.
    pub relative_change_delta_e: Option<f64>,
    /// Relative change of the time for a phase of π; `None` when either
    /// shift is not positive.
    pub relative_change_t_pi: Option<f64>,
    /// relative_change_delta_e / perturbation.
    pub amplification: Option<f64>,
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport {
    /// Baseline shift in the hold trap, J.
    pub delta_e: f64,
    /// Baseline time for a phase of π, s; `None` if the shift is not positive.
    pub t_pi: Option<f64>,
    pub rows: Vec<SensitivityRow>,
}

impl SensitivityReport {
    pub fn row(&self, parameter: Parameter, sign: f64) -> Option<&SensitivityRow> {
        self.rows.iter().find(|r| r.parameter == parameter && r.perturbation.signum() == sign.signum())
    }
}

/// One-at-a-time ±`perturbation` of each scattering length, showing how
/// the near-cancellation in ū12 amplifies input errors.
pub fn sensitivity_report(cfg: &GateConfig, perturbation: f64, c: &Constants) -> Result<SensitivityReport> {
    if !(perturbation > 0.0 && perturbation <= 0.1) {
        return Err(Error::InvalidInput(format!("perturbation must lie in (0, 0.1], got {perturbation}")));
    }
    let trap = trap_state_from_effective(cfg.omega_tilde_1, &cfg.scattering, c)?;
    let shift_for = |s: &ScatteringSet| -> Result<f64> {
        let med = effective_interactions(s, c)?;
        Ok(energy_shift(&med, &trap, c).delta_e)
    };
    let base = shift_for(&cfg.scattering)?;
    let t_pi = |de: f64| (de > 0.0).then(|| std::f64::consts::PI * c.hbar / de);
    let base_t_pi = t_pi(base);

    let mut rows = Vec::with_capacity(8);
    for parameter in Parameter::ALL {
        for sign in [1.0, -1.0] {
            let delta = sign * perturbation;
            let mut s = cfg.scattering;
            parameter.apply(&mut s, 1.0 + delta);
            let row = match shift_for(&s) {
                Ok(de) => {
                    let rel = (base != 0.0).then(|| (de - base) / base);
                    SensitivityRow {
                        parameter,
                        perturbation: delta,
                        delta_e: Some(de),
                        relative_change_delta_e: rel,
                        relative_change_t_pi: base_t_pi.zip(t_pi(de)).map(|(b, p)| (p - b) / b),
                        amplification: rel.map(|r| r / delta),
                        flag: (de.signum() != base.signum() && base != 0.0).then(|| "shift changes sign".to_string()),
                    }
                }
                Err(e) => SensitivityRow {
                    parameter,
                    perturbation: delta,
                    delta_e: None,
                    relative_change_delta_e: None,
                    relative_change_t_pi: None,
                    amplification: None,
                    flag: Some(e.to_string()),
                },
            };
            rows.push(row);
        }
    }
    Ok(SensitivityReport { delta_e: base, t_pi: base_t_pi, rows })
}
