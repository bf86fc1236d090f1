use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{simulate_gate, GateConfig, GateReport};
use crate::error::{Error, Result};
use crate::quantities::{Constants, Dimension};
use crate::twobody::trap_state_from_fwhm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    FeshbachFactor,
    /// Hold frequency, rad/s.
    OmegaTilde1,
    /// Ramp time, s.
    RampTime,
    /// Storage FWHM, m; sets ω̃₀.
    Fwhm0,
    AtomNumber,
}

impl SweepAxis {
    pub fn dimension(self) -> Dimension {
        match self {
            SweepAxis::FeshbachFactor | SweepAxis::AtomNumber => Dimension::Dimensionless,
            SweepAxis::OmegaTilde1 => Dimension::AngularFrequency,
            SweepAxis::RampTime => Dimension::Time,
            SweepAxis::Fwhm0 => Dimension::Length,
        }
    }

    fn apply(self, cfg: &mut GateConfig, value: f64, c: &Constants) -> Result<()> {
        match self {
            SweepAxis::FeshbachFactor => cfg.scattering.feshbach_factor = value,
            SweepAxis::OmegaTilde1 => cfg.omega_tilde_1 = value,
            SweepAxis::RampTime => cfg.ramp_time = value,
            SweepAxis::Fwhm0 => cfg.omega_tilde_0 = trap_state_from_fwhm(value, &cfg.scattering, c)?.omega_tilde,
            SweepAxis::AtomNumber => cfg.atom_number = value,
        }
        Ok(())
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::FeshbachFactor => "F",
            SweepAxis::OmegaTilde1 => "omega_tilde_1",
            SweepAxis::RampTime => "t_a",
            SweepAxis::Fwhm0 => "l0",
            SweepAxis::AtomNumber => "N",
        })
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F" | "f" | "feshbach" | "feshbach_factor" => Ok(SweepAxis::FeshbachFactor),
            "omega_tilde_1" | "omega-tilde-1" => Ok(SweepAxis::OmegaTilde1),
            "t_a" | "ta" | "ramp_time" => Ok(SweepAxis::RampTime),
            "l0" | "l_0" | "fwhm_0" => Ok(SweepAxis::Fwhm0),
            "N" | "n" | "atom_number" => Ok(SweepAxis::AtomNumber),
            other => Err(Error::InvalidInput(format!(
                "unknown sweep axis `{other}` (expected F, omega_tilde_1, t_a, l0 or N)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Axis value in SI.
    pub value: f64,
    pub result: Result<GateReport>,
}

/// One gate per value, evaluated in parallel; rows come back in input order.
pub fn sweep(template: &GateConfig, axis: SweepAxis, values: &[f64], c: &Constants) -> Vec<SweepRow> {
    values
        .par_iter()
        .map(|&value| {
            let mut cfg = *template;
            let result = axis.apply(&mut cfg, value, c).and_then(|_| simulate_gate(&cfg, c));
            SweepRow { value, result }
        })
        .collect()
}
