//! Run configuration: a named preset, overlaid by an optional flat TOML
//! file, overlaid by command-line flags.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use collgate::dynamics::RampShape;
use collgate::protocol::{GateConfig, HoldSpec};
use collgate::{Dimension, Quantity, Unit};

use crate::render::Format;

/// Everything a command needs besides its own flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub gate: GateConfig,
    /// Hold at the storage frequency without ramps.
    pub no_compression: bool,
    pub format: Format,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { gate: GateConfig::paper(), no_compression: false, format: Format::Table, output: None }
    }
}

pub const KEYS: [&str; 21] = [
    "a00",
    "a01",
    "a02",
    "a12",
    "a11",
    "a22",
    "feshbach_factor",
    "omega_tilde_0",
    "omega_tilde_1",
    "ramp_shape",
    "ramp_time",
    "hold_time",
    "target_phase",
    "atom_number",
    "trap_ratio",
    "containment_threshold",
    "p_exc_max",
    "fidelity_max",
    "compression",
    "format",
    "output",
];

pub fn preset(name: &str) -> Result<RunConfig> {
    match name {
        "paper" => Ok(RunConfig::default()),
        other => bail!("unknown preset `{other}` (available: paper)"),
    }
}

impl RunConfig {
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        self.apply_text(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| anyhow!("{e}"))?;
        if table.contains_key("hold_time") && table.contains_key("target_phase") {
            bail!("`hold_time` and `target_phase` are mutually exclusive");
        }
        let g = &mut self.gate;
        for (key, value) in &table {
            let length = || file_quantity(key, value, Dimension::Length);
            match key.as_str() {
                "a00" => g.scattering.a00 = length()?,
                "a01" => g.scattering.a01 = length()?,
                "a02" => g.scattering.a02 = length()?,
                "a12" => g.scattering.a12 = length()?,
                "a11" => g.scattering.a11 = Some(length()?),
                "a22" => g.scattering.a22 = Some(length()?),
                "feshbach_factor" => g.scattering.feshbach_factor = file_number(key, value)?,
                "omega_tilde_0" => g.omega_tilde_0 = file_quantity(key, value, Dimension::AngularFrequency)?,
                "omega_tilde_1" => g.omega_tilde_1 = file_quantity(key, value, Dimension::AngularFrequency)?,
                "ramp_shape" => g.ramp_shape = file_string(key, value)?.parse()?,
                "ramp_time" => g.ramp_time = file_quantity(key, value, Dimension::Time)?,
                "hold_time" => g.hold = HoldSpec::Time(file_quantity(key, value, Dimension::Time)?),
                "target_phase" => g.hold = HoldSpec::TargetPhase(file_quantity(key, value, Dimension::Dimensionless)?),
                "atom_number" => g.atom_number = file_number(key, value)?,
                "trap_ratio" => {
                    g.trap_ratio = match value.as_str() {
                        Some("derived") => None,
                        _ => Some(file_number(key, value)?),
                    }
                }
                "containment_threshold" => g.containment_threshold = file_number(key, value)?,
                "p_exc_max" => g.p_exc_max = file_number(key, value)?,
                "fidelity_max" => g.fidelity_max = file_number(key, value)?,
                "compression" => {
                    let on = value.as_bool().ok_or_else(|| anyhow!("key `compression`: expected true or false"))?;
                    self.no_compression = !on;
                }
                "format" => self.format = file_string(key, value)?.parse()?,
                "output" => self.output = Some(file_string(key, value)?.to_string()),
                other => bail!("unknown config key `{other}` (known keys: {})", KEYS.join(", ")),
            }
        }
        Ok(())
    }

    /// The gate configuration with all overrides applied.
    pub fn resolved_gate(&self) -> GateConfig {
        if self.no_compression {
            self.gate.without_compression()
        } else {
            self.gate
        }
    }
}

fn file_string<'a>(key: &str, value: &'a toml::Value) -> Result<&'a str> {
    value.as_str().ok_or_else(|| anyhow!("key `{key}`: expected a string"))
}

fn file_number(key: &str, value: &toml::Value) -> Result<f64> {
    match value {
        toml::Value::Float(x) => Ok(*x),
        toml::Value::Integer(i) => Ok(*i as f64),
        toml::Value::String(s) => {
            let q = Quantity::parse(s).with_context(|| format!("key `{key}`"))?;
            q.expect(Dimension::Dimensionless).with_context(|| format!("key `{key}`"))
        }
        _ => bail!("key `{key}`: expected a number"),
    }
}

/// Physical values in a file must spell out their unit.
fn file_quantity(key: &str, value: &toml::Value, dim: Dimension) -> Result<f64> {
    if dim == Dimension::Dimensionless {
        return file_number(key, value);
    }
    let text = value
        .as_str()
        .ok_or_else(|| anyhow!("key `{key}`: expected a quoted value with a unit, e.g. \"{}\"", example(dim)))?;
    let q = Quantity::parse(text).with_context(|| format!("key `{key}`"))?;
    if q.unit == Unit::One {
        bail!("key `{key}`: `{text}` has no unit, e.g. \"{}\"", example(dim));
    }
    q.expect(dim).with_context(|| format!("key `{key}`"))
}

fn example(dim: Dimension) -> &'static str {
    match dim {
        Dimension::Length => "5.58 nm",
        Dimension::AngularFrequency => "2pi*10 Hz",
        Dimension::Time => "0.14 s",
        _ => "1",
    }
}

/// Parse a command-line value. A bare number is read in `default_unit`.
pub fn flag_quantity(text: &str, dim: Dimension, default_unit: Unit) -> Result<f64> {
    let q = Quantity::parse(text)?;
    let q =
        if q.unit == Unit::One && dim != Dimension::Dimensionless { Quantity::new(q.value, default_unit) } else { q };
    Ok(q.expect(dim)?)
}

pub fn parse_shape(text: &str) -> Result<RampShape> {
    Ok(text.parse()?)
}
