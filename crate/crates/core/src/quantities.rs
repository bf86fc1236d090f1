//! Physical constants and unit-tagged scalar quantities.
//!
//! Everything downstream of this module works in SI with angular
//! frequencies. Text input such as `"5.39 nm"` or `"2pi*10 Hz"` is parsed
//! here once, so no other module has to care which unit the caller typed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Atomic mass unit, kg.
const DALTON: f64 = 1.660_539_066_60e-27;

/// Fixed physical constants used by every formula in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Mass of one atom, kg.
    pub atom_mass: f64,
    pub reference_isotope: &'static str,
}

impl Constants {
    /// Rubidium-87 with CODATA 2018 values.
    pub const RB87: Constants =
        Constants { hbar: 1.054_571_817e-34, atom_mass: 86.909_180_527 * DALTON, reference_isotope: "Rb-87" };

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::InvalidInput(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.atom_mass > 0.0 && self.atom_mass.is_finite()) {
            return Err(Error::InvalidInput(format!("atom mass must be positive, got {}", self.atom_mass)));
        }
        Ok(())
    }

    /// Bare contact coupling 4πħ²a/m for scattering length `a` (m), in J m³.
    pub fn contact_coupling(&self, a: f64) -> f64 {
        4.0 * PI * self.hbar * self.hbar * a / self.atom_mass
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::RB87
    }
}

/// The dimensions the simulator knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Length,
    AngularFrequency,
    Time,
    Energy,
    Density,
    InteractionStrength,
    Dimensionless,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::Length => "length",
            Dimension::AngularFrequency => "angular frequency",
            Dimension::Time => "time",
            Dimension::Energy => "energy",
            Dimension::Density => "density",
            Dimension::InteractionStrength => "interaction strength",
            Dimension::Dimensionless => "dimensionless",
        };
        f.write_str(name)
    }
}

/// A concrete unit with a fixed factor to its SI representation.
///
/// `Hertz` is an ordinary frequency; its SI representation is the angular
/// frequency 2π·f in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Meter,
    Millimeter,
    Micrometer,
    Nanometer,
    RadianPerSecond,
    Hertz,
    Kilohertz,
    Second,
    Millisecond,
    Microsecond,
    Minute,
    Joule,
    ElectronVolt,
    PerCubicMeter,
    PerCubicCentimeter,
    JouleCubicMeter,
    Radian,
    One,
}

impl Unit {
    pub const ALL: [Unit; 18] = [
        Unit::Meter,
        Unit::Millimeter,
        Unit::Micrometer,
        Unit::Nanometer,
        Unit::RadianPerSecond,
        Unit::Hertz,
        Unit::Kilohertz,
        Unit::Second,
        Unit::Millisecond,
        Unit::Microsecond,
        Unit::Minute,
        Unit::Joule,
        Unit::ElectronVolt,
        Unit::PerCubicMeter,
        Unit::PerCubicCentimeter,
        Unit::JouleCubicMeter,
        Unit::Radian,
        Unit::One,
    ];

    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Meter | Millimeter | Micrometer | Nanometer => Dimension::Length,
            RadianPerSecond | Hertz | Kilohertz => Dimension::AngularFrequency,
            Second | Millisecond | Microsecond | Minute => Dimension::Time,
            Joule | ElectronVolt => Dimension::Energy,
            PerCubicMeter | PerCubicCentimeter => Dimension::Density,
            JouleCubicMeter => Dimension::InteractionStrength,
            Radian | One => Dimension::Dimensionless,
        }
    }

    /// Multiply a value in this unit by this factor to get SI.
    pub fn si_factor(self) -> f64 {
        use Unit::*;
        match self {
            Meter => 1.0,
            Millimeter => 1e-3,
            Micrometer => 1e-6,
            Nanometer => 1e-9,
            RadianPerSecond => 1.0,
            Hertz => 2.0 * PI,
            Kilohertz => 2.0 * PI * 1e3,
            Second => 1.0,
            Millisecond => 1e-3,
            Microsecond => 1e-6,
            Minute => 60.0,
            Joule => 1.0,
            ElectronVolt => 1.602_176_634e-19,
            PerCubicMeter => 1.0,
            PerCubicCentimeter => 1e6,
            JouleCubicMeter => 1.0,
            Radian => 1.0,
            One => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        use Unit::*;
        match self {
            Meter => "m",
            Millimeter => "mm",
            Micrometer => "um",
            Nanometer => "nm",
            RadianPerSecond => "rad/s",
            Hertz => "Hz",
            Kilohertz => "kHz",
            Second => "s",
            Millisecond => "ms",
            Microsecond => "us",
            Minute => "min",
            Joule => "J",
            ElectronVolt => "eV",
            PerCubicMeter => "m^-3",
            PerCubicCentimeter => "cm^-3",
            JouleCubicMeter => "J m^3",
            Radian => "rad",
            One => "1",
        }
    }

    /// The SI unit of a dimension.
    pub fn si(dimension: Dimension) -> Unit {
        match dimension {
            Dimension::Length => Unit::Meter,
            Dimension::AngularFrequency => Unit::RadianPerSecond,
            Dimension::Time => Unit::Second,
            Dimension::Energy => Unit::Joule,
            Dimension::Density => Unit::PerCubicMeter,
            Dimension::InteractionStrength => Unit::JouleCubicMeter,
            Dimension::Dimensionless => Unit::One,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unit = match s.trim() {
            "m" => Unit::Meter,
            "mm" => Unit::Millimeter,
            "um" | "µm" | "μm" => Unit::Micrometer,
            "nm" => Unit::Nanometer,
            "rad/s" | "s^-1" | "1/s" => Unit::RadianPerSecond,
            "Hz" => Unit::Hertz,
            "kHz" => Unit::Kilohertz,
            "s" => Unit::Second,
            "ms" => Unit::Millisecond,
            "us" | "µs" | "μs" => Unit::Microsecond,
            "min" => Unit::Minute,
            "J" => Unit::Joule,
            "eV" => Unit::ElectronVolt,
            "m^-3" | "/m^3" => Unit::PerCubicMeter,
            "cm^-3" | "/cm^3" => Unit::PerCubicCentimeter,
            "J m^3" | "J*m^3" | "J·m³" => Unit::JouleCubicMeter,
            "rad" => Unit::Radian,
            "" | "1" => Unit::One,
            other => return Err(Error::UnknownUnit(other.to_string())),
        };
        Ok(unit)
    }
}

/// A scalar value tagged with the unit it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn si(value: f64, dimension: Dimension) -> Self {
        Self::new(value, Unit::si(dimension))
    }

    pub fn dimension(&self) -> Dimension {
        self.unit.dimension()
    }

    pub fn to_si(&self) -> f64 {
        self.value * self.unit.si_factor()
    }

    /// Re-express the quantity in `target`.
    pub fn convert(&self, target: Unit) -> Result<Quantity> {
        self.check(target.dimension())?;
        if target == self.unit {
            return Ok(*self);
        }
        Ok(Quantity::new(self.to_si() / target.si_factor(), target))
    }

    /// SI value, provided the quantity has the expected dimension.
    pub fn expect(&self, dimension: Dimension) -> Result<f64> {
        self.check(dimension)?;
        Ok(self.to_si())
    }

    pub fn checked_add(&self, other: &Quantity) -> Result<Quantity> {
        let rhs = other.convert(self.unit)?;
        Ok(Quantity::new(self.value + rhs.value, self.unit))
    }

    pub fn checked_sub(&self, other: &Quantity) -> Result<Quantity> {
        let rhs = other.convert(self.unit)?;
        Ok(Quantity::new(self.value - rhs.value, self.unit))
    }

    fn check(&self, expected: Dimension) -> Result<()> {
        if self.dimension() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dimension() });
        }
        Ok(())
    }

    /// Parse `"<number> <unit>"`.
    ///
    /// Accepted extras: a `2pi*` or `2π·` prefix on frequencies in Hz
    /// (ordinary-frequency notation, the value is still read as Hz), and
    /// multiples of pi for dimensionless values (`"pi"`, `"0.5pi"`, `"pi/2"`).
    pub fn parse(input: &str) -> Result<Quantity> {
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let text = input.trim();
        if text.is_empty() {
            return Err(fail("empty value"));
        }
        if let Some(v) = parse_pi_multiple(text) {
            return Ok(Quantity::new(v, Unit::Radian));
        }

        let mut body = text;
        let mut two_pi_prefix = false;
        for prefix in ["2pi*", "2π·", "2π*", "2pi ", "2π ", "2π"] {
            if let Some(rest) = body.strip_prefix(prefix) {
                body = rest.trim_start();
                two_pi_prefix = true;
                break;
            }
        }

        let (number, unit) = body.split_at(number_prefix_len(body));
        let value: f64 = number.trim().parse().map_err(|_| fail("missing or malformed number"))?;
        if !value.is_finite() {
            return Err(fail("value is not finite"));
        }
        let unit: Unit = unit.trim().parse()?;
        if two_pi_prefix && !matches!(unit, Unit::Hertz | Unit::Kilohertz) {
            return Err(fail("the 2pi prefix is only meaningful for frequencies in Hz"));
        }
        Ok(Quantity::new(value, unit))
    }
}

// "1e5" vs "5 eV": an exponent marker only belongs to the number if a digit follows.
fn number_prefix_len(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut i = 0;
    if i < bytes.len() && matches!(bytes[i], b'+' | b'-') {
        i += 1;
    }
    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
        i += 1;
    }
    if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
        let mut j = i + 1;
        if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

fn parse_pi_multiple(text: &str) -> Option<f64> {
    let t = text.replace('π', "pi");
    let t = t.trim();
    if let Some(rest) = t.strip_prefix("pi/") {
        return rest.trim().parse::<f64>().ok().map(|d| PI / d);
    }
    let coeff = t.strip_suffix("pi")?.trim().trim_end_matches('*').trim();
    if coeff.is_empty() {
        Some(PI)
    } else {
        coeff.parse::<f64>().ok().map(|c| c * PI)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::parse(s)
    }
}

/// Angular frequency (rad/s) from an ordinary frequency in Hz.
pub fn hz(f: f64) -> f64 {
    2.0 * PI * f
}

/// Ordinary frequency in Hz from an angular frequency (rad/s).
pub fn to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn nanometers_to_meters() {
        let q = Quantity::new(5.39, Unit::Nanometer).convert(Unit::Meter).unwrap();
        assert!(rel(q.value, 5.39e-9) < 1e-15);
        assert_eq!(q.dimension(), Dimension::Length);
    }

    #[test]
    fn hertz_to_angular() {
        let q = Quantity::new(10.0, Unit::Hertz).convert(Unit::RadianPerSecond).unwrap();
        assert!((q.value - 62.8319).abs() < 1e-4);
    }

    #[test]
    fn length_to_energy_is_rejected() {
        let err = Quantity::new(1.0, Unit::Micrometer).convert(Unit::Joule).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: Dimension::Energy, found: Dimension::Length });
        let msg = err.to_string();
        assert!(msg.contains("length") && msg.contains("energy"), "{msg}");
    }

    #[test]
    fn mismatched_arithmetic_is_rejected() {
        let a = Quantity::new(1.0, Unit::Second);
        let b = Quantity::new(1.0, Unit::Meter);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_sub(&b).is_err());
        let c = Quantity::new(500.0, Unit::Millisecond);
        assert!(rel(a.checked_add(&c).unwrap().value, 1.5) < 1e-15);
    }

    #[test]
    fn rb87_constants() {
        let c = Constants::RB87;
        c.validate().unwrap();
        assert!(rel(c.atom_mass, 1.443_16e-25) < 1e-3);
        let bad = Constants { hbar: 0.0, ..c };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn parses_config_notation() {
        let a = Quantity::parse("5.58 nm").unwrap();
        assert_eq!(a.unit, Unit::Nanometer);
        let w = Quantity::parse("2pi*10 Hz").unwrap();
        assert!(rel(w.to_si(), 2.0 * PI * 10.0) < 1e-15);
        let w2 = Quantity::parse("2π·80 Hz").unwrap();
        assert!(rel(w2.to_si(), 2.0 * PI * 80.0) < 1e-15);
        assert!(rel(Quantity::parse("pi").unwrap().to_si(), PI) < 1e-15);
        assert!(rel(Quantity::parse("0.5pi").unwrap().to_si(), PI / 2.0) < 1e-15);
        assert!(rel(Quantity::parse("pi/2").unwrap().to_si(), PI / 2.0) < 1e-15);
        assert!(rel(Quantity::parse("1e5").unwrap().to_si(), 1e5) < 1e-15);
        assert_eq!(Quantity::parse("2 eV").unwrap().unit, Unit::ElectronVolt);
        assert!(rel(Quantity::parse("0.14s").unwrap().to_si(), 0.14) < 1e-15);
        assert!(rel(Quantity::parse("6e14 cm^-3").unwrap().to_si(), 6e20) < 1e-12);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(Quantity::parse("nm"), Err(Error::Parse { .. })));
        assert!(matches!(Quantity::parse("5 parsec"), Err(Error::UnknownUnit(_))));
        assert!(Quantity::parse("2pi*10 s").is_err());
        assert!(Quantity::parse("").is_err());
    }

    proptest! {
        #[test]
        fn conversion_round_trips(value in -1e6f64..1e6, from in 0usize..18, to in 0usize..18) {
            let from = Unit::ALL[from];
            let peers: Vec<Unit> =
                Unit::ALL.iter().copied().filter(|u| u.dimension() == from.dimension()).collect();
            let to = peers[to % peers.len()];
            let q = Quantity::new(value, from);
            let back = q.convert(to).unwrap().convert(from).unwrap();
            prop_assert!((back.value - value).abs() <= 1e-12 * value.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn mismatched_dimensions_always_fail(from in 0usize..18, to in 0usize..18) {
            let from = Unit::ALL[from];
            let to = Unit::ALL[to];
            prop_assume!(from.dimension() != to.dimension());
            prop_assert!(Quantity::new(1.0, from).convert(to).is_err());
        }
    }
}
