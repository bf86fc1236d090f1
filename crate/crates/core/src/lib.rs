//! Simulator for a collisional controlled-phase gate between two spin waves
//! stored in a Bose-Einstein condensate.
//!
//! The chain runs from raw scattering lengths ([`medium`]) through the
//! static pair physics ([`twobody`]) and the trap-compression ramps
//! ([`dynamics`]) to the assembled gate budget ([`protocol`]). Every
//! approximation has an independent numerical check: the exact
//! contact-interaction pair energy for first-order perturbation theory and
//! a grid propagation for the scale-equation excitation probability.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod medium;
pub mod ode;
pub mod protocol;
pub mod quantities;
pub mod twobody;
pub mod verify;

pub use error::{Error, Result};
pub use medium::{CondensateProfile, Containment, EffectiveMedium, ScatteringSet};
pub use quantities::{Constants, Dimension, Quantity, Unit};
pub use twobody::{ExactPairEnergy, ShiftResult, TrapState};
