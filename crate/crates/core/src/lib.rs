//! Endurance models for aerial base stations that either hover over a hotspot
//! or perch on street furniture with a gripper and switch their rotors off.
//!
//! * [`propulsion`]: rotary-wing forward-flight and hover power, flight energy,
//!   cruise-speed inference and calibration.
//! * [`grasping`]: friction grip force and the solenoid gripper catalog.
//! * [`battery`]: usable battery energy.
//! * [`mission`]: fly-then-serve endurance, hover vs. perch comparisons, mass
//!   sweeps and site acoustics.
//! * [`planner`]: assigning units to hotspot sites.

pub mod battery;
pub mod catalog;
pub mod error;
pub mod grasping;
pub mod mission;
pub mod planner;
pub mod propulsion;

pub use error::{Error, Result};

/// Gravitational acceleration used unless a profile overrides it, m/s².
pub const STANDARD_GRAVITY_M_S2: f64 = 9.8;
