//! Onboard energy store.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Result};

const SECONDS_PER_HOUR: f64 = 3600.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatterySpec {
    pub name: String,
    pub capacity_mah: f64,
    pub voltage_v: f64,
    pub chemistry: String,
    pub weight_kg: f64,
    /// Depth-of-discharge fraction available to the mission.
    #[serde(default = "full_discharge")]
    pub usable_fraction: f64,
}

fn full_discharge() -> f64 {
    1.0
}

impl BatterySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("capacity_mah", self.capacity_mah)?;
        require_positive("voltage_v", self.voltage_v)?;
        require_positive("weight_kg", self.weight_kg)?;
        if !(self.usable_fraction > 0.0 && self.usable_fraction <= 1.0) {
            return Err(invalid(
                "usable_fraction",
                format!("must lie in (0, 1], got {}", self.usable_fraction),
            ));
        }
        Ok(())
    }
}

/// Energy available to the mission, joules.
pub fn usable_energy(spec: &BatterySpec) -> f64 {
    spec.capacity_mah / 1000.0 * spec.voltage_v * SECONDS_PER_HOUR * spec.usable_fraction
}
