//! Built-in airframe, battery and gripper profiles.

use std::collections::BTreeMap;

use crate::battery::BatterySpec;
use crate::error::{Error, Result};
use crate::grasping::GripperSpec;
use crate::propulsion::AirframeParams;

pub const CANONICAL_AIRFRAME: &str = "canonical-4kg";
pub const REFERENCE_BATTERY: &str = "zappers-sg4";

const AIRFRAME_JSON: &str = include_str!("../data/canonical-4kg.json");
const BATTERIES_JSON: &str = include_str!("../data/batteries.json");
const GRIPPERS_JSON: &str = include_str!("../data/grippers.json");

pub fn airframe(id: &str) -> Result<AirframeParams> {
    match id {
        CANONICAL_AIRFRAME => AirframeParams::from_json(AIRFRAME_JSON),
        _ => Err(Error::UnknownId {
            kind: "airframe profile",
            id: id.to_owned(),
        }),
    }
}

pub fn airframe_ids() -> Vec<&'static str> {
    vec![CANONICAL_AIRFRAME]
}

pub fn batteries() -> BTreeMap<String, BatterySpec> {
    serde_json::from_str(BATTERIES_JSON).expect("bundled battery catalog is valid JSON")
}

pub fn battery(id: &str) -> Result<BatterySpec> {
    batteries().remove(id).ok_or_else(|| Error::UnknownId {
        kind: "battery",
        id: id.to_owned(),
    })
}

pub fn gripper_catalog() -> BTreeMap<String, GripperSpec> {
    serde_json::from_str(GRIPPERS_JSON).expect("bundled gripper catalog is valid JSON")
}

pub fn grippers() -> Vec<GripperSpec> {
    gripper_catalog().into_values().collect()
}

pub fn gripper(id: &str) -> Result<GripperSpec> {
    gripper_catalog()
        .remove(id)
        .ok_or_else(|| Error::UnknownId {
            kind: "gripper",
            id: id.to_owned(),
        })
}

/// Parse a user gripper catalog (id → spec) and validate every entry.
pub fn gripper_catalog_from_json(text: &str) -> Result<BTreeMap<String, GripperSpec>> {
    let catalog: BTreeMap<String, GripperSpec> = serde_json::from_str(text)?;
    for spec in catalog.values() {
        spec.validate()?;
    }
    Ok(catalog)
}

/// Parse a user battery catalog (id → spec) and validate every entry.
pub fn battery_catalog_from_json(text: &str) -> Result<BTreeMap<String, BatterySpec>> {
    let catalog: BTreeMap<String, BatterySpec> = serde_json::from_str(text)?;
    for spec in catalog.values() {
        spec.validate()?;
    }
    Ok(catalog)
}
