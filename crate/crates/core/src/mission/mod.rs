//! Fly-then-serve mission accounting.
//!
//! A unit leaves the depot, flies `D` metres to its hotspot, and serves until
//! the battery is spent (keeping enough for the return leg when asked to).
//! Serving either hovers with rotors on or perches on street furniture with a
//! gripper and rotors off.

pub mod acoustics;
pub mod compare;

use serde::{Deserialize, Serialize};

use crate::battery::{usable_energy, BatterySpec};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::grasping::{grasp_power_draw, GripperSpec};
use crate::propulsion::{flight_energy, hover_power, infer_cruise_speed, AirframeParams};

/// Communications draw assumed when none is configured, watts.
pub const DEFAULT_COMM_POWER_W: f64 = 15.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ServeMode {
    Hover,
    Grasp,
}

impl std::fmt::Display for ServeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ServeMode::Hover => "hover",
            ServeMode::Grasp => "grasp",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReturnPolicy {
    #[default]
    OneWay,
    RoundTrip,
}

impl ReturnPolicy {
    pub fn legs(self) -> f64 {
        match self {
            ReturnPolicy::OneWay => 1.0,
            ReturnPolicy::RoundTrip => 2.0,
        }
    }
}

/// How the cruise speed is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum CruiseSpeed {
    Fixed {
        speed_m_s: f64,
    },
    /// Pick the speed at which the reference (payload-free) airframe spends
    /// exactly this much energy on one leg.
    Infer {
        target_flying_energy_j: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionProfile {
    pub depot_distance_m: f64,
    pub cruise_speed: CruiseSpeed,
    pub serve_mode: ServeMode,
    #[serde(default = "default_comm_power")]
    pub comm_power_w: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gripper: Option<GripperSpec>,
    #[serde(default)]
    pub return_policy: ReturnPolicy,
    /// End-effector mass added on top of the airframe, kilograms.
    #[serde(default)]
    pub payload_delta_kg: f64,
    /// When false, the battery's weight is added to the airframe mass.
    #[serde(default = "yes")]
    pub airframe_includes_battery: bool,
}

fn default_comm_power() -> f64 {
    DEFAULT_COMM_POWER_W
}

fn yes() -> bool {
    true
}

impl MissionProfile {
    pub fn from_json(text: &str) -> Result<Self> {
        let profile: Self = serde_json::from_str(text)?;
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("depot_distance_m", self.depot_distance_m)?;
        require_non_negative("comm_power_w", self.comm_power_w)?;
        require_non_negative("payload_delta_kg", self.payload_delta_kg)?;
        match self.cruise_speed {
            CruiseSpeed::Fixed { speed_m_s } => {
                require_positive("cruise_speed.speed_m_s", speed_m_s)?
            }
            CruiseSpeed::Infer {
                target_flying_energy_j,
            } => require_positive(
                "cruise_speed.target_flying_energy_j",
                target_flying_energy_j,
            )?,
        }
        match (&self.serve_mode, &self.gripper) {
            (ServeMode::Grasp, None) => return Err(Error::MissingGripper),
            (_, Some(g)) => g.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// Hover-served mission from the depot at `depot_distance_m`.
    pub fn hover(depot_distance_m: f64, cruise_speed: CruiseSpeed) -> Self {
        Self {
            depot_distance_m,
            cruise_speed,
            serve_mode: ServeMode::Hover,
            comm_power_w: DEFAULT_COMM_POWER_W,
            gripper: None,
            return_policy: ReturnPolicy::OneWay,
            payload_delta_kg: 0.0,
            airframe_includes_battery: true,
        }
    }

    /// Perch-served mission carrying `gripper`, which adds `payload_delta_kg`.
    pub fn grasp(
        depot_distance_m: f64,
        cruise_speed: CruiseSpeed,
        gripper: GripperSpec,
        payload_delta_kg: f64,
    ) -> Self {
        Self {
            serve_mode: ServeMode::Grasp,
            gripper: Some(gripper),
            payload_delta_kg,
            ..Self::hover(depot_distance_m, cruise_speed)
        }
    }
}

/// Power drawn while serving, watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ServePower {
    pub hover_w: f64,
    pub grasp_w: f64,
    pub comm_w: f64,
    pub total_w: f64,
}

impl ServePower {
    pub fn new(hover_w: f64, grasp_w: f64, comm_w: f64) -> Self {
        Self {
            hover_w,
            grasp_w,
            comm_w,
            total_w: hover_w + grasp_w + comm_w,
        }
    }
}

/// Serving draw of `airframe` (already carrying its payload) under `profile`.
pub fn serve_power(airframe: &AirframeParams, profile: &MissionProfile) -> Result<ServePower> {
    match profile.serve_mode {
        ServeMode::Hover => Ok(ServePower::new(
            hover_power(airframe)?.total_w,
            0.0,
            profile.comm_power_w,
        )),
        ServeMode::Grasp => {
            let gripper = profile.gripper.as_ref().ok_or(Error::MissingGripper)?;
            Ok(ServePower::new(
                0.0,
                grasp_power_draw(gripper),
                profile.comm_power_w,
            ))
        }
    }
}

/// Whether the battery covers the mission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyStatus {
    Serviceable,
    /// The hotspot is reachable but nothing is left to serve with
    /// (or to keep in reserve for the return leg).
    FlyableUnserviceable,
    /// The battery cannot cover even the outbound leg.
    Unflyable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnduranceReport {
    pub serve_mode: ServeMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub platform_mass_kg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cruise_speed_m_s: Option<f64>,
    pub usable_energy_j: f64,
    pub flying_energy_j: f64,
    pub serve_power_w: f64,
    pub hover_power_w: f64,
    pub grasp_power_w: f64,
    pub comm_power_w: f64,
    pub service_time_s: f64,
    pub status: EnergyStatus,
}

impl EnduranceReport {
    pub fn service_time_min(&self) -> f64 {
        self.service_time_s / 60.0
    }

    pub fn is_serviceable(&self) -> bool {
        self.status == EnergyStatus::Serviceable
    }
}

/// Serving time left once the flying legs are paid for.
pub fn budget_endurance(
    usable_energy_j: f64,
    one_way_flying_energy_j: f64,
    return_policy: ReturnPolicy,
    serve_mode: ServeMode,
    serve: &ServePower,
) -> Result<EnduranceReport> {
    require_non_negative("usable_energy_j", usable_energy_j)?;
    require_non_negative("flying_energy_j", one_way_flying_energy_j)?;
    if serve.total_w.is_nan() || serve.total_w <= 0.0 {
        return Err(Error::ZeroServePower);
    }
    let flying_energy_j = one_way_flying_energy_j * return_policy.legs();
    let remaining = usable_energy_j - flying_energy_j;
    let (status, service_time_s) = if usable_energy_j < one_way_flying_energy_j {
        (EnergyStatus::Unflyable, 0.0)
    } else if remaining <= 0.0 {
        (EnergyStatus::FlyableUnserviceable, 0.0)
    } else {
        (EnergyStatus::Serviceable, remaining / serve.total_w)
    };
    Ok(EnduranceReport {
        serve_mode,
        platform_mass_kg: None,
        cruise_speed_m_s: None,
        usable_energy_j,
        flying_energy_j,
        serve_power_w: serve.total_w,
        hover_power_w: serve.hover_w,
        grasp_power_w: serve.grasp_w,
        comm_power_w: serve.comm_w,
        service_time_s,
        status,
    })
}

/// Airframe before the end-effector payload: the base airframe plus the
/// battery when its mass is not already counted.
pub fn reference_airframe(
    base: &AirframeParams,
    battery: &BatterySpec,
    profile: &MissionProfile,
) -> Result<AirframeParams> {
    if profile.airframe_includes_battery {
        Ok(base.clone())
    } else {
        base.with_mass_kg(base.mass_kg + battery.weight_kg)
    }
}

/// Airframe as flown: reference airframe plus the end-effector payload.
pub fn effective_airframe(
    base: &AirframeParams,
    battery: &BatterySpec,
    profile: &MissionProfile,
) -> Result<AirframeParams> {
    let reference = reference_airframe(base, battery, profile)?;
    if profile.payload_delta_kg == 0.0 {
        return Ok(reference);
    }
    reference.with_mass_kg(reference.mass_kg + profile.payload_delta_kg)
}

/// Concrete cruise speed for `profile`. Inferred speeds are solved against the
/// reference airframe so that payload variants share one speed.
pub fn resolve_cruise_speed(
    base: &AirframeParams,
    battery: &BatterySpec,
    profile: &MissionProfile,
) -> Result<f64> {
    match profile.cruise_speed {
        CruiseSpeed::Fixed { speed_m_s } => Ok(speed_m_s),
        CruiseSpeed::Infer {
            target_flying_energy_j,
        } => infer_cruise_speed(
            &reference_airframe(base, battery, profile)?,
            profile.depot_distance_m,
            target_flying_energy_j,
        ),
    }
}

/// Full endurance evaluation of one unit flying `profile`.
pub fn service_endurance(
    base: &AirframeParams,
    battery: &BatterySpec,
    profile: &MissionProfile,
) -> Result<EnduranceReport> {
    let speed = resolve_cruise_speed(base, battery, profile)?;
    service_endurance_at_speed(base, battery, profile, speed)
}

pub(crate) fn service_endurance_at_speed(
    base: &AirframeParams,
    battery: &BatterySpec,
    profile: &MissionProfile,
    speed_m_s: f64,
) -> Result<EnduranceReport> {
    profile.validate()?;
    battery.validate()?;
    let airframe = effective_airframe(base, battery, profile)?;
    let one_way = flight_energy(&airframe, profile.depot_distance_m, speed_m_s)?;
    let serve = serve_power(&airframe, profile)?;
    let mut report = budget_endurance(
        usable_energy(battery),
        one_way,
        profile.return_policy,
        profile.serve_mode,
        &serve,
    )?;
    report.platform_mass_kg = Some(airframe.mass_kg);
    report.cruise_speed_m_s = Some(speed_m_s);
    Ok(report)
}

/// One point of the serving-power vs. mass series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub mass_kg: f64,
    pub hover_w: f64,
    pub grasp_w: f64,
    pub comm_w: f64,
}

/// Hover, grasp and communications power over a grid of platform masses.
pub fn mass_sweep(
    airframe: &AirframeParams,
    gripper_power_w: f64,
    comm_power_w: f64,
    mass_grid_kg: &[f64],
) -> Result<Vec<SweepPoint>> {
    if mass_grid_kg.is_empty() {
        return Err(crate::error::invalid("mass_grid_kg", "must not be empty"));
    }
    require_non_negative("gripper_power_w", gripper_power_w)?;
    require_non_negative("comm_power_w", comm_power_w)?;
    mass_grid_kg
        .iter()
        .map(|&mass_kg| {
            let hover_w = hover_power(&airframe.with_mass_kg(mass_kg)?)?.total_w;
            Ok(SweepPoint {
                mass_kg,
                hover_w,
                grasp_w: gripper_power_w,
                comm_w: comm_power_w,
            })
        })
        .collect()
}
