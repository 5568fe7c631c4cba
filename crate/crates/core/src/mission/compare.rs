//! Hover vs. perch comparison tables.
//!
//! Two input styles are supported. [`compare_modes`] derives every energy
//! from the propulsion model. [`compare_published`] takes per-column energies
//! as given (for instance the published reference table) and checks each
//! column's stated serving time against the energy budget.

use serde::{Deserialize, Serialize};

use super::{
    budget_endurance, resolve_cruise_speed, service_endurance_at_speed, CruiseSpeed,
    EnduranceReport, MissionProfile, ReturnPolicy, ServeMode, ServePower,
};
use crate::battery::BatterySpec;
use crate::error::{require_non_negative, Error, Result};
use crate::propulsion::AirframeParams;

/// Relative gap under which a stated serving time counts as reproduced.
pub const RECONCILE_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonSource {
    Model,
    Published,
}

/// Stated serving time vs. the one implied by the column's energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedCheck {
    pub stated_service_min: f64,
    pub computed_service_min: f64,
    pub relative_error: f64,
    pub reconciled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonColumn {
    pub label: String,
    pub serve_mode: ServeMode,
    pub payload_delta_kg: f64,
    pub report: EnduranceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<PublishedCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub source: ComparisonSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cruise_speed_m_s: Option<f64>,
    pub columns: Vec<ComparisonColumn>,
    /// Labels of columns whose stated serving time the energies do not support.
    pub unreconciled: Vec<String>,
}

impl ComparisonTable {
    pub fn column(&self, label: &str) -> Option<&ComparisonColumn> {
        self.columns.iter().find(|c| c.label == label)
    }

    /// Serving-time ratio of column `numerator` over column `denominator`.
    pub fn service_ratio(&self, numerator: &str, denominator: &str) -> Option<f64> {
        let n = self.column(numerator)?.report.service_time_s;
        let d = self.column(denominator)?.report.service_time_s;
        Some(n / d)
    }
}

pub fn rabs_label(payload_delta_kg: f64) -> String {
    format!("RABS (+{payload_delta_kg} kg)")
}

pub const ABS_LABEL: &str = "ABS";

/// Model-driven comparison: one hover column with no payload, then one perch
/// column per payload delta. All columns fly at the speed resolved for the
/// hover column.
pub fn compare_modes(
    airframe_base: &AirframeParams,
    battery: &BatterySpec,
    scenario: &MissionProfile,
    payload_deltas_kg: &[f64],
) -> Result<ComparisonTable> {
    for &d in payload_deltas_kg {
        require_non_negative("payload_deltas_kg", d)?;
    }
    let abs_profile = MissionProfile {
        serve_mode: ServeMode::Hover,
        gripper: None,
        payload_delta_kg: 0.0,
        ..scenario.clone()
    };
    let speed = resolve_cruise_speed(airframe_base, battery, &abs_profile)?;

    let mut columns = Vec::with_capacity(payload_deltas_kg.len() + 1);
    columns.push(ComparisonColumn {
        label: ABS_LABEL.to_owned(),
        serve_mode: ServeMode::Hover,
        payload_delta_kg: 0.0,
        report: service_endurance_at_speed(airframe_base, battery, &abs_profile, speed)?,
        published: None,
    });
    if !payload_deltas_kg.is_empty() {
        let gripper = scenario.gripper.clone().ok_or(Error::MissingGripper)?;
        for &delta in payload_deltas_kg {
            let profile = MissionProfile {
                serve_mode: ServeMode::Grasp,
                gripper: Some(gripper.clone()),
                payload_delta_kg: delta,
                cruise_speed: CruiseSpeed::Fixed { speed_m_s: speed },
                ..scenario.clone()
            };
            columns.push(ComparisonColumn {
                label: rabs_label(delta),
                serve_mode: ServeMode::Grasp,
                payload_delta_kg: delta,
                report: service_endurance_at_speed(airframe_base, battery, &profile, speed)?,
                published: None,
            });
        }
    }
    Ok(ComparisonTable {
        source: ComparisonSource::Model,
        cruise_speed_m_s: Some(speed),
        columns,
        unreconciled: Vec::new(),
    })
}

/// One column of energies taken verbatim from a reference table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublishedColumn {
    pub label: String,
    pub serve_mode: ServeMode,
    #[serde(default)]
    pub payload_delta_kg: f64,
    pub flying_energy_j: f64,
    pub comm_power_w: f64,
    pub grasp_power_w: f64,
    pub hover_power_w: f64,
    /// Serving time stated alongside the energies, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stated_service_min: Option<f64>,
}

/// The 800 m, 4 kg reference comparison: one hover column and four perch
/// columns with 0.4 kg payload steps.
pub fn reference_table() -> Vec<PublishedColumn> {
    let rabs = |delta: f64, flying_kj: f64, minutes: f64| PublishedColumn {
        label: rabs_label(delta),
        serve_mode: ServeMode::Grasp,
        payload_delta_kg: delta,
        flying_energy_j: flying_kj * 1000.0,
        comm_power_w: 15.0,
        grasp_power_w: 15.0,
        hover_power_w: 0.0,
        stated_service_min: Some(minutes),
    };
    vec![
        PublishedColumn {
            label: ABS_LABEL.to_owned(),
            serve_mode: ServeMode::Hover,
            payload_delta_kg: 0.0,
            flying_energy_j: 23_910.0,
            comm_power_w: 15.0,
            grasp_power_w: 0.0,
            hover_power_w: 323.05,
            stated_service_min: Some(4.88),
        },
        rabs(0.4, 25.58, 171.2),
        rabs(0.8, 27.32, 33.67),
        rabs(1.2, 29.13, 23.6),
        rabs(1.6, 31.02, 13.1),
    ]
}

/// Table-driven comparison against a fixed usable energy.
pub fn compare_published(
    usable_energy_j: f64,
    columns: &[PublishedColumn],
    return_policy: ReturnPolicy,
) -> Result<ComparisonTable> {
    let mut out = Vec::with_capacity(columns.len());
    let mut unreconciled = Vec::new();
    for col in columns {
        require_non_negative("flying_energy_j", col.flying_energy_j)?;
        require_non_negative("comm_power_w", col.comm_power_w)?;
        require_non_negative("grasp_power_w", col.grasp_power_w)?;
        require_non_negative("hover_power_w", col.hover_power_w)?;
        let serve = ServePower::new(col.hover_power_w, col.grasp_power_w, col.comm_power_w);
        let report = budget_endurance(
            usable_energy_j,
            col.flying_energy_j,
            return_policy,
            col.serve_mode,
            &serve,
        )?;
        let published = col.stated_service_min.map(|stated| {
            let computed = report.service_time_min();
            let relative_error = ((computed - stated) / stated).abs();
            PublishedCheck {
                stated_service_min: stated,
                computed_service_min: computed,
                relative_error,
                reconciled: relative_error <= RECONCILE_TOLERANCE,
            }
        });
        if published.is_some_and(|p| !p.reconciled) {
            unreconciled.push(col.label.clone());
        }
        out.push(ComparisonColumn {
            label: col.label.clone(),
            serve_mode: col.serve_mode,
            payload_delta_kg: col.payload_delta_kg,
            report,
            published,
        });
    }
    Ok(ComparisonTable {
        source: ComparisonSource::Published,
        cruise_speed_m_s: None,
        columns: out,
        unreconciled,
    })
}
