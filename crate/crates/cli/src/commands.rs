use anyhow::{Context, Result};
use serde::Serialize;

use rabs_core::battery::usable_energy;
use rabs_core::grasping::grasp_power_draw;
use rabs_core::mission::compare::{
    compare_modes, compare_published, reference_table, ComparisonSource, ComparisonTable,
};
use rabs_core::mission::{mass_sweep, service_endurance, EnduranceReport};
use rabs_core::planner::{exhaustive_assign, greedy_assign, plan_report};
use rabs_core::propulsion::{
    calibrate_blade_profile_from_hover, hover_power, infer_cruise_speed, propulsion_power,
    CalibrationNote, PowerBreakdown,
};

use crate::config::{usage, RunConfig, DEFAULT_MASS_GRID_KG};
use crate::output::{Cell, Rendered, Table};

pub const POWER_HEADERS: &[&str] = &[
    "mass_kg",
    "speed_m_s",
    "blade_profile_w",
    "induced_w",
    "parasite_w",
    "total_w",
];

pub const ENDURANCE_HEADERS: &[&str] = &[
    "serve_mode",
    "platform_mass_kg",
    "cruise_speed_m_s",
    "usable_energy_j",
    "flying_energy_j",
    "hover_power_w",
    "grasp_power_w",
    "comm_power_w",
    "serve_power_w",
    "service_time_s",
    "service_time_min",
    "status",
];

pub const COMPARE_HEADERS: &[&str] = &[
    "label",
    "serve_mode",
    "payload_delta_kg",
    "platform_mass_kg",
    "cruise_speed_m_s",
    "flying_energy_j",
    "hover_power_w",
    "grasp_power_w",
    "comm_power_w",
    "serve_power_w",
    "service_time_min",
    "status",
    "stated_service_min",
    "reconciled",
];

pub const SWEEP_HEADERS: &[&str] = &["mass_kg", "hover_w", "grasp_w", "comm_w"];

pub const PLAN_HEADERS: &[&str] = &[
    "unit_id",
    "site_id",
    "demand_weight",
    "value",
    "cruise_speed_m_s",
    "flying_energy_j",
    "serve_power_w",
    "service_time_s",
    "status",
];

/// Serde name of a unit enum variant.
fn tag(value: &impl Serialize) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => panic!("expected a unit variant, got {other:?}"),
    }
}

#[derive(Serialize)]
struct PowerOutput {
    mass_kg: f64,
    speed_m_s: f64,
    #[serde(flatten)]
    power: PowerBreakdown,
}

pub fn hover_power_cmd(cfg: &RunConfig, speed_m_s: Option<f64>) -> Result<Rendered> {
    let power = match speed_m_s {
        None => hover_power(&cfg.airframe)?,
        Some(v) => propulsion_power(&cfg.airframe, v)?,
    };
    let out = PowerOutput {
        mass_kg: cfg.airframe.mass_kg,
        speed_m_s: speed_m_s.unwrap_or(0.0),
        power,
    };
    let table = Table {
        headers: POWER_HEADERS,
        rows: vec![vec![
            out.mass_kg.into(),
            out.speed_m_s.into(),
            power.blade_profile_w.into(),
            power.induced_w.into(),
            power.parasite_w.into(),
            power.total_w.into(),
        ]],
    };
    Rendered::new(&out, Some(table))
}

fn endurance_row(r: &EnduranceReport) -> Vec<Cell> {
    vec![
        tag(&r.serve_mode).into(),
        r.platform_mass_kg.into(),
        r.cruise_speed_m_s.into(),
        r.usable_energy_j.into(),
        r.flying_energy_j.into(),
        r.hover_power_w.into(),
        r.grasp_power_w.into(),
        r.comm_power_w.into(),
        r.serve_power_w.into(),
        r.service_time_s.into(),
        r.service_time_min().into(),
        tag(&r.status).into(),
    ]
}

pub fn endurance_cmd(cfg: &RunConfig) -> Result<Rendered> {
    let report = service_endurance(&cfg.airframe, &cfg.battery, &cfg.mission)?;
    let table = Table {
        headers: ENDURANCE_HEADERS,
        rows: vec![endurance_row(&report)],
    };
    Rendered::new(&report, Some(table))
}

pub fn compare_table(cfg: &RunConfig, source: ComparisonSource) -> Result<ComparisonTable> {
    Ok(match source {
        ComparisonSource::Model => {
            let mut scenario = cfg.mission.clone();
            scenario.gripper.get_or_insert_with(|| cfg.gripper.clone());
            compare_modes(
                &cfg.airframe,
                &cfg.battery,
                &scenario,
                &cfg.compare.payload_deltas_kg,
            )?
        }
        ComparisonSource::Published => {
            let columns = cfg
                .compare
                .published_columns
                .clone()
                .unwrap_or_else(reference_table);
            compare_published(
                usable_energy(&cfg.battery),
                &columns,
                cfg.mission.return_policy,
            )?
        }
    })
}

pub fn compare_cmd(cfg: &RunConfig, source: Option<ComparisonSource>) -> Result<Rendered> {
    let table = compare_table(cfg, source.unwrap_or(cfg.compare.source))?;
    let rows = table
        .columns
        .iter()
        .map(|c| {
            let r = &c.report;
            vec![
                c.label.as_str().into(),
                tag(&c.serve_mode).into(),
                c.payload_delta_kg.into(),
                r.platform_mass_kg.into(),
                r.cruise_speed_m_s.into(),
                r.flying_energy_j.into(),
                r.hover_power_w.into(),
                r.grasp_power_w.into(),
                r.comm_power_w.into(),
                r.serve_power_w.into(),
                r.service_time_min().into(),
                tag(&r.status).into(),
                c.published.map(|p| p.stated_service_min).into(),
                match c.published {
                    Some(p) => p.reconciled.to_string().into(),
                    None => "".into(),
                },
            ]
        })
        .collect();
    Rendered::new(
        &table,
        Some(Table {
            headers: COMPARE_HEADERS,
            rows,
        }),
    )
}

pub fn sweep_cmd(cfg: &RunConfig) -> Result<Rendered> {
    let grid = cfg
        .sweep
        .mass_grid_kg
        .clone()
        .unwrap_or_else(|| DEFAULT_MASS_GRID_KG.to_vec());
    let gripper_w = cfg
        .sweep
        .gripper_power_w
        .unwrap_or_else(|| grasp_power_draw(&cfg.gripper));
    let comm_w = cfg.sweep.comm_power_w.unwrap_or(cfg.mission.comm_power_w);
    let points = mass_sweep(&cfg.airframe, gripper_w, comm_w, &grid)?;
    let rows = points
        .iter()
        .map(|p| {
            vec![
                p.mass_kg.into(),
                p.hover_w.into(),
                p.grasp_w.into(),
                p.comm_w.into(),
            ]
        })
        .collect();
    Rendered::new(
        &points,
        Some(Table {
            headers: SWEEP_HEADERS,
            rows,
        }),
    )
}

pub fn plan_cmd(cfg: &RunConfig, exhaustive: bool) -> Result<Rendered> {
    let instance = cfg
        .plan
        .as_ref()
        .ok_or_else(|| usage("plan: the config has no `plan` document"))?;
    let (solver, assignment) = if exhaustive {
        let a = exhaustive_assign(instance).map_err(|e| match e {
            rabs_core::Error::SizeLimit { .. } => {
                usage(format!("{e}; drop --exhaustive to use the greedy solver"))
            }
            other => other.into(),
        })?;
        ("exhaustive", a)
    } else {
        ("greedy", greedy_assign(instance)?)
    };
    let report = plan_report(instance, &assignment, solver)?;
    let rows = report
        .pairs
        .iter()
        .map(|p| {
            let e = &p.endurance;
            vec![
                p.unit_id.as_str().into(),
                p.site_id.as_str().into(),
                p.demand_weight.into(),
                p.value.into(),
                e.cruise_speed_m_s.into(),
                e.flying_energy_j.into(),
                e.serve_power_w.into(),
                e.service_time_s.into(),
                tag(&e.status).into(),
            ]
        })
        .collect();
    Rendered::new(
        &report,
        Some(Table {
            headers: PLAN_HEADERS,
            rows,
        }),
    )
}

pub fn calibrate_cmd(cfg: &RunConfig) -> Result<Rendered> {
    let c = &cfg.calibrate;
    let cruise =
        match (c.cruise_distance_m, c.cruise_target_energy_j) {
            (Some(d), Some(e)) => Some((d, e)),
            (None, None) => None,
            _ => return Err(usage(
                "calibrate: cruise_distance_m and cruise_target_energy_j must be given together",
            )),
        };
    if c.observed_hover_w.is_none() && cruise.is_none() {
        return Err(usage(
            "calibrate: set calibrate.observed_hover_w and/or \
             calibrate.cruise_distance_m with calibrate.cruise_target_energy_j",
        ));
    }
    let mut airframe = match c.observed_hover_w {
        Some(w) => calibrate_blade_profile_from_hover(&cfg.airframe, w)?,
        None => cfg.airframe.clone(),
    };
    if let Some((distance, target)) = cruise {
        let speed = infer_cruise_speed(&airframe, distance, target)
            .context("calibrate: cruise speed inference")?;
        let note = airframe.calibration.get_or_insert(CalibrationNote {
            observed_hover_w: None,
            cruise_distance_m: None,
            cruise_target_energy_j: None,
            inferred_cruise_speed_m_s: None,
        });
        note.cruise_distance_m = Some(distance);
        note.cruise_target_energy_j = Some(target);
        note.inferred_cruise_speed_m_s = Some(speed);
    }
    Rendered::new(&airframe, None)
}
