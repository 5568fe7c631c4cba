#![allow(dead_code)]

use std::collections::BTreeMap;

use rabs_core::catalog;
use rabs_core::mission::{CruiseSpeed, MissionProfile};
use rabs_core::planner::{PlanInstance, Site, Unit};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BATTERY_IDS: [&str; 5] = [
    "zappers-sg4",
    "gifi-power-8050",
    "tattu-9000",
    "tattu-10000",
    "gens-ace-11000",
];

pub fn missions() -> BTreeMap<String, MissionProfile> {
    let infer = CruiseSpeed::Infer {
        target_flying_energy_j: 23_910.0,
    };
    let mut m = BTreeMap::new();
    m.insert("abs".to_owned(), MissionProfile::hover(800.0, infer));
    m.insert(
        "rabs-ii".to_owned(),
        MissionProfile::grasp(800.0, infer, catalog::gripper("type-ii").unwrap(), 0.4),
    );
    m.insert(
        "rabs-iii-fast".to_owned(),
        MissionProfile::grasp(
            800.0,
            CruiseSpeed::Fixed { speed_m_s: 15.0 },
            catalog::gripper("type-iii").unwrap(),
            0.8,
        ),
    );
    m.insert(
        "rabs-neutral".to_owned(),
        MissionProfile::grasp(800.0, infer, catalog::gripper("retention").unwrap(), 1.2),
    );
    m
}

/// Random instance with 1..=max_units units and 1..=max_sites sites.
pub fn random_instance(seed: u64, max_units: usize, max_sites: usize) -> PlanInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let missions = missions();
    let mission_ids: Vec<String> = missions.keys().cloned().collect();
    let n_units = rng.gen_range(1..=max_units);
    let n_sites = rng.gen_range(1..=max_sites);
    let sites = (0..n_sites)
        .map(|i| Site {
            id: format!("site-{i}"),
            depot_distance_m: rng.gen_range(200.0..12_000.0),
            // a few zero-demand sites
            demand_weight: if rng.gen_bool(0.1) {
                0.0
            } else {
                rng.gen_range(0.1..5.0)
            },
        })
        .collect();
    let units = (0..n_units)
        .map(|i| Unit {
            id: format!("unit-{i}"),
            airframe: catalog::CANONICAL_AIRFRAME.to_owned(),
            battery: BATTERY_IDS.choose(&mut rng).unwrap().to_string(),
            mission: mission_ids.choose(&mut rng).unwrap().clone(),
        })
        .collect();
    PlanInstance {
        missions,
        sites,
        units,
        ..Default::default()
    }
}

/// Two units, two sites, where greedy's first pick blocks the better matching:
/// the long-range hover unit takes the near high-demand site, leaving the
/// short-range percher with nothing it can reach.
pub fn greedy_trap() -> PlanInstance {
    let mut missions = missions();
    missions.insert(
        "abs-fixed".to_owned(),
        MissionProfile::hover(800.0, CruiseSpeed::Fixed { speed_m_s: 7.186 }),
    );
    let mut batteries = BTreeMap::new();
    batteries.insert(
        "small".to_owned(),
        rabs_core::battery::BatterySpec {
            name: "1000 mAh".to_owned(),
            capacity_mah: 1000.0,
            voltage_v: 15.2,
            chemistry: "LiPo".to_owned(),
            weight_kg: 0.07,
            usable_fraction: 1.0,
        },
    );
    PlanInstance {
        batteries,
        missions,
        sites: vec![
            Site {
                id: "near".to_owned(),
                depot_distance_m: 800.0,
                demand_weight: 2.0,
            },
            Site {
                id: "far".to_owned(),
                depot_distance_m: 3000.0,
                demand_weight: 1.0,
            },
        ],
        units: vec![
            Unit {
                id: "hover-big".to_owned(),
                airframe: catalog::CANONICAL_AIRFRAME.to_owned(),
                battery: "tattu-9000".to_owned(),
                mission: "abs-fixed".to_owned(),
            },
            Unit {
                id: "perch-small".to_owned(),
                airframe: catalog::CANONICAL_AIRFRAME.to_owned(),
                battery: "small".to_owned(),
                mission: "rabs-ii".to_owned(),
            },
        ],
        ..Default::default()
    }
}
