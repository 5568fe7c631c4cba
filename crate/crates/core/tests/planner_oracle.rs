mod common;

use rabs_core::planner::{
    evaluate_plan, exhaustive_assign, greedy_assign, plan_report, AssignedPair, Assignment,
    PlanInstance,
};

/// Independent brute force over all partial matchings using only
/// `evaluate_plan`, for small instances.
fn brute_force_objective(instance: &PlanInstance) -> f64 {
    fn rec(
        instance: &PlanInstance,
        unit: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<AssignedPair>,
        best: &mut f64,
    ) {
        if unit == instance.units.len() {
            let a = Assignment {
                pairs: pairs.clone(),
                objective: 0.0,
            };
            let v = evaluate_plan(instance, &a).unwrap();
            if v > *best {
                *best = v;
            }
            return;
        }
        rec(instance, unit + 1, used, pairs, best);
        for s in 0..instance.sites.len() {
            if !used[s] {
                used[s] = true;
                pairs.push(AssignedPair {
                    unit_id: instance.units[unit].id.clone(),
                    site_id: instance.sites[s].id.clone(),
                });
                rec(instance, unit + 1, used, pairs, best);
                pairs.pop();
                used[s] = false;
            }
        }
    }
    let mut best = 0.0;
    rec(
        instance,
        0,
        &mut vec![false; instance.sites.len()],
        &mut Vec::new(),
        &mut best,
    );
    best
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn greedy_trap_is_strictly_suboptimal() {
    let inst = common::greedy_trap();
    let greedy = greedy_assign(&inst).unwrap();
    let best = exhaustive_assign(&inst).unwrap();
    assert_eq!(
        greedy.pairs,
        [AssignedPair {
            unit_id: "hover-big".into(),
            site_id: "near".into()
        }]
    );
    assert_eq!(best.pairs.len(), 2);
    assert!(
        best.objective > greedy.objective * 1.2,
        "{best:?} vs {greedy:?}"
    );
    assert!(close(best.objective, brute_force_objective(&inst)));
}

#[test]
fn exhaustive_matches_brute_force_on_small_instances() {
    for seed in 0..15 {
        let inst = common::random_instance(1000 + seed, 3, 4);
        let best = exhaustive_assign(&inst).unwrap();
        assert!(
            close(best.objective, brute_force_objective(&inst)),
            "seed {seed}"
        );
        assert!(close(best.objective, evaluate_plan(&inst, &best).unwrap()));
    }
}

#[test]
fn greedy_never_beats_exhaustive_and_keeps_half() {
    for seed in 0..30 {
        let inst = common::random_instance(seed, 4, 6);
        let g = greedy_assign(&inst).unwrap();
        let e = exhaustive_assign(&inst).unwrap();
        assert!(e.objective >= g.objective, "seed {seed}");
        assert!(g.objective >= 0.5 * e.objective, "seed {seed}");
        assert!(close(g.objective, evaluate_plan(&inst, &g).unwrap()));
    }
}

#[test]
fn demand_scaling_scales_objective_and_keeps_argmax() {
    for seed in 0..10 {
        let inst = common::random_instance(500 + seed, 3, 5);
        let mut scaled = inst.clone();
        for s in &mut scaled.sites {
            s.demand_weight *= 3.5;
        }
        let a = exhaustive_assign(&inst).unwrap();
        let b = exhaustive_assign(&scaled).unwrap();
        assert!(close(b.objective, 3.5 * a.objective), "seed {seed}");
        assert_eq!(a.pairs, b.pairs, "seed {seed}");
    }
}

#[test]
fn relabelling_preserves_objective() {
    for seed in 0..10 {
        let inst = common::random_instance(700 + seed, 4, 5);
        let mut renamed = inst.clone();
        for s in &mut renamed.sites {
            s.id = format!("zz-{}", s.id);
        }
        for u in &mut renamed.units {
            u.id = format!("yy-{}", u.id);
        }
        renamed.sites.reverse();
        renamed.units.reverse();
        let a = exhaustive_assign(&inst).unwrap();
        let b = exhaustive_assign(&renamed).unwrap();
        assert!(close(a.objective, b.objective), "seed {seed}");
    }
}

#[test]
fn planners_are_deterministic() {
    let inst = common::random_instance(42, 4, 6);
    let g = greedy_assign(&inst).unwrap();
    let e = exhaustive_assign(&inst).unwrap();
    for _ in 0..3 {
        assert_eq!(greedy_assign(&inst).unwrap(), g);
        assert_eq!(exhaustive_assign(&inst).unwrap(), e);
    }
}

#[test]
fn single_reference_pair_matches_published_endurance() {
    // 4 kg airframe + 0.4 kg gripper, 800 m, 30 W serving: the model gives
    // its own flying energy, so only a coarse match to the 171.2 min figure
    let mut inst = common::random_instance(0, 1, 1);
    inst.missions.insert(
        "rabs-iii".to_owned(),
        rabs_core::mission::MissionProfile::grasp(
            800.0,
            rabs_core::mission::CruiseSpeed::Infer {
                target_flying_energy_j: 23_910.0,
            },
            rabs_core::catalog::gripper("type-iii").unwrap(),
            0.4,
        ),
    );
    inst.units[0].battery = "zappers-sg4".into();
    inst.units[0].mission = "rabs-iii".into();
    inst.sites[0].depot_distance_m = 800.0;
    inst.sites[0].demand_weight = 1.0;
    let g = greedy_assign(&inst).unwrap();
    // (333792 - 26144.8) / 30
    assert!((g.objective - 10_254.9).abs() < 0.5, "{}", g.objective);
    assert!(((g.objective - 10_273.7) / 10_273.7).abs() < 0.005);

    let report = plan_report(&inst, &g, "greedy").unwrap();
    assert_eq!(report.pairs.len(), 1);
    assert!(close(report.pairs[0].value, g.objective));
}

#[test]
fn instance_json_round_trip() {
    let inst = common::greedy_trap();
    let text = serde_json::to_string_pretty(&inst).unwrap();
    assert_eq!(PlanInstance::from_json(&text).unwrap(), inst);
}
