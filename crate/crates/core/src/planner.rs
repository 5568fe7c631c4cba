//! Assignment of perching units to hotspot sites.
//!
//! Each unit flies one sortie to at most one site and each site hosts at most
//! one unit. A pair is worth `demand_weight × serving seconds` of that unit at
//! that site's depot distance. Pairs worth nothing are never assigned.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::battery::BatterySpec;
use crate::catalog;
use crate::error::{require_non_negative, Error, Result};
use crate::mission::{
    resolve_cruise_speed, service_endurance, CruiseSpeed, EnduranceReport, MissionProfile,
};
use crate::propulsion::AirframeParams;

/// Per-side size limit for [`exhaustive_assign`].
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Site {
    pub id: String,
    pub depot_distance_m: f64,
    pub demand_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Unit {
    pub id: String,
    pub airframe: String,
    pub battery: String,
    pub mission: String,
}

/// Sites, units, and the profiles units refer to. Airframe and battery ids
/// not defined here fall back to the built-in catalog.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanInstance {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub airframes: BTreeMap<String, AirframeParams>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub batteries: BTreeMap<String, BatterySpec>,
    #[serde(default)]
    pub missions: BTreeMap<String, MissionProfile>,
    #[serde(default)]
    pub sites: Vec<Site>,
    #[serde(default)]
    pub units: Vec<Unit>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AssignedPair {
    pub unit_id: String,
    pub site_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    /// Sorted by `(site_id, unit_id)`.
    pub pairs: Vec<AssignedPair>,
    pub objective: f64,
}

impl Assignment {
    pub fn empty() -> Self {
        Self {
            pairs: Vec::new(),
            objective: 0.0,
        }
    }
}

impl PlanInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        let instance: Self = serde_json::from_str(text)?;
        instance.validate()?;
        Ok(instance)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for site in &self.sites {
            if !seen.insert(site.id.as_str()) {
                return Err(Error::DuplicateId {
                    kind: "site",
                    id: site.id.clone(),
                });
            }
            require_non_negative("sites[].depot_distance_m", site.depot_distance_m)?;
            require_non_negative("sites[].demand_weight", site.demand_weight)?;
        }
        let mut seen = BTreeSet::new();
        for unit in &self.units {
            if !seen.insert(unit.id.as_str()) {
                return Err(Error::DuplicateId {
                    kind: "unit",
                    id: unit.id.clone(),
                });
            }
            self.resolve(unit)?;
        }
        for a in self.airframes.values() {
            a.validate()?;
        }
        for b in self.batteries.values() {
            b.validate()?;
        }
        for m in self.missions.values() {
            m.validate()?;
        }
        Ok(())
    }

    fn resolve(&self, unit: &Unit) -> Result<(AirframeParams, BatterySpec, &MissionProfile)> {
        let airframe = match self.airframes.get(&unit.airframe) {
            Some(a) => a.clone(),
            None => catalog::airframe(&unit.airframe)?,
        };
        let battery = match self.batteries.get(&unit.battery) {
            Some(b) => b.clone(),
            None => catalog::battery(&unit.battery)?,
        };
        let mission = self
            .missions
            .get(&unit.mission)
            .ok_or_else(|| Error::UnknownId {
                kind: "mission",
                id: unit.mission.clone(),
            })?;
        Ok((airframe, battery, mission))
    }

    fn site(&self, id: &str) -> Result<&Site> {
        self.sites
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownId {
                kind: "site",
                id: id.to_owned(),
            })
    }

    fn unit(&self, id: &str) -> Result<&Unit> {
        self.units
            .iter()
            .find(|u| u.id == id)
            .ok_or_else(|| Error::UnknownId {
                kind: "unit",
                id: id.to_owned(),
            })
    }

    /// Unit profiles with the cruise speed pinned. An inferred speed is solved
    /// at the mission template's own depot distance and then flown to any site.
    pub fn resolve_unit(&self, unit: &Unit) -> Result<ResolvedUnit> {
        let (airframe, battery, template) = self.resolve(unit)?;
        let speed_m_s = resolve_cruise_speed(&airframe, &battery, template)?;
        Ok(ResolvedUnit {
            airframe,
            battery,
            mission: MissionProfile {
                cruise_speed: CruiseSpeed::Fixed { speed_m_s },
                ..template.clone()
            },
        })
    }

    /// Endurance of `unit` serving `site`.
    pub fn pair_endurance(&self, unit: &Unit, site: &Site) -> Result<EnduranceReport> {
        self.resolve_unit(unit)?.endurance_at(site)
    }

    /// Objective contribution of a pair; zero when the unit cannot serve there.
    pub fn pair_value(&self, unit: &Unit, site: &Site) -> Result<f64> {
        self.resolve_unit(unit)?.value_at(site)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedUnit {
    pub airframe: AirframeParams,
    pub battery: BatterySpec,
    pub mission: MissionProfile,
}

impl ResolvedUnit {
    pub fn endurance_at(&self, site: &Site) -> Result<EnduranceReport> {
        let profile = MissionProfile {
            depot_distance_m: site.depot_distance_m,
            ..self.mission.clone()
        };
        service_endurance(&self.airframe, &self.battery, &profile)
    }

    pub fn value_at(&self, site: &Site) -> Result<f64> {
        Ok(site.demand_weight * self.endurance_at(site)?.service_time_s)
    }
}

/// Recompute the objective of `assignment` from scratch.
pub fn evaluate_plan(instance: &PlanInstance, assignment: &Assignment) -> Result<f64> {
    check_matching(instance, &assignment.pairs)?;
    let mut pairs = assignment.pairs.clone();
    pairs.sort_by(|a, b| (&a.site_id, &a.unit_id).cmp(&(&b.site_id, &b.unit_id)));
    let mut total = 0.0;
    for p in &pairs {
        total += instance.pair_value(instance.unit(&p.unit_id)?, instance.site(&p.site_id)?)?;
    }
    Ok(total)
}

fn check_matching(instance: &PlanInstance, pairs: &[AssignedPair]) -> Result<()> {
    let mut units = BTreeSet::new();
    let mut sites = BTreeSet::new();
    for p in pairs {
        instance.unit(&p.unit_id)?;
        instance.site(&p.site_id)?;
        if !units.insert(p.unit_id.as_str()) {
            return Err(Error::DuplicateId {
                kind: "assigned unit",
                id: p.unit_id.clone(),
            });
        }
        if !sites.insert(p.site_id.as_str()) {
            return Err(Error::DuplicateId {
                kind: "assigned site",
                id: p.site_id.clone(),
            });
        }
    }
    Ok(())
}

/// Units and sites in id order with the value of every pair.
struct ValueMatrix<'a> {
    units: Vec<&'a Unit>,
    sites: Vec<&'a Site>,
    /// `values[u][s]`; `None` when the pair is worth nothing.
    values: Vec<Vec<Option<f64>>>,
}

impl<'a> ValueMatrix<'a> {
    fn build(instance: &'a PlanInstance) -> Result<Self> {
        instance.validate()?;
        let mut units: Vec<&Unit> = instance.units.iter().collect();
        units.sort_by(|a, b| a.id.cmp(&b.id));
        let mut sites: Vec<&Site> = instance.sites.iter().collect();
        sites.sort_by(|a, b| a.id.cmp(&b.id));
        let values = units
            .iter()
            .map(|u| {
                let resolved = instance.resolve_unit(u)?;
                sites
                    .iter()
                    .map(|s| {
                        let v = resolved.value_at(s)?;
                        Ok((v > 0.0).then_some(v))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            units,
            sites,
            values,
        })
    }

    /// Assignment from `(unit index, site index)` pairs; objective summed in
    /// `(site id, unit id)` order.
    fn assignment(&self, chosen: &[(usize, usize)]) -> Assignment {
        let mut idx = chosen.to_vec();
        idx.sort_by(|a, b| {
            (&self.sites[a.1].id, &self.units[a.0].id)
                .cmp(&(&self.sites[b.1].id, &self.units[b.0].id))
        });
        let objective = idx
            .iter()
            .map(|&(u, s)| self.values[u][s].unwrap_or(0.0))
            .sum();
        Assignment {
            pairs: idx
                .iter()
                .map(|&(u, s)| AssignedPair {
                    unit_id: self.units[u].id.clone(),
                    site_id: self.sites[s].id.clone(),
                })
                .collect(),
            objective,
        }
    }
}

/// Repeatedly take the most valuable remaining pair. Ties go to the
/// lexicographically smallest `(site id, unit id)`.
pub fn greedy_assign(instance: &PlanInstance) -> Result<Assignment> {
    let m = ValueMatrix::build(instance)?;
    let mut unit_free = vec![true; m.units.len()];
    let mut site_free = vec![true; m.sites.len()];
    let mut chosen = Vec::new();
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        // site-major scan in id order keeps the first maximum lexicographically smallest
        for s in (0..m.sites.len()).filter(|&s| site_free[s]) {
            for u in (0..m.units.len()).filter(|&u| unit_free[u]) {
                if let Some(v) = m.values[u][s] {
                    if best.is_none_or(|(bv, _, _)| v > bv) {
                        best = Some((v, u, s));
                    }
                }
            }
        }
        let Some((_, u, s)) = best else { break };
        unit_free[u] = false;
        site_free[s] = false;
        chosen.push((u, s));
    }
    Ok(m.assignment(&chosen))
}

/// Best assignment by enumerating every partial matching. Among equal
/// objectives the lexicographically smallest pair list wins.
pub fn exhaustive_assign(instance: &PlanInstance) -> Result<Assignment> {
    if instance.units.len() > EXHAUSTIVE_LIMIT || instance.sites.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeLimit {
            units: instance.units.len(),
            sites: instance.sites.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let m = ValueMatrix::build(instance)?;
    let mut search = Search {
        matrix: &m,
        site_free: vec![true; m.sites.len()],
        current: Vec::new(),
        best: Assignment::empty(),
    };
    search.visit(0);
    Ok(search.best)
}

struct Search<'m, 'a> {
    matrix: &'m ValueMatrix<'a>,
    site_free: Vec<bool>,
    current: Vec<(usize, usize)>,
    best: Assignment,
}

impl Search<'_, '_> {
    fn visit(&mut self, unit: usize) {
        if unit == self.matrix.units.len() {
            let candidate = self.matrix.assignment(&self.current);
            let better = candidate.objective > self.best.objective
                || (candidate.objective == self.best.objective
                    && candidate.pairs < self.best.pairs);
            if better {
                self.best = candidate;
            }
            return;
        }
        self.visit(unit + 1);
        for s in 0..self.matrix.sites.len() {
            if self.site_free[s] && self.matrix.values[unit][s].is_some() {
                self.site_free[s] = false;
                self.current.push((unit, s));
                self.visit(unit + 1);
                self.current.pop();
                self.site_free[s] = true;
            }
        }
    }
}

/// One assigned pair with its endurance breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub unit_id: String,
    pub site_id: String,
    pub demand_weight: f64,
    pub value: f64,
    pub endurance: EnduranceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub solver: String,
    pub objective: f64,
    pub pairs: Vec<PairReport>,
}

pub fn plan_report(
    instance: &PlanInstance,
    assignment: &Assignment,
    solver: &str,
) -> Result<PlanReport> {
    check_matching(instance, &assignment.pairs)?;
    let pairs = assignment
        .pairs
        .iter()
        .map(|p| {
            let site = instance.site(&p.site_id)?;
            let endurance = instance.pair_endurance(instance.unit(&p.unit_id)?, site)?;
            Ok(PairReport {
                unit_id: p.unit_id.clone(),
                site_id: p.site_id.clone(),
                demand_weight: site.demand_weight,
                value: site.demand_weight * endurance.service_time_s,
                endurance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanReport {
        solver: solver.to_owned(),
        objective: assignment.objective,
        pairs,
    })
}
