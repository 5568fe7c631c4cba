//! Run configuration: a JSON document whose entries are either inline objects,
//! built-in profile names, or paths to JSON files.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::{Map, Value};

use rabs_core::battery::BatterySpec;
use rabs_core::catalog;
use rabs_core::grasping::GripperSpec;
use rabs_core::mission::compare::{ComparisonSource, PublishedColumn};
use rabs_core::mission::{CruiseSpeed, MissionProfile};
use rabs_core::planner::PlanInstance;
use rabs_core::propulsion::AirframeParams;

pub const PROFILE_DIR_ENV: &str = "RABS_PROFILE_DIR";

/// An error in how the tool was invoked or configured, as opposed to a
/// failure of the computation itself.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Reference-scenario defaults.
pub const DEFAULT_DEPOT_DISTANCE_M: f64 = 800.0;
pub const DEFAULT_TARGET_FLYING_ENERGY_J: f64 = 23_910.0;
pub const DEFAULT_GRIPPER: &str = "type-iii";
pub const DEFAULT_PAYLOAD_DELTAS_KG: [f64; 4] = [0.4, 0.8, 1.2, 1.6];
pub const DEFAULT_MASS_GRID_KG: [f64; 5] = [4.0, 4.4, 4.8, 5.2, 5.6];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    #[serde(default = "default_deltas")]
    pub payload_deltas_kg: Vec<f64>,
    #[serde(default = "default_source")]
    pub source: ComparisonSource,
    /// Columns for the published source; the bundled reference table if absent.
    #[serde(default)]
    pub published_columns: Option<Vec<PublishedColumn>>,
}

fn default_deltas() -> Vec<f64> {
    DEFAULT_PAYLOAD_DELTAS_KG.to_vec()
}

fn default_source() -> ComparisonSource {
    ComparisonSource::Model
}

impl Default for CompareSection {
    fn default() -> Self {
        Self {
            payload_deltas_kg: default_deltas(),
            source: default_source(),
            published_columns: None,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default)]
    pub mass_grid_kg: Option<Vec<f64>>,
    #[serde(default)]
    pub gripper_power_w: Option<f64>,
    #[serde(default)]
    pub comm_power_w: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateSection {
    #[serde(default)]
    pub observed_hover_w: Option<f64>,
    #[serde(default)]
    pub cruise_distance_m: Option<f64>,
    #[serde(default)]
    pub cruise_target_energy_j: Option<f64>,
}

/// Every input document, deserialized and validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub airframe: AirframeParams,
    pub battery: BatterySpec,
    pub gripper: GripperSpec,
    pub mission: MissionProfile,
    pub plan: Option<PlanInstance>,
    pub compare: CompareSection,
    pub sweep: SweepSection,
    pub calibrate: CalibrateSection,
}

/// Where string references are looked up.
pub struct Resolver {
    base_dir: PathBuf,
    profile_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Airframe,
    Battery,
    Gripper,
    Mission,
    Plan,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Airframe => "airframe",
            Kind::Battery => "battery",
            Kind::Gripper => "gripper",
            Kind::Mission => "mission",
            Kind::Plan => "plan",
        }
    }

    fn builtin(self, id: &str) -> Option<Value> {
        let to_value = |v: Result<Value, serde_json::Error>| v.ok();
        match self {
            Kind::Airframe => catalog::airframe(id)
                .ok()
                .and_then(|a| to_value(serde_json::to_value(a))),
            Kind::Battery => catalog::battery(id)
                .ok()
                .and_then(|b| to_value(serde_json::to_value(b))),
            Kind::Gripper => catalog::gripper(id)
                .ok()
                .and_then(|g| to_value(serde_json::to_value(g))),
            Kind::Mission | Kind::Plan => None,
        }
    }
}

impl Resolver {
    pub fn new(base_dir: PathBuf, profile_dir: Option<PathBuf>) -> Self {
        Self {
            base_dir,
            profile_dir,
        }
    }

    /// Turn a reference (built-in id, file path, or profile name) into JSON.
    fn resolve(&self, kind: Kind, value: Value) -> Result<Value> {
        let Value::String(reference) = value else {
            return Ok(value);
        };
        if let Some(v) = kind.builtin(&reference) {
            return Ok(v);
        }
        let mut candidates = vec![self.base_dir.join(&reference)];
        if let Some(dir) = &self.profile_dir {
            candidates.push(dir.join(&reference));
            candidates.push(dir.join(format!("{reference}.json")));
        }
        for path in candidates {
            if path.is_file() {
                return read_json(&path);
            }
        }
        bail!(
            "{}: `{reference}` is neither a built-in profile nor a readable file",
            kind.name()
        )
    }

    /// Resolve every reference in the raw config tree, filling defaults.
    pub fn resolve_tree(&self, mut raw: Map<String, Value>) -> Result<Map<String, Value>> {
        let known = [
            "airframe",
            "battery",
            "gripper",
            "mission",
            "plan",
            "compare",
            "sweep",
            "calibrate",
        ];
        if let Some(key) = raw.keys().find(|k| !known.contains(&k.as_str())) {
            bail!("config: unknown field `{key}`, expected one of {known:?}");
        }
        let mut out = Map::new();
        let airframe = raw
            .remove("airframe")
            .unwrap_or_else(|| Value::String(catalog::CANONICAL_AIRFRAME.into()));
        out.insert("airframe".into(), self.resolve(Kind::Airframe, airframe)?);
        let battery = raw
            .remove("battery")
            .unwrap_or_else(|| Value::String(catalog::REFERENCE_BATTERY.into()));
        out.insert("battery".into(), self.resolve(Kind::Battery, battery)?);
        let gripper = raw
            .remove("gripper")
            .unwrap_or_else(|| Value::String(DEFAULT_GRIPPER.into()));
        let gripper = self.resolve(Kind::Gripper, gripper)?;
        out.insert("gripper".into(), gripper.clone());

        let mut mission = match raw.remove("mission") {
            Some(m) => self.resolve(Kind::Mission, m)?,
            None => serde_json::to_value(default_mission())?,
        };
        if let Value::Object(m) = &mut mission {
            match m.remove("gripper") {
                Some(g) => {
                    m.insert("gripper".into(), self.resolve(Kind::Gripper, g)?);
                }
                None if m.get("serve_mode") == Some(&Value::String("grasp".into())) => {
                    m.insert("gripper".into(), gripper);
                }
                None => {}
            }
        }
        out.insert("mission".into(), mission);

        if let Some(plan) = raw.remove("plan") {
            let mut plan = self.resolve(Kind::Plan, plan)?;
            self.resolve_plan_refs(&mut plan)?;
            out.insert("plan".into(), plan);
        }
        for key in ["compare", "sweep", "calibrate"] {
            out.insert(
                key.into(),
                raw.remove(key).unwrap_or_else(|| Value::Object(Map::new())),
            );
        }
        Ok(out)
    }

    /// Missions inside a plan may name their gripper; profiles may be file refs.
    fn resolve_plan_refs(&self, plan: &mut Value) -> Result<()> {
        let Value::Object(plan) = plan else {
            return Ok(());
        };
        for (key, kind) in [
            ("airframes", Kind::Airframe),
            ("batteries", Kind::Battery),
            ("missions", Kind::Mission),
        ] {
            if let Some(Value::Object(entries)) = plan.get_mut(key) {
                for v in entries.values_mut() {
                    *v = self.resolve(kind, v.take())?;
                    if kind == Kind::Mission {
                        if let Some(g) = v.get_mut("gripper") {
                            *g = self.resolve(Kind::Gripper, g.take())?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn default_mission() -> MissionProfile {
    MissionProfile::grasp(
        DEFAULT_DEPOT_DISTANCE_M,
        CruiseSpeed::Infer {
            target_flying_energy_j: DEFAULT_TARGET_FLYING_ENERGY_J,
        },
        catalog::gripper(DEFAULT_GRIPPER).expect("bundled gripper"),
        0.4,
    )
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Apply a `dotted.path=value` override. The value is parsed as JSON when it
/// parses, and taken as a string otherwise. Numeric segments index arrays.
pub fn apply_override(tree: &mut Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| anyhow!("override `{assignment}` is not of the form key=value"))?;
    if path.is_empty() {
        bail!("override `{assignment}` has an empty key");
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    let mut node = tree;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, seg) in segments.iter().enumerate() {
        let last = i + 1 == segments.len();
        node = match node {
            Value::Object(map) => {
                if last {
                    map.insert((*seg).to_owned(), value);
                    return Ok(());
                }
                map.entry((*seg).to_owned())
                    .or_insert_with(|| Value::Object(Map::new()))
            }
            Value::Array(items) => {
                let idx: usize = seg
                    .parse()
                    .with_context(|| format!("override `{path}`: `{seg}` is not an array index"))?;
                let len = items.len();
                let slot = items.get_mut(idx).ok_or_else(|| {
                    anyhow!("override `{path}`: index {idx} out of range ({len} items)")
                })?;
                if last {
                    *slot = value;
                    return Ok(());
                }
                slot
            }
            _ => bail!("override `{path}`: `{seg}` does not address an object or array"),
        };
    }
    Ok(())
}

/// Load, resolve, override and validate everything before any computation.
pub fn load(
    config_path: Option<&Path>,
    overrides: &[String],
    profile_dir: Option<PathBuf>,
) -> Result<RunConfig> {
    let (raw, base_dir) = match config_path {
        Some(path) => {
            let value = read_json(path)?;
            let Value::Object(map) = value else {
                bail!("{}: config must be a JSON object", path.display());
            };
            let dir = path
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            (map, dir)
        }
        None => (Map::new(), PathBuf::from(".")),
    };
    let resolver = Resolver::new(base_dir, profile_dir);
    let mut tree = Value::Object(resolver.resolve_tree(raw)?);
    for o in overrides {
        apply_override(&mut tree, o)?;
    }
    // overrides may themselves name profiles
    let Value::Object(map) = tree else {
        unreachable!("resolved config is an object")
    };
    from_tree(Value::Object(resolver.resolve_tree(map)?))
}

fn section<T: for<'de> Deserialize<'de>>(tree: &mut Value, key: &str) -> Result<T> {
    serde_json::from_value(tree[key].take()).with_context(|| format!("{key}: schema violation"))
}

fn from_tree(mut tree: Value) -> Result<RunConfig> {
    let airframe: AirframeParams = section(&mut tree, "airframe")?;
    airframe.validate().context("airframe")?;
    let battery: BatterySpec = section(&mut tree, "battery")?;
    battery.validate().context("battery")?;
    let gripper: GripperSpec = section(&mut tree, "gripper")?;
    gripper.validate().context("gripper")?;
    let mission: MissionProfile = section(&mut tree, "mission")?;
    mission.validate().context("mission")?;
    let plan = if tree.get("plan").is_some() {
        let plan: PlanInstance = section(&mut tree, "plan")?;
        plan.validate().context("plan")?;
        Some(plan)
    } else {
        None
    };
    let compare: CompareSection = section(&mut tree, "compare")?;
    if let Some(d) = compare
        .payload_deltas_kg
        .iter()
        .find(|d| !(d.is_finite() && **d >= 0.0))
    {
        return Err(usage(format!(
            "compare.payload_deltas_kg: entries must be finite and >= 0, got {d}"
        )));
    }
    let sweep: SweepSection = section(&mut tree, "sweep")?;
    if let Some(grid) = &sweep.mass_grid_kg {
        if grid.is_empty() {
            return Err(usage("sweep.mass_grid_kg: grid must not be empty"));
        }
        if let Some(m) = grid.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(usage(format!(
                "sweep.mass_grid_kg: masses must be finite and > 0, got {m}"
            )));
        }
    }
    Ok(RunConfig {
        airframe,
        battery,
        gripper,
        mission,
        plan,
        compare,
        sweep,
        calibrate: section(&mut tree, "calibrate")?,
    })
}
