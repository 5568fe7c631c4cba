//! Grip force requirements and solenoid gripper catalog.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_non_negative, require_positive, Result};

/// Slack allowed between catalog power and `V × I`.
pub const CATALOG_POWER_SLACK: f64 = 1.05;

/// A friction gripper holding the platform by clamping normal force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrictionGripSpec {
    pub platform_mass_kg: f64,
    #[serde(default = "default_gravity")]
    pub gravity_m_s2: f64,
    #[serde(default)]
    pub acceleration_m_s2: f64,
    pub friction_coefficient: f64,
    #[serde(default = "default_safety")]
    pub safety_factor: f64,
}

fn default_gravity() -> f64 {
    crate::STANDARD_GRAVITY_M_S2
}

fn default_safety() -> f64 {
    2.0
}

impl FrictionGripSpec {
    pub fn new(
        platform_mass_kg: f64,
        friction_coefficient: f64,
        safety_factor: f64,
    ) -> Result<Self> {
        let spec = Self {
            platform_mass_kg,
            gravity_m_s2: crate::STANDARD_GRAVITY_M_S2,
            acceleration_m_s2: 0.0,
            friction_coefficient,
            safety_factor,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("platform_mass_kg", self.platform_mass_kg)?;
        require_positive("gravity_m_s2", self.gravity_m_s2)?;
        require_non_negative("acceleration_m_s2", self.acceleration_m_s2)?;
        require_positive("friction_coefficient", self.friction_coefficient)?;
        if !(self.safety_factor.is_finite() && self.safety_factor >= 1.0) {
            return Err(invalid(
                "safety_factor",
                format!("must be >= 1, got {}", self.safety_factor),
            ));
        }
        Ok(())
    }
}

/// Minimum normal force a friction gripper must apply, newtons:
/// `F = m (g + α) ε / μ`.
pub fn required_grip_force(spec: &FrictionGripSpec) -> f64 {
    spec.platform_mass_kg * (spec.gravity_m_s2 + spec.acceleration_m_s2) * spec.safety_factor
        / spec.friction_coefficient
}

/// Electromagnet (solenoid) gripper datasheet entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolenoidGripperSpec {
    pub name: String,
    pub holding_force_kgf: f64,
    pub voltage_v: f64,
    pub max_current_a: f64,
    pub power_w: f64,
    /// Not every datasheet states a mass.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_kg: Option<f64>,
    /// Free-text note on how a value was normalised from its source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SolenoidGripperSpec {
    pub fn validate(&self) -> Result<()> {
        require_positive("holding_force_kgf", self.holding_force_kgf)?;
        require_positive("voltage_v", self.voltage_v)?;
        require_positive("max_current_a", self.max_current_a)?;
        require_positive("power_w", self.power_w)?;
        if let Some(w) = self.weight_kg {
            require_positive("weight_kg", w)?;
        }
        let electrical = self.voltage_v * self.max_current_a * CATALOG_POWER_SLACK;
        if self.power_w > electrical {
            return Err(invalid(
                "power_w",
                format!(
                    "{} W exceeds {} V x {} A (+5%) for `{}`",
                    self.power_w, self.voltage_v, self.max_current_a, self.name
                ),
            ));
        }
        Ok(())
    }

    /// `count` identical units wired in parallel: forces, currents, power and
    /// mass add; supply voltage is shared.
    pub fn array(&self, count: u32) -> Result<Self> {
        if count == 0 {
            return Err(invalid(
                "count",
                "an electromagnet array needs at least one unit",
            ));
        }
        let n = f64::from(count);
        Ok(Self {
            name: format!("{}x {}", count, self.name),
            holding_force_kgf: self.holding_force_kgf * n,
            voltage_v: self.voltage_v,
            max_current_a: self.max_current_a * n,
            power_w: self.power_w * n,
            weight_kg: self.weight_kg.map(|w| w * n),
            note: self.note.clone(),
        })
    }

    pub fn holding_force_n(&self, gravity_m_s2: f64) -> f64 {
        self.holding_force_kgf * gravity_m_s2
    }
}

/// Holding capacity relative to the safety-scaled payload. Feasible iff `>= 1`.
pub fn solenoid_margin(
    spec: &SolenoidGripperSpec,
    payload_kg: f64,
    required_safety: f64,
) -> Result<f64> {
    require_positive("payload_kg", payload_kg)?;
    if !(required_safety.is_finite() && required_safety >= 1.0) {
        return Err(invalid(
            "required_safety",
            format!("must be >= 1, got {required_safety}"),
        ));
    }
    Ok(spec.holding_force_kgf / (payload_kg * required_safety))
}

/// End effector used while perched.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GripperSpec {
    /// Electromagnet drawing constant power while holding.
    Solenoid(SolenoidGripperSpec),
    /// Encompassing or jaw gripper that bears the load mechanically.
    Retention {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weight_kg: Option<f64>,
    },
}

impl GripperSpec {
    pub fn name(&self) -> &str {
        match self {
            GripperSpec::Solenoid(s) => &s.name,
            GripperSpec::Retention { name, .. } => name,
        }
    }

    pub fn weight_kg(&self) -> Option<f64> {
        match self {
            GripperSpec::Solenoid(s) => s.weight_kg,
            GripperSpec::Retention { weight_kg, .. } => *weight_kg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GripperSpec::Solenoid(s) => s.validate(),
            GripperSpec::Retention { weight_kg, .. } => match weight_kg {
                Some(w) => require_positive("weight_kg", *w),
                None => Ok(()),
            },
        }
    }
}

impl From<SolenoidGripperSpec> for GripperSpec {
    fn from(spec: SolenoidGripperSpec) -> Self {
        GripperSpec::Solenoid(spec)
    }
}

/// Constant electrical draw while perched, watts.
pub fn grasp_power_draw(gripper: &GripperSpec) -> f64 {
    match gripper {
        GripperSpec::Solenoid(s) => s.power_w,
        GripperSpec::Retention { .. } => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn solenoid(name: &str) -> SolenoidGripperSpec {
        match catalog::gripper(name).unwrap() {
            GripperSpec::Solenoid(s) => s,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grip_force_published_range() {
        let hi_mu = FrictionGripSpec::new(5.0, 0.2, 2.0).unwrap();
        let lo_mu = FrictionGripSpec::new(5.0, 0.1, 2.0).unwrap();
        assert!((required_grip_force(&hi_mu) - 490.0).abs() < 1e-9);
        assert!((required_grip_force(&lo_mu) - 980.0).abs() < 1e-9);
    }

    #[test]
    fn grip_force_unit_identity() {
        let spec = FrictionGripSpec {
            platform_mass_kg: 1.0,
            gravity_m_s2: 1.0,
            acceleration_m_s2: 0.0,
            friction_coefficient: 1.0,
            safety_factor: 1.0,
        };
        assert_eq!(required_grip_force(&spec), 1.0);
    }

    #[test]
    fn grip_spec_rejects_bad_inputs() {
        assert!(FrictionGripSpec::new(5.0, 0.0, 2.0).is_err());
        assert!(FrictionGripSpec::new(5.0, 0.2, 0.5).is_err());
        assert!(FrictionGripSpec::new(0.0, 0.2, 2.0).is_err());
        let mut s = FrictionGripSpec::new(5.0, 0.2, 2.0).unwrap();
        s.acceleration_m_s2 = -1.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn dual_five_volt_array_holds_five_kilograms() {
        let unit = solenoid("electromagnet-5v-25kgf");
        let pair = unit.array(2).unwrap();
        assert_eq!(pair.holding_force_kgf, 50.0);
        assert!((pair.max_current_a - 1.2).abs() < 1e-12);
        assert_eq!(solenoid_margin(&pair, 5.0, 10.0).unwrap(), 1.0);
    }

    #[test]
    fn margin_boundary_and_type_three() {
        let mut s = solenoid("type-i");
        s.holding_force_kgf = 30.0;
        assert_eq!(solenoid_margin(&s, 30.0, 1.0).unwrap(), 1.0);
        let t3 = solenoid("type-iii");
        assert!((solenoid_margin(&t3, 5.0, 10.0).unwrap() - 1.2).abs() < 1e-12);
        assert!(solenoid_margin(&t3, 0.0, 10.0).is_err());
        assert!(solenoid_margin(&t3, 5.0, 0.9).is_err());
    }

    #[test]
    fn power_draws() {
        assert_eq!(
            grasp_power_draw(&catalog::gripper("type-ii").unwrap()),
            10.0
        );
        assert_eq!(
            grasp_power_draw(&catalog::gripper("type-iii").unwrap()),
            15.0
        );
        assert_eq!(
            grasp_power_draw(&catalog::gripper("retention").unwrap()),
            0.0
        );
    }

    #[test]
    fn catalog_entries_are_self_consistent() {
        for g in catalog::grippers() {
            g.validate().unwrap_or_else(|e| panic!("{}: {e}", g.name()));
        }
        // Type I is printed as 0.340 mA; 4 W at 12 V needs about 333 mA
        let t1 = solenoid("type-i");
        assert_eq!(t1.max_current_a, 0.34);
        assert!(t1.note.as_deref().unwrap().contains("0.340"));
    }

    #[test]
    fn inconsistent_datasheet_is_rejected() {
        let mut s = solenoid("type-ii");
        s.max_current_a = 0.0004;
        assert!(s.validate().is_err());
    }

    #[test]
    fn kgf_conversion_uses_given_gravity() {
        let t2 = solenoid("type-ii");
        assert_eq!(t2.holding_force_n(9.8), 35.0 * 9.8);
    }
}
