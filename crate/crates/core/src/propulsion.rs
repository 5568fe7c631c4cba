//! Rotary-wing propulsion power.
//!
//! Forward-flight power at airspeed `V` is the sum of three terms:
//!
//! ```text
//! P(V) = P0 (1 + 3V²/U²)                                 blade profile
//!      + Pi (sqrt(1 + V⁴/(4 v0⁴)) - V²/(2 v0²))^(1/2)    induced
//!      + ½ d0 ρ s A V³                                    parasite
//!
//! P0 = (δ/8) ρ s A Ω³ R³
//! Pi = (1 + κ) (m g)^(3/2) / sqrt(2 ρ A)
//! ```
//!
//! Hover is the `V = 0` point, where the power collapses to `P0 + Pi`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_non_negative, require_positive, Error, Result};

/// Lowest speed considered when searching for a cruise speed, m/s.
pub const MIN_SEARCH_SPEED_M_S: f64 = 0.1;

/// Grid step used to bracket roots and minima of the energy-per-leg curve, m/s.
const SCAN_STEP_M_S: f64 = 0.01;

/// How the mean rotor induced velocity in hover is obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InducedVelocityMode {
    /// Use `mean_induced_velocity_m_s` as configured.
    #[default]
    Fixed,
    /// Derive `v0 = sqrt(m g / (2 ρ A))` from momentum theory, so it tracks mass.
    Momentum,
}

/// Where a calibrated profile's numbers came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationNote {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed_hover_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cruise_distance_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cruise_target_energy_j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inferred_cruise_speed_m_s: Option<f64>,
}

/// Physical and aerodynamic constants of a rotary-wing platform, SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AirframeParams {
    pub mass_kg: f64,
    #[serde(default = "default_gravity")]
    pub gravity_m_s2: f64,
    pub air_density_kg_m3: f64,
    pub rotor_disc_area_m2: f64,
    pub rotor_solidity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_drag_coeff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blade_angular_velocity_rad_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotor_radius_m: Option<f64>,
    pub induced_power_factor: f64,
    pub tip_speed_m_s: f64,
    /// Required in [`InducedVelocityMode::Fixed`]; ignored otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_induced_velocity_m_s: Option<f64>,
    #[serde(default)]
    pub induced_velocity_mode: InducedVelocityMode,
    pub fuselage_drag_ratio: f64,
    /// Direct value for the blade profile power, bypassing `(δ/8) ρ s A Ω³ R³`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blade_profile_power_override_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<CalibrationNote>,
}

fn default_gravity() -> f64 {
    crate::STANDARD_GRAVITY_M_S2
}

impl AirframeParams {
    /// The 4 kg reference quadrotor: κ=0.1, ρ=1.225, A=0.503, s=0.05, U=120,
    /// v0=4.03, d0=0.6 and a blade profile power of 79.86 W.
    pub fn canonical_4kg() -> Self {
        Self {
            mass_kg: 4.0,
            gravity_m_s2: 9.8,
            air_density_kg_m3: 1.225,
            rotor_disc_area_m2: 0.503,
            rotor_solidity: 0.05,
            profile_drag_coeff: None,
            blade_angular_velocity_rad_s: None,
            rotor_radius_m: None,
            induced_power_factor: 0.1,
            tip_speed_m_s: 120.0,
            mean_induced_velocity_m_s: Some(4.03),
            induced_velocity_mode: InducedVelocityMode::Fixed,
            fuselage_drag_ratio: 0.6,
            blade_profile_power_override_w: Some(79.86),
            calibration: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let params: Self = serde_json::from_str(text)?;
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("mass_kg", self.mass_kg)?;
        require_positive("gravity_m_s2", self.gravity_m_s2)?;
        require_positive("air_density_kg_m3", self.air_density_kg_m3)?;
        require_positive("rotor_disc_area_m2", self.rotor_disc_area_m2)?;
        require_positive("tip_speed_m_s", self.tip_speed_m_s)?;
        require_non_negative("induced_power_factor", self.induced_power_factor)?;
        require_non_negative("fuselage_drag_ratio", self.fuselage_drag_ratio)?;
        if !(self.rotor_solidity > 0.0 && self.rotor_solidity < 1.0) {
            return Err(invalid(
                "rotor_solidity",
                format!("must lie in (0, 1), got {}", self.rotor_solidity),
            ));
        }
        match (self.induced_velocity_mode, self.mean_induced_velocity_m_s) {
            (InducedVelocityMode::Fixed, None) => {
                return Err(Error::MissingParameter {
                    field: "mean_induced_velocity_m_s",
                    context: "induced_velocity_mode is `fixed`",
                })
            }
            (_, Some(v0)) => require_positive("mean_induced_velocity_m_s", v0)?,
            (InducedVelocityMode::Momentum, None) => {}
        }
        match self.blade_profile_power_override_w {
            Some(p0) => require_non_negative("blade_profile_power_override_w", p0)?,
            None => {
                let context = "blade_profile_power_override_w is absent";
                let fields = [
                    ("profile_drag_coeff", self.profile_drag_coeff),
                    (
                        "blade_angular_velocity_rad_s",
                        self.blade_angular_velocity_rad_s,
                    ),
                    ("rotor_radius_m", self.rotor_radius_m),
                ];
                for (field, value) in fields {
                    match value {
                        None => return Err(Error::MissingParameter { field, context }),
                        // δ = 0 is a legitimate (if unphysical) drag-free rotor
                        Some(v) if field == "profile_drag_coeff" => require_non_negative(field, v)?,
                        Some(v) => require_positive(field, v)?,
                    }
                }
            }
        }
        Ok(())
    }

    /// Same airframe carrying a different total mass.
    pub fn with_mass_kg(&self, mass_kg: f64) -> Result<Self> {
        require_positive("mass_kg", mass_kg)?;
        Ok(Self {
            mass_kg,
            ..self.clone()
        })
    }

    /// Mean rotor induced velocity in hover, per the configured mode.
    pub fn mean_induced_velocity(&self) -> f64 {
        match (self.induced_velocity_mode, self.mean_induced_velocity_m_s) {
            (InducedVelocityMode::Fixed, Some(v0)) => v0,
            _ => {
                (self.weight_n() / (2.0 * self.air_density_kg_m3 * self.rotor_disc_area_m2)).sqrt()
            }
        }
    }

    pub fn weight_n(&self) -> f64 {
        self.mass_kg * self.gravity_m_s2
    }
}

/// Propulsion power split into its three physical contributions, watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBreakdown {
    pub blade_profile_w: f64,
    pub induced_w: f64,
    pub parasite_w: f64,
    pub total_w: f64,
}

impl PowerBreakdown {
    fn new(blade_profile_w: f64, induced_w: f64, parasite_w: f64) -> Self {
        Self {
            blade_profile_w,
            induced_w,
            parasite_w,
            total_w: blade_profile_w + induced_w + parasite_w,
        }
    }
}

/// Blade profile power `P0`, or the configured override.
pub fn blade_profile_power(params: &AirframeParams) -> Result<f64> {
    if let Some(p0) = params.blade_profile_power_override_w {
        return Ok(p0);
    }
    let context = "blade_profile_power_override_w is absent";
    let delta = params.profile_drag_coeff.ok_or(Error::MissingParameter {
        field: "profile_drag_coeff",
        context,
    })?;
    let omega = params
        .blade_angular_velocity_rad_s
        .ok_or(Error::MissingParameter {
            field: "blade_angular_velocity_rad_s",
            context,
        })?;
    let radius = params.rotor_radius_m.ok_or(Error::MissingParameter {
        field: "rotor_radius_m",
        context,
    })?;
    let tip = omega * radius;
    Ok(delta / 8.0
        * params.air_density_kg_m3
        * params.rotor_solidity
        * params.rotor_disc_area_m2
        * tip
        * tip
        * tip)
}

/// Induced power in hover `Pi = (1+κ)(mg)^{3/2} / sqrt(2ρA)`.
pub fn induced_power(params: &AirframeParams) -> f64 {
    (1.0 + params.induced_power_factor) * params.weight_n().powf(1.5)
        / (2.0 * params.air_density_kg_m3 * params.rotor_disc_area_m2).sqrt()
}

/// Power needed to hover in place: blade profile plus induced, no parasite drag.
pub fn hover_power(params: &AirframeParams) -> Result<PowerBreakdown> {
    Ok(PowerBreakdown::new(
        blade_profile_power(params)?,
        induced_power(params),
        0.0,
    ))
}

/// Level-flight propulsion power at `speed_m_s`.
pub fn propulsion_power(params: &AirframeParams, speed_m_s: f64) -> Result<PowerBreakdown> {
    check_speed(speed_m_s)?;
    let p0 = blade_profile_power(params)?;
    let pi = induced_power(params);
    let v2 = speed_m_s * speed_m_s;
    let v0 = params.mean_induced_velocity();
    let v0_2 = v0 * v0;
    let tip_2 = params.tip_speed_m_s * params.tip_speed_m_s;

    let blade = p0 * (1.0 + 3.0 * v2 / tip_2);
    let induced = pi * induced_shape(v2, v0_2).sqrt();
    let parasite = 0.5
        * params.fuselage_drag_ratio
        * params.air_density_kg_m3
        * params.rotor_solidity
        * params.rotor_disc_area_m2
        * v2
        * speed_m_s;
    Ok(PowerBreakdown::new(blade, induced, parasite))
}

/// `sqrt(1 + V⁴/(4v0⁴)) - V²/(2v0²)`, written in the cancellation-free form
/// `1 / (sqrt(1 + x²) + x)` with `x = V²/(2v0²)`.
fn induced_shape(v2: f64, v0_2: f64) -> f64 {
    let x = v2 / (2.0 * v0_2);
    if x == 0.0 {
        return 1.0;
    }
    1.0 / ((1.0 + x * x).sqrt() + x)
}

/// Analytic `dP/dV` of [`propulsion_power`], W per m/s.
pub fn propulsion_power_slope(params: &AirframeParams, speed_m_s: f64) -> Result<f64> {
    check_speed(speed_m_s)?;
    let p0 = blade_profile_power(params)?;
    let pi = induced_power(params);
    let v = speed_m_s;
    let v0 = params.mean_induced_velocity();
    let v0_2 = v0 * v0;
    let tip_2 = params.tip_speed_m_s * params.tip_speed_m_s;

    let blade = 6.0 * p0 * v / tip_2;

    // f(V) = sqrt(1 + x²) - x, x = V²/(2v0²), dx/dV = V/v0²
    // d/dV sqrt(f) = f'(V) / (2 sqrt f) = (x/sqrt(1+x²) - 1)·(V/v0²) / (2 sqrt f)
    let x = v * v / (2.0 * v0_2);
    let f = induced_shape(v * v, v0_2);
    let df = (x / (1.0 + x * x).sqrt() - 1.0) * v / v0_2;
    let induced = pi * df / (2.0 * f.sqrt());

    let parasite = 1.5
        * params.fuselage_drag_ratio
        * params.air_density_kg_m3
        * params.rotor_solidity
        * params.rotor_disc_area_m2
        * v
        * v;
    Ok(blade + induced + parasite)
}

fn check_speed(speed_m_s: f64) -> Result<()> {
    if speed_m_s.is_finite() && speed_m_s >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "speed_m_s",
            value: speed_m_s,
        })
    }
}

/// Energy to cover `distance_m` at constant `speed_m_s`, joules.
/// Acceleration and deceleration transients are not modelled.
pub fn flight_energy(params: &AirframeParams, distance_m: f64, speed_m_s: f64) -> Result<f64> {
    if !(distance_m.is_finite() && distance_m >= 0.0) {
        return Err(Error::Domain {
            quantity: "distance_m",
            value: distance_m,
        });
    }
    if !(speed_m_s.is_finite() && speed_m_s > 0.0) {
        return Err(Error::Domain {
            quantity: "speed_m_s",
            value: speed_m_s,
        });
    }
    Ok(propulsion_power(params, speed_m_s)?.total_w * distance_m / speed_m_s)
}

/// Speed on `(MIN_SEARCH_SPEED_M_S, U_tip)` minimising the energy to cover
/// `distance_m`, with that energy. Returns `(speed_m_s, energy_j)`.
pub fn min_energy_speed(params: &AirframeParams, distance_m: f64) -> Result<(f64, f64)> {
    let energy = |v: f64| flight_energy(params, distance_m, v);
    let upper = params.tip_speed_m_s;
    let grid = speed_grid(upper);

    let mut best = (grid[0], energy(grid[0])?);
    for &v in &grid[1..] {
        let e = energy(v)?;
        if e < best.1 {
            best = (v, e);
        }
    }

    // golden-section refinement inside the neighbouring grid cells
    let mut lo = (best.0 - SCAN_STEP_M_S).max(MIN_SEARCH_SPEED_M_S);
    let mut hi = (best.0 + SCAN_STEP_M_S).min(upper);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let mut ea = energy(a)?;
    let mut eb = energy(b)?;
    for _ in 0..60 {
        if ea < eb {
            hi = b;
            b = a;
            eb = ea;
            a = hi - ratio * (hi - lo);
            ea = energy(a)?;
        } else {
            lo = a;
            a = b;
            ea = eb;
            b = lo + ratio * (hi - lo);
            eb = energy(b)?;
        }
    }
    let v = 0.5 * (lo + hi);
    let e = energy(v)?;
    Ok(if e < best.1 { (v, e) } else { best })
}

fn speed_grid(upper: f64) -> Vec<f64> {
    let steps = ((upper - MIN_SEARCH_SPEED_M_S) / SCAN_STEP_M_S).floor() as usize;
    let mut grid: Vec<f64> = (0..=steps)
        .map(|i| MIN_SEARCH_SPEED_M_S + i as f64 * SCAN_STEP_M_S)
        .filter(|&v| v < upper)
        .collect();
    if grid.is_empty() {
        grid.push(MIN_SEARCH_SPEED_M_S);
    }
    grid
}

/// Smallest cruise speed at which covering `distance_m` costs `target_energy_j`.
///
/// The energy-per-leg curve `E(V) = P(V)·D/V` is bracketed on a 0.01 m/s grid
/// from the low-speed end and the first crossing is refined by bisection.
pub fn infer_cruise_speed(
    params: &AirframeParams,
    distance_m: f64,
    target_energy_j: f64,
) -> Result<f64> {
    if !(distance_m.is_finite() && distance_m > 0.0) {
        return Err(Error::Domain {
            quantity: "distance_m",
            value: distance_m,
        });
    }
    if !target_energy_j.is_finite() {
        return Err(Error::Domain {
            quantity: "target_energy_j",
            value: target_energy_j,
        });
    }
    let (v_min, e_min) = min_energy_speed(params, distance_m)?;
    if e_min > target_energy_j + ENERGY_TOLERANCE_J {
        return Err(Error::InfeasibleTarget {
            target_j: target_energy_j,
            minimum_j: e_min,
            speed_m_s: v_min,
        });
    }
    let residual = |v: f64| flight_energy(params, distance_m, v).map(|e| e - target_energy_j);

    let mut prev_v = MIN_SEARCH_SPEED_M_S;
    let mut prev_r = residual(prev_v)?;
    if prev_r.abs() <= ENERGY_TOLERANCE_J && prev_r <= 0.0 {
        return Ok(prev_v);
    }
    if prev_r < 0.0 {
        // E(V) is already below the target at the slowest admissible speed
        return Err(Error::UnbracketedTarget {
            target_j: target_energy_j,
            lower_m_s: MIN_SEARCH_SPEED_M_S,
            upper_m_s: params.tip_speed_m_s,
        });
    }
    let mut bracket = None;
    for v in speed_grid(params.tip_speed_m_s).into_iter().skip(1) {
        if v > v_min {
            break;
        }
        let r = residual(v)?;
        if r <= 0.0 {
            bracket = Some((prev_v, v));
            break;
        }
        prev_v = v;
        prev_r = r;
    }
    // the minimiser itself is at or below target, so it closes the bracket
    let (mut lo, mut hi) = bracket.unwrap_or((prev_v, v_min));
    debug_assert!(prev_r > 0.0);

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = residual(mid)?;
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // hi always satisfies E(hi) <= target
    let v = hi;
    let r = residual(v)?;
    if r.abs() > ENERGY_TOLERANCE_J {
        return Err(Error::UnbracketedTarget {
            target_j: target_energy_j,
            lower_m_s: MIN_SEARCH_SPEED_M_S,
            upper_m_s: params.tip_speed_m_s,
        });
    }
    Ok(v)
}

/// Absolute energy tolerance of the cruise-speed search, joules.
pub const ENERGY_TOLERANCE_J: f64 = 1.0;

/// Fit the blade profile power so that hover power equals `observed_hover_w`.
pub fn calibrate_blade_profile_from_hover(
    params: &AirframeParams,
    observed_hover_w: f64,
) -> Result<AirframeParams> {
    let induced_w = induced_power(params);
    if !(observed_hover_w.is_finite() && observed_hover_w > induced_w) {
        return Err(Error::CalibrationInfeasible {
            observed_w: observed_hover_w,
            induced_w,
        });
    }
    let mut calibrated = params.clone();
    calibrated.blade_profile_power_override_w = Some(observed_hover_w - induced_w);
    let note = calibrated.calibration.get_or_insert(CalibrationNote {
        observed_hover_w: None,
        cruise_distance_m: None,
        cruise_target_energy_j: None,
        inferred_cruise_speed_m_s: None,
    });
    note.observed_hover_w = Some(observed_hover_w);
    Ok(calibrated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn rotor_geometry_params(delta: f64) -> AirframeParams {
        AirframeParams {
            profile_drag_coeff: Some(delta),
            blade_angular_velocity_rad_s: Some(300.0),
            rotor_radius_m: Some(0.4),
            blade_profile_power_override_w: None,
            ..AirframeParams::canonical_4kg()
        }
    }

    #[test]
    fn override_passes_through() {
        let p = AirframeParams::canonical_4kg();
        assert_eq!(blade_profile_power(&p).unwrap(), 79.86);
    }

    #[test]
    fn zero_drag_coefficient_gives_zero_profile_power() {
        assert_eq!(blade_profile_power(&rotor_geometry_params(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn blade_profile_matches_hand_evaluation() {
        // 0.012/8 · 1.225 · 0.05 · 0.503 · (300 · 0.4)³ = 4.6213125e-5 · 1.728e6
        let expected = 79.856_28;
        let got = blade_profile_power(&rotor_geometry_params(0.012)).unwrap();
        assert!(rel(got, expected) < 1e-9, "{got}");
    }

    #[test]
    fn missing_profile_inputs_name_the_field() {
        let mut p = rotor_geometry_params(0.012);
        p.rotor_radius_m = None;
        match blade_profile_power(&p) {
            Err(Error::MissingParameter { field, .. }) => assert_eq!(field, "rotor_radius_m"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            p.validate(),
            Err(Error::MissingParameter {
                field: "rotor_radius_m",
                ..
            })
        ));
    }

    #[test]
    fn induced_power_canonical() {
        // 1.1 · 39.2^1.5 / sqrt(1.23235)
        let got = induced_power(&AirframeParams::canonical_4kg());
        assert!((got - 243.19).abs() < 0.05, "{got}");
    }

    #[test]
    fn induced_power_scales_with_three_halves() {
        let mut p = AirframeParams::canonical_4kg();
        p.induced_power_factor = 0.0;
        let single = induced_power(&p);
        let double = induced_power(&p.with_mass_kg(8.0).unwrap());
        assert!(rel(double / single, 2f64.powf(1.5)) < 1e-12);
    }

    #[test]
    fn induced_power_zero_mass_limit() {
        let mut p = AirframeParams::canonical_4kg();
        p.mass_kg = 0.0;
        assert_eq!(induced_power(&p), 0.0);
        assert!(p.validate().is_err());
        assert!(AirframeParams::canonical_4kg().with_mass_kg(0.0).is_err());
    }

    #[test]
    fn hover_canonical_operating_point() {
        let h = hover_power(&AirframeParams::canonical_4kg()).unwrap();
        assert!(rel(h.total_w, 323.05) < 1e-3, "{}", h.total_w);
        assert_eq!(h.parasite_w, 0.0);
    }

    #[test]
    fn hover_equals_zero_speed_propulsion() {
        let p = AirframeParams::canonical_4kg();
        let h = hover_power(&p).unwrap();
        let v0 = propulsion_power(&p, 0.0).unwrap();
        assert_eq!(h, v0);
    }

    #[test]
    fn hover_grows_with_mass() {
        let p = AirframeParams::canonical_4kg();
        let light = hover_power(&p).unwrap().total_w;
        let heavy = hover_power(&p.with_mass_kg(4.4).unwrap()).unwrap().total_w;
        // 79.86 + 243.195·1.1^1.5 = 360.43
        assert!(heavy > light);
        assert!((heavy - 360.4316).abs() < 1e-3, "{heavy}");
    }

    #[test]
    fn forward_flight_points() {
        // term-by-term evaluation of the three power terms, see module docs
        let p = AirframeParams::canonical_4kg();
        let at10 = propulsion_power(&p, 10.0).unwrap().total_w;
        let at18 = propulsion_power(&p, 18.0).unwrap().total_w;
        assert!((at10 - 187.5376).abs() < 1e-3, "{at10}");
        assert!((at18 - 193.5341).abs() < 1e-3, "{at18}");
        assert!((at10 - 187.4).abs() < 0.5);
    }

    #[test]
    fn negative_speed_is_domain_error() {
        let p = AirframeParams::canonical_4kg();
        assert!(matches!(
            propulsion_power(&p, -1.0),
            Err(Error::Domain { .. })
        ));
        assert!(flight_energy(&p, 800.0, 0.0).is_err());
        assert!(flight_energy(&p, -1.0, 5.0).is_err());
    }

    #[test]
    fn flight_energy_points() {
        let p = AirframeParams::canonical_4kg();
        assert_eq!(flight_energy(&p, 0.0, 10.0).unwrap(), 0.0);
        let e = flight_energy(&p, 800.0, 10.0).unwrap();
        assert!((e - 14_995.0).abs() < 50.0, "{e}");
    }

    #[test]
    fn cruise_speed_for_published_flying_energy() {
        let p = AirframeParams::canonical_4kg();
        let v = infer_cruise_speed(&p, 800.0, 23_910.0).unwrap();
        assert!((7.0..=7.5).contains(&v), "{v}");
        let e = flight_energy(&p, 800.0, v).unwrap();
        assert!((e - 23_910.0).abs() <= 1.0);
    }

    #[test]
    fn cruise_speed_at_minimum_energy_is_fixed_point() {
        let p = AirframeParams::canonical_4kg();
        // independent dense scan for the minimiser
        let mut best = (0.0, f64::INFINITY);
        let mut v = 0.1;
        while v < 120.0 {
            let e = flight_energy(&p, 800.0, v).unwrap();
            if e < best.1 {
                best = (v, e);
            }
            v += 0.01;
        }
        let got = infer_cruise_speed(&p, 800.0, best.1).unwrap();
        assert!((got - best.0).abs() < 0.05, "{got} vs {}", best.0);
    }

    #[test]
    fn unreachable_target_reports_minimum() {
        let p = AirframeParams::canonical_4kg();
        match infer_cruise_speed(&p, 800.0, 1.0) {
            Err(Error::InfeasibleTarget { minimum_j, .. }) => {
                assert!(minimum_j > 8_000.0 && minimum_j < 9_000.0, "{minimum_j}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn calibration_recovers_profile_power() {
        let p = AirframeParams {
            blade_profile_power_override_w: Some(0.0),
            ..AirframeParams::canonical_4kg()
        };
        let c = calibrate_blade_profile_from_hover(&p, 323.05).unwrap();
        let p0 = c.blade_profile_power_override_w.unwrap();
        assert!((p0 - 79.86).abs() < 0.01, "{p0}");
        assert!(rel(hover_power(&c).unwrap().total_w, 323.05) <= 1e-9);
    }

    #[test]
    fn calibration_is_idempotent() {
        let p = AirframeParams::canonical_4kg();
        let current = hover_power(&p).unwrap().total_w;
        let c = calibrate_blade_profile_from_hover(&p, current).unwrap();
        assert!(rel(c.blade_profile_power_override_w.unwrap(), 79.86) < 1e-12);
    }

    #[test]
    fn calibration_below_induced_is_infeasible() {
        let p = AirframeParams::canonical_4kg();
        assert!(matches!(
            calibrate_blade_profile_from_hover(&p, 100.0),
            Err(Error::CalibrationInfeasible { .. })
        ));
    }

    #[test]
    fn momentum_mode_derives_induced_velocity() {
        let p = AirframeParams {
            induced_velocity_mode: InducedVelocityMode::Momentum,
            mean_induced_velocity_m_s: None,
            ..AirframeParams::canonical_4kg()
        };
        p.validate().unwrap();
        let expected = (39.2f64 / (2.0 * 1.225 * 0.503)).sqrt();
        assert!(rel(p.mean_induced_velocity(), expected) < 1e-12);
        let heavier = p.with_mass_kg(8.0).unwrap();
        assert!(rel(heavier.mean_induced_velocity(), expected * 2f64.sqrt()) < 1e-12);
    }

    #[test]
    fn rejects_degenerate_solidity() {
        let p = AirframeParams {
            rotor_solidity: 1.0,
            ..AirframeParams::canonical_4kg()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn json_round_trip_keeps_validation() {
        let text = serde_json::to_string(&AirframeParams::canonical_4kg()).unwrap();
        assert_eq!(
            AirframeParams::from_json(&text).unwrap(),
            AirframeParams::canonical_4kg()
        );
        let bad = text.replace("\"mass_kg\":4.0", "\"mass_kg\":-4.0");
        assert!(AirframeParams::from_json(&bad).is_err());
        let unknown = text.replacen('{', "{\"wing_span\":1.0,", 1);
        assert!(AirframeParams::from_json(&unknown).is_err());
    }
}
