//! Free-field noise at the serving site.

use crate::error::{Error, Result};

use super::ServeMode;

/// Level near which rotary-wing drones operate in flight, dB.
pub const ACCEPTABLE_NOISE_LEVEL_DB: f64 = 85.0;
pub const URBAN_DAY_LIMIT_DB: f64 = 55.0;
pub const URBAN_NIGHT_LIMIT_DB: f64 = 45.0;

/// Spherical spreading from a point source, about 6.02 dB per doubling.
pub fn sound_level_at_distance(
    source_level_db: f64,
    reference_distance_m: f64,
    distance_m: f64,
) -> Result<f64> {
    for (quantity, value) in [
        ("reference_distance_m", reference_distance_m),
        ("distance_m", distance_m),
    ] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Domain { quantity, value });
        }
    }
    Ok(source_level_db - 20.0 * (distance_m / reference_distance_m).log10())
}

/// Urban ambient limit check; limits are inclusive.
pub fn noise_compliant(level_db: f64, daytime: bool) -> bool {
    let limit = if daytime {
        URBAN_DAY_LIMIT_DB
    } else {
        URBAN_NIGHT_LIMIT_DB
    };
    level_db <= limit
}

/// Noise emitted while serving. Perched units stop their rotors.
pub fn serving_emission_db(mode: ServeMode, rotor_level_db: f64) -> f64 {
    match mode {
        ServeMode::Hover => rotor_level_db,
        ServeMode::Grasp => 0.0,
    }
}
