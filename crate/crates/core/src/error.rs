use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid value for `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("missing `{field}`: required when {context}")]
    MissingParameter {
        field: &'static str,
        context: &'static str,
    },

    #[error("{quantity} is out of domain: {value}")]
    Domain { quantity: &'static str, value: f64 },

    #[error(
        "target flying energy {target_j} J is infeasible: minimum achievable is {minimum_j} J at {speed_m_s} m/s"
    )]
    InfeasibleTarget {
        target_j: f64,
        minimum_j: f64,
        speed_m_s: f64,
    },

    #[error("no speed in ({lower_m_s}, {upper_m_s}) m/s gives flying energy {target_j} J")]
    UnbracketedTarget {
        target_j: f64,
        lower_m_s: f64,
        upper_m_s: f64,
    },

    #[error(
        "calibration infeasible: observed hover power {observed_w} W does not exceed induced power {induced_w} W"
    )]
    CalibrationInfeasible { observed_w: f64, induced_w: f64 },

    #[error("serve mode `grasp` requires a gripper")]
    MissingGripper,

    #[error("serve power is zero, serving time would be unbounded")]
    ZeroServePower,

    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("duplicate {kind} `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error(
        "instance has {units} units and {sites} sites; exhaustive search is limited to {limit} of each"
    )]
    SizeLimit {
        units: usize,
        sites: usize,
        limit: usize,
    },

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field: field.into(),
        reason: reason.into(),
    }
}

pub(crate) fn require_positive(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

pub(crate) fn require_non_negative(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(invalid(
            field,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}
