use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates its domain; `field` names the offending input.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter {
        field: &'static str,
        reason: &'static str,
    },
    /// Path loss evaluated at zero distance.
    #[error("received power is singular at zero distance")]
    ZeroDistance,
    /// No base station survived and no aerial platform was deployed.
    #[error("no candidate base station to associate with")]
    NoCandidates,
    /// Conditional capacity requested but no iteration met the SINR threshold.
    #[error("conditional capacity is undefined: coverage probability is {coverage_probability}")]
    UndefinedEstimate { coverage_probability: f64 },
}

pub(crate) fn invalid(field: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { field, reason }
}
