use thiserror::Error;

use crate::zeta_core::SeriesResult;

#[derive(Debug, Clone, Error)]
pub enum ZetaError {
    /// An argument lies outside the region where the function is defined
    /// (or where the closed form is proved).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested accuracy could not be reached within `max_terms`.
    /// `partial` carries the best result obtained, with its honest bound.
    #[error("no convergence after {} terms: bound {:.3e} exceeds target {target:.3e}", partial.terms_used, partial.error_bound)]
    NotConverged { partial: SeriesResult, target: f64 },

    #[error("evaluation produced a non-finite value")]
    NonFinite,

    #[error("evaluation cancelled")]
    Cancelled,
}

impl ZetaError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ZetaError::Domain(msg.into())
    }

    /// Best partial result for a convergence failure, otherwise `None`.
    pub fn partial(&self) -> Option<&SeriesResult> {
        match self {
            ZetaError::NotConverged { partial, .. } => Some(partial),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, ZetaError>;
