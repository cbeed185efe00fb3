use thiserror::Error;

/// Failures reported by the numerical routines.
///
/// Every variant names the operation that failed so that callers (the CLI in
/// particular) can surface it without extra context.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: series did not reach tolerance after {terms} terms (|a t| = {magnitude:.3e})")]
    SeriesNonConvergence {
        op: &'static str,
        terms: usize,
        magnitude: f64,
    },

    #[error("{op}: numeric overflow at beta*t = {beta_t}")]
    Overflow { op: &'static str, beta_t: f64 },

    #[error("{op}: root search did not converge after {iterations} iterations (residual {residual:.3e})")]
    RootNonConvergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("{op}: unstable march, |U| = {magnitude:.3e} at beta*t = {beta_t}")]
    Instability {
        op: &'static str,
        magnitude: f64,
        beta_t: f64,
    },

    #[error("{op}: contour violation, {msg}")]
    ContourViolation { op: &'static str, msg: String },

    #[error("{op}: invariant violated, {msg}")]
    Invariant { op: &'static str, msg: String },
}

impl Error {
    /// Name of the operation that raised the error.
    pub fn operation(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::SeriesNonConvergence { op, .. }
            | Error::Overflow { op, .. }
            | Error::RootNonConvergence { op, .. }
            | Error::Instability { op, .. }
            | Error::ContourViolation { op, .. }
            | Error::Invariant { op, .. } => op,
        }
    }

    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
