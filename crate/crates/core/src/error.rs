use thiserror::Error;

/// Errors raised by configuration checks, numerical kernels and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A configuration invariant does not hold. The message names the field.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An argument lies outside the domain of the operation.
    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    /// Adaptive quadrature hit its subdivision budget before meeting tolerance.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {estimate:e}, error estimate {error_estimate:e})"
    )]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// A realization contains no gateway to associate with.
    #[error("no gateway in realization")]
    NoGateway,

    /// A tier-conditioned estimate retained zero realizations.
    #[error("no realizations retained for scenario {0}")]
    ZeroRetention(String),

    /// The throughput objective is zero everywhere on the search grid.
    #[error("no interior optimum: throughput vanishes on the whole search grid")]
    NoInteriorOptimum,

    /// A query combination that has no analytic result.
    #[error("unsupported query: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::ZeroRetention(_) | Error::NoInteriorOptimum
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
