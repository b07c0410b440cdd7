use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the numerical routes can report.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument outside the operation's domain.
    Domain(&'static str),
    /// Adaptive quadrature ran out of subdivision budget.
    Accuracy { estimate: f64, error_bound: f64 },
    /// A root list does not alternate the sign of the boundary function.
    InconsistentRoots { theta: f64 },
    /// A polygon built from a root fails its chord law.
    Certification { residual: f64 },
    /// A polygon does not correspond to any root.
    MalformedPolygon(&'static str),
    /// A parameter sweep cannot separate neighbouring events.
    SweepResolution { t_lo: f64, t_hi: f64 },
    /// Internal shape mismatch.
    Internal(&'static str),
}

impl Error {
    /// True for errors caused by bad input rather than numerical trouble.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::MalformedPolygon(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Accuracy {
                estimate,
                error_bound,
            } => write!(
                f,
                "tolerance not reached: best estimate {estimate:e} with error bound {error_bound:e}"
            ),
            Error::InconsistentRoots { theta } => write!(
                f,
                "root list inconsistent with parameters near theta = {theta}"
            ),
            Error::Certification { residual } => {
                write!(f, "chord law residual {residual:e} exceeds tolerance")
            }
            Error::MalformedPolygon(msg) => write!(f, "malformed polygon: {msg}"),
            Error::SweepResolution { t_lo, t_hi } => write!(
                f,
                "sweep cannot resolve events in ({t_lo}, {t_hi}); increase the step count"
            ),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
