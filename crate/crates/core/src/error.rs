use core::fmt;

/// Failure modes of the numerical pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument of the Gamma function sits on a pole (non-positive integer).
    Pole { re: f64 },
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// Invalid model parameters.
    InvalidParams(&'static str),
    /// A consistency check on an analytic result failed.
    Numerical { what: &'static str, deviation: f64 },
    /// The integrator hit its step cap or step-size floor.
    Stiffness { steps: usize, eta: f64 },
    /// A conserved quantity or certified tail exceeded its tolerance.
    Tolerance { what: &'static str, value: f64, limit: f64 },
    /// Extracted Bogoliubov coefficients violate |α|² − |β|² = 1.
    Normalization { deviation: f64 },
    /// An extrapolation or quadrature did not settle.
    Convergence { what: &'static str, discrepancy: f64 },
    /// Requested dense truncation is larger than the cap.
    Size { requested: usize, cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { re } => write!(f, "Gamma function pole at z = {re}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Numerical { what, deviation } => {
                write!(f, "numerical check failed: {what} (deviation {deviation:e})")
            }
            Error::Stiffness { steps, eta } => {
                write!(f, "integrator gave up after {steps} steps at eta = {eta}")
            }
            Error::Tolerance { what, value, limit } => {
                write!(f, "{what} = {value:e} exceeds {limit:e}")
            }
            Error::Normalization { deviation } => {
                write!(f, "|alpha|^2 - |beta|^2 deviates from 1 by {deviation:e}")
            }
            Error::Convergence { what, discrepancy } => {
                write!(f, "{what} did not converge (discrepancy {discrepancy:e})")
            }
            Error::Size { requested, cap } => {
                write!(f, "truncation {requested} exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
