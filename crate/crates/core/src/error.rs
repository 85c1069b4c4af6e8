use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// A non-finite value showed up while evaluating an integrand or jet.
    NonFinite { context: &'static str, location: String },
    /// A sample sequence does not settle to a limit.
    NoConvergence(String),
    /// Two independent evaluations of the same quantity disagree.
    Consistency {
        quantity: &'static str,
        mismatch: f64,
        tolerance: f64,
    },
    /// The input does not satisfy the hypothesis of the inequality being checked.
    Hypothesis(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn non_finite(context: &'static str, location: impl Into<String>) -> Self {
        Error::NonFinite {
            context,
            location: location.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonFinite { context, location } => {
                write!(f, "non-finite value in {context} at {location}")
            }
            Error::NoConvergence(msg) => write!(f, "no convergence: {msg}"),
            Error::Consistency {
                quantity,
                mismatch,
                tolerance,
            } => write!(
                f,
                "internal consistency check on {quantity} failed: mismatch {mismatch:e} > {tolerance:e}"
            ),
            Error::Hypothesis(msg) => write!(f, "hypothesis not satisfied: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
