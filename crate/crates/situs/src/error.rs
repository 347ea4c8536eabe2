use alloc::string::String;
use core::fmt;

/// Errors shared by every module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown element, size mismatch, broken invariant.
    Domain(String),
    /// An operation needed a degree beyond the truncation.
    DegreeBudget { needed: usize, available: usize },
    /// An exhaustive search would exceed its guard.
    Size { what: &'static str, bound: u128, limit: u64 },
    /// The operation is only defined for a narrower class of inputs.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DegreeBudget { needed, available } => {
                write!(f, "degree budget exceeded: need degree {needed}, truncation is {available}")
            }
            Error::Size { what, bound, limit } => {
                if *bound == u128::MAX {
                    write!(f, "{what}: search space exceeds guard {limit} (bound overflows u128)")
                } else {
                    write!(f, "{what}: search space bound {bound} exceeds guard {limit}")
                }
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub type Result<T> = core::result::Result<T, Error>;
