use std::error;
use std::fmt;

/// Errors reported by constructors and algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Interval endpoints must satisfy `1 <= left <= right`.
    InvalidInterval { left: usize, right: usize },
    /// An interval does not fit inside the ground set `1..=n`.
    OutOfRange { left: usize, right: usize, n: usize },
    /// The ground set must contain at least one point.
    EmptyGroundSet,
    /// The strength parameter k must be at least 1.
    InvalidStrength { k: usize },
    /// The special palette is only valid for laminar-free families.
    NotLaminarFree { k: usize },
    /// A coloring's length differs from the family's ground set size.
    LengthMismatch { coloring: usize, family: usize },
    /// The engine ran more steps than its proven bound allows; this is a bug,
    /// not a property of the input.
    StepLimitExceeded { steps: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInterval { left, right } => {
                write!(f, "invalid interval [{left}, {right}]: need 1 <= left <= right")
            }
            Error::OutOfRange { left, right, n } => {
                write!(f, "interval [{left}, {right}] lies outside the ground set 1..={n}")
            }
            Error::EmptyGroundSet => write!(f, "ground set must contain at least one point"),
            Error::InvalidStrength { k } => write!(f, "strength k must be at least 1, got {k}"),
            Error::NotLaminarFree { k } => {
                write!(f, "special palette requires a laminar-free family for k = {k}")
            }
            Error::LengthMismatch { coloring, family } => {
                write!(
                    f,
                    "coloring covers {coloring} points but the family's ground set has {family}"
                )
            }
            Error::StepLimitExceeded { steps, limit } => {
                write!(f, "engine exceeded its step bound ({steps} > {limit}); this is a bug")
            }
        }
    }
}

impl error::Error for Error {}
