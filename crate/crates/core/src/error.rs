//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors produced by constructions and operations in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A word or orbit breaks a transition of the SFT.
    NotAdmissible(String),
    /// Two values live over different SFTs / cylinder structures.
    DomainMismatch(String),
    /// The operation requires a transitive (irreducible) SFT.
    NotTransitive,
    /// The matrix handed to the Perron solver is not irreducible.
    Reducible,
    /// The operation needs exact (rational) inputs but got interval ones.
    ExactnessRequired,
    /// The classification is undetermined, so the derived quantity is not
    /// resolved either.
    NotResolved,
    /// The requested value depends on convex-combination weights the
    /// toolkit deliberately does not compute.
    WeightsUnknown,
    /// The measure variant does not support this operation.
    WrongVariant,
    /// A brute-force enumeration guard was exceeded.
    TooLarge,
    /// The iteration budget ran out before the requested width was reached.
    PrecisionNotReached,
    /// One-sided pressure derivatives did not separate within tolerance.
    NotSeparated,
    /// The cycle perturbation is too small to push the new orbit past the
    /// old maximizer.
    PerturbationTooSmall,
    /// Malformed input data (dimensions, ranges, missing cylinders, ...).
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAdmissible(w) => write!(f, "not admissible: {w}"),
            Error::DomainMismatch(w) => write!(f, "domain mismatch: {w}"),
            Error::NotTransitive => write!(f, "SFT is not transitive (matrix not irreducible)"),
            Error::Reducible => write!(f, "matrix is not irreducible"),
            Error::ExactnessRequired => write!(f, "operation requires exact rational inputs"),
            Error::NotResolved => write!(f, "classification undetermined; value not resolved"),
            Error::WeightsUnknown => {
                write!(f, "ergodic component weights are unknown by design")
            }
            Error::WrongVariant => write!(f, "measure variant does not support this operation"),
            Error::TooLarge => write!(f, "enumeration guard exceeded"),
            Error::PrecisionNotReached => {
                write!(f, "iteration budget exhausted before requested precision")
            }
            Error::NotSeparated => {
                write!(f, "one-sided derivatives did not separate within tolerance")
            }
            Error::PerturbationTooSmall => {
                write!(f, "perturbation too small: new orbit does not overtake maximizer")
            }
            Error::InvalidInput(w) => write!(f, "invalid input: {w}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
