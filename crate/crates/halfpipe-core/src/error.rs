//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors raised by algebra, geometry and solver operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two values over different algebras `B_s` were combined.
    TagMismatch { left: f64, right: f64 },
    /// Inversion of a zero divisor (a light-like or nilpotent element).
    ZeroDivisor,
    /// Rescaling to or from `s = 0`; the limit is taken on paths, not on
    /// single elements.
    InvalidRescale,
    /// Idempotents only exist for `s < 0`.
    NoIdempotents,
    /// A matrix that is required to be invertible is not.
    NotInvertible,
    /// A point was required to be an interior point of the model and is not.
    NotInterior,
    /// A generator index in a word is out of range.
    WordIndexOutOfRange { index: i32, generators: usize },
    /// A base representation failed its relator residual tolerance.
    InvalidRepresentation { residual: f64 },
    /// A claimed cocycle violates the relator conditions.
    NotACocycle { residual: f64 },
    /// Numeric rank could not be decided: the singular value gap is too
    /// small to separate zero from nonzero.
    AmbiguousRank { gap_ratio: f64 },
    /// Newton projection failed to find a real path.
    NoRealPath { residual: f64 },
    /// Newton projection onto the constrained variety failed to converge.
    Obstructed { residual: f64 },
    /// The element does not fix the expected axis.
    NotAxial { residual: f64 },
    /// The element has a nontrivial finite part where a pure infinitesimal
    /// is required.
    NotInfinitesimal { residual: f64 },
    /// Lifted angle tracking needs steps of rotation angle below pi/2.
    StepTooLarge { step: f64 },
    /// Right-angled regular m-gons need m >= 5.
    RightAngleImpossible { m: u32 },
    /// A scenario build produced residuals above tolerance.
    ConstructionFailed { equation: String, residual: f64 },
    /// No angle phi with sinh(l_a/2) sinh(l_b/2) sin(phi) = 1 exists.
    NoParabolicAngle,
    /// The H^1 smoothness gate for a transition was not met.
    SmoothnessGateFailed { h1: usize },
    /// Generic precondition violation.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TagMismatch { left, right } => {
                write!(f, "algebra tag mismatch: s = {left} vs s = {right}")
            }
            Error::ZeroDivisor => write!(f, "zero divisor is not invertible"),
            Error::InvalidRescale => write!(f, "rescaling is only defined for s != 0"),
            Error::NoIdempotents => write!(f, "idempotents exist only for s < 0"),
            Error::NotInvertible => write!(f, "matrix is not invertible over B_s"),
            Error::NotInterior => write!(f, "point is not an interior point of the model"),
            Error::WordIndexOutOfRange { index, generators } => {
                write!(f, "word letter {index} out of range for {generators} generators")
            }
            Error::InvalidRepresentation { residual } => {
                write!(f, "relator residual {residual:e} above tolerance")
            }
            Error::NotACocycle { residual } => {
                write!(f, "cocycle conditions violated by {residual:e}")
            }
            Error::AmbiguousRank { gap_ratio } => {
                write!(f, "ambiguous numeric rank (singular value gap ratio {gap_ratio:e})")
            }
            Error::NoRealPath { residual } => {
                write!(f, "no real path found (terminal residual {residual:e})")
            }
            Error::Obstructed { residual } => {
                write!(f, "obstructed (terminal residual {residual:e})")
            }
            Error::NotAxial { residual } => {
                write!(f, "element does not fix the axis (residual {residual:e})")
            }
            Error::NotInfinitesimal { residual } => {
                write!(f, "finite part is nontrivial (residual {residual:e})")
            }
            Error::StepTooLarge { step } => {
                write!(f, "path sampling too coarse (step angle {step})")
            }
            Error::RightAngleImpossible { m } => {
                write!(f, "no right-angled regular {m}-gon in the hyperbolic plane")
            }
            Error::ConstructionFailed { equation, residual } => {
                write!(f, "construction failed at {equation} (residual {residual:e})")
            }
            Error::NoParabolicAngle => {
                write!(f, "sinh(l_a/2) sinh(l_b/2) < 1: no parabolic axis angle")
            }
            Error::SmoothnessGateFailed { h1 } => {
                write!(f, "smoothness gate failed: h1 = {h1}, expected 1")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
