use thiserror::Error;

/// Failure modes of the engine. `kind()` gives the stable name used in CLI
/// error documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("augmentation is not a unit of the coefficient ring")]
    AugmentationNotUnit,
    #[error("augmentation is not the identity")]
    AugmentationNotOne,
    #[error("augmentation is not zero")]
    AugmentationNotZero,
    #[error("augmentation of the matrix is not the identity matrix")]
    AugmentationNotIdentity,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operation needs a coefficient ring containing the rationals")]
    NeedsRationalCoefficients,
    #[error("coefficient ring {0} has no rational-valued trace")]
    NeedsTrace(String),
    #[error("twisted trace is not available for this automorphism of {0}")]
    UnsupportedTwist(String),
    #[error("generator violates its flavor condition: {0}")]
    FlavorViolated(String),
    #[error("a and c do not commute")]
    CommutationFailed,
    #[error("series is not of the form 1 + (positive degree terms)")]
    NotInWOne,
    #[error("lowest-degree coefficient is not a unit")]
    LeadingCoeffNotUnit,
    #[error("degree window underflow: shift {needed} exceeds maximum {max}")]
    WindowUnderflow { needed: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring description: {0}")]
    InvalidRing(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotInvertible(_) => "NotInvertible",
            Error::AugmentationNotUnit => "AugmentationNotUnit",
            Error::AugmentationNotOne => "AugmentationNotOne",
            Error::AugmentationNotZero => "AugmentationNotZero",
            Error::AugmentationNotIdentity => "AugmentationNotIdentity",
            Error::RingMismatch => "RingMismatch",
            Error::NeedsRationalCoefficients => "NeedsRationalCoefficients",
            Error::NeedsTrace(_) => "NeedsTrace",
            Error::UnsupportedTwist(_) => "UnsupportedTwist",
            Error::FlavorViolated(_) => "FlavorViolated",
            Error::CommutationFailed => "CommutationFailed",
            Error::NotInWOne => "NotInWOne",
            Error::LeadingCoeffNotUnit => "LeadingCoeffNotUnit",
            Error::WindowUnderflow { .. } => "WindowUnderflow",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "Parse",
            Error::InvalidRing(_) => "InvalidRing",
        }
    }

    /// Parse and ring-description failures are input-format problems rather
    /// than algebraic ones.
    pub fn is_schema_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidRing(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
