use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into two families: malformed input (shape, parse) and
/// domain violations (the input is well formed but breaks a mathematical
/// precondition). The CLI maps the two families onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generator does not produce an integral Gram matrix (max residual {residual:e})")]
    NotIntegral { residual: f64 },
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("Gram matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("invalid lattice type: {0}")]
    InvalidType(String),
    #[error("exponent vector has a non-integer entry")]
    NonIntegerExponent,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("matrix is not a symplectic automorphism of the lattice")]
    NotAutomorphism,
    #[error("codes are presented over different Gram matrices")]
    GramMismatch,
    #[error("a*v*a^-1 is not an integer matrix")]
    NotDualAction,
    #[error("displacement and automorphism do not lie in the normalizer")]
    NotInNormalizer,
    #[error("point is not an element of the dual lattice")]
    NonIntegerPoint,
    #[error("lattice types differ")]
    TypeMismatch,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("path words do not share a base code")]
    BaseMismatch,
    #[error("invalid braid generator {0}")]
    InvalidGenerator(i64),
    #[error("flow snapping failed: residual {residual:e}")]
    SnapFailed { residual: f64 },
    #[error("path is not a loop")]
    NotALoop,
}

impl Error {
    /// Stable machine-readable name, used as the `error` field of CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "Malformed",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotIntegral { .. } => "NotIntegral",
            Error::Degenerate => "Degenerate",
            Error::NotAntisymmetric => "NotAntisymmetric",
            Error::InvalidType(_) => "InvalidType",
            Error::NonIntegerExponent => "NonIntegerExponent",
            Error::NotUnimodular => "NotUnimodular",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::GramMismatch => "GramMismatch",
            Error::NotDualAction => "NotDualAction",
            Error::NotInNormalizer => "NotInNormalizer",
            Error::NonIntegerPoint => "NonIntegerPoint",
            Error::TypeMismatch => "TypeMismatch",
            Error::InvalidMove(_) => "InvalidMove",
            Error::BaseMismatch => "BaseMismatch",
            Error::InvalidGenerator(_) => "InvalidGenerator",
            Error::SnapFailed { .. } => "SnapFailed",
            Error::NotALoop => "NotALoop",
        }
    }

    /// True for errors caused by unparseable or wrongly shaped input.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::DimensionMismatch(_)
                | Error::InvalidGenerator(_)
                | Error::BaseMismatch
                | Error::TypeMismatch
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
