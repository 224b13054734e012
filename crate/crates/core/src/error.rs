use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// `IndeterminateAtPrecision` is kept separate from every other failure: it
/// means the answer exists but the truncated representation cannot see it,
/// and a caller may retry with a finer precision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series use different group modes")]
    IncompatibleModes,
    #[error("division by zero")]
    DivisionByZero,
    #[error("indeterminate at current precision: {0}")]
    IndeterminateAtPrecision(String),
    #[error("root is not representable with rational coefficients: {0}")]
    NonRepresentableRoot(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("element lies in the base field and defines no unique cut")]
    PureElement,
    #[error("cut cannot be realized: {0}")]
    Unrealizable(String),
    #[error("denominator vanishes at the realization point")]
    PoleAtRealization,
    #[error("Newton iteration does not converge: {0}")]
    NewtonNoConvergence(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("expression is not a rational function of `{0}`")]
    NotRational(String),
    #[error("roots cannot be separated by elements of the field: {0}")]
    RootsNotSeparable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn indeterminate(what: impl Into<String>) -> Self {
        Error::IndeterminateAtPrecision(what.into())
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::IncompatibleModes => "incompatible_modes",
            Error::DivisionByZero => "division_by_zero",
            Error::IndeterminateAtPrecision(_) => "indeterminate_at_precision",
            Error::NonRepresentableRoot(_) => "non_representable_root",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::PureElement => "pure_element",
            Error::Unrealizable(_) => "unrealizable",
            Error::PoleAtRealization => "pole_at_realization",
            Error::NewtonNoConvergence(_) => "newton_no_convergence",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownIdentifier(_) => "unknown_identifier",
            Error::NotRational(_) => "not_rational",
            Error::RootsNotSeparable(_) => "roots_not_separable",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::IndeterminateAtPrecision(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
