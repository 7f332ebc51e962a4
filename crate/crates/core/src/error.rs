use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {poly} is reducible: {witness}")]
    RejectsReducible { poly: String, witness: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not an exact {n}-th power")]
    NotAPower { n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("quadratic form is singular (radical dimension {radical_dim})")]
    SingularForm { radical_dim: usize },

    #[error("exhaustive search space too large ({0})")]
    SearchSpaceTooLarge(String),

    #[error("dimension {dim} exceeds the supported bound {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("the second trace form is undefined for the degree-one algebra")]
    DegreeOne,

    #[error("cocycle fails the associativity check at basis triple ({0}, {1}, {2})")]
    CocycleInvalid(usize, usize, usize),

    #[error("not a central simple algebra: {0}")]
    NotCsa(String),

    #[error("field too large: {0} bits over GF(2) (max 64)")]
    FieldTooLarge(usize),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

impl Error {
    /// Stable machine-readable code used in CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RejectsReducible { .. } => "rejects_reducible",
            Error::DivisionByZero => "division_by_zero",
            Error::NotAPower { .. } => "not_a_power",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::FieldMismatch => "field_mismatch",
            Error::SingularForm { .. } => "singular_form",
            Error::SearchSpaceTooLarge(_) => "search_space_too_large",
            Error::DimensionTooLarge { .. } => "dimension_too_large",
            Error::DegreeOne => "degree_one",
            Error::CocycleInvalid(..) => "cocycle_invalid",
            Error::NotCsa(_) => "not_csa",
            Error::FieldTooLarge(_) => "field_too_large",
            Error::InvalidExtension(_) => "invalid_extension",
            Error::InvalidForm(_) => "invalid_form",
            Error::Parse { .. } => "parse_error",
            Error::UnknownGenerator(_) => "unknown_generator",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
