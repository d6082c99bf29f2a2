use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus `{0}` is too large (must be below 2^63)")]
    ModulusTooLarge(String),
    #[error("malformed field spec `{0}` (expected `Q` or `Fp:<p>`)")]
    MalformedFieldSpec(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("{what} {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("zero polynomial has no leading data")]
    ZeroPolynomial,
    #[error("decomposition needs at least 2 variables, got {0}")]
    DimensionTooSmall(usize),
    #[error("only one block: nothing to delete")]
    NothingToDelete,
    #[error("interpolation value missing at {0}")]
    MissingValue(String),
    #[error("interpolation supports overlap at level {0}")]
    SupportOverlap(usize),
    #[error("duplicate Lagrange support value {0}")]
    DuplicateSupport(String),
    #[error("staircase is not zero-dimensional: x{0} has no pure-power leading monomial")]
    NotZeroDimensional(usize),
    #[error("lower Groebner bases missing: need {needed}, got {got}")]
    MissingLowerBasis { needed: usize, got: usize },
    #[error("record does not belong to this point set: {0}")]
    RecordMismatch(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid document: {0}")]
    Document(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedScalar(_) => "malformed_scalar",
            Error::ZeroDenominator(_) => "zero_denominator",
            Error::DivisionByZero => "division_by_zero",
            Error::NotPrime(_) => "not_prime",
            Error::ModulusTooLarge(_) => "modulus_too_large",
            Error::MalformedFieldSpec(_) => "malformed_field_spec",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::DuplicatePoint(_) => "duplicate_point",
            Error::EmptyPointSet => "empty_point_set",
            Error::OutOfRange { .. } => "out_of_range",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DimensionTooSmall(_) => "dimension_too_small",
            Error::NothingToDelete => "nothing_to_delete",
            Error::MissingValue(_) => "missing_value",
            Error::SupportOverlap(_) => "support_overlap",
            Error::DuplicateSupport(_) => "duplicate_support",
            Error::NotZeroDimensional(_) => "not_zero_dimensional",
            Error::MissingLowerBasis { .. } => "missing_lower_basis",
            Error::RecordMismatch(_) => "record_mismatch",
            Error::Invariant(_) => "invariant",
            Error::Document(_) => "invalid_document",
        }
    }
}
