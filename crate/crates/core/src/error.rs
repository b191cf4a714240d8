use thiserror::Error;

/// Every failure the library reports as a value.
///
/// Internal invariant violations (an algebra that was validated on
/// construction turning out inconsistent) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    ScalarParse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("quotient is infinite dimensional or exceeds the cap of {cap} monomials")]
    InfiniteDimensional { cap: usize },
    #[error("degree bound {bound} too small: {detail}")]
    BoundTooSmall { bound: usize, detail: String },
    #[error("not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    BadUnit(usize),
    #[error("algebra is not unital")]
    NotUnital,
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("form is not even: {0}")]
    NotEven(String),
    #[error("form requires 1/2 but the field has characteristic 2")]
    CharacteristicTwo,
    #[error("subspace is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("subspace is not a Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("signature is only defined over the rationals")]
    SignatureUnavailable,
    #[error("matrix does not have determinant 1")]
    NotSpecialLinear,
    #[error("not an augmentation: {0}")]
    NotAugmentation(String),
    #[error("orientation does not vanish on the unit")]
    NotIsotropicUnit,
    #[error("invalid family: {0}")]
    BadFamily(String),
    #[error("family does not have the (1, x, V) shape: {0}")]
    BadShape(String),
    #[error("zero scalar where a unit is required")]
    ZeroScalar,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("witness slice is singular")]
    SingularWitness,
    #[error("sample is not in general position: {0}")]
    GenericityFailure(String),
    #[error("invalid bilinear form: {0}")]
    BadForm(String),
    #[error("invalid orientation: {0}")]
    BadOrientation(String),
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("unknown variable {name} at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("duplicate {clause} at {line}:{col}")]
    DuplicateClause { clause: String, line: usize, col: usize },
}

impl Error {
    /// Stable machine-readable name used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroInput(_) => "ZeroInput",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::ScalarParse(_) => "ScalarParse",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular(_) => "Singular",
            Error::InfiniteDimensional { .. } => "InfiniteDimensional",
            Error::BoundTooSmall { .. } => "BoundTooSmall",
            Error::NotCommutative(..) => "NotCommutative",
            Error::NotAssociative(..) => "NotAssociative",
            Error::BadUnit(_) => "BadUnit",
            Error::NotUnital => "NotUnital",
            Error::Degenerate(_) => "Degenerate",
            Error::NotEven(_) => "NotEven",
            Error::CharacteristicTwo => "CharacteristicTwo",
            Error::NotIsotropic(_) => "NotIsotropic",
            Error::NotLagrangian(_) => "NotLagrangian",
            Error::SignatureUnavailable => "SignatureUnavailable",
            Error::NotSpecialLinear => "NotSpecialLinear",
            Error::NotAugmentation(_) => "NotAugmentation",
            Error::NotIsotropicUnit => "NotIsotropicUnit",
            Error::BadFamily(_) => "BadFamily",
            Error::BadShape(_) => "BadShape",
            Error::ZeroScalar => "ZeroScalar",
            Error::BadParameter(_) => "BadParameter",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::SingularWitness => "SingularWitness",
            Error::GenericityFailure(_) => "GenericityFailure",
            Error::BadForm(_) => "BadForm",
            Error::BadOrientation(_) => "BadOrientation",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::DuplicateClause { .. } => "DuplicateClause",
        }
    }

    /// Source position `(line, column)` for presentation errors.
    pub fn location(&self) -> Option<(usize, usize)> {
        match self {
            Error::Syntax { line, col, .. }
            | Error::UnknownVariable { line, col, .. }
            | Error::DuplicateClause { line, col, .. } => Some((*line, *col)),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
