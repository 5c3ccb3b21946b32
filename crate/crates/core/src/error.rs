use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field cardinality {p}^{n} exceeds the supported bound 2^40")]
    BoundExceeded { p: u64, n: usize },
    #[error("no embedding from a degree-{sub} field into a degree-{sup} field (characteristics {p_sub}, {p_sup})")]
    NoEmbedding {
        sub: usize,
        sup: usize,
        p_sub: u64,
        p_sup: u64,
    },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("CRT moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("malformed value: {0}")]
    Malformed(String),
    #[error("twisted polynomial has zero constant term (inseparable)")]
    Inseparable,
    #[error("full kernel not reached within extension degree cap {0}")]
    NotFound(usize),
    #[error("ell equals the characteristic ideal; torsion is not free there")]
    CharacteristicIdeal,
    #[error("splitting extension degree exceeds cap {0}")]
    CapExceeded(usize),
    #[error("total modulus degree {have} is below the required {need}")]
    InsufficientModulus { have: usize, need: usize },
    #[error("prime is a place of bad reduction")]
    BadReduction,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no certified basis found after {0} attempts")]
    BasisNotFound(usize),
    #[error("polynomial is reducible")]
    Reducible,
    #[error("polynomial content in Y is not a unit")]
    NonUnitContent,
    #[error("required p-power root does not exist in the ambient field")]
    RootDoesNotExist,
    #[error("assignment does not extend to a ring morphism: {0}")]
    NotAMorphism(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("the two sampling routes disagree: algebraic {algebraic:?}, sampled {sampled:?}")]
    SamplingDisagreement {
        algebraic: Option<i64>,
        sampled: Option<i64>,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
