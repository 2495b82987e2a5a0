use thiserror::Error;

/// Errors raised by the algebra, combinatorics and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{r})")]
    DivisionByZero { r: u32 },
    #[error("incompatible cyclotomic fields: Q(zeta_{left}) vs Q(zeta_{right})")]
    IncompatibleField { left: u32, right: u32 },
    #[error("incompatible polynomial rings: (n={n1}, r={r1}) vs (n={n2}, r={r2})")]
    IncompatibleRing { n1: usize, r1: u32, n2: usize, r2: u32 },
    #[error("incompatible group elements: (n={n1}, r={r1}) vs (n={n2}, r={r2})")]
    IncompatibleGroup { n1: usize, r1: u32, n2: usize, r2: u32 },
    #[error("polynomial is not divisible by the linear form {divisor}")]
    NotDivisible { divisor: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("invalid group G({r},{p},{n}): {reason}")]
    InvalidGroup { r: u32, p: u32, n: usize, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("descent class graph is not connected between {from} and {to}")]
    NotConnected { from: String, to: String },
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("not an eigenvector of {operator}")]
    NotEigenvector { operator: String },
    #[error("parameters are not generic enough: {expression} vanishes")]
    GenericityFailure { expression: String },
    #[error("intertwiner identity violated: {0}")]
    LemmaViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
