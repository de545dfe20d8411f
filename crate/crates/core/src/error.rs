use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{value} is not an element of {domain}")]
    NotInDomain { value: String, domain: String },

    #[error("invalid ring signature: {0}")]
    InvalidSignature(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("negative exponent on polynomial variable {0}")]
    NegativeExponent(String),

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("image of {variable} is {image}, which is not a unit but is needed at a negative exponent")]
    NonUnitImage { variable: String, image: String },

    #[error("evaluation hits a pole at {0} = 0")]
    Pole(String),

    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("Laurent variable {variable} maps to {image}, which is not a unit")]
    InvalidEndomorphism { variable: String, image: String },

    #[error("not idempotent: phi^2({variable}) = {phi_squared} != {phi} = phi({variable})")]
    NotIdempotent {
        variable: String,
        phi_squared: String,
        phi: String,
    },

    #[error("matrix is not idempotent")]
    MatrixNotIdempotent,

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("supplied inverse is not a two-sided inverse")]
    NotInverse,

    #[error("the coefficient domain {0} is not a field")]
    NotAField(String),

    #[error("inconsistent classification inputs: {0}")]
    Inconsistent(String),

    #[error("certificate {name} failed: {detail}")]
    Certificate { name: String, detail: String },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn certificate(name: &str, detail: impl Into<String>) -> Self {
        Error::Certificate {
            name: name.to_string(),
            detail: detail.into(),
        }
    }
}
