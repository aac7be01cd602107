use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("coefficient overflow")]
    Overflow,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} is divisible by the ramified prime")]
    NotCoprimeToThree(String),
    #[error("{0} is not primary")]
    NotPrimary(String),
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("{0} is not congruent to 1 mod 3")]
    NotOneModThree(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("could not factor {0} within the search budget")]
    FactorBudget(u64),
    #[error("modulus norm {norm} exceeds the enumeration budget {budget}")]
    Budget { norm: u64, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge (estimated error {achieved:e}, wanted {wanted:e})")]
    Quadrature { achieved: f64, wanted: f64 },
    #[error("dual sum truncation needs K > {needed:.3e}, limit is {limit:.3e}")]
    Truncation { needed: f64, limit: f64 },
    #[error("power iteration did not converge after {iters} steps (bracket [{lo}, {hi}])")]
    NoConvergence { iters: usize, lo: f64, hi: f64 },
    #[error("numeric check failed: {0}")]
    Numeric(String),
    #[error("cache line {line}: {reason}")]
    CorruptCache { line: usize, reason: String },
    #[error("io: {0}")]
    Io(String),
    #[error("serialization: {0}")]
    Serde(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
