use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported group order {n}: {reason}")]
    UnsupportedGroup { n: u64, reason: String },

    #[error("prime {p} divides {n}; tame factor requested for a wild prime")]
    WildPrime { n: u64, p: u64 },

    #[error("no wild factor available for n = {n}, p = {p}")]
    MissingWildFactor { n: u64, p: u64 },

    #[error("malformed wild-factor table at line {line}: {reason}")]
    WildTableParse { line: usize, reason: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search bound too large: {0}")]
    SearchBound(String),

    #[error("pole at s = {0}")]
    Pole(String),

    #[error("parameters outside the supported domain: {0}")]
    Domain(String),

    #[error("failed to converge: {what} (achieved error {achieved:e})")]
    NonConvergence { what: String, achieved: f64 },

    #[error("factorization failed for residue {residue} mod {modulus}: coefficient of u^{degree} is {value}")]
    FactorizationFailure {
        modulus: u64,
        residue: u64,
        degree: usize,
        value: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnsupportedGroup { .. } => "unsupported_group",
            Error::WildPrime { .. } => "wild_prime",
            Error::MissingWildFactor { .. } => "missing_wild_factor",
            Error::WildTableParse { .. } => "wild_table_parse",
            Error::Overflow(_) => "overflow",
            Error::SearchBound(_) => "search_bound",
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::FactorizationFailure { .. } => "factorization_failure",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
