use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or mismatched input.
    Usage,
    /// Well-formed input outside the mathematical domain of an operation.
    Domain,
    /// A configured size cap would be exceeded.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 65536]")]
    InvalidModulus(u64),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{0}")]
    Usage(String),

    #[error(
        "not of maximal orbit: the coefficient c_{index} of the top monomial in component {index} \
         is zero (Ostafe criterion requires every c_i to be nonzero)"
    )]
    NotMaximalOrbit { index: usize },

    #[error("right-hand side is not in R^-: the coefficient of the top monomial is {top}, so the orbit sum does not vanish")]
    NotInRMinus { top: u32 },

    #[error("maps are not conjugate: invariants differ at position {index} ({left} vs {right})")]
    NotConjugate { index: usize, left: u32, right: u32 },

    #[error("{0}")]
    Domain(String),

    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    ResourceLimit {
        what: &'static str,
        size: u128,
        cap: u128,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidModulus(_)
            | Error::ArityMismatch { .. }
            | Error::ModulusMismatch(..)
            | Error::Usage(_) => ErrorKind::Usage,
            Error::NotMaximalOrbit { .. }
            | Error::NotInRMinus { .. }
            | Error::NotConjugate { .. }
            | Error::Domain(_) => ErrorKind::Domain,
            Error::ResourceLimit { .. } => ErrorKind::Resource,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
