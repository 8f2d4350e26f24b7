use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("empty domain")]
    EmptyDomain,

    #[error("image array is not a bijection of 0..{degree}")]
    NotBijection { degree: usize },

    #[error("group order exceeds the enumeration ceiling of {limit}")]
    TooLarge { limit: usize },

    #[error("element {0} is not a member of the group")]
    NotInGroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not invariant under {0}")]
    NotInvariant(String),

    #[error("generator images do not extend to a homomorphism")]
    NotHomomorphism,

    #[error("generator images do not define a bijection")]
    NotBijective,

    #[error("{0} is not prime")]
    NotPrime(u128),

    #[error("integers {a} and {b} are not coprime")]
    NotCoprime { a: u128, b: u128 },

    #[error("arithmetic overflow computing {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("projected sink differs from the sink computed in the quotient")]
    QuotientMismatch,

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
