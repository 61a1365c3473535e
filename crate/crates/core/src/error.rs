use thiserror::Error;

/// Errors raised by the expansion, elimination and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Bernoulli index {0} is odd and greater than one")]
    OddBernoulliIndex(u32),

    #[error("argument must be a positive integer")]
    ZeroArgument,

    #[error("level {0} is not square-free")]
    NotSquareFree(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid weight {0}: expected an even integer >= 4")]
    InvalidWeight(i64),

    #[error("series vanishes through q^{trunc}; cannot invert")]
    NotInvertible { trunc: i64 },

    #[error("fractional q-exponent: total q^(1/24) power {prefactor24} has residue {residue} mod 24")]
    FractionalExponent { prefactor24: i64, residue: i64 },

    #[error("point must lie in the upper half plane (Im z = {0})")]
    NotInUpperHalfPlane(f64),

    #[error("monomial weight {found} does not match required weight {expected}")]
    WeightMismatch { expected: u64, found: u64 },

    #[error("level {level}: no stop within M <= {m_max}; last pivot profile {profile}")]
    NoStop { level: u64, m_max: u32, profile: String },

    #[error("working truncation {trunc} too small: need at least {needed}; increase --trunc")]
    TruncationTooSmall { trunc: i64, needed: i64 },

    #[error("row has a nonzero coefficient at q^{exponent}, below the first column q^{lo}")]
    OutsideColumns { exponent: i64, lo: i64 },

    #[error("reduced basis has no row with pivot q^{0}")]
    MissingPivot(i64),

    #[error("quadratic form ({a}, {b}, {c}) is not positive definite")]
    Indefinite { a: String, b: String, c: String },

    #[error("identity `{name}` fails at q^{exponent}")]
    IdentityFailed { name: String, exponent: i64 },

    #[error("unsupported level {0}")]
    UnsupportedLevel(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
