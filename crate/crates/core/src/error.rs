use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^16)")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("polynomial modulus is zero")]
    ModulusZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("q^n - 1 does not fit the desk-scale bound (n log2 q must be <= 63)")]
    OrderTooLarge,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("state is zero")]
    ZeroState,
    #[error("only {got} samples for linear complexity {complexity}; need {needed}")]
    InsufficientSamples {
        got: usize,
        complexity: usize,
        needed: usize,
    },
    #[error("orbit of size {0} exceeds the walk bound")]
    OrbitTooLarge(u128),
    #[error("phi is undefined at (1,...,1)")]
    AtOnes,
    #[error("point is not on the road of R")]
    NotOnRoad,
    #[error("point already equals R; no active coordinate")]
    AlreadyAtR,
    #[error("R vector entries must be positive and non-empty")]
    BadRVector,
    #[error("row vector is zero")]
    ZeroRow,
    #[error("row {0} is not the last unit vector")]
    RowNotUnit(usize),
    #[error("bad degree: expected {expected}, got {got}")]
    BadDegree { expected: usize, got: usize },
    #[error("bad polynomial ladder: {0}")]
    BadLadder(String),
    #[error("bad initial state: {0}")]
    BadInitialState(String),
    #[error("stacked state is singular; multisequence has deficient extension")]
    ExtensionDeficient,
    #[error("matrix is not an m-companion matrix")]
    NotMCompanion,
    #[error("Hankel vector must have odd length")]
    EvenLength,
    #[error("search space {0} exceeds the enumeration bound")]
    TooLarge(u128),
    #[error("orbit quotient is not integral: {count} / {orbit}")]
    NonIntegralOrbitQuotient { count: u64, orbit: u64 },
    #[error("parameter out of range: {0}")]
    BadRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
