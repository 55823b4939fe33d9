use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generator must be positive, got 0")]
    ZeroGenerator,
    #[error("not a numerical semigroup of a knot: generators {0:?} have gcd {1}")]
    NotNumericalSemigroup(Vec<u64>, u64),
    #[error("semigroup generated by {0:?} is not symmetric, so it is not the semigroup of a plane curve singularity")]
    NotSymmetric(Vec<u64>),
    #[error("invalid Puiseux pair ({p},{q}): {reason}")]
    InvalidPair {
        p: u64,
        q: u64,
        reason: &'static str,
    },
    #[error("at least one singular point is required")]
    NoSingularities,
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u64),
    #[error("empty staircase")]
    EmptyStaircase,
    #[error(
        "large-surgery hypothesis violated: need n >= 2*{knot_genus} + 2*{g} - 1, got n = {n}"
    )]
    SmallSurgery { n: u64, knot_genus: u64, g: u64 },
    #[error(
        "genus formula violated: (d-1)(d-2)/2 - sum(delta) = {expected}, but genus {g} was given"
    )]
    GenusFormula { expected: i64, g: u64 },
    #[error("unknown filter `{0}` (expected one of theorem_main, bmy, multiplicity, spectrum)")]
    UnknownFilter(String),
    #[error("empty filter set")]
    NoFilters,
    #[error("invalid degree range {0}..{1}")]
    DegreeRange(u64, u64),
    #[error("Fibonacci triple index {0} is degenerate (p = 1); the first admissible index is 2")]
    DegenerateTriple(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
