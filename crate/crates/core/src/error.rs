use thiserror::Error;

/// Domain errors raised by the geometric and algebraic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("roots {i} and {j} coincide (distance {distance:e})")]
    DuplicateRoots { i: usize, j: usize, distance: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("indeterminate extended arithmetic: {0}")]
    Indeterminate(&'static str),

    #[error("degenerate fractional-linear map (determinant {0:e})")]
    DegenerateMap(f64),

    #[error("F is undefined at the star pair")]
    UndefinedAtStarPair,

    #[error("component z{} of the triple is a star point", .index + 1)]
    DegenerateSolution { index: usize },

    #[error("triple does not solve P = 0 (relative residual {0:e})")]
    NotASolution(f64),

    #[error("u3 = -1/(u1 u2) equals the excluded value")]
    ExcludedU3,

    #[error("(u1, u2) is an excluded pair (0, inf) or (inf, 0)")]
    ExcludedPair,

    #[error("cross-ratio quadruple is degenerate")]
    DegenerateQuadruple,

    #[error("defining points are not pairwise distinct")]
    DuplicatePoints,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("det B vanishes; u0 is undefined")]
    SingularDenominator,

    #[error("the conic denominator P vanishes")]
    SingularP,

    #[error("conic system is rank deficient (nullity {0})")]
    RankDeficient(usize),

    #[error("all conic coefficients vanish")]
    ZeroConic,

    #[error("no sign change of the implicit function inside the region")]
    EmptyContour,

    #[error("grid resolution {0} is below the minimum of 16")]
    InvalidGrid(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
