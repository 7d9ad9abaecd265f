use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution has no atoms")]
    EmptySupport,
    #[error("mass at index {0} is not positive")]
    NonPositiveMass(usize),
    #[error("masses sum to {0}, expected 1")]
    MassSumNotOne(String),
    #[error("atom {0} appears more than once")]
    DuplicateAtom(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mixture weights must be non-negative and sum to 1")]
    WeightsNotSimplex,
    #[error("support contains {0}, but the tail order needs atoms >= 1")]
    SupportBelowOne(String),
    #[error("support is not contained in the partition interval")]
    SupportOutsidePartition,
    #[error("partition points must be strictly increasing with at least two points")]
    InvalidPartition,
    #[error("utility function is not strictly increasing near {0}")]
    NotMonotone(f64),
    #[error("utility function must map a to 0 and b to 1 (got u(a)={0}, u(b)={1})")]
    UtilityRange(f64, f64),
    #[error("bisection did not converge for target {0}")]
    NoConvergence(f64),
    #[error("sequence needs at least {needed} terms, found {found}")]
    TooShort { needed: usize, found: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("{0} is not a probability vector")]
    NotProbabilityVector(&'static str),
    #[error("game is not zero-sum")]
    NotZeroSum,
    #[error("no equilibrium found")]
    NoEquilibriumFound,
    #[error("profile is not an equilibrium of the top-coordinate game")]
    NotTopCoordinateEquilibrium,
    #[error("weight vector must be non-negative and non-zero")]
    InvalidWeights,
    #[error("atom sets overlap at {0}")]
    OverlappingAtoms(String),
    #[error("masses must be strictly decreasing (index {0})")]
    MassesNotDecreasing(usize),
    #[error("atoms must be strictly increasing (index {0})")]
    AtomsNotIncreasing(usize),
    #[error("atom at index {0} lies outside the admissible interval")]
    AtomOutOfRange(usize),
    #[error("k search exceeded the budget of {0}")]
    SearchBudgetExceeded(u32),
    #[error("{indeterminate} of {trials} trials were indeterminate (limit 0.1%)")]
    TooManyIndeterminate { indeterminate: usize, trials: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
