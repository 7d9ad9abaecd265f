//! Games with distribution-valued payoffs.
//!
//! The crate covers stochastic orders on finitely supported distributions
//! (usual stochastic, expectation, tail and tweakable orders), exact Nash
//! equilibrium computation for bimatrix games, existence decisions for games
//! whose vector payoffs are ordered reflected-lexicographically, Pareto-Nash
//! equilibria of segmented multi-objective games, generators for
//! counterexample distributions, and Monte Carlo estimates of equilibrium
//! existence probabilities.
//!
//! Everything is generic over [`Scalar`], implemented for exact
//! [`Rational`] numbers and for `f64`.

pub mod construct;
pub mod dist;
pub mod error;
pub mod game;
pub mod linalg;
pub mod mc;
pub mod moments;
pub mod pareto;
pub mod rlex;
pub mod scalar;
pub mod solve;

pub use construct::{
    alternating_moment_pair, geometric_tail_family, shift_construction,
    verify_alternation_certificate, verify_cdf_alternation, AlternationCertificate, Direction,
    ShiftConstruction, TruncatedAtomSequence,
};
pub use dist::{
    compare_expectation, compare_usual_stochastic, cumulative_tail_expectations, mixture,
    partition_from_utility, rlex_compare, segment_expectations, tail_compare, tweakable_compare,
    DiscreteDistribution, OrderResult, Partition,
};
pub use error::{Error, Result};
pub use game::{
    BimatrixGame, DistributionBimatrixGame, Matrix, MixedProfile, Player, VectorBimatrixGame,
};
pub use mc::{
    estimate_pure_probability, estimate_rlex_probability, formula_pure_bimatrix,
    formula_pure_zero_sum, random_bimatrix, random_vector_game, RlexEstimate, TrialSummary,
};
pub use moments::{dominance_index, geometric_family_moment, FiniteSequence};
pub use pareto::{
    pareto_minimal, pareto_nash, scalarize, segment_game, weight_sweep, SweepRecord, WeightVector,
};
pub use rlex::{
    check_all_coordinates_condition, check_subgame_condition, decide_rlex_equilibria,
    decide_tail_equilibria, verify_rlex_equilibrium, RlexDecision, RlexStatus,
};
pub use scalar::{parse_rational, Rational, Scalar};
pub use solve::{
    best_response_set, dominant_solution, fictitious_play, is_epsilon_equilibrium,
    pure_equilibria, support_enumeration, zero_sum_value, EquilibriumReport, FictitiousPlay,
    FpStep, SolveOutcome,
};
