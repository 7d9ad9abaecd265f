//! Equilibria of vector games ordered reflected-lexicographically.
//!
//! Every equilibrium of such a game is an equilibrium of its top-coordinate
//! projection, so candidates come from support enumeration on that scalar
//! game and are then checked against all pure deviations. A mixture of
//! vectors that are each `≤_RLEX w` is itself `≤_RLEX w`, so pure deviations
//! are enough.

use crate::dist::{rlex_cmp, OrderResult};
use crate::error::{Error, Result};
use crate::game::{DistributionBimatrixGame, MixedProfile, Player, VectorBimatrixGame};
use crate::scalar::Scalar;
use crate::solve::{is_epsilon_equilibrium, support_enumeration, EquilibriumReport};

#[derive(Debug, Clone, PartialEq)]
pub enum RlexStatus<T> {
    NoEquilibrium,
    Equilibria(Vec<EquilibriumReport<T, Vec<T>>>),
    Indeterminate,
}

impl<T> RlexStatus<T> {
    pub fn name(&self) -> &'static str {
        match self {
            RlexStatus::NoEquilibrium => "NoEquilibrium",
            RlexStatus::Equilibria(_) => "Equilibria",
            RlexStatus::Indeterminate => "Indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RlexDecision<T> {
    pub status: RlexStatus<T>,
    /// Every top-coordinate equilibrium with the outcome of verification.
    pub candidates: Vec<(MixedProfile<T>, bool)>,
    pub degenerate: bool,
    /// Every cell carries the same payoff vector for each player, so every
    /// profile is an equilibrium.
    pub payoff_constant: bool,
}

impl<T: Scalar> RlexDecision<T> {
    pub fn equilibria(&self) -> &[EquilibriumReport<T, Vec<T>>] {
        match &self.status {
            RlexStatus::Equilibria(list) => list,
            _ => &[],
        }
    }
}

/// True iff no pure deviation of either player is `>_RLEX` its payoff.
pub fn verify_rlex_equilibrium<T: Scalar>(g: &VectorBimatrixGame<T>, p: &MixedProfile<T>) -> Result<bool> {
    let u1 = g.payoff(p, Player::One)?;
    let u2 = g.payoff(p, Player::Two)?;
    let rows_ok = (0..g.rows()).all(|i| rlex_cmp(&g.row_payoff(i, &p.y), &u1) != OrderResult::Greater);
    let cols_ok = (0..g.cols()).all(|j| rlex_cmp(&g.col_payoff(j, &p.x), &u2) != OrderResult::Greater);
    Ok(rows_ok && cols_ok)
}

fn payoff_constant<T: Scalar>(g: &VectorBimatrixGame<T>) -> bool {
    let same = |m: &crate::game::Matrix<Vec<T>>| {
        let first = m.get(0, 0);
        m.iter().all(|v| v.iter().zip(first).all(|(a, b)| a.approx_eq(b)))
    };
    same(&g.a) && same(&g.b)
}

/// Decide whether the game has equilibria.
///
/// With a non-degenerate top-coordinate game the answer is exact: the
/// equilibria are the verified candidates. A degenerate top-coordinate
/// game yields `Indeterminate` unless all payoffs are constant.
pub fn decide_rlex_equilibria<T: Scalar>(g: &VectorBimatrixGame<T>) -> RlexDecision<T> {
    let top = g.projection(g.dim - 1).expect("dimension is at least one");
    let outcome = support_enumeration(&top);
    let constant = payoff_constant(g);

    let mut candidates = Vec::with_capacity(outcome.equilibria.len());
    let mut verified = Vec::new();
    for e in outcome.equilibria {
        let ok = verify_rlex_equilibrium(g, &e.profile).expect("profile matches game");
        if ok {
            let u1 = g.payoff(&e.profile, Player::One).expect("profile matches game");
            let u2 = g.payoff(&e.profile, Player::Two).expect("profile matches game");
            verified.push(EquilibriumReport {
                profile: e.profile.clone(),
                supports: e.supports.clone(),
                payoffs: (u1, u2),
                pure: e.pure,
            });
        }
        candidates.push((e.profile, ok));
    }

    let status = if outcome.degenerate && !constant {
        RlexStatus::Indeterminate
    } else if verified.is_empty() {
        RlexStatus::NoEquilibrium
    } else {
        RlexStatus::Equilibria(verified)
    };
    RlexDecision { status, candidates, degenerate: outcome.degenerate, payoff_constant: constant }
}

/// Sufficient condition: `p` is an equilibrium of every coordinate game.
pub fn check_all_coordinates_condition<T: Scalar>(g: &VectorBimatrixGame<T>, p: &MixedProfile<T>) -> Result<bool> {
    for i in 0..g.dim {
        if !is_epsilon_equilibrium(&g.projection(i)?, p, &T::zero())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Necessary condition: with `T1`, `T2` the supports of `p`, the restricted
/// profile is an equilibrium of each lower coordinate game restricted to
/// `T1 × T2`. `p` must be an equilibrium of the top-coordinate game.
pub fn check_subgame_condition<T: Scalar>(g: &VectorBimatrixGame<T>, p: &MixedProfile<T>) -> Result<bool> {
    let top = g.projection(g.dim - 1)?;
    if !is_epsilon_equilibrium(&top, p, &T::zero())? {
        return Err(Error::NotTopCoordinateEquilibrium);
    }
    let (t1, t2) = (p.support_x(), p.support_y());
    let restricted = p.restrict(&t1, &t2);
    for i in 0..g.dim - 1 {
        let sub = g.projection(i)?.subgame(&t1, &t2)?;
        if !is_epsilon_equilibrium(&sub, &restricted, &T::zero())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tail-order equilibria of a distribution game, decided on its isomorphic
/// probability vector game.
pub fn decide_tail_equilibria<T: Scalar>(g: &DistributionBimatrixGame<T>) -> Result<RlexDecision<T>> {
    Ok(decide_rlex_equilibria(&g.to_probability_vector_game()?))
}
