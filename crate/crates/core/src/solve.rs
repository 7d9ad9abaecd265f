//! Equilibria of scalar bimatrix games.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{positive_indices, BimatrixGame, MixedProfile, Player};
use crate::linalg::{self, Solution};
use crate::scalar::{max_tol, Scalar};

/// One equilibrium with its supports and the payoff of each player. The
/// payoff type defaults to the scalar type; vector games report vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<T, U = T> {
    pub profile: MixedProfile<T>,
    pub supports: (Vec<usize>, Vec<usize>),
    pub payoffs: (U, U),
    pub pure: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome<T> {
    pub equilibria: Vec<EquilibriumReport<T>>,
    /// Set when a linear system was singular or a found equilibrium has
    /// more pure best responses than the opponent's support size. When
    /// unset, `equilibria` is the complete set.
    pub degenerate: bool,
}

impl<T: Scalar> EquilibriumReport<T> {
    pub fn new(g: &BimatrixGame<T>, profile: MixedProfile<T>) -> Self {
        let u1 = g.payoff(&profile, Player::One).expect("profile matches game");
        let u2 = g.payoff(&profile, Player::Two).expect("profile matches game");
        let supports = (profile.support_x(), profile.support_y());
        let pure = supports.0.len() == 1 && supports.1.len() == 1;
        EquilibriumReport { profile, supports, payoffs: (u1, u2), pure }
    }
}

fn argmax_all<T: Scalar>(values: &[T]) -> Vec<usize> {
    let Some(best) = max_tol(values) else { return Vec::new() };
    values.iter().enumerate().filter(|(_, v)| v.approx_eq(best)).map(|(i, _)| i).collect()
}

fn argmax_first<T: Scalar>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v.cmp_tol(&values[best]) == Ordering::Greater {
            best = i;
        }
    }
    best
}

/// Cells whose `a_ij` is maximal in its column and `b_ij` maximal in its row.
pub fn pure_equilibria<T: Scalar>(g: &BimatrixGame<T>) -> Vec<(usize, usize)> {
    let (n1, n2) = (g.rows(), g.cols());
    let col_max: Vec<T> = (0..n2)
        .map(|j| {
            let col: Vec<T> = (0..n1).map(|i| g.a.get(i, j).clone()).collect();
            max_tol(&col).unwrap().clone()
        })
        .collect();
    let row_max: Vec<T> = (0..n1).map(|i| max_tol(g.b.row(i)).unwrap().clone()).collect();
    let mut out = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            if g.a.get(i, j).approx_eq(&col_max[j]) && g.b.get(i, j).approx_eq(&row_max[i]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Lowest-index pure strategies that are best responses to every opposing
/// pure strategy, if both players have one.
pub fn dominant_solution<T: Scalar>(g: &BimatrixGame<T>) -> Option<(usize, usize)> {
    let (n1, n2) = (g.rows(), g.cols());
    let row = (0..n1).find(|&i| {
        (0..n1).all(|k| (0..n2).all(|j| g.a.get(i, j).cmp_tol(g.a.get(k, j)) != Ordering::Less))
    })?;
    let col = (0..n2).find(|&j| {
        (0..n2).all(|l| (0..n1).all(|i| g.b.get(i, j).cmp_tol(g.b.get(i, l)) != Ordering::Less))
    })?;
    Some((row, col))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(pos) = (0..k).rev().find(|&p| current[p] < n - k + p) else { break };
        current[pos] += 1;
        for q in pos + 1..k {
            current[q] = current[q - 1] + 1;
        }
    }
    out
}

/// Mix over `support` (indices into a strategy set of size `n`) making the
/// opponent indifferent among its strategies `targets`. `payoff(t, s)` is
/// the opponent's payoff for its strategy `t` against our strategy `s`.
fn indifference<T: Scalar>(
    n: usize,
    support: &[usize],
    targets: &[usize],
    payoff: impl Fn(usize, usize) -> T,
) -> Solution<T> {
    let k = support.len();
    let mut a = Vec::with_capacity(k + 1);
    let mut rhs = Vec::with_capacity(k + 1);
    for &t in targets {
        let mut row: Vec<T> = support.iter().map(|&s| payoff(t, s)).collect();
        row.push(-T::one());
        a.push(row);
        rhs.push(T::zero());
    }
    let mut row = vec![T::one(); k];
    row.push(T::zero());
    a.push(row);
    rhs.push(T::one());

    match linalg::solve(a, rhs) {
        Solution::Unique(sol) => {
            let mut full = vec![T::zero(); n];
            for (&s, p) in support.iter().zip(sol) {
                full[s] = p;
            }
            Solution::Unique(full)
        }
        Solution::Inconsistent => Solution::Inconsistent,
        Solution::Underdetermined => Solution::Underdetermined,
    }
}

fn clean_probabilities<T: Scalar>(v: &mut [T]) -> bool {
    for p in v.iter_mut() {
        if p.is_negative_tol() {
            return false;
        }
        if !T::EXACT && p.is_zero_tol() {
            *p = T::zero();
        }
    }
    true
}

fn outside_ok<T: Scalar>(payoffs: &[T], support: &[usize]) -> bool {
    let level = &payoffs[support[0]];
    payoffs.iter().all(|p| p.cmp_tol(level) != Ordering::Greater)
}

/// Support enumeration over all pairs `(I, J)` with `|I| = |J|`, solving
/// the indifference systems exactly. Results are sorted by support pair.
pub fn support_enumeration<T: Scalar>(g: &BimatrixGame<T>) -> SolveOutcome<T> {
    let (n1, n2) = (g.rows(), g.cols());
    let mut degenerate = false;
    let mut found: Vec<MixedProfile<T>> = Vec::new();

    for k in 1..=n1.min(n2) {
        let rows_k = subsets(n1, k);
        let cols_k = subsets(n2, k);
        for rows in &rows_k {
            for cols in &cols_k {
                let y = indifference(n2, cols, rows, |i, j| g.a.get(i, j).clone());
                let x = indifference(n1, rows, cols, |j, i| g.b.get(i, j).clone());
                if x == Solution::Underdetermined || y == Solution::Underdetermined {
                    degenerate = true;
                }
                let (Solution::Unique(mut x), Solution::Unique(mut y)) = (x, y) else { continue };
                if !clean_probabilities(&mut x) || !clean_probabilities(&mut y) {
                    continue;
                }
                if !outside_ok(&g.row_payoffs(&y), rows) || !outside_ok(&g.col_payoffs(&x), cols) {
                    continue;
                }
                let duplicate = found.iter().any(|p| {
                    p.x.iter().zip(&x).all(|(a, b)| a.approx_eq(b)) && p.y.iter().zip(&y).all(|(a, b)| a.approx_eq(b))
                });
                if !duplicate {
                    found.push(MixedProfile { x, y });
                }
            }
        }
    }

    let mut equilibria: Vec<EquilibriumReport<T>> = found
        .into_iter()
        .map(|p| {
            let responses_1 = argmax_all(&g.row_payoffs(&p.y)).len();
            let responses_2 = argmax_all(&g.col_payoffs(&p.x)).len();
            if responses_1 > positive_indices(&p.y).len() || responses_2 > positive_indices(&p.x).len() {
                degenerate = true;
            }
            EquilibriumReport::new(g, p)
        })
        .collect();
    equilibria.sort_by(|a, b| {
        let key = |e: &EquilibriumReport<T>| (e.supports.0.len(), e.supports.0.clone(), e.supports.1.clone());
        key(a).cmp(&key(b))
    });
    SolveOutcome { equilibria, degenerate }
}

/// Player 1's payoff at any equilibrium of a zero-sum game.
pub fn zero_sum_value<T: Scalar>(g: &BimatrixGame<T>) -> Result<T> {
    if !g.zero_sum {
        return Err(Error::NotZeroSum);
    }
    support_enumeration(g)
        .equilibria
        .into_iter()
        .next()
        .map(|e| e.payoffs.0)
        .ok_or(Error::NoEquilibriumFound)
}

/// Pure strategies of `player` maximizing the payoff against `opponent_mix`.
pub fn best_response_set<T: Scalar>(g: &BimatrixGame<T>, player: Player, opponent_mix: &[T]) -> Result<Vec<usize>> {
    let expected = match player {
        Player::One => g.cols(),
        Player::Two => g.rows(),
    };
    if opponent_mix.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: opponent_mix.len() });
    }
    let payoffs = match player {
        Player::One => g.row_payoffs(opponent_mix),
        Player::Two => g.col_payoffs(opponent_mix),
    };
    Ok(argmax_all(&payoffs))
}

/// No pure deviation gains either player more than `eps`.
pub fn is_epsilon_equilibrium<T: Scalar>(g: &BimatrixGame<T>, p: &MixedProfile<T>, eps: &T) -> Result<bool> {
    let u1 = g.payoff(p, Player::One)?;
    let u2 = g.payoff(p, Player::Two)?;
    let bound1 = u1 + eps.clone();
    let bound2 = u2 + eps.clone();
    let ok1 = g.row_payoffs(&p.y).iter().all(|v| v.cmp_tol(&bound1) != Ordering::Greater);
    let ok2 = g.col_payoffs(&p.x).iter().all(|v| v.cmp_tol(&bound2) != Ordering::Greater);
    Ok(ok1 && ok2)
}

/// State after one round of fictitious play.
#[derive(Debug, Clone, PartialEq)]
pub struct FpStep {
    pub round: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u1: f64,
}

/// Fictitious play as an iterator over rounds. Each player best-responds
/// to the opponent's empirical mixture, lowest index on ties.
#[derive(Debug, Clone)]
pub struct FictitiousPlay<T> {
    game: BimatrixGame<T>,
    counts_x: Vec<u64>,
    counts_y: Vec<u64>,
    /// `A · counts_y`
    ay: Vec<T>,
    /// `counts_xᵀ · A`
    xa: Vec<T>,
    /// `counts_xᵀ · B`
    xb: Vec<T>,
    /// `counts_xᵀ · A · counts_y`
    total: T,
    round: usize,
    first: (usize, usize),
}

impl<T: Scalar> FictitiousPlay<T> {
    /// Starts from pure strategies `(0, 0)`, or uniformly drawn ones when a
    /// seed is given.
    pub fn new(game: &BimatrixGame<T>, seed: Option<u64>) -> Self {
        let (n1, n2) = (game.rows(), game.cols());
        let first = match seed {
            Some(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                (rng.random_range(0..n1), rng.random_range(0..n2))
            }
            None => (0, 0),
        };
        FictitiousPlay {
            game: game.clone(),
            counts_x: vec![0; n1],
            counts_y: vec![0; n2],
            ay: vec![T::zero(); n1],
            xa: vec![T::zero(); n2],
            xb: vec![T::zero(); n2],
            total: T::zero(),
            round: 0,
            first,
        }
    }

    fn averages(counts: &[u64], k: usize) -> Vec<f64> {
        counts.iter().map(|&c| c as f64 / k as f64).collect()
    }

    /// Exact average strategies after the rounds played so far.
    pub fn average_profile(&self) -> MixedProfile<T> {
        let k = T::from_i64(self.round.max(1) as i64);
        let avg = |c: &[u64]| c.iter().map(|&v| T::from_i64(v as i64) / k.clone()).collect();
        MixedProfile { x: avg(&self.counts_x), y: avg(&self.counts_y) }
    }
}

impl<T: Scalar> Iterator for FictitiousPlay<T> {
    type Item = FpStep;

    fn next(&mut self) -> Option<FpStep> {
        let (s, t) = if self.round == 0 { self.first } else { (argmax_first(&self.ay), argmax_first(&self.xb)) };
        let g = &self.game;
        self.total = self.total.clone() + self.ay[s].clone() + self.xa[t].clone() + g.a.get(s, t).clone();
        for i in 0..g.rows() {
            self.ay[i] = self.ay[i].clone() + g.a.get(i, t).clone();
        }
        for j in 0..g.cols() {
            self.xa[j] = self.xa[j].clone() + g.a.get(s, j).clone();
            self.xb[j] = self.xb[j].clone() + g.b.get(s, j).clone();
        }
        self.counts_x[s] += 1;
        self.counts_y[t] += 1;
        self.round += 1;

        let k = self.round;
        let u1 = self.total.to_f64() / (k as f64 * k as f64);
        Some(FpStep { round: k, x: Self::averages(&self.counts_x, k), y: Self::averages(&self.counts_y, k), u1 })
    }
}

/// The first `rounds` steps of fictitious play.
pub fn fictitious_play<T: Scalar>(g: &BimatrixGame<T>, rounds: usize, seed: Option<u64>) -> Vec<FpStep> {
    FictitiousPlay::new(g, seed).take(rounds).collect()
}
