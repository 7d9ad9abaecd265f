//! Multi-objective games built from segmented loss distributions.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dist::{segment_expectations, Partition};
use crate::error::{Error, Result};
use crate::game::{BimatrixGame, DistributionBimatrixGame, MixedProfile, Player, VectorBimatrixGame};
use crate::scalar::{dot, format_f64, sum, Scalar};
use crate::solve::{support_enumeration, EquilibriumReport, SolveOutcome};

/// Non-negative weights, normalized to sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    w: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(w: Vec<T>) -> Result<Self> {
        if w.is_empty() || w.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidWeights);
        }
        let total = sum(w.iter().cloned());
        if !total.is_positive_tol() {
            return Err(Error::InvalidWeights);
        }
        Ok(WeightVector { w: w.into_iter().map(|v| v / total.clone()).collect() })
    }

    /// Weight one on coordinate `i`.
    pub fn unit(i: usize, dim: usize) -> Self {
        WeightVector { w: (0..dim).map(|k| if k == i { T::one() } else { T::zero() }).collect() }
    }

    pub fn values(&self) -> &[T] {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }
}

fn weakly_dominates<T: Scalar>(y: &[T], x: &[T]) -> bool {
    let mut strict = false;
    for (a, b) in y.iter().zip(x) {
        match a.cmp_tol(b) {
            Ordering::Greater => return false,
            Ordering::Less => strict = true,
            Ordering::Equal => {}
        }
    }
    strict
}

/// Indices of the vectors that no other vector undercuts in every
/// coordinate (strictly in at least one).
pub fn pareto_minimal_indices<T: Scalar>(vs: &[Vec<T>]) -> Result<Vec<usize>> {
    if let Some(first) = vs.first() {
        if let Some(bad) = vs.iter().find(|v| v.len() != first.len()) {
            return Err(Error::DimensionMismatch { expected: first.len(), found: bad.len() });
        }
    }
    Ok((0..vs.len()).filter(|&i| !vs.iter().any(|y| weakly_dominates(y, &vs[i]))).collect())
}

pub fn pareto_minimal<T: Scalar>(vs: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    Ok(pareto_minimal_indices(vs)?.into_iter().map(|i| vs[i].clone()).collect())
}

/// Replace every cell by its negated segment expectations. Player 2 gets
/// the negated vector of player 1 in the zero-sum case. Atoms lying outside
/// the partition are skipped and returned alongside the game.
pub fn segment_game<T: Scalar>(
    g: &DistributionBimatrixGame<T>,
    partition: &Partition<T>,
) -> Result<(VectorBimatrixGame<T>, Vec<T>)> {
    let mut outside: Vec<T> = g
        .a
        .iter()
        .chain(g.b.iter())
        .flat_map(|d| d.atoms().iter().filter(|x| !partition.contains(x)).cloned())
        .collect();
    outside.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    outside.dedup_by(|a, b| a.approx_eq(b));

    let loss = |d: &crate::dist::DiscreteDistribution<T>| -> Vec<T> {
        segment_expectations(d, partition).into_iter().map(|v| -v).collect()
    };
    let a = g.a.map(loss);
    let game = if g.zero_sum { VectorBimatrixGame::zero_sum(a)? } else { VectorBimatrixGame::new(a, g.b.map(loss))? };
    Ok((game, outside))
}

/// Scalar game of weighted objective sums.
pub fn scalarize<T: Scalar>(
    g: &VectorBimatrixGame<T>,
    w1: &WeightVector<T>,
    w2: &WeightVector<T>,
) -> Result<BimatrixGame<T>> {
    for w in [w1, w2] {
        if w.dim() != g.dim {
            return Err(Error::DimensionMismatch { expected: g.dim, found: w.dim() });
        }
    }
    BimatrixGame::new(g.a.map(|v| dot(v, w1.values())), g.b.map(|v| dot(v, w2.values())))
}

/// Equilibria of the scalarized game; each is a Pareto-Nash equilibrium.
pub fn pareto_nash<T: Scalar>(
    g: &VectorBimatrixGame<T>,
    w1: &WeightVector<T>,
    w2: &WeightVector<T>,
) -> Result<SolveOutcome<T>> {
    Ok(support_enumeration(&scalarize(g, w1, w2)?))
}

/// No pure deviation gives a player a payoff vector at least as good in
/// every objective and strictly better in one.
pub fn is_pareto_nash<T: Scalar>(g: &VectorBimatrixGame<T>, p: &MixedProfile<T>) -> Result<bool> {
    let u1 = g.payoff(p, Player::One)?;
    let u2 = g.payoff(p, Player::Two)?;
    let improves = |d: &[T], u: &[T]| weakly_dominates(u, d);
    let rows_ok = (0..g.rows()).all(|i| !improves(&g.row_payoff(i, &p.y), &u1));
    let cols_ok = (0..g.cols()).all(|j| !improves(&g.col_payoff(j, &p.x), &u2));
    Ok(rows_ok && cols_ok)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub trial: usize,
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
    /// First equilibrium of the scalarized game, if any was found.
    pub equilibrium: Option<EquilibriumReport<f64>>,
}

/// Uniform point of the probability simplex from sorted uniform gaps.
pub(crate) fn simplex_point<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    let mut cuts: Vec<f64> = (0..dim.saturating_sub(1)).map(|_| rng.random::<f64>()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut prev = 0.0;
    let mut out = Vec::with_capacity(dim);
    for c in cuts.into_iter().chain(std::iter::once(1.0)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Solve the scalarized game for `samples` random weight pairs.
pub fn weight_sweep(g: &VectorBimatrixGame<f64>, samples: usize, seed: u64) -> Vec<SweepRecord> {
    (0..samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let w1 = simplex_point(&mut rng, g.dim);
            let w2 = simplex_point(&mut rng, g.dim);
            let scalar = scalarize(g, &WeightVector { w: w1.clone() }, &WeightVector { w: w2.clone() })
                .expect("weights match game dimension");
            let equilibrium = support_enumeration(&scalar).equilibria.into_iter().next();
            SweepRecord { trial, w1, w2, equilibrium }
        })
        .collect()
}

pub fn sweep_csv_header(dim: usize, rows: usize, cols: usize) -> String {
    let mut cols_out = vec!["trial".to_string()];
    cols_out.extend((1..=dim).map(|i| format!("w1_{i}")));
    cols_out.extend((1..=dim).map(|i| format!("w2_{i}")));
    cols_out.extend((1..=rows).map(|i| format!("x_{i}")));
    cols_out.extend((1..=cols).map(|i| format!("y_{i}")));
    cols_out.push("u1".into());
    cols_out.push("u2".into());
    cols_out.join(",")
}

/// Header plus one row per record; trials without an equilibrium leave the
/// profile and payoff fields empty.
pub fn sweep_csv(records: &[SweepRecord], rows: usize, cols: usize) -> String {
    let dim = records.first().map_or(0, |r| r.w1.len());
    let mut out = sweep_csv_header(dim, rows, cols);
    out.push('\n');
    for r in records {
        let mut fields = vec![r.trial.to_string()];
        fields.extend(r.w1.iter().chain(&r.w2).map(|v| format_f64(*v)));
        match &r.equilibrium {
            Some(e) => {
                fields.extend(e.profile.x.iter().chain(&e.profile.y).map(|v| format_f64(*v)));
                fields.push(format_f64(e.payoffs.0));
                fields.push(format_f64(e.payoffs.1));
            }
            None => fields.extend(std::iter::repeat_n(String::new(), rows + cols + 2)),
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
