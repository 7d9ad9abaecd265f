//! Monte Carlo estimates of the probability that a random game has an
//! equilibrium, next to their closed forms.

use num_traits::One;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, Matrix, VectorBimatrixGame};
use crate::pareto::trial_rng;
use crate::rlex::{decide_rlex_equilibria, RlexStatus};
use crate::scalar::{format_f64, Rational, Scalar};
use crate::solve::pure_equilibria;

fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from_i64).product()
}

fn binomial(n: usize, k: usize) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `m! n! / (m + n - 1)!`: probability that a random zero-sum game with
/// iid continuous entries has a pure saddle point.
pub fn formula_pure_zero_sum(m: usize, n: usize) -> Rational {
    assert!(m >= 1 && n >= 1, "game dimensions must be positive");
    factorial(m) * factorial(n) / factorial(m + n - 1)
}

/// Probability that a random bimatrix game with iid continuous entries has
/// a pure equilibrium.
pub fn formula_pure_bimatrix(m: usize, n: usize) -> Rational {
    assert!(m >= 1 && n >= 1, "game dimensions must be positive");
    let mn = Rational::from_i64((m * n) as i64);
    let mut total = Rational::from_i64(0);
    for k in 0..=m.min(n) {
        let term = factorial(k) * binomial(m, k) * binomial(n, k) / mn.power(k as u32);
        total = if k % 2 == 0 { total + term } else { total - term };
    }
    Rational::one() - total
}

/// Entries iid uniform on `[0, 1)`; `B = -A` for zero-sum games.
pub fn random_bimatrix<R: Rng>(m: usize, n: usize, zero_sum: bool, rng: &mut R) -> BimatrixGame<f64> {
    let a = Matrix::from_fn(m, n, |_, _| rng.random::<f64>());
    if zero_sum {
        BimatrixGame::zero_sum(a)
    } else {
        let b = Matrix::from_fn(m, n, |_, _| rng.random::<f64>());
        BimatrixGame::new(a, b).expect("shapes agree")
    }
}

pub fn random_vector_game<R: Rng>(
    m: usize,
    n: usize,
    dim: usize,
    zero_sum: bool,
    rng: &mut R,
) -> VectorBimatrixGame<f64> {
    let mut draw = |_, _| (0..dim).map(|_| rng.random::<f64>()).collect::<Vec<f64>>();
    let a = Matrix::from_fn(m, n, &mut draw);
    if zero_sum {
        VectorBimatrixGame::zero_sum(a).expect("non-empty vectors")
    } else {
        let b = Matrix::from_fn(m, n, &mut draw);
        VectorBimatrixGame::new(a, b).expect("shapes agree")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSummary {
    pub trials: usize,
    pub hits: usize,
    pub estimate: f64,
    /// `1.96 · sqrt(p̂ (1 - p̂) / trials)`.
    pub ci95_halfwidth: f64,
    pub reference: Option<f64>,
}

impl TrialSummary {
    pub fn from_counts(hits: usize, trials: usize, reference: Option<f64>) -> Self {
        let estimate = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
        let ci95_halfwidth =
            if trials == 0 { 0.0 } else { 1.96 * (estimate * (1.0 - estimate) / trials as f64).sqrt() };
        TrialSummary { trials, hits, estimate, ci95_halfwidth, reference }
    }

    /// Reference value inside the 95% interval around the estimate.
    pub fn covers_reference(&self) -> Option<bool> {
        self.reference.map(|r| (self.estimate - r).abs() <= self.ci95_halfwidth)
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    Ok(())
}

fn pure_reference(m: usize, n: usize, zero_sum: bool) -> f64 {
    let r = if zero_sum { formula_pure_zero_sum(m, n) } else { formula_pure_bimatrix(m, n) };
    r.to_f64()
}

/// Fraction of random `m × n` games with at least one pure equilibrium.
/// Trial `t` draws its game from stream `t` of the seeded generator, so the
/// result does not depend on scheduling.
pub fn estimate_pure_probability(
    m: usize,
    n: usize,
    zero_sum: bool,
    trials: usize,
    seed: u64,
) -> Result<TrialSummary> {
    check_trials(trials)?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("game dimensions must be positive".into()));
    }
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| !pure_equilibria(&random_bimatrix(m, n, zero_sum, &mut trial_rng(seed, t))).is_empty())
        .count();
    Ok(TrialSummary::from_counts(hits, trials, Some(pure_reference(m, n, zero_sum))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RlexEstimate {
    /// Games with an equilibrium under the reflected-lexicographic order.
    pub rlex: TrialSummary,
    /// Games whose top-coordinate projection has a pure equilibrium.
    pub pure_top: TrialSummary,
    /// Verified equilibria that are not pure.
    pub nonpure_found: usize,
    /// Trials with a degenerate top-coordinate game, left out of both
    /// estimates.
    pub indeterminate: usize,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    rlex: usize,
    pure_top: usize,
    nonpure: usize,
    indeterminate: usize,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            rlex: self.rlex + o.rlex,
            pure_top: self.pure_top + o.pure_top,
            nonpure: self.nonpure + o.nonpure,
            indeterminate: self.indeterminate + o.indeterminate,
        }
    }
}

/// Random vector games decided under the reflected-lexicographic order.
/// Fails with `TooManyIndeterminate` when more than 0.1% of the trials have
/// a degenerate top-coordinate game.
pub fn estimate_rlex_probability(
    m: usize,
    n: usize,
    dim: usize,
    zero_sum: bool,
    trials: usize,
    seed: u64,
) -> Result<RlexEstimate> {
    check_trials(trials)?;
    if dim < 2 {
        return Err(Error::InvalidArgument("dim must be at least 2".into()));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("game dimensions must be positive".into()));
    }
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = random_vector_game(m, n, dim, zero_sum, &mut trial_rng(seed, t));
            let decision = decide_rlex_equilibria(&g);
            let mut c = Counts::default();
            match &decision.status {
                RlexStatus::Indeterminate => c.indeterminate = 1,
                status => {
                    let top = g.projection(dim - 1).expect("dim is at least 2");
                    c.pure_top = usize::from(!pure_equilibria(&top).is_empty());
                    if let RlexStatus::Equilibria(list) = status {
                        c.rlex = 1;
                        c.nonpure = list.iter().filter(|e| !e.pure).count();
                    }
                }
            }
            c
        })
        .reduce(Counts::default, |a, b| a + b);

    if counts.indeterminate * 1000 > trials {
        return Err(Error::TooManyIndeterminate { indeterminate: counts.indeterminate, trials });
    }
    let decided = trials - counts.indeterminate;
    let reference = Some(pure_reference(m, n, zero_sum));
    Ok(RlexEstimate {
        rlex: TrialSummary::from_counts(counts.rlex, decided, reference),
        pure_top: TrialSummary::from_counts(counts.pure_top, decided, reference),
        nonpure_found: counts.nonpure,
        indeterminate: counts.indeterminate,
    })
}

pub const SUMMARY_CSV_HEADER: &str =
    "m,n,dim,zero_sum,trials,seed,hits,estimate,ci95,reference,nonpure_found,indeterminate";

/// One summary line in the column order of [`SUMMARY_CSV_HEADER`].
#[allow(clippy::too_many_arguments)]
pub fn summary_csv_row(
    m: usize,
    n: usize,
    dim: usize,
    zero_sum: bool,
    seed: u64,
    s: &TrialSummary,
    nonpure_found: usize,
    indeterminate: usize,
) -> String {
    format!(
        "{m},{n},{dim},{zero_sum},{},{seed},{},{},{},{},{nonpure_found},{indeterminate}",
        s.trials,
        s.hits,
        format_f64(s.estimate),
        format_f64(s.ci95_halfwidth),
        s.reference.map(format_f64).unwrap_or_default(),
    )
}
