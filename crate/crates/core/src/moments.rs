//! Difference operators on moment sequences and the necessary conditions
//! for a sequence to be the moments of a measure on a bounded interval.

use crate::dist::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> FiniteSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { needed: 1, found: 0 });
        }
        Ok(FiniteSequence { values })
    }

    /// `m_0, …, m_{len-1}` of a distribution.
    pub fn moments_of(p: &DiscreteDistribution<T>, len: usize) -> Result<Self> {
        Self::new((0..len as u32).map(|k| p.moment(k)).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        FiniteSequence { values: self.values.iter().map(|v| v.clone() * factor.clone()).collect() }
    }
}

/// `(Δs)_n = s_{n+1} - s_n`.
pub fn delta<T: Scalar>(s: &FiniteSequence<T>) -> Result<FiniteSequence<T>> {
    delta_b(s, &T::one())
}

/// `(Δ_b s)_n = s_{n+1} - b·s_n`.
pub fn delta_b<T: Scalar>(s: &FiniteSequence<T>, b: &T) -> Result<FiniteSequence<T>> {
    if s.len() < 2 {
        return Err(Error::TooShort { needed: 2, found: s.len() });
    }
    let values = s.values.windows(2).map(|w| w[1].clone() - b.clone() * w[0].clone()).collect();
    Ok(FiniteSequence { values })
}

/// Rows `Δ_b^0 s, Δ_b^1 s, …` down to a single entry.
fn difference_triangle<T: Scalar>(s: &FiniteSequence<T>, b: &T) -> Vec<Vec<T>> {
    let mut rows = vec![s.values.clone()];
    while rows.last().map_or(0, Vec::len) >= 2 {
        let last = rows.last().unwrap();
        let next = last.windows(2).map(|w| w[1].clone() - b.clone() * w[0].clone()).collect();
        rows.push(next);
    }
    rows
}

/// First `(n, k)`, scanning by increasing `k` then `n`, where the signed
/// entry `sign(k)·(Δ_b^k s)_n` is negative.
fn first_violation<T: Scalar>(s: &FiniteSequence<T>, b: &T, alternating: bool) -> Option<(usize, usize)> {
    for (k, row) in difference_triangle(s, b).iter().enumerate() {
        let flip = alternating && k % 2 == 1;
        for (n, v) in row.iter().enumerate() {
            let bad = if flip { v.is_positive_tol() } else { v.is_negative_tol() };
            if bad {
                return Some((n, k));
            }
        }
    }
    None
}

pub fn completely_monotonic_violation<T: Scalar>(s: &FiniteSequence<T>) -> Option<(usize, usize)> {
    first_violation(s, &T::one(), true)
}

pub fn nonneg_differences_violation<T: Scalar>(s: &FiniteSequence<T>) -> Option<(usize, usize)> {
    first_violation(s, &T::one(), false)
}

pub fn interval_condition_violation<T: Scalar>(s: &FiniteSequence<T>, b: &T) -> Option<(usize, usize)> {
    first_violation(s, b, true)
}

/// `(-1)^k (Δ^k s)_n ≥ 0` on the whole finite triangle; necessary for the
/// moments of a measure on `[0, 1]`.
pub fn check_completely_monotonic<T: Scalar>(s: &FiniteSequence<T>) -> bool {
    completely_monotonic_violation(s).is_none()
}

/// `(Δ^k s)_n ≥ 0`; necessary for the moments of a measure on `[1, ∞)`.
pub fn check_nonneg_differences<T: Scalar>(s: &FiniteSequence<T>) -> bool {
    nonneg_differences_violation(s).is_none()
}

/// `(-1)^k (Δ_b^k s)_n ≥ 0`; necessary for the moments of a measure on `[0, b]`.
pub fn check_interval_condition<T: Scalar>(s: &FiniteSequence<T>, b: &T) -> bool {
    interval_condition_violation(s, b).is_none()
}

pub const DEFAULT_K_MAX: usize = 200;
pub const DEFAULT_WINDOW: usize = 20;

/// Smallest `K ≤ k_max - window` with `m_k(P1) ≤ m_k(P2)` for every `k` in
/// `[K, K + window]`. This is a heuristic witness for eventual moment
/// dominance, not a proof of it.
pub fn dominance_index<T: Scalar>(
    p1: &DiscreteDistribution<T>,
    p2: &DiscreteDistribution<T>,
    k_max: usize,
    window: usize,
) -> Option<usize> {
    if window == 0 || k_max < window {
        return None;
    }
    let ok: Vec<bool> = (0..=k_max as u32)
        .map(|k| p1.moment(k).cmp_tol(&p2.moment(k)) != std::cmp::Ordering::Greater)
        .collect();
    let mut run = 0usize;
    for (k, &good) in ok.iter().enumerate() {
        run = if good { run + 1 } else { 0 };
        if run == window + 1 {
            return Some(k - window);
        }
    }
    None
}

/// Closed-form `n`-th moment of the family putting mass `(c-1)c^{-k}` on
/// `2 - c^{-k}`, `k ≥ 1`.
pub fn geometric_family_moment<T: Scalar>(c: &T, n: u32) -> T {
    let one = T::one();
    let two = T::from_i64(2);
    let mut total = T::zero();
    let mut binom = T::one();
    for j in 0..=n {
        let term = binom.clone() * two.power(n - j) / (c.power(j + 1) - one.clone());
        total = if j % 2 == 0 { total + term } else { total - term };
        binom = binom * T::from_i64((n - j) as i64) / T::from_i64(j as i64 + 1);
    }
    (c.clone() - one) * total
}
