//! Finitely supported distributions and the stochastic orders on them.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{float_tolerance, sum, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl OrderResult {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => OrderResult::Less,
            Ordering::Equal => OrderResult::Equal,
            Ordering::Greater => OrderResult::Greater,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            OrderResult::Less => OrderResult::Greater,
            OrderResult::Greater => OrderResult::Less,
            other => other,
        }
    }

    pub fn is_le(self) -> bool {
        matches!(self, OrderResult::Less | OrderResult::Equal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderResult::Less => "Less",
            OrderResult::Equal => "Equal",
            OrderResult::Greater => "Greater",
            OrderResult::Incomparable => "Incomparable",
        }
    }
}

impl std::fmt::Display for OrderResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A probability distribution with finitely many atoms.
///
/// Atoms are kept strictly increasing and every mass is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<T> {
    atoms: Vec<T>,
    masses: Vec<T>,
}

fn total_cmp<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn check_finite<T: Scalar>(values: &[T]) -> Result<()> {
    if !T::EXACT && values.iter().any(|v| !v.to_f64().is_finite()) {
        return Err(Error::InvalidArgument("values must be finite".into()));
    }
    Ok(())
}

impl<T: Scalar> DiscreteDistribution<T> {
    pub fn new(atoms: Vec<T>, masses: Vec<T>) -> Result<Self> {
        if atoms.len() != masses.len() {
            return Err(Error::DimensionMismatch { expected: atoms.len(), found: masses.len() });
        }
        if atoms.is_empty() {
            return Err(Error::EmptySupport);
        }
        check_finite(&atoms)?;
        check_finite(&masses)?;
        if let Some(i) = masses.iter().position(|m| !m.is_positive()) {
            return Err(Error::NonPositiveMass(i));
        }
        let total = sum(masses.iter().cloned());
        let ok = if T::EXACT {
            total == T::one()
        } else {
            (total.to_f64() - 1.0).abs() <= 1e-12
        };
        if !ok {
            return Err(Error::MassSumNotOne(total.to_string()));
        }

        let mut pairs: Vec<(T, T)> = atoms.into_iter().zip(masses).collect();
        pairs.sort_by(|a, b| total_cmp(&a.0, &b.0));
        for w in pairs.windows(2) {
            if w[0].0.approx_eq(&w[1].0) {
                return Err(Error::DuplicateAtom(w[1].0.to_string()));
            }
        }
        let (atoms, masses) = pairs.into_iter().unzip();
        Ok(DiscreteDistribution { atoms, masses })
    }

    pub fn dirac(x: T) -> Self {
        DiscreteDistribution { atoms: vec![x], masses: vec![T::one()] }
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn min_atom(&self) -> &T {
        &self.atoms[0]
    }

    pub fn max_atom(&self) -> &T {
        &self.atoms[self.atoms.len() - 1]
    }

    /// `Σ mass · atom^k`; the zeroth moment is 1.
    pub fn moment(&self, k: u32) -> T {
        self.atoms
            .iter()
            .zip(&self.masses)
            .fold(T::zero(), |acc, (a, m)| acc + m.clone() * a.power(k))
    }

    pub fn mean(&self) -> T {
        self.moment(1)
    }

    /// Right-continuous distribution function.
    pub fn cdf(&self, x: &T) -> T {
        self.atoms
            .iter()
            .zip(&self.masses)
            .take_while(|(a, _)| a.cmp_tol(x) != Ordering::Greater)
            .fold(T::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// Mass on the atom `x`, zero if `x` is not an atom.
    pub fn mass_at(&self, x: &T) -> T {
        self.atoms
            .iter()
            .position(|a| a.approx_eq(x))
            .map(|i| self.masses[i].clone())
            .unwrap_or_else(T::zero)
    }

    /// Masses laid out over `support`, which must contain every atom.
    pub fn mass_vector(&self, support: &[T]) -> Vec<T> {
        support.iter().map(|v| self.mass_at(v)).collect()
    }
}

/// Convex combination of distributions. Equal atoms are merged and atoms
/// whose combined mass is zero are dropped.
pub fn mixture<T: Scalar>(components: &[(T, DiscreteDistribution<T>)]) -> Result<DiscreteDistribution<T>> {
    if components.is_empty() || components.iter().any(|(w, _)| w.is_negative()) {
        return Err(Error::WeightsNotSimplex);
    }
    let total = sum(components.iter().map(|(w, _)| w.clone()));
    let ok = if T::EXACT { total == T::one() } else { (total.to_f64() - 1.0).abs() <= 1e-12 };
    if !ok {
        return Err(Error::WeightsNotSimplex);
    }

    let mut pairs: Vec<(T, T)> = components
        .iter()
        .filter(|(w, _)| !w.is_zero())
        .flat_map(|(w, p)| {
            p.atoms.iter().zip(&p.masses).map(move |(a, m)| (a.clone(), w.clone() * m.clone()))
        })
        .collect();
    pairs.sort_by(|a, b| total_cmp(&a.0, &b.0));

    let mut atoms: Vec<T> = Vec::new();
    let mut masses: Vec<T> = Vec::new();
    for (a, m) in pairs {
        match atoms.last() {
            Some(last) if last.approx_eq(&a) => {
                let i = masses.len() - 1;
                masses[i] = masses[i].clone() + m;
            }
            _ => {
                atoms.push(a);
                masses.push(m);
            }
        }
    }
    let keep: Vec<bool> = masses.iter().map(|m| m.is_positive()).collect();
    let atoms = atoms.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(a, _)| a).collect();
    let masses = masses.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(m, _)| m).collect();
    Ok(DiscreteDistribution { atoms, masses })
}

/// Sorted union of atom lists, merging values that compare equal.
pub fn union_support<'a, T: Scalar>(lists: impl IntoIterator<Item = &'a [T]>) -> Vec<T> {
    let mut all: Vec<T> = lists.into_iter().flat_map(|l| l.iter().cloned()).collect();
    all.sort_by(total_cmp);
    all.dedup_by(|a, b| a.approx_eq(b));
    all
}

pub fn compare_expectation<T: Scalar>(p1: &DiscreteDistribution<T>, p2: &DiscreteDistribution<T>) -> OrderResult {
    OrderResult::from_ordering(p1.mean().cmp_tol(&p2.mean()))
}

/// Usual stochastic order: `P1 < P2` when `F1 ≥ F2` everywhere, strictly
/// somewhere. Distribution functions are step functions, so comparing them
/// on the union of atoms is enough.
pub fn compare_usual_stochastic<T: Scalar>(
    p1: &DiscreteDistribution<T>,
    p2: &DiscreteDistribution<T>,
) -> OrderResult {
    let support = union_support([p1.atoms(), p2.atoms()]);
    let mut above = false;
    let mut below = false;
    for x in &support {
        match p1.cdf(x).cmp_tol(&p2.cdf(x)) {
            Ordering::Greater => above = true,
            Ordering::Less => below = true,
            Ordering::Equal => {}
        }
    }
    match (above, below) {
        (false, false) => OrderResult::Equal,
        (true, false) => OrderResult::Less,
        (false, true) => OrderResult::Greater,
        (true, true) => OrderResult::Incomparable,
    }
}

/// Reflected lexicographic comparison: the last coordinate decides first.
pub fn rlex_compare<T: Scalar>(v1: &[T], v2: &[T]) -> Result<OrderResult> {
    if v1.len() != v2.len() {
        return Err(Error::DimensionMismatch { expected: v1.len(), found: v2.len() });
    }
    Ok(rlex_cmp(v1, v2))
}

pub(crate) fn rlex_cmp<T: Scalar>(v1: &[T], v2: &[T]) -> OrderResult {
    for (a, b) in v1.iter().zip(v2).rev() {
        match a.cmp_tol(b) {
            Ordering::Equal => continue,
            o => return OrderResult::from_ordering(o),
        }
    }
    OrderResult::Equal
}

/// Tail order on distributions supported in `[1, ∞)`, computed through the
/// mass vectors over the common support.
pub fn tail_compare<T: Scalar>(p1: &DiscreteDistribution<T>, p2: &DiscreteDistribution<T>) -> Result<OrderResult> {
    for p in [p1, p2] {
        if p.min_atom().cmp_tol(&T::one()) == Ordering::Less {
            return Err(Error::SupportBelowOne(p.min_atom().to_string()));
        }
    }
    let support = union_support([p1.atoms(), p2.atoms()]);
    Ok(rlex_cmp(&p1.mass_vector(&support), &p2.mass_vector(&support)))
}

/// Segment boundaries `x_1 < … < x_{m+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T> {
    points: Vec<T>,
}

impl<T: Scalar> Partition<T> {
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.len() < 2 || points.windows(2).any(|w| w[0].cmp_tol(&w[1]) != Ordering::Less) {
            return Err(Error::InvalidPartition);
        }
        check_finite(&points)?;
        Ok(Partition { points })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn lower(&self) -> &T {
        &self.points[0]
    }

    pub fn upper(&self) -> &T {
        &self.points[self.points.len() - 1]
    }

    pub fn contains(&self, x: &T) -> bool {
        x.cmp_tol(self.lower()) != Ordering::Less && x.cmp_tol(self.upper()) != Ordering::Greater
    }

    /// Segments are `[x_i, x_{i+1})` except the last, which is closed.
    pub fn segment_of(&self, x: &T) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let m = self.segments();
        let idx = (1..m).rev().find(|&i| x.cmp_tol(&self.points[i]) != Ordering::Less).unwrap_or(0);
        Some(idx)
    }
}

/// `Σ mass · atom` over each segment; atoms outside the partition are skipped.
pub fn segment_expectations<T: Scalar>(p: &DiscreteDistribution<T>, partition: &Partition<T>) -> Vec<T> {
    let mut out = vec![T::zero(); partition.segments()];
    for (a, m) in p.atoms().iter().zip(p.masses()) {
        if let Some(i) = partition.segment_of(a) {
            out[i] = out[i].clone() + a.clone() * m.clone();
        }
    }
    out
}

/// Expectation over `[x_i, x_{m+1}]` for every `i`: suffix sums of the
/// segment expectations.
pub fn cumulative_tail_expectations<T: Scalar>(p: &DiscreteDistribution<T>, partition: &Partition<T>) -> Vec<T> {
    let seg = segment_expectations(p, partition);
    let mut out = seg.clone();
    for i in (0..seg.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1].clone() + seg[i].clone();
    }
    out
}

pub fn tweakable_compare<T: Scalar>(
    p1: &DiscreteDistribution<T>,
    p2: &DiscreteDistribution<T>,
    partition: &Partition<T>,
) -> Result<OrderResult> {
    for p in [p1, p2] {
        if !partition.contains(p.min_atom()) || !partition.contains(p.max_atom()) {
            return Err(Error::SupportOutsidePartition);
        }
    }
    Ok(rlex_cmp(
        &cumulative_tail_expectations(p1, partition),
        &cumulative_tail_expectations(p2, partition),
    ))
}

const UTILITY_SAMPLES: usize = 1000;
const QUANTILE_TOLERANCE: f64 = 1e-10;
const BISECTION_LIMIT: usize = 200;

/// Partition `[a, b]` at the `(i-1)/m` quantiles of a utility function
/// `u` with `u(a) = 0` and `u(b) = 1`.
pub fn partition_from_utility<F: Fn(f64) -> f64>(u: F, a: f64, b: f64, m: usize) -> Result<Partition<f64>> {
    if m == 0 || !(a < b) {
        return Err(Error::InvalidArgument("need m >= 1 and a < b".into()));
    }
    let (ua, ub) = (u(a), u(b));
    let tol = float_tolerance();
    if (ua - 0.0).abs() > tol || (ub - 1.0).abs() > tol {
        return Err(Error::UtilityRange(ua, ub));
    }
    let mut prev = ua;
    for s in 1..=UTILITY_SAMPLES {
        let x = a + (b - a) * s as f64 / UTILITY_SAMPLES as f64;
        let ux = u(x);
        if !(ux > prev) {
            return Err(Error::NotMonotone(x));
        }
        prev = ux;
    }

    let mut points = vec![a];
    for i in 1..m {
        let target = i as f64 / m as f64;
        let (mut lo, mut hi) = (a, b);
        let mut found = None;
        for _ in 0..BISECTION_LIMIT {
            let mid = 0.5 * (lo + hi);
            let um = u(mid);
            if (um - target).abs() <= QUANTILE_TOLERANCE {
                found = Some(mid);
                break;
            }
            if um < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        points.push(found.ok_or(Error::NoConvergence(target))?);
    }
    points.push(b);
    Partition::new(points)
}
