//! Generators for distributions with alternating mass functions, cdfs and
//! moment sequences.
//!
//! Infinite-support measures are kept as truncations: the listed atoms and
//! masses, plus an unassigned `tail_mass` known only to sit somewhere in
//! `[last atom, bound_b]`. Every claim checked here is a strict inequality
//! between rigorous interval bounds computed in exact arithmetic.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedAtomSequence {
    atoms: Vec<Rational>,
    masses: Vec<Rational>,
    tail_mass: Rational,
    bound_b: Rational,
}

impl TruncatedAtomSequence {
    /// Atoms must be non-decreasing and below `bound_b`; masses positive
    /// and summing with `tail_mass` to one.
    pub fn new(
        atoms: Vec<Rational>,
        masses: Vec<Rational>,
        tail_mass: Rational,
        bound_b: Rational,
    ) -> Result<Self> {
        if atoms.len() != masses.len() {
            return Err(Error::DimensionMismatch { expected: atoms.len(), found: masses.len() });
        }
        if let Some(i) = masses.iter().position(|m| !m.is_positive()) {
            return Err(Error::NonPositiveMass(i));
        }
        if tail_mass.is_negative() {
            return Err(Error::InvalidArgument(format!("negative tail mass {}", format_rational(&tail_mass))));
        }
        let total: Rational = masses.iter().sum::<Rational>() + &tail_mass;
        if !total.is_one() {
            return Err(Error::MassSumNotOne(format_rational(&total)));
        }
        if let Some(i) = (1..atoms.len()).find(|&i| atoms[i] < atoms[i - 1]) {
            return Err(Error::AtomsNotIncreasing(i));
        }
        if let Some(i) = atoms.iter().position(|x| *x >= bound_b) {
            return Err(Error::AtomOutOfRange(i));
        }
        Ok(TruncatedAtomSequence { atoms, masses, tail_mass, bound_b })
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn tail_mass(&self) -> &Rational {
        &self.tail_mass
    }

    pub fn bound_b(&self) -> &Rational {
        &self.bound_b
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    fn tail_floor(&self) -> Rational {
        self.atoms.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Interval containing the cdf at `x` for every completion of the tail.
    pub fn cdf_bounds(&self, x: &Rational) -> (Rational, Rational) {
        let known: Rational = self.atoms.iter().zip(&self.masses).filter(|(a, _)| *a <= x).map(|(_, m)| m).sum();
        if *x >= self.bound_b {
            let all = known + &self.tail_mass;
            (all.clone(), all)
        } else if *x >= self.tail_floor() {
            let hi = known.clone() + &self.tail_mass;
            (known, hi)
        } else {
            (known.clone(), known)
        }
    }

    /// Interval containing the `n`-th moment for every completion of the tail.
    pub fn moment_bounds(&self, n: u32) -> (Rational, Rational) {
        let known: Rational = self.atoms.iter().zip(&self.masses).map(|(a, m)| m * a.power(n)).sum();
        let lo = known.clone() + &self.tail_mass * self.tail_floor().power(n);
        let hi = known + &self.tail_mass * self.bound_b.power(n);
        (lo, hi)
    }
}

/// First `n` atoms `2 - c^{-k}` with masses `(c-1)c^{-k}`; the remaining
/// mass `c^{-n}` lies in `[2 - c^{-n}, 2)`.
pub fn geometric_tail_family(c: &Rational, n: usize) -> Result<TruncatedAtomSequence> {
    if *c <= Rational::one() {
        return Err(Error::InvalidArgument(format!("c must exceed 1, got {}", format_rational(c))));
    }
    if n == 0 {
        return Err(Error::TooShort { needed: 1, found: 0 });
    }
    let two = Rational::from_i64(2);
    let inv = c.recip();
    let powers: Vec<Rational> = (1..=n as u32).map(|k| inv.power(k)).collect();
    let atoms = powers.iter().map(|p| &two - p).collect();
    let masses = powers.iter().map(|p| (c - Rational::one()) * p).collect();
    TruncatedAtomSequence::new(atoms, masses, inv.power(n as u32), two)
}

/// Checks that the cdfs overtake each other at every one of the first
/// `upto` atoms of either sequence: at an atom of `s1` the cdf of `s1` is
/// strictly larger, at an atom of `s2` the cdf of `s2` is. Comparisons use
/// the cdf intervals, so the result holds for any completion of the tails.
pub fn verify_cdf_alternation(
    s1: &TruncatedAtomSequence,
    s2: &TruncatedAtomSequence,
    upto: usize,
) -> Result<bool> {
    let first = &s1.atoms[..upto.min(s1.len())];
    let second = &s2.atoms[..upto.min(s2.len())];
    if let Some(x) = first.iter().find(|x| second.contains(x)) {
        return Err(Error::OverlappingAtoms(format_rational(x)));
    }
    let above = |hi: &TruncatedAtomSequence, lo: &TruncatedAtomSequence, x: &Rational| {
        hi.cdf_bounds(x).0 > lo.cdf_bounds(x).1
    };
    Ok(first.iter().all(|x| above(s1, s2, x)) && second.iter().all(|x| above(s2, s1, x)))
}

/// The three lower bounds on the shrink factor of one shifted atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftTerm {
    pub index: usize,
    pub s: Rational,
    pub t: Rational,
    pub f: Rational,
    pub c: Rational,
    pub ratio_bound: Rational,
    pub alternation_bound: Rational,
    pub monotone_bound: Rational,
}

impl ShiftTerm {
    pub fn moment_property(&self) -> bool {
        &self.c * &self.t * &self.f >= &self.f * &self.s && self.c >= self.ratio_bound
    }

    pub fn alternation_property(&self) -> bool {
        self.c >= self.alternation_bound
    }

    pub fn monotone_property(&self) -> bool {
        self.c >= self.monotone_bound
    }

    pub fn certified(&self) -> bool {
        self.c < Rational::one()
            && self.moment_property()
            && self.alternation_property()
            && self.monotone_property()
    }
}

/// Bounds on the cdf gaps at `t_k` and `s_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfCheck {
    pub k: usize,
    /// Lower bound on `G(t_k) - F(t_k)`.
    pub gap_at_t: Rational,
    /// Lower bound on `F(s_k) - G(s_k)`.
    pub gap_at_s: Rational,
}

impl CdfCheck {
    pub fn certified(&self) -> bool {
        self.gap_at_t.is_positive() && self.gap_at_s.is_positive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftConstruction {
    /// Atoms `t_0, t_1, …, t_N`.
    pub shifted: TruncatedAtomSequence,
    pub terms: Vec<ShiftTerm>,
    pub cdf_checks: Vec<CdfCheck>,
}

impl ShiftConstruction {
    pub fn certified(&self) -> bool {
        self.terms.iter().all(ShiftTerm::certified) && self.cdf_checks.iter().all(CdfCheck::certified)
    }

    /// Atoms `t_1, …, t_N` with `t_0`'s mass moved into the tail. Their
    /// masses are strictly decreasing, so the construction can be applied
    /// again to this sequence.
    pub fn shifted_part(&self) -> TruncatedAtomSequence {
        let s = &self.shifted;
        TruncatedAtomSequence {
            atoms: s.atoms[1..].to_vec(),
            masses: s.masses[1..].to_vec(),
            tail_mass: &s.tail_mass + &s.masses[0],
            bound_b: s.bound_b.clone(),
        }
    }
}

/// Moves each atom `s_i` right to `t_i = (s_i + s_{i+1})/2` with mass
/// `c_i f(s_i)`, where `c_i` is the largest of `s_i/t_i`, `1 - 2^{-i}` and
/// `f(s_{i+1})/f(s_i)`, and puts the freed mass on `t_0 = (1 + s_1)/2`.
///
/// The input needs `N + 1` atoms above 1 to produce `N` shifted terms. The
/// mass of `t_0` collects the freed mass of the computed terms only; the
/// remaining terms are bounded through `(1 - c_i) ≤ 2^{-i}` and the
/// monotonicity of `f`, which gives `Σ_{i>N} 2^{-i} f(s_i) ≤ 2^{-N} f(s_{N+1})`.
pub fn shift_construction(input: &TruncatedAtomSequence) -> Result<ShiftConstruction> {
    let s = &input.atoms;
    let f = &input.masses;
    if s.len() < 2 {
        return Err(Error::TooShort { needed: 2, found: s.len() });
    }
    if let Some(i) = (1..s.len()).find(|&i| s[i] <= s[i - 1]) {
        return Err(Error::AtomsNotIncreasing(i));
    }
    if let Some(i) = (1..f.len()).find(|&i| f[i] >= f[i - 1]) {
        return Err(Error::MassesNotDecreasing(i));
    }
    if let Some(i) = s.iter().position(|x| *x <= Rational::one()) {
        return Err(Error::AtomOutOfRange(i));
    }
    let n = s.len() - 1;
    let two = Rational::from_i64(2);
    let terms: Vec<ShiftTerm> = (0..n)
        .map(|i| {
            let t = (&s[i] + &s[i + 1]) / &two;
            let ratio_bound = &s[i] / &t;
            let alternation_bound = Rational::one() - two.power(i as u32 + 1).recip();
            let monotone_bound = &f[i + 1] / &f[i];
            let c = ratio_bound.clone().max(alternation_bound.clone()).max(monotone_bound.clone());
            ShiftTerm { index: i + 1, s: s[i].clone(), t, f: f[i].clone(), c, ratio_bound, alternation_bound, monotone_bound }
        })
        .collect();

    let freed: Vec<Rational> = terms.iter().map(|t| (Rational::one() - &t.c) * &t.f).collect();
    let t0_mass: Rational = freed.iter().sum();
    let mut atoms = vec![(Rational::one() + &s[0]) / &two];
    let mut masses = vec![t0_mass];
    for t in &terms {
        atoms.push(t.t.clone());
        masses.push(&t.c * &t.f);
    }
    let kept: Rational = masses.iter().sum();
    let shifted = TruncatedAtomSequence::new(atoms, masses, Rational::one() - kept, input.bound_b.clone())?;

    let beyond = two.power(n as u32).recip() * &f[n];
    let cdf_checks = (1..n)
        .map(|k| {
            let gap_at_t = freed[k..].iter().sum();
            let upper_freed: Rational = freed[k - 1..].iter().sum::<Rational>() + &beyond;
            CdfCheck { k, gap_at_t, gap_at_s: &f[k - 1] - upper_freed }
        })
        .collect();
    Ok(ShiftConstruction { shifted, terms, cdf_checks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XAboveY,
    YAboveX,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::XAboveY => "XaboveY",
            Direction::YAboveX => "YaboveX",
        }
    }

    fn flip(self) -> Self {
        match self {
            Direction::XAboveY => Direction::YAboveX,
            Direction::YAboveX => Direction::XAboveY,
        }
    }
}

/// Entry `j` asserts that at moment order `k_indices[j]` the sequence named
/// by `directions[j]` has the larger moment, witnessed by
/// `bound_checks[j] = (lower bound of winner, upper bound of loser)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlternationCertificate {
    pub k_indices: Vec<u32>,
    pub directions: Vec<Direction>,
    pub bound_checks: Vec<(Rational, Rational)>,
}

impl AlternationCertificate {
    pub fn len(&self) -> usize {
        self.k_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_indices.is_empty()
    }
}

/// Lower bound on the `k`-th moment of a measure whose first `n` atoms are
/// listed and whose remaining mass sits in `[atoms[n], b]`.
fn winner_lower(atoms: &[Rational], masses: &[Rational], n: usize, k: u32) -> Rational {
    let head: Rational = (0..n).map(|l| &masses[l] * atoms[l].power(k)).sum();
    let rest = Rational::one() - masses[..n].iter().sum::<Rational>();
    head + rest * atoms[n].power(k)
}

/// Upper bound on the `k`-th moment with the first `n + 1` atoms listed and
/// the remaining mass at most `b`.
fn loser_upper(atoms: &[Rational], masses: &[Rational], n: usize, k: u32, b: &Rational) -> Rational {
    let head: Rational = (0..=n).map(|l| &masses[l] * atoms[l].power(k)).sum();
    let rest = Rational::one() - masses[..=n].iter().sum::<Rational>();
    head + rest * b.power(k)
}

pub const DEFAULT_K_CAP: u32 = 100_000;
const BISECTION_STEPS: usize = 60;
const MAX_EXACT_TRIES: usize = 64;

/// Smallest multiple of `2^-64` that is at least `v`. Larger atoms keep
/// winning, so this only shortens the numbers carried into later steps.
fn round_up_to_grid(v: &Rational) -> Rational {
    let scale = Rational::from_integer(num_bigint::BigInt::from(1u8) << 64);
    (v * &scale).ceil() / scale
}

fn log_sum_exp(terms: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Float estimate of the smallest new winner atom that wins at order `k`,
/// computed in the log domain.
fn threshold_estimate(winner: &[f64], loser: &[f64], step: usize, k: u32, b: f64) -> f64 {
    let k = k as f64;
    let term = |l: usize, atom: f64| -((l + 1) as f64) * std::f64::consts::LN_2 + k * atom.ln();
    let head = log_sum_exp((0..step).map(|l| term(l, winner[l])));
    let rival = log_sum_exp((0..=step).map(|l| term(l, loser[l])).chain(std::iter::once(term(step, b))));
    if head >= rival {
        return 0.0;
    }
    let gap = rival + (-(head - rival).exp()).ln_1p();
    ((gap + step as f64 * std::f64::consts::LN_2) / k).exp()
}

/// Builds `P_x = Σ 2^{-l} δ_{x_l}` and `P_y = Σ 2^{-l} δ_{y_l}` on `[a, b)`
/// whose moment sequences alternate: at each new order `k_{n+1}`, `P_x`
/// has the larger moment when `n + 1` is even and `P_y` when it is odd.
///
/// Each step looks at the orders `k_n < k ≤ k_n + k_cap` for which the
/// winner still wins with its new atom at `b` and prefers the one whose
/// smallest winning atom is furthest below `b`, as estimated in floating
/// point. The chosen order is then checked exactly and the new atom is
/// bisected down towards the previous one, keeping the upper end of the
/// bracket where the strict inequality still holds, rounded up to a
/// multiple of `2^-64` when that stays below `b`.
pub fn alternating_moment_pair(
    a: &Rational,
    b: &Rational,
    n: usize,
    x1: &Rational,
    y1: &Rational,
    k_cap: u32,
) -> Result<(TruncatedAtomSequence, TruncatedAtomSequence, AlternationCertificate)> {
    if a.is_negative() || b <= a {
        return Err(Error::InvalidArgument("need 0 <= a < b".into()));
    }
    if n == 0 {
        return Err(Error::TooShort { needed: 1, found: 0 });
    }
    for v in [x1, y1] {
        if v < a || v >= b {
            return Err(Error::InvalidArgument(format!("initial atom {} outside [a, b)", format_rational(v))));
        }
    }
    let masses: Vec<Rational> = (1..=n as u32).map(|l| Rational::from_i64(2).power(l).recip()).collect();
    let mut x = vec![x1.clone()];
    let mut y = vec![y1.clone()];
    let mut cert = AlternationCertificate::default();
    let mut k_prev = 0u32;
    let mut direction = Direction::XAboveY;
    let two = Rational::from_i64(2);
    let bf = b.to_f64();

    for step in 1..n {
        let (winner, loser) = match direction {
            Direction::XAboveY => (&mut x, &mut y),
            Direction::YAboveX => (&mut y, &mut x),
        };
        loser.push(loser[step - 1].clone());
        let last = winner[step - 1].clone();
        let (wf, lf): (Vec<f64>, Vec<f64>) =
            (winner.iter().map(Scalar::to_f64).collect(), loser.iter().map(Scalar::to_f64).collect());
        let floor = last.to_f64();

        let mut ranked: Vec<(f64, u32)> = (k_prev + 1..=k_prev.saturating_add(k_cap))
            .map(|k| (threshold_estimate(&wf, &lf, step, k, bf).max(floor), k))
            .filter(|(c, _)| *c < bf)
            .collect();
        ranked.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));

        let mut found = None;
        for &(_, k) in ranked.iter().take(MAX_EXACT_TRIES) {
            let rival = loser_upper(loser, &masses, step, k, b);
            let head: Rational = (0..step).map(|l| &masses[l] * winner[l].power(k)).sum();
            let rest = Rational::one() - masses[..step].iter().sum::<Rational>();
            // The winner wins exactly when c^k exceeds this target.
            let target = (rival - head) / rest;
            let wins = |c: &Rational| {
                !target.is_positive()
                    || num_traits::pow(c.numer().clone(), k as usize) * target.denom()
                        > num_traits::pow(c.denom().clone(), k as usize) * target.numer()
            };
            if !wins(b) {
                continue;
            }
            let (mut lo, mut hi) = (last.clone(), b.clone());
            for _ in 0..BISECTION_STEPS {
                let mid = (&lo + &hi) / &two;
                if wins(&mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let coarse = round_up_to_grid(&hi);
            if coarse < *b {
                hi = coarse;
            }
            if hi < *b {
                found = Some((k, hi));
                break;
            }
        }
        let (k, c) = found.ok_or(Error::SearchBudgetExceeded(k_cap))?;
        winner.push(c);
        let lower = winner_lower(winner, &masses, step, k);
        let upper = loser_upper(loser, &masses, step, k, b);
        cert.k_indices.push(k);
        cert.directions.push(direction);
        cert.bound_checks.push((lower, upper));
        k_prev = k;
        direction = direction.flip();
    }

    let tail = masses.last().cloned().unwrap();
    let xs = TruncatedAtomSequence::new(x, masses.clone(), tail.clone(), b.clone())?;
    let ys = TruncatedAtomSequence::new(y, masses, tail, b.clone())?;
    Ok((xs, ys, cert))
}

/// Recomputes every bound of the certificate from the sequences and checks
/// the strict separations, the increasing orders and the alternation.
pub fn verify_alternation_certificate(
    x: &TruncatedAtomSequence,
    y: &TruncatedAtomSequence,
    cert: &AlternationCertificate,
) -> bool {
    let n = x.len();
    if y.len() != n
        || x.bound_b != y.bound_b
        || cert.directions.len() != cert.len()
        || cert.bound_checks.len() != cert.len()
        || cert.len() + 1 != n.max(1)
    {
        return false;
    }
    let b = &x.bound_b;
    let mut prev = 0u32;
    for (j, ((&k, &dir), (lower, upper))) in
        cert.k_indices.iter().zip(&cert.directions).zip(&cert.bound_checks).enumerate()
    {
        let expected = if j % 2 == 0 { Direction::XAboveY } else { Direction::YAboveX };
        if k <= prev || dir != expected {
            return false;
        }
        prev = k;
        let step = j + 1;
        let (w, l) = match dir {
            Direction::XAboveY => (x, y),
            Direction::YAboveX => (y, x),
        };
        let lo = winner_lower(&w.atoms, &w.masses, step, k);
        let hi = loser_upper(&l.atoms, &l.masses, step, k, b);
        if lo != *lower || hi != *upper || lo <= hi {
            return false;
        }
    }
    true
}
