//! Randomized suites shared by the `properties` and `acceptance` targets.
//!
//! Each suite drives a proptest runner with a fixed seed and returns the
//! failure message, if any, so the acceptance harness can report it.

#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tailgame::dist::{compare_expectation, compare_usual_stochastic, rlex_compare, tail_compare, tweakable_compare};
use tailgame::game::Player;
use tailgame::scalar::{int, rat};
use tailgame::*;

pub const CASES: u32 = 1000;

pub type Suite = fn() -> Result<(), String>;

/// The suites reported as one acceptance criterion.
pub const CORE_SUITES: &[(&str, Suite)] = &[
    ("order axioms", order_axioms),
    ("tail order vs moment dominance", tail_moment_agreement),
    ("segment and cumulative rlex", segment_cumulative_equivalence),
    ("pure deviations suffice", pure_deviation_guard),
    ("all-coordinates sufficiency", all_coordinates_sufficiency),
    ("subgame necessity", subgame_necessity),
    ("isomorphism keeps equilibria", isomorphism_preserves_equilibria),
    ("equal payoffs on supports", support_payoffs_equal),
];

fn seeded_runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    for (i, chunk) in bytes.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&(seed.wrapping_add(i as u64)).to_le_bytes());
    }
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn run<S: Strategy>(
    seed: u64,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    seeded_runner(seed, cases).run(&strategy, test).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// generators

/// Atoms on a grid `lo/den ..= hi/den` with integer weights 1..=4.
#[derive(Debug, Clone)]
pub struct RawDist {
    pub atoms: Vec<i64>,
    pub weights: Vec<i64>,
    pub den: i64,
}

impl RawDist {
    pub fn build(&self) -> DiscreteDistribution<Rational> {
        let total: i64 = self.weights.iter().sum();
        DiscreteDistribution::new(
            self.atoms.iter().map(|&a| rat(a, self.den)).collect(),
            self.weights.iter().map(|&w| rat(w, total)).collect(),
        )
        .expect("generated distribution is valid")
    }
}

pub fn raw_dist(lo: i64, hi: i64, den: i64, max_atoms: usize) -> impl Strategy<Value = RawDist> {
    let grid: Vec<i64> = (lo..=hi).collect();
    let max_atoms = max_atoms.min(grid.len());
    subsequence(grid, 1..=max_atoms)
        .prop_flat_map(|atoms| {
            let n = atoms.len();
            (Just(atoms), vec(1..=4i64, n))
        })
        .prop_map(move |(atoms, weights)| RawDist { atoms, weights, den })
}

/// Distributions on the half-integers of `[1, 10]`.
fn halves() -> impl Strategy<Value = RawDist> {
    raw_dist(2, 20, 2, 6)
}

#[derive(Debug, Clone)]
pub struct RawVectorGame {
    pub rows: usize,
    pub cols: usize,
    pub dim: usize,
    pub zero_sum: bool,
    pub entries: Vec<i64>,
}

impl RawVectorGame {
    pub fn build(&self) -> VectorBimatrixGame<Rational> {
        let (r, c, d) = (self.rows, self.cols, self.dim);
        let cell = |offset: usize, i: usize, j: usize| -> Vec<Rational> {
            (0..d).map(|k| int(self.entries[offset + (i * c + j) * d + k])).collect()
        };
        let a = Matrix::from_fn(r, c, |i, j| cell(0, i, j));
        if self.zero_sum {
            VectorBimatrixGame::zero_sum(a).unwrap()
        } else {
            VectorBimatrixGame::new(a, Matrix::from_fn(r, c, |i, j| cell(r * c * d, i, j))).unwrap()
        }
    }
}

/// Small games with entries in `-2..=2`, so ties and degenerate
/// top-coordinate games are common.
pub fn vector_game(max_dim: usize) -> impl Strategy<Value = RawVectorGame> {
    (1..=3usize, 1..=3usize, 1..=max_dim, any::<bool>())
        .prop_flat_map(|(rows, cols, dim, zero_sum)| {
            (Just(rows), Just(cols), Just(dim), Just(zero_sum), vec(-2..=2i64, 2 * rows * cols * dim))
        })
        .prop_map(|(rows, cols, dim, zero_sum, entries)| RawVectorGame { rows, cols, dim, zero_sum, entries })
}

pub fn all_pure_profiles(rows: usize, cols: usize) -> Vec<MixedProfile<Rational>> {
    (0..rows).flat_map(|i| (0..cols).map(move |j| MixedProfile::pure(i, j, rows, cols))).collect()
}

/// Pure profiles plus every equilibrium of the top-coordinate game.
fn interesting_profiles(g: &VectorBimatrixGame<Rational>) -> Vec<MixedProfile<Rational>> {
    let mut out = all_pure_profiles(g.rows(), g.cols());
    for (p, _) in decide_rlex_equilibria(g).candidates {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn random_mix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut w: Vec<i64> = (0..n).map(|_| rng.random_range(0..=20)).collect();
    if w.iter().all(|&v| v == 0) {
        w[rng.random_range(0..n)] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|v| rat(v, total)).collect()
}

fn mix_vectors(weights: &[Rational], vectors: &[Vec<Rational>]) -> Vec<Rational> {
    let dim = vectors[0].len();
    (0..dim)
        .map(|k| weights.iter().zip(vectors).fold(int(0), |acc, (w, v)| acc + w * &v[k]))
        .collect()
}

// ---------------------------------------------------------------------------
// stochastic orders

fn partition_1_to_10() -> Partition<Rational> {
    Partition::new(vec![int(1), int(4), int(7), int(10)]).unwrap()
}

pub fn order_axioms() -> Result<(), String> {
    let part = partition_1_to_10();
    run(11, CASES, (halves(), halves(), halves()), |(a, b, c)| {
        let (p, q, r) = (a.build(), b.build(), c.build());
        type Cmp<'a> = Box<dyn Fn(&DiscreteDistribution<Rational>, &DiscreteDistribution<Rational>) -> OrderResult + 'a>;
        let orders: Vec<(&str, Cmp)> = vec![
            ("expectation", Box::new(|x, y| compare_expectation(x, y))),
            ("usual stochastic", Box::new(|x, y| compare_usual_stochastic(x, y))),
            ("tail", Box::new(|x, y| tail_compare(x, y).unwrap())),
            ("tweakable", Box::new(|x, y| tweakable_compare(x, y, &part).unwrap())),
        ];
        for (name, cmp) in &orders {
            prop_assert_eq!(cmp(&p, &p), OrderResult::Equal, "{} not reflexive", name);
            prop_assert_eq!(cmp(&p, &q), cmp(&q, &p).reverse(), "{} not antisymmetric", name);
            if cmp(&p, &q) == OrderResult::Less && cmp(&q, &r) == OrderResult::Less {
                prop_assert_eq!(cmp(&p, &r), OrderResult::Less, "{} not transitive", name);
            }
            if cmp(&p, &q).is_le() && cmp(&q, &r).is_le() {
                prop_assert!(cmp(&p, &r).is_le(), "{} not transitive for <=", name);
            }
        }
        if compare_usual_stochastic(&p, &q) == OrderResult::Less {
            prop_assert_eq!(tail_compare(&p, &q).unwrap(), OrderResult::Less);
        }
        Ok(())
    })
}

pub fn rlex_total_order() -> Result<(), String> {
    run(12, CASES, (vec(-3..=3i64, 1..=4), vec(-3..=3i64, 1..=4)), |(u, v)| {
        let n = u.len().min(v.len());
        let u: Vec<Rational> = u[..n].iter().map(|&x| int(x)).collect();
        let v: Vec<Rational> = v[..n].iter().map(|&x| int(x)).collect();
        let uv = rlex_compare(&u, &v).unwrap();
        prop_assert!(uv != OrderResult::Incomparable);
        prop_assert_eq!(uv == OrderResult::Equal, u == v);
        prop_assert_eq!(uv, rlex_compare(&v, &u).unwrap().reverse());
        Ok(())
    })
}

/// Whether `m_k(P1) < m_k(P2)` for `k = 0..=250`. Atoms are `i/den`, so the
/// sign of `m_k(P2) - m_k(P1)` is the sign of `Σ_i (w2_i/S2 - w1_i/S1) i^k`,
/// evaluated in integers.
fn moments_below(p1: &RawDist, p2: &RawDist) -> Vec<bool> {
    let (s1, s2): (i64, i64) = (p1.weights.iter().sum(), p2.weights.iter().sum());
    let mut coeff: Vec<(i64, BigInt)> = Vec::new();
    let mut add = |atom: i64, c: i64| match coeff.iter_mut().find(|(a, _)| *a == atom) {
        Some((_, v)) => *v += c,
        None => coeff.push((atom, BigInt::from(c))),
    };
    for (&a, &w) in p2.atoms.iter().zip(&p2.weights) {
        add(a, w * s1);
    }
    for (&a, &w) in p1.atoms.iter().zip(&p1.weights) {
        add(a, -w * s2);
    }
    let mut below = Vec::with_capacity(251);
    for _ in 0..=250 {
        let total: BigInt = coeff.iter().map(|(_, c)| c.clone()).sum();
        below.push(total.is_positive());
        for (a, c) in coeff.iter_mut() {
            *c *= *a;
        }
    }
    below
}

/// Smallest `K ≤ 200` with `m_k(P1) < m_k(P2)` for every `k` in `[K, K+50]`.
fn strict_moment_dominance(below: &[bool]) -> Option<usize> {
    (0..=200).find(|&k0| below[k0..=k0 + 50].iter().all(|&b| b))
}

pub fn tail_moment_agreement() -> Result<(), String> {
    run(13, CASES, (halves(), halves()), |(a, b)| {
        let (p, q) = (a.build(), b.build());
        let (pq, qp) = (moments_below(&a, &b), moments_below(&b, &a));
        for k in [0u32, 1, 4, 17] {
            prop_assert_eq!(p.moment(k) < q.moment(k), pq[k as usize]);
        }
        match tail_compare(&p, &q).unwrap() {
            OrderResult::Less => prop_assert!(strict_moment_dominance(&pq).is_some()),
            OrderResult::Greater => prop_assert!(strict_moment_dominance(&qp).is_some()),
            OrderResult::Equal => prop_assert_eq!(&p, &q),
            OrderResult::Incomparable => prop_assert!(false, "tail order is total"),
        }
        prop_assert_eq!(tail_compare(&p, &q).unwrap() == OrderResult::Equal, p == q);
        Ok(())
    })
}

pub fn segment_cumulative_equivalence() -> Result<(), String> {
    let interior = subsequence((3..=19i64).collect::<Vec<_>>(), 0..=5);
    run(14, CASES, (halves(), halves(), interior), |(a, b, cuts)| {
        let mut points = vec![int(1)];
        points.extend(cuts.iter().map(|&c| rat(c, 2)));
        points.push(int(10));
        let part = Partition::new(points).unwrap();
        let (p, q) = (a.build(), b.build());
        let seg = rlex_compare(&segment_expectations(&p, &part), &segment_expectations(&q, &part)).unwrap();
        let cum = rlex_compare(
            &cumulative_tail_expectations(&p, &part),
            &cumulative_tail_expectations(&q, &part),
        )
        .unwrap();
        prop_assert_eq!(seg, cum);
        prop_assert_eq!(tweakable_compare(&p, &q, &part).unwrap(), cum);
        Ok(())
    })
}

pub fn mixture_is_affine() -> Result<(), String> {
    run(15, CASES, (halves(), halves(), 0..=8i64, 0..=12u32), |(a, b, alpha, k)| {
        let (p, q) = (a.build(), b.build());
        let alpha = rat(alpha, 8);
        let beta = int(1) - &alpha;
        let m = mixture(&[(alpha.clone(), p.clone()), (beta.clone(), q.clone())]).unwrap();
        prop_assert_eq!(m.moment(k), alpha * p.moment(k) + beta * q.moment(k));
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// moment sequences

pub fn moment_conditions_are_necessary() -> Result<(), String> {
    use tailgame::moments::{check_completely_monotonic, check_interval_condition, check_nonneg_differences};
    // Atoms k/4: [0,1] for k <= 4, [1,5] for 4 <= k <= 20, [0,5] for all.
    let unit = raw_dist(0, 4, 4, 4);
    let above_one = raw_dist(4, 20, 4, 5);
    let bounded = raw_dist(0, 20, 4, 5);
    run(16, CASES, (unit, above_one, bounded), |(u, o, z)| {
        let five = int(5);
        let s = FiniteSequence::moments_of(&u.build(), 12).unwrap();
        prop_assert!(check_completely_monotonic(&s));
        let s = FiniteSequence::moments_of(&o.build(), 12).unwrap();
        prop_assert!(check_nonneg_differences(&s));
        prop_assert!(check_interval_condition(&s, &five));
        let s = FiniteSequence::moments_of(&z.build(), 12).unwrap();
        prop_assert!(check_interval_condition(&s, &five));
        Ok(())
    })
}

pub fn delta_is_linear() -> Result<(), String> {
    use tailgame::moments::{delta, delta_b};
    let seq = || vec(-20..=20i64, 2..=8);
    run(17, CASES, (seq(), seq(), -3..=3i64, -3..=3i64, -4..=4i64), |(s, t, alpha, beta, b)| {
        let n = s.len().min(t.len());
        let to = |v: &[i64]| FiniteSequence::new(v[..n].iter().map(|&x| int(x)).collect()).unwrap();
        let (s, t) = (to(&s), to(&t));
        let (alpha, beta, b) = (int(alpha), int(beta), int(b));
        let combo = s.scale(&alpha).add(&t.scale(&beta)).unwrap();
        let lhs = delta_b(&combo, &b).unwrap();
        let rhs = delta_b(&s, &b).unwrap().scale(&alpha).add(&delta_b(&t, &b).unwrap().scale(&beta)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(delta_b(&s, &int(1)).unwrap(), delta(&s).unwrap());
        let shifted = delta_b(&s, &int(0)).unwrap();
        prop_assert_eq!(shifted.values(), &s.values()[1..]);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// scalar games

fn scalar_game() -> impl Strategy<Value = (usize, usize, bool, Vec<i64>)> {
    (1..=3usize, 1..=3usize, any::<bool>())
        .prop_flat_map(|(r, c, zs)| (Just(r), Just(c), Just(zs), vec(-3..=3i64, 2 * r * c)))
}

fn build_scalar((r, c, zs, e): &(usize, usize, bool, Vec<i64>)) -> BimatrixGame<Rational> {
    let (r, c) = (*r, *c);
    let a = Matrix::from_fn(r, c, |i, j| int(e[i * c + j]));
    if *zs {
        BimatrixGame::zero_sum(a)
    } else {
        BimatrixGame::new(a, Matrix::from_fn(r, c, |i, j| int(e[r * c + i * c + j]))).unwrap()
    }
}

pub fn support_payoffs_equal() -> Result<(), String> {
    run(18, CASES, scalar_game(), |raw| {
        let g = build_scalar(&raw);
        let out = support_enumeration(&g);
        for e in &out.equilibria {
            let p = &e.profile;
            prop_assert!(is_epsilon_equilibrium(&g, p, &int(0)).unwrap());
            let rows = g.row_payoffs(&p.y);
            let cols = g.col_payoffs(&p.x);
            for &i in &e.supports.0 {
                prop_assert_eq!(&rows[i], &e.payoffs.0);
            }
            for &j in &e.supports.1 {
                prop_assert_eq!(&cols[j], &e.payoffs.1);
            }
        }
        if g.zero_sum {
            let first = out.equilibria.first().map(|e| e.payoffs.0.clone());
            prop_assert!(out.equilibria.iter().all(|e| Some(&e.payoffs.0) == first.as_ref()));
        }
        if !out.degenerate {
            for (i, j) in pure_equilibria(&g) {
                prop_assert!(out.equilibria.iter().any(|e| e.supports == (vec![i], vec![j])));
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// reflected-lexicographic games

pub fn pure_deviation_guard() -> Result<(), String> {
    run(19, CASES, (vector_game(3), any::<u64>()), |(raw, seed)| {
        let g = raw.build();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in interesting_profiles(&g) {
            if !verify_rlex_equilibrium(&g, &p).unwrap() {
                continue;
            }
            let u1 = g.payoff(&p, Player::One).unwrap();
            let u2 = g.payoff(&p, Player::Two).unwrap();
            let rows: Vec<_> = (0..g.rows()).map(|i| g.row_payoff(i, &p.y)).collect();
            let cols: Vec<_> = (0..g.cols()).map(|j| g.col_payoff(j, &p.x)).collect();
            for _ in 0..1000 {
                let d1 = mix_vectors(&random_mix(&mut rng, g.rows()), &rows);
                prop_assert!(rlex_compare(&d1, &u1).unwrap() != OrderResult::Greater);
                let d2 = mix_vectors(&random_mix(&mut rng, g.cols()), &cols);
                prop_assert!(rlex_compare(&d2, &u2).unwrap() != OrderResult::Greater);
            }
        }
        Ok(())
    })
}

pub fn all_coordinates_sufficiency() -> Result<(), String> {
    run(20, CASES, vector_game(3), |raw| {
        let g = raw.build();
        for p in interesting_profiles(&g) {
            if check_all_coordinates_condition(&g, &p).unwrap() {
                prop_assert!(verify_rlex_equilibrium(&g, &p).unwrap());
            }
        }
        Ok(())
    })
}

pub fn subgame_necessity() -> Result<(), String> {
    run(21, CASES, vector_game(3), |raw| {
        let g = raw.build();
        let top = g.projection(g.dim - 1).unwrap();
        for p in interesting_profiles(&g) {
            let top_eq = is_epsilon_equilibrium(&top, &p, &int(0)).unwrap();
            let verified = verify_rlex_equilibrium(&g, &p).unwrap();
            if verified {
                prop_assert!(top_eq, "verified profile is not a top-coordinate equilibrium");
            }
            if verified && top_eq {
                prop_assert!(check_subgame_condition(&g, &p).unwrap());
            }
        }
        Ok(())
    })
}

pub fn pure_top_equilibria_decide() -> Result<(), String> {
    run(22, CASES, vector_game(3), |raw| {
        let g = raw.build();
        let top = g.projection(g.dim - 1).unwrap();
        if support_enumeration(&top).degenerate {
            return Ok(());
        }
        let pure = pure_equilibria(&top);
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let p = MixedProfile::pure(i, j, g.rows(), g.cols());
                prop_assert_eq!(verify_rlex_equilibrium(&g, &p).unwrap(), pure.contains(&(i, j)));
            }
        }
        Ok(())
    })
}

fn raw_dist_game() -> impl Strategy<Value = (bool, Vec<RawDist>, Vec<u64>)> {
    (any::<bool>(), vec(raw_dist(1, 4, 1, 3), 8), vec(0..=4u64, 4))
}

/// Equilibrium under the tail order, checked on distributions directly.
fn tail_equilibrium(g: &DistributionBimatrixGame<Rational>, p: &MixedProfile<Rational>) -> bool {
    let (r, c) = (g.rows(), g.cols());
    let u1 = g.payoff(p, Player::One).unwrap();
    let u2 = g.payoff(p, Player::Two).unwrap();
    let unit = |k: usize, n: usize| (0..n).map(|l| if l == k { int(1) } else { int(0) }).collect::<Vec<_>>();
    let rows_ok = (0..r).all(|i| {
        let dev = g.payoff(&MixedProfile { x: unit(i, r), y: p.y.clone() }, Player::One).unwrap();
        tail_compare(&dev, &u1).unwrap() != OrderResult::Greater
    });
    let cols_ok = (0..c).all(|j| {
        let dev = g.payoff(&MixedProfile { x: p.x.clone(), y: unit(j, c) }, Player::Two).unwrap();
        let better = if g.zero_sum { OrderResult::Less } else { OrderResult::Greater };
        tail_compare(&dev, &u2).unwrap() != better
    });
    rows_ok && cols_ok
}

pub fn isomorphism_preserves_equilibria() -> Result<(), String> {
    run(23, CASES, raw_dist_game(), |(zero_sum, cells, mix)| {
        let a = Matrix::from_fn(2, 2, |i, j| cells[i * 2 + j].build());
        let g = if zero_sum {
            DistributionBimatrixGame::zero_sum(a)
        } else {
            DistributionBimatrixGame::new(a, Matrix::from_fn(2, 2, |i, j| cells[4 + i * 2 + j].build())).unwrap()
        };
        let h = g.to_probability_vector_game().unwrap();

        let dists: Vec<_> = g.a.iter().collect();
        let vecs: Vec<_> = h.a.iter().collect();
        for s in 0..4 {
            for t in 0..4 {
                prop_assert_eq!(tail_compare(dists[s], dists[t]).unwrap(), rlex_compare(vecs[s], vecs[t]).unwrap());
            }
        }

        let mut profiles = all_pure_profiles(2, 2);
        profiles.extend(decide_tail_equilibria(&g).unwrap().candidates.into_iter().map(|(p, _)| p));
        let split = |k: u64| vec![rat(k as i64, 4), rat(4 - k as i64, 4)];
        profiles.push(MixedProfile::new(split(mix[0]), split(mix[1])).unwrap());
        profiles.push(MixedProfile::new(split(mix[2]), split(mix[3])).unwrap());
        for p in &profiles {
            prop_assert_eq!(tail_equilibrium(&g, p), verify_rlex_equilibrium(&h, p).unwrap());
        }
        Ok(())
    })
}

pub fn game_structure() -> Result<(), String> {
    run(24, CASES, (vector_game(3), 0..=4i64, any::<u64>()), |(raw, alpha, seed)| {
        let g = raw.build();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<usize> = (0..g.rows()).filter(|_| rng.random_bool(0.6)).collect();
        let cols: Vec<usize> = (0..g.cols()).filter(|_| rng.random_bool(0.6)).collect();
        if !rows.is_empty() && !cols.is_empty() {
            for i in 0..g.dim {
                prop_assert_eq!(
                    g.subgame(&rows, &cols).unwrap().projection(i).unwrap(),
                    g.projection(i).unwrap().subgame(&rows, &cols).unwrap()
                );
            }
        }
        let (p, q, y) = (random_mix(&mut rng, g.rows()), random_mix(&mut rng, g.rows()), random_mix(&mut rng, g.cols()));
        let alpha = rat(alpha, 4);
        let blend: Vec<Rational> =
            p.iter().zip(&q).map(|(a, b)| &alpha * a + (int(1) - &alpha) * b).collect();
        let u = |x: &Vec<Rational>| g.payoff(&MixedProfile { x: x.clone(), y: y.clone() }, Player::One).unwrap();
        let (up, uq) = (u(&p), u(&q));
        let expected: Vec<Rational> =
            up.iter().zip(&uq).map(|(a, b)| &alpha * a + (int(1) - &alpha) * b).collect();
        prop_assert_eq!(u(&blend), expected);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Pareto-Nash equilibria

pub fn pareto_minimal_is_idempotent() -> Result<(), String> {
    run(25, CASES, (1..=3usize).prop_flat_map(|d| vec(vec(0..=4i64, d), 1..=8)), |vs| {
        let vs: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        let min = pareto_minimal(&vs).unwrap();
        prop_assert!(!min.is_empty());
        prop_assert_eq!(pareto_minimal(&min).unwrap(), min);
        Ok(())
    })
}

fn positive_weights(d: usize) -> impl Strategy<Value = Vec<i64>> {
    vec(1..=5i64, d)
}

pub fn pareto_nash_forward() -> Result<(), String> {
    let strategy = vector_game(3).prop_flat_map(|g| {
        let d = g.dim;
        (Just(g), positive_weights(d), positive_weights(d))
    });
    run(26, CASES, strategy, |(raw, w1, w2)| {
        let g = raw.build();
        let w = |v: &[i64]| WeightVector::new(v.iter().map(|&x| int(x)).collect()).unwrap();
        for e in pareto_nash(&g, &w(&w1), &w(&w2)).unwrap().equilibria {
            prop_assert!(tailgame::pareto::is_pareto_nash(&g, &e.profile).unwrap());
        }
        Ok(())
    })
}

pub fn scalarization_is_linear() -> Result<(), String> {
    let strategy = vector_game(3).prop_flat_map(|g| {
        let d = g.dim;
        (Just(g), positive_weights(d), positive_weights(d), positive_weights(d), 0..=4i64)
    });
    run(27, CASES, strategy, |(raw, w, w_alt, w2, alpha)| {
        let g = raw.build();
        let alpha = rat(alpha, 4);
        let norm = |v: &[i64]| {
            let total: i64 = v.iter().sum();
            v.iter().map(|&x| rat(x, total)).collect::<Vec<_>>()
        };
        let (w, w_alt) = (norm(&w), norm(&w_alt));
        let blend: Vec<Rational> = w.iter().zip(&w_alt).map(|(a, b)| &alpha * a + (int(1) - &alpha) * b).collect();
        let wv = |v: Vec<Rational>| WeightVector::new(v).unwrap();
        let w2 = wv(norm(&w2));
        let s = scalarize(&g, &wv(w), &w2).unwrap();
        let s_alt = scalarize(&g, &wv(w_alt), &w2).unwrap();
        let s_blend = scalarize(&g, &wv(blend), &w2).unwrap();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let expected = &alpha * s.a.get(i, j) + (int(1) - &alpha) * s_alt.a.get(i, j);
                prop_assert_eq!(s_blend.a.get(i, j), &expected);
            }
        }
        Ok(())
    })
}

pub fn segment_sums_telescope() -> Result<(), String> {
    let strategy = (raw_dist_game(), subsequence((2..=3i64).collect::<Vec<_>>(), 0..=2));
    run(28, CASES, strategy, |((zero_sum, cells, _), cuts)| {
        let a = Matrix::from_fn(2, 2, |i, j| cells[i * 2 + j].build());
        let g = if zero_sum {
            DistributionBimatrixGame::zero_sum(a)
        } else {
            DistributionBimatrixGame::new(a, Matrix::from_fn(2, 2, |i, j| cells[4 + i * 2 + j].build())).unwrap()
        };
        let mut points = vec![int(1)];
        points.extend(cuts.iter().map(|&c| int(c)));
        points.push(int(4));
        let part = Partition::new(points).unwrap();
        let (sg, outside) = segment_game(&g, &part).unwrap();
        prop_assert!(outside.is_empty());
        for i in 0..2 {
            for j in 0..2 {
                let total = sg.a.get(i, j).iter().fold(int(0), |acc, v| acc + v);
                prop_assert_eq!(total, -g.a.get(i, j).mean());
                let total = sg.b.get(i, j).iter().fold(int(0), |acc, v| acc + v);
                let b_mean = g.b.get(i, j).mean();
                prop_assert_eq!(total, if zero_sum { b_mean } else { -b_mean });
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Monte Carlo

pub fn monte_carlo_determinism() -> Result<(), String> {
    run(29, 24, (1..=3usize, 1..=3usize, any::<bool>(), any::<u64>()), |(m, n, zs, seed)| {
        let a = estimate_pure_probability(m, n, zs, 300, seed).unwrap();
        prop_assert_eq!(&a, &estimate_pure_probability(m, n, zs, 300, seed).unwrap());
        let r = estimate_rlex_probability(m, n, 2, zs, 200, seed).unwrap();
        prop_assert_eq!(&r, &estimate_rlex_probability(m, n, 2, zs, 200, seed).unwrap());
        prop_assert_eq!(r.nonpure_found, 0);
        prop_assert!(r.rlex.hits + r.indeterminate <= 200);
        Ok(())
    })
}

pub fn random_fp_within(value_tol: f64, games: usize, rounds: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..games {
        let g = random_bimatrix(3, 3, true, &mut rng);
        let exact = BimatrixGame::zero_sum(g.a.map(|&v| Rational::from_float(v).unwrap()));
        let value = zero_sum_value(&exact).map_err(|e| e.to_string())?.to_f64();
        let last = FictitiousPlay::new(&g, None).nth(rounds - 1).expect("fictitious play is infinite");
        if (last.u1 - value).abs() > value_tol {
            return Err(format!("game {k}: average payoff {} vs value {value}", last.u1));
        }
    }
    Ok(())
}
