mod support;

use proptest::prelude::*;
use tailgame::construct::DEFAULT_K_CAP;
use tailgame::scalar::{int, rat};
use tailgame::*;

fn check(result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{e}");
    }
}

#[test]
fn order_axioms() {
    check(support::order_axioms());
}

#[test]
fn rlex_is_a_total_order() {
    check(support::rlex_total_order());
}

#[test]
fn tail_order_matches_eventual_moment_dominance() {
    check(support::tail_moment_agreement());
}

#[test]
fn segment_and_cumulative_vectors_rank_alike() {
    check(support::segment_cumulative_equivalence());
}

#[test]
fn mixture_moments_are_affine() {
    check(support::mixture_is_affine());
}

#[test]
fn moment_conditions_hold_for_actual_moments() {
    check(support::moment_conditions_are_necessary());
}

#[test]
fn difference_operator_is_linear() {
    check(support::delta_is_linear());
}

#[test]
fn equilibria_give_equal_payoffs_on_supports() {
    check(support::support_payoffs_equal());
}

#[test]
fn mixed_deviations_never_beat_verified_profiles() {
    check(support::pure_deviation_guard());
}

#[test]
fn all_coordinate_equilibria_are_rlex_equilibria() {
    check(support::all_coordinates_sufficiency());
}

#[test]
fn rlex_equilibria_satisfy_subgame_condition() {
    check(support::subgame_necessity());
}

#[test]
fn pure_profiles_of_nondegenerate_top_games() {
    check(support::pure_top_equilibria_decide());
}

#[test]
fn tail_and_rlex_equilibria_coincide() {
    check(support::isomorphism_preserves_equilibria());
}

#[test]
fn projection_commutes_with_subgame_and_payoff_is_affine() {
    check(support::game_structure());
}

#[test]
fn pareto_minimal_is_idempotent() {
    check(support::pareto_minimal_is_idempotent());
}

#[test]
fn scalarized_equilibria_are_pareto_nash() {
    check(support::pareto_nash_forward());
}

#[test]
fn scalarization_is_linear_in_weights() {
    check(support::scalarization_is_linear());
}

#[test]
fn segment_games_sum_to_negated_means() {
    check(support::segment_sums_telescope());
}

#[test]
fn monte_carlo_is_deterministic() {
    check(support::monte_carlo_determinism());
}

#[test]
fn geometric_family_moments_within_tail_error() {
    let cs = prop_oneof![Just((2i64, 1i64)), Just((3, 1)), Just((5, 2)), Just((4, 1)), Just((7, 2))];
    check(support::run(40, 32, (cs, 30..=40usize, 0..=10u32), |((p, q), n_atoms, n)| {
        let c = rat(p, q);
        let s = geometric_tail_family(&c, n_atoms).unwrap();
        let (lo, hi) = s.moment_bounds(n);
        let exact = geometric_family_moment(&c, n);
        prop_assert!(lo <= exact && exact <= hi);
        let slack = s.bound_b().clone().power(n) * s.tail_mass();
        prop_assert!(&hi - &lo <= slack);
        Ok(())
    }));
}

#[test]
fn shifted_masses_decrease_and_iterate() {
    let input = (3..=7usize, 2..=4i64);
    check(support::run(41, 24, input, |(n, base)| {
        // s_k = 2 - 1/(k+1) carrying mass proportional to base^{-k}.
        let atoms: Vec<Rational> = (1..=n as i64 + 1).map(|k| int(2) - rat(1, k + 1)).collect();
        let raw: Vec<Rational> = (1..=n as u32 + 1).map(|k| rat(1, base).power(k)).collect();
        let total = raw.iter().fold(int(0), |acc, m| acc + m) * int(2);
        let masses: Vec<Rational> = raw.iter().map(|m| m / &total).collect();
        let tail = int(1) - masses.iter().fold(int(0), |acc, m| acc + m);
        let s = TruncatedAtomSequence::new(atoms, masses, tail, int(2)).unwrap();

        let first = shift_construction(&s).unwrap();
        prop_assert!(first.certified());
        let part = first.shifted_part();
        prop_assert!(part.masses().windows(2).all(|w| w[0] > w[1]));
        prop_assert!(part.atoms().iter().all(|a| a < part.bound_b()));
        let second = shift_construction(&part).unwrap();
        prop_assert!(second.certified());
        Ok(())
    }));
}

#[test]
fn alternating_pairs_always_certify() {
    let input = (2..=4usize, prop_oneof![Just((1i64, 2i64)), Just((1, 3)), Just((2, 3))]);
    check(support::run(42, 12, input, |(n, (a, b))| {
        let (a, b) = (int(a), int(b));
        let x1 = (&a + &b) / int(2);
        let y1 = (&a * int(3) + &b) / int(4);
        let (x, y, cert) = alternating_moment_pair(&a, &b, n, &x1, &y1, DEFAULT_K_CAP).unwrap();
        prop_assert!(verify_alternation_certificate(&x, &y, &cert));
        prop_assert!(x.atoms().iter().chain(y.atoms()).all(|v| v < &b));
        prop_assert!(cert.k_indices.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(cert.directions.windows(2).all(|w| w[0] != w[1]));
        Ok(())
    }));
}
