//! Seeded game fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tailgame::game::Matrix;
use tailgame::scalar::int;
use tailgame::{BimatrixGame, Rational, VectorBimatrixGame};

/// An `n x n` bimatrix game with integer payoffs in `-9..=9`.
pub fn integer_bimatrix(n: usize, seed: u64) -> BimatrixGame<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |_, _| int(rng.random_range(-9..=9));
    let a = Matrix::from_fn(n, n, &mut draw);
    let b = Matrix::from_fn(n, n, &mut draw);
    BimatrixGame::new(a, b).expect("square shapes agree")
}

/// An `n x n` vector game with `dim` integer coordinates in `-3..=3`.
pub fn integer_vector_game(n: usize, dim: usize, seed: u64) -> VectorBimatrixGame<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |_, _| (0..dim).map(|_| int(rng.random_range(-3..=3))).collect::<Vec<_>>();
    let a = Matrix::from_fn(n, n, &mut draw);
    let b = Matrix::from_fn(n, n, &mut draw);
    VectorBimatrixGame::new(a, b).expect("square shapes agree")
}

/// Rock-paper-scissors as a float game.
pub fn rock_paper_scissors() -> BimatrixGame<f64> {
    let a = Matrix::from_rows(vec![vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 0.0]])
        .expect("rectangular");
    BimatrixGame::zero_sum(a)
}
