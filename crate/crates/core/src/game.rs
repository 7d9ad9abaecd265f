//! Two-player games with scalar, vector and distribution payoffs.

use crate::dist::{mixture, union_support, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::scalar::{check_probability_vector, dot, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows `rows` and columns `cols`, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

fn check_index_set(set: &[usize], size: usize) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if let Some(&index) = set.iter().find(|&&i| i >= size) {
        return Err(Error::IndexOutOfRange { index, size });
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Pair of mixed strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Scalar> MixedProfile<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        check_probability_vector(&x, "x")?;
        check_probability_vector(&y, "y")?;
        Ok(MixedProfile { x, y })
    }

    pub fn pure(i: usize, j: usize, rows: usize, cols: usize) -> Self {
        let unit = |k: usize, n: usize| (0..n).map(|l| if l == k { T::one() } else { T::zero() }).collect();
        MixedProfile { x: unit(i, rows), y: unit(j, cols) }
    }

    pub fn support_x(&self) -> Vec<usize> {
        positive_indices(&self.x)
    }

    pub fn support_y(&self) -> Vec<usize> {
        positive_indices(&self.y)
    }

    pub fn is_pure(&self) -> bool {
        self.support_x().len() == 1 && self.support_y().len() == 1
    }

    /// The profile restricted to index sets, keeping positions.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        MixedProfile {
            x: rows.iter().map(|&i| self.x[i].clone()).collect(),
            y: cols.iter().map(|&j| self.y[j].clone()).collect(),
        }
    }

    fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        check_len(rows, self.x.len())?;
        check_len(cols, self.y.len())
    }
}

pub(crate) fn positive_indices<T: Scalar>(v: &[T]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, p)| p.is_positive_tol()).map(|(i, _)| i).collect()
}

/// Scalar bimatrix game; both players maximize.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixGame<T> {
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub zero_sum: bool,
}

impl<T: Scalar> BimatrixGame<T> {
    /// The zero-sum flag is set when `B = -A`.
    pub fn new(a: Matrix<T>, b: Matrix<T>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch { expected: a.rows() * a.cols(), found: b.rows() * b.cols() });
        }
        let zero_sum = a.iter().zip(b.iter()).all(|(x, y)| (x.clone() + y.clone()).is_zero_tol());
        Ok(BimatrixGame { a, b, zero_sum })
    }

    pub fn zero_sum(a: Matrix<T>) -> Self {
        let b = a.map(|v| -v.clone());
        BimatrixGame { a, b, zero_sum: true }
    }

    pub fn from_rows(a: Vec<Vec<T>>, b: Vec<Vec<T>>) -> Result<Self> {
        Self::new(Matrix::from_rows(a)?, Matrix::from_rows(b)?)
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn subgame(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let rows = check_index_set(rows, self.rows())?;
        let cols = check_index_set(cols, self.cols())?;
        Self::new(self.a.select(&rows, &cols), self.b.select(&rows, &cols))
    }

    /// `(A y)_i` for every row.
    pub fn row_payoffs(&self, y: &[T]) -> Vec<T> {
        (0..self.rows()).map(|i| dot(self.a.row(i), y)).collect()
    }

    /// `(xᵀ B)_j` for every column.
    pub fn col_payoffs(&self, x: &[T]) -> Vec<T> {
        (0..self.cols())
            .map(|j| (0..self.rows()).fold(T::zero(), |acc, i| acc + x[i].clone() * self.b.get(i, j).clone()))
            .collect()
    }

    pub fn payoff(&self, p: &MixedProfile<T>, player: Player) -> Result<T> {
        p.check_shape(self.rows(), self.cols())?;
        Ok(match player {
            Player::One => dot(&p.x, &self.row_payoffs(&p.y)),
            Player::Two => dot(&self.col_payoffs(&p.x), &p.y),
        })
    }
}

/// Game whose cells carry `dim`-dimensional payoff vectors for each player.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorBimatrixGame<T> {
    pub a: Matrix<Vec<T>>,
    pub b: Matrix<Vec<T>>,
    pub dim: usize,
}

impl<T: Scalar> VectorBimatrixGame<T> {
    pub fn new(a: Matrix<Vec<T>>, b: Matrix<Vec<T>>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch { expected: a.rows() * a.cols(), found: b.rows() * b.cols() });
        }
        let dim = a.get(0, 0).len();
        if dim == 0 {
            return Err(Error::InvalidArgument("payoff vectors must be non-empty".into()));
        }
        for v in a.iter().chain(b.iter()) {
            check_len(dim, v.len())?;
        }
        Ok(VectorBimatrixGame { a, b, dim })
    }

    /// Player 2 maximizes the negated vectors of player 1.
    pub fn zero_sum(a: Matrix<Vec<T>>) -> Result<Self> {
        let b = a.map(|v| v.iter().map(|x| -x.clone()).collect());
        Self::new(a, b)
    }

    pub fn from_rows(a: Vec<Vec<Vec<T>>>, b: Vec<Vec<Vec<T>>>) -> Result<Self> {
        Self::new(Matrix::from_rows(a)?, Matrix::from_rows(b)?)
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// Scalar game of coordinate `i` (0-based).
    pub fn projection(&self, i: usize) -> Result<BimatrixGame<T>> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i, size: self.dim });
        }
        BimatrixGame::new(self.a.map(|v| v[i].clone()), self.b.map(|v| v[i].clone()))
    }

    pub fn subgame(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let rows = check_index_set(rows, self.rows())?;
        let cols = check_index_set(cols, self.cols())?;
        Ok(VectorBimatrixGame { a: self.a.select(&rows, &cols), b: self.b.select(&rows, &cols), dim: self.dim })
    }

    fn weighted(&self, m: &Matrix<Vec<T>>, w: impl Fn(usize, usize) -> T) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let wij = w(i, j);
                if wij.is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(m.get(i, j)) {
                    *o = o.clone() + wij.clone() * v.clone();
                }
            }
        }
        out
    }

    /// Payoff vector of player 1 for pure row `i` against `y`.
    pub fn row_payoff(&self, i: usize, y: &[T]) -> Vec<T> {
        self.weighted(&self.a, |r, j| if r == i { y[j].clone() } else { T::zero() })
    }

    /// Payoff vector of player 2 for pure column `j` against `x`.
    pub fn col_payoff(&self, j: usize, x: &[T]) -> Vec<T> {
        self.weighted(&self.b, |i, c| if c == j { x[i].clone() } else { T::zero() })
    }

    pub fn payoff(&self, p: &MixedProfile<T>, player: Player) -> Result<Vec<T>> {
        p.check_shape(self.rows(), self.cols())?;
        let m = match player {
            Player::One => &self.a,
            Player::Two => &self.b,
        };
        Ok(self.weighted(m, |i, j| p.x[i].clone() * p.y[j].clone()))
    }
}

/// Game with distribution payoffs. In the zero-sum case both players get
/// the same distribution and rank it in opposite directions.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionBimatrixGame<T> {
    pub a: Matrix<DiscreteDistribution<T>>,
    pub b: Matrix<DiscreteDistribution<T>>,
    pub zero_sum: bool,
}

impl<T: Scalar> DistributionBimatrixGame<T> {
    pub fn new(a: Matrix<DiscreteDistribution<T>>, b: Matrix<DiscreteDistribution<T>>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch { expected: a.rows() * a.cols(), found: b.rows() * b.cols() });
        }
        Ok(DistributionBimatrixGame { a, b, zero_sum: false })
    }

    pub fn zero_sum(a: Matrix<DiscreteDistribution<T>>) -> Self {
        DistributionBimatrixGame { b: a.clone(), a, zero_sum: true }
    }

    /// Every real payoff replaced by the point mass at that value.
    pub fn from_real_game(g: &BimatrixGame<T>) -> Self {
        let dirac = |m: &Matrix<T>| m.map(|v| DiscreteDistribution::dirac(v.clone()));
        DistributionBimatrixGame { a: dirac(&g.a), b: dirac(&g.b), zero_sum: false }
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn subgame(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let rows = check_index_set(rows, self.rows())?;
        let cols = check_index_set(cols, self.cols())?;
        Ok(DistributionBimatrixGame {
            a: self.a.select(&rows, &cols),
            b: self.b.select(&rows, &cols),
            zero_sum: self.zero_sum,
        })
    }

    /// Sorted union of all payoff atoms.
    pub fn common_support(&self) -> Vec<T> {
        union_support(self.a.iter().chain(self.b.iter()).map(|d| d.atoms()))
    }

    /// Mass vectors over the common support. Player 2's vectors are negated
    /// in the zero-sum case so that both players maximize.
    pub fn to_probability_vector_game(&self) -> Result<VectorBimatrixGame<T>> {
        let support = self.common_support();
        if let Some(min) = support.first() {
            if min.cmp_tol(&T::one()) == std::cmp::Ordering::Less {
                return Err(Error::SupportBelowOne(min.to_string()));
            }
        }
        let a = self.a.map(|d| d.mass_vector(&support));
        if self.zero_sum {
            VectorBimatrixGame::zero_sum(a)
        } else {
            VectorBimatrixGame::new(a, self.b.map(|d| d.mass_vector(&support)))
        }
    }

    /// Mixture of the cell distributions with weights `x_i y_j`.
    pub fn payoff(&self, p: &MixedProfile<T>, player: Player) -> Result<DiscreteDistribution<T>> {
        p.check_shape(self.rows(), self.cols())?;
        let m = match player {
            Player::One => &self.a,
            Player::Two => &self.b,
        };
        let mut components = Vec::new();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let w = p.x[i].clone() * p.y[j].clone();
                if !w.is_zero() {
                    components.push((w, m.get(i, j).clone()));
                }
            }
        }
        mixture(&components)
    }
}
