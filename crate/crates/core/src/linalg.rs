use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    /// Singular with no solution.
    Inconsistent,
    /// Singular with infinitely many solutions.
    Underdetermined,
}

impl<T> Solution<T> {
    pub fn unique(self) -> Option<Vec<T>> {
        match self {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Solve the square system `a · x = b` by Gaussian elimination.
///
/// With exact scalars the first non-zero entry is used as pivot; with
/// floats the largest in magnitude, and entries within the float tolerance
/// of zero count as zero.
pub fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Solution<T> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n), "system must be square");

    let mut rank = 0;
    for col in 0..n {
        let pivot = if T::EXACT {
            (rank..n).find(|&r| !a[r][col].is_zero())
        } else {
            (rank..n)
                .max_by(|&r, &s| {
                    a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
                })
                .filter(|&r| !a[r][col].is_zero_tol())
        };
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        b.swap(rank, pivot);

        let p = a[rank][col].clone();
        for r in rank + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..n {
                let delta = factor.clone() * a[rank][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
            let delta = factor * b[rank].clone();
            b[r] = b[r].clone() - delta;
        }
        rank += 1;
    }

    if rank < n {
        return if b[rank..].iter().all(|v| v.is_zero_tol()) { Solution::Underdetermined } else { Solution::Inconsistent };
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..n {
            acc = acc - a[row][c].clone() * x[c].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Solution::Unique(x)
}
