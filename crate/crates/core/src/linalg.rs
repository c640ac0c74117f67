//! Dense linear algebra over the rationals.
//!
//! Used to decide invertibility of augmented matrices: several coefficient
//! rings embed faithfully into matrices over Q (block flattening, regular
//! representations), and inverses are pulled back through those embeddings.

use num_traits::{One, Zero};

use crate::Q;

pub type QMatrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// Determinant by fraction-preserving Gaussian elimination.
pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut sign = Q::one();
    let mut acc = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    sign * acc
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(a: &[Vec<Q>]) -> Option<QMatrix> {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let pivot_inv = m[col][col].recip();
        for c in 0..n {
            m[col][c] *= &pivot_inv;
            inv[col][c] *= &pivot_inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let d1 = &f * &m[col][c];
                m[r][c] -= d1;
                let d2 = &f * &inv[col][c];
                inv[r][c] -= d2;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn det_and_inverse_of_small_matrix() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(det(&a), q(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(det(&a).is_zero());
        assert!(inverse(&a).is_none());
    }
}
