//! Column-style Hermite normal form of square integer matrices.
//!
//! For a nonsingular `M` the result `H = M·U` (with `U` unimodular) is lower
//! triangular with positive diagonal and `0 <= H[i][j] < H[i][i]` for `j < i`.
//! `H` depends only on the lattice `M·Zⁿ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn col_combine(m: &mut IntMatrix, i: usize, j: usize, coeffs: [&BigInt; 4]) {
    // new col_i = a·col_i + b·col_j ; new col_j = c·col_i + d·col_j
    let [a, b, c, d] = coeffs;
    for row in m.iter_mut() {
        let (ci, cj) = (row[i].clone(), row[j].clone());
        row[i] = a * &ci + b * &cj;
        row[j] = c * &ci + d * &cj;
    }
}

/// Returns `None` when the matrix is singular.
pub fn column_hnf(matrix: &IntMatrix) -> Option<IntMatrix> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "square matrix expected");
    let mut m = matrix.clone();
    for i in 0..n {
        for j in i + 1..n {
            if m[i][j].is_zero() {
                continue;
            }
            let (a, b) = (m[i][i].clone(), m[i][j].clone());
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let c = -(&b / &g);
            let d = &a / &g;
            col_combine(&mut m, i, j, [&x, &y, &c, &d]);
        }
        if m[i][i].is_zero() {
            return None;
        }
        if m[i][i].is_negative() {
            for row in m.iter_mut() {
                row[i] = -&row[i];
            }
        }
        for j in 0..i {
            let q = m[i][j].div_floor(&m[i][i]);
            if q.is_zero() {
                continue;
            }
            for row in m.iter_mut() {
                let delta = &q * &row[i];
                row[j] -= delta;
            }
        }
    }
    Some(m)
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(column_hnf(&m(&[&[2, 0], &[0, 1]])), Some(m(&[&[2, 0], &[0, 1]])));
        assert_eq!(column_hnf(&m(&[&[0, 1], &[1, 0]])), Some(m(&[&[1, 0], &[0, 1]])));
        // lattice generated by (4,1), (0,1) after reduction
        assert_eq!(column_hnf(&m(&[&[4, 0], &[5, 1]])), Some(m(&[&[4, 0], &[0, 1]])));
        assert_eq!(column_hnf(&m(&[&[1, 2], &[2, 4]])), None);
    }

    fn elementary(n: usize, i: usize, j: usize, k: i64) -> IntMatrix {
        let mut u: IntMatrix = (0..n)
            .map(|r| (0..n).map(|c| BigInt::from((r == c) as i64)).collect())
            .collect();
        u[i][j] = BigInt::from(k);
        u
    }

    proptest! {
        #[test]
        fn invariant_under_unimodular_column_ops(
            entries in proptest::collection::vec(-9i64..10, 9),
            ops in proptest::collection::vec((0usize..3, 0usize..3, -3i64..4), 0..6),
        ) {
            let a = m(&[&entries[0..3], &entries[3..6], &entries[6..9]]);
            let Some(h) = column_hnf(&a) else { return Ok(()); };
            let mut b = a.clone();
            for (i, j, k) in ops {
                if i != j {
                    b = mat_mul(&b, &elementary(3, i, j, k));
                }
            }
            prop_assert_eq!(column_hnf(&b), Some(h.clone()));
            for i in 0..3 {
                prop_assert!(h[i][i] > BigInt::zero());
                for j in 0..3 {
                    if j > i { prop_assert!(h[i][j].is_zero()); }
                    if j < i { prop_assert!(h[i][j] >= BigInt::zero() && h[i][j] < h[i][i]); }
                }
            }
        }
    }
}
