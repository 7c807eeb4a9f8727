//! Exact linear algebra over [`Rat`]: Gaussian elimination, determinants,
//! rank, and the leading-principal-minor test for negative definiteness.
//!
//! Matrices are small (a handful of tracked curves), so dense row-major
//! `Vec<Vec<Rat>>` storage is used throughout.

use crate::rat::Rat;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rat>>;

/// Solves `a · x = b` for a square nonsingular `a` and any number of
/// right-hand-side columns. Returns `None` when `a` is singular.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().chain(rhs.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-exact elimination.
pub fn det(a: &Matrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            d = -d;
        }
        d = &d * &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot_row = m[col].clone();
                for (x, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    d
}

/// Rank of an arbitrary rectangular matrix.
pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                let pivot_row = m[r].clone();
                for (x, p) in m[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// A symmetric matrix is negative definite iff its leading principal minors
/// alternate in sign starting negative: `(-1)^k det(A_k) > 0`.
pub fn is_negative_definite(a: &Matrix) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Matrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = det(&minor);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect()
    }

    #[test]
    fn solves_chain_pullback_system() {
        // (-5, -2) chain; the curve meets only the second member once.
        let a = m(&[&[-5, 1], &[1, -2]]);
        let b = m(&[&[0], &[-1]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![vec![q(1, 9)], vec![q(5, 9)]]);
    }

    #[test]
    fn singular_system_is_detected() {
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &m(&[&[1], &[1]])).is_none());
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(det(&m(&[&[-5, 1], &[1, -2]])), Rat::int(9));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), Rat::int(-1));
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
    }

    #[test]
    fn negative_definiteness() {
        assert!(is_negative_definite(&m(&[&[-2, 1], &[1, -2]])));
        assert!(!is_negative_definite(&m(&[&[-1, 1], &[1, -1]])));
        assert!(!is_negative_definite(&m(&[&[0]])));
    }
}
