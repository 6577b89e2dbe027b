//! Exact linear algebra over Q: fraction-free (Bareiss) elimination for the
//! overdetermined solves, and a rational kernel/RREF for span searches.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::{Error, Result};

/// Solve the overdetermined system A x = b exactly. Requires rank(A) equal
/// to the number of unknowns and a consistent system; both failures surface
/// as errors so that under-precision can never silently fit.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = if m == 0 { 0 } else { a[0].len() };
    if m < n {
        return Err(Error::SingularSystem(format!(
            "{m} equations for {n} unknowns"
        )));
    }
    // Clear each row to integers (augmented with b).
    let mut mat: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (row, rhs) in a.iter().zip(b) {
        let l = crate::exact::denom_lcm(row.iter().chain(std::iter::once(rhs)));
        let lr = BigRational::from_integer(l);
        let mut irow: Vec<BigInt> = row.iter().map(|c| (c * &lr).to_integer()).collect();
        irow.push((rhs * &lr).to_integer());
        mat.push(irow);
    }
    // Bareiss fraction-free elimination with row pivoting by first nonzero.
    let mut prev = BigInt::one();
    let mut row_of_col: Vec<usize> = Vec::with_capacity(n);
    let mut next_row = 0usize;
    for col in 0..n {
        let pivot = (next_row..m).find(|&r| !mat[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                return Err(Error::SingularSystem(format!(
                    "rank deficiency at column {col}"
                )))
            }
        };
        mat.swap(next_row, pivot);
        for r in next_row + 1..m {
            for c in (col + 1)..=n {
                let v = (&mat[next_row][col] * &mat[r][c] - &mat[r][col] * &mat[next_row][c])
                    / &prev;
                mat[r][c] = v;
            }
            mat[r][col] = BigInt::zero();
        }
        prev = mat[next_row][col].clone();
        row_of_col.push(next_row);
        next_row += 1;
    }
    // Consistency: remaining rows must have vanished entirely.
    for r in next_row..m {
        if !mat[r][n].is_zero() {
            return Err(Error::SingularSystem(format!(
                "inconsistent guard row {r}"
            )));
        }
    }
    // Back substitution on the triangular integer system.
    let mut x = vec![BigRational::zero(); n];
    for col in (0..n).rev() {
        let r = row_of_col[col];
        let mut acc = BigRational::from_integer(mat[r][n].clone());
        for c in col + 1..n {
            acc -= BigRational::from_integer(mat[r][c].clone()) * &x[c];
        }
        x[col] = acc / BigRational::from_integer(mat[r][col].clone());
    }
    Ok(x)
}

/// Basis of the right kernel of A over Q (reduced row echelon form route).
/// Returned vectors are normalized so the first nonzero entry is 1.
pub fn kernel_basis(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    let mut mat: Vec<Vec<Rational>> = a.to_vec();
    let m = mat.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0usize;
    for col in 0..n {
        let pr = (row..m).find(|&r| !mat[r][col].is_zero());
        let pr = match pr {
            Some(p) => p,
            None => continue,
        };
        mat.swap(row, pr);
        let inv = BigRational::one() / mat[row][col].clone();
        for c in col..n {
            mat[row][c] = &mat[row][c] * &inv;
        }
        for r in 0..m {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..n {
                    let t = &f * &mat[row][c];
                    mat[r][c] -= t;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for &(r, c) in &pivots {
            v[c] = -mat[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i64};

    #[test]
    fn solves_unique_overdetermined() {
        // x + y = 3, x - y = 1, 2x = 4 (consistent, rank 2)
        let a = vec![
            vec![rat_i64(1), rat_i64(1)],
            vec![rat_i64(1), rat_i64(-1)],
            vec![rat_i64(2), rat_i64(0)],
        ];
        let b = vec![rat_i64(3), rat_i64(1), rat_i64(4)];
        assert_eq!(solve_exact(&a, &b).unwrap(), vec![rat_i64(2), rat_i64(1)]);
    }

    #[test]
    fn rejects_inconsistent() {
        let a = vec![
            vec![rat_i64(1), rat_i64(1)],
            vec![rat_i64(1), rat_i64(-1)],
            vec![rat_i64(2), rat_i64(0)],
        ];
        let b = vec![rat_i64(3), rat_i64(1), rat_i64(5)];
        assert!(solve_exact(&a, &b).is_err());
    }

    #[test]
    fn rejects_rank_deficient() {
        let a = vec![
            vec![rat_i64(1), rat_i64(2)],
            vec![rat_i64(2), rat_i64(4)],
            vec![rat_i64(3), rat_i64(6)],
        ];
        let b = vec![rat_i64(1), rat_i64(2), rat_i64(3)];
        assert!(solve_exact(&a, &b).is_err());
    }

    #[test]
    fn exact_fractions_survive() {
        let a = vec![vec![rat(1, 3), rat(1, 7)], vec![rat(2, 5), rat(-1, 2)]];
        let b = vec![rat(10, 21), rat(-1, 10)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, vec![rat_i64(1), rat_i64(1)]);
    }

    #[test]
    fn kernel_of_rank_one() {
        // x + 2y + 3z = 0 twice: kernel dim 2.
        let a = vec![
            vec![rat_i64(1), rat_i64(2), rat_i64(3)],
            vec![rat_i64(2), rat_i64(4), rat_i64(6)],
        ];
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = &v[0] + &v[1] * rat_i64(2) + &v[2] * rat_i64(3);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn kernel_trivial_for_full_rank() {
        let a = vec![vec![rat_i64(1), rat_i64(0)], vec![rat_i64(1), rat_i64(1)]];
        assert!(kernel_basis(&a).is_empty());
    }
}
