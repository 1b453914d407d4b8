//! Dense linear solving: fixed-point with partial pivoting, plus exact
//! rational elimination for rank checks and rational targets.

use num_traits::Zero;

use super::{FixedReal, NumError, Rational};

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot with magnitude below `2^(16 - P)` is treated as singular.
pub fn solve_linear(matrix: &[Vec<FixedReal>], rhs: &[FixedReal]) -> Result<Vec<FixedReal>, NumError> {
    let n = matrix.len();
    if n == 0 {
        return Err(NumError::Empty("solve_linear needs a nonempty system"));
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(rhs.len(), n, "rhs length must match matrix size");
    let precision = rhs[0].precision();
    let threshold = FixedReal::pow2(16 - precision as i32, precision);

    let mut a: Vec<Vec<FixedReal>> = matrix.to_vec();
    let mut b: Vec<FixedReal> = rhs.to_vec();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            .expect("nonempty pivot range");
        if a[pivot_row][col].abs() < threshold {
            return Err(NumError::Singular { col });
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                a[row][k] = &a[row][k] - &(&factor * &a[col][k]);
            }
            b[row] = &b[row] - &(&factor * &b[col]);
        }
    }

    let mut x = vec![FixedReal::zero(precision); n];
    for col in (0..n).rev() {
        let mut acc = b[col].clone();
        for k in col + 1..n {
            acc = &acc - &(&a[col][k] * &x[k]);
        }
        x[col] = &acc / &a[col][col];
    }
    Ok(x)
}

/// Exact solve over the rationals.
pub fn solve_rational(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, NumError> {
    let n = matrix.len();
    if n == 0 {
        return Err(NumError::Empty("solve_rational needs a nonempty system"));
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(rhs.len(), n);

    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();

    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Err(NumError::Singular { col });
        };
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &delta;
            }
            let delta = &factor * &b[col];
            b[row] = &b[row] - &delta;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col].clone();
        for k in col + 1..n {
            let delta = &a[col][k] * &x[k];
            acc = &acc - &delta;
        }
        x[col] = &acc / &a[col][col];
    }
    Ok(x)
}

/// Exact rank of a rational matrix (rows may outnumber columns or vice versa).
pub fn rational_rank(matrix: &[Vec<Rational>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        for row in rank + 1..a.len() {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[rank][col];
            for k in col..cols {
                let delta = &factor * &a[rank][k];
                a[row][k] = &a[row][k] - &delta;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}
