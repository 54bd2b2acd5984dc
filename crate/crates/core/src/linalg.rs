//! Minimal dense linear solve, enough for the M x M systems this crate builds.

use crate::error::{EconError, Result};

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Consumes both arguments; `A` is row-major.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty pivot range");
        if a[pivot_row][col].abs() < f64::MIN_POSITIVE {
            return Err(EconError::SingularSystem(format!(
                "no usable pivot in column {col}"
            )));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let pivot = a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[row][col] = 0.0;
            for k in col + 1..n {
                let upper = a[col][k];
                a[row][k] -= factor * upper;
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
        if !x[row].is_finite() {
            return Err(EconError::SingularSystem(format!(
                "non-finite solution component in row {row}"
            )));
        }
    }
    Ok(x)
}
