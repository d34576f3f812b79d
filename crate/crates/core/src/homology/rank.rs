//! Exact rank over the rationals for small integer matrices.
//!
//! Fraction-free (Bareiss) elimination keeps every intermediate value an
//! integer minor of the input, so the result is exact. The `i128` path is
//! tried first; any overflow restarts the elimination on big integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Rank of an integer matrix given row-major as `rows` rows of equal length.
pub fn exact_rank(matrix: &[Vec<i64>]) -> usize {
    if matrix.is_empty() || matrix[0].is_empty() {
        return 0;
    }
    let small: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(small) {
        Some(r) => r,
        None => {
            let big = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_big(big)
        }
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for r in rank + 1..rows {
            let factor = a[r][col];
            for c in col..cols {
                let lhs = a[r][c].checked_mul(pivot)?;
                let rhs = a[rank][c].checked_mul(factor)?;
                // Division by the previous pivot is exact (Sylvester's identity).
                a[r][c] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = (&a[r][c] * &pivot - &a[rank][c] * &factor) / &prev;
                a[r][c] = v;
            }
        }
        debug_assert!(!pivot.abs().is_zero());
        prev = pivot;
        rank += 1;
    }
    rank
}
