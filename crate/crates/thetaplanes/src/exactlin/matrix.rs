//! Exact Gaussian elimination over the rationals.
//!
//! Everything here works on row-major `Vec<Vec<Scalar>>` matrices. Pivoting
//! is "first nonzero" (no magnitude heuristics) so that every result is
//! deterministic and reduced row echelon forms are canonical for a given
//! row space.

use num_traits::{One, Zero};

use super::Scalar;

/// Reduce `rows` in place to reduced row echelon form and return the pivot
/// column indices. Zero rows sink to the bottom and are truncated.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        let Some(src) = (pivot_row..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].clone();
        for entry in rows[pivot_row].iter_mut() {
            *entry /= &inv;
        }
        for i in 0..nrows {
            if i != pivot_row && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..ncols {
                    let sub = &factor * &rows[pivot_row][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of `{ x : M x = 0 }`, one vector per free column, in ascending
/// free-column order. The basis is canonical given the input row space.
pub fn nullspace(mat: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = mat.to_vec();
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}
