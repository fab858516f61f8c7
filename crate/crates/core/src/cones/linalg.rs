//! Small exact linear algebra over the rationals: rank and kernels by
//! Gaussian elimination. Sizes here are tiny (ambient rank ≤ 4 plus a
//! handful of rows), so clarity beats cleverness.

use num_traits::Zero;

use crate::Rat;

/// Row-reduces a copy of `rows` and returns (rank, pivot columns, echelon rows).
fn echelon(rows: &[Vec<Rat>], width: usize) -> (usize, Vec<usize>, Vec<Vec<Rat>>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].clone();
        for v in m[r].iter_mut() {
            *v /= inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..width {
                    let delta = f.clone() * m[r][j].clone();
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, pivots, m)
}

pub(crate) fn rational_rank(rows: &[Vec<Rat>], width: usize) -> usize {
    echelon(rows, width).0
}

/// Basis of `{x ∈ Q^width : row·x = 0 for every row}`.
pub(crate) fn kernel_basis(rows: &[Vec<Rat>], width: usize) -> Vec<Vec<Rat>> {
    let (_, pivots, m) = echelon(rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); width];
        v[f] = Rat::from_integer(1.into());
        for (row_idx, &p) in pivots.iter().enumerate() {
            v[p] = -m[row_idx][f].clone();
        }
        basis.push(v);
    }
    basis
}
