//! Exact phase-1 simplex over the rationals.
//!
//! Decides feasibility of `E·λ = x, λ ≥ 0` and returns a witness `λ`.
//! Pivoting follows Bland's rule (smallest eligible index both for the
//! entering and the leaving variable), which guarantees termination
//! without any genericity assumption; all arithmetic is exact.

use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Finds `λ ≥ 0` with `Σ λ_j cols_j = target`, if one exists.
///
/// `cols` are the columns `E_j` (each of length `m`); `target` has length
/// `m`. Returns `None` when the system is infeasible.
pub fn nonnegative_solution(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let m = target.len();
    let k = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));

    if m == 0 {
        return Some(vec![Rat::zero(); k]);
    }

    // Tableau over variables [λ_1..λ_k, a_1..a_m]; rows are the equations
    // with right-hand sides made nonnegative; artificials form the initial
    // basis. Phase 1 minimizes Σ a_i.
    let n = k + m;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target[i].is_negative();
        let mut row = vec![Rat::zero(); n];
        for (j, col) in cols.iter().enumerate() {
            row[j] = if flip { -col[i].clone() } else { col[i].clone() };
        }
        row[k + i] = Rat::one();
        rows.push(row);
        rhs.push(if flip {
            -target[i].clone()
        } else {
            target[i].clone()
        });
    }
    let mut basis: Vec<usize> = (k..n).collect();

    loop {
        // Reduced cost of column j for the phase-1 objective: artificials
        // cost 1, everything else 0, so r_j = c_j - Σ_{basic artificial rows} T[i][j].
        let mut entering: Option<usize> = None;
        'cols: for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let cost_j = if j >= k { Rat::one() } else { Rat::zero() };
            let mut r = cost_j;
            for (i, &b) in basis.iter().enumerate() {
                if b >= k {
                    r -= rows[i][j].clone();
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(enter) = entering else {
            break;
        };

        // Ratio test; ties resolved by smallest basis variable (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if rows[i][enter].is_positive() {
                let ratio = rhs[i].clone() / rows[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(pivot_row) = leave else {
            // The phase-1 objective is bounded below by zero, so an
            // unbounded entering direction cannot occur.
            return None;
        };

        // Pivot.
        let p = rows[pivot_row][enter].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= p.clone();
        }
        rhs[pivot_row] /= p;
        for i in 0..m {
            if i == pivot_row || rows[i][enter].is_zero() {
                continue;
            }
            let f = rows[i][enter].clone();
            for j in 0..n {
                let delta = f.clone() * rows[pivot_row][j].clone();
                rows[i][j] -= delta;
            }
            let pivot_rhs = rhs[pivot_row].clone();
            rhs[i] -= f * pivot_rhs;
        }
        basis[pivot_row] = enter;
    }

    // Optimal: feasible iff every artificial sits at level zero.
    let mut objective = Rat::zero();
    for (i, &b) in basis.iter().enumerate() {
        if b >= k {
            objective += rhs[i].clone();
        }
    }
    if !objective.is_zero() {
        return None;
    }

    let mut witness = vec![Rat::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            witness[b] = rhs[i].clone();
        }
    }
    // The witness is exact by construction; verify anyway.
    debug_assert!({
        let mut ok = true;
        for i in 0..m {
            let mut acc = Rat::zero();
            for (j, col) in cols.iter().enumerate() {
                acc += witness[j].clone() * col[i].clone();
            }
            ok &= acc == target[i];
        }
        ok
    });
    Some(witness)
}
