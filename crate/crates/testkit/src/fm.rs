//! Fourier–Motzkin elimination over exact rationals.
//!
//! This is the independent route for cone-membership questions: the
//! library decides `x ∈ Z⟨e_1..e_k⟩` with a phase-1 simplex, the oracle
//! here eliminates the combination variables one by one instead. The two
//! implementations share no code beyond rational arithmetic.

use novikov_kit::{ExponentVector, Rat};
use num_traits::{Signed, Zero};

/// An inequality `Σ coeffs_i λ_i ≤ bound`.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rat>,
    bound: Rat,
}

/// Decides whether `x = Σ λ_i e_i` has a solution with `λ ≥ 0`, by
/// Fourier–Motzkin elimination of all λ variables.
pub fn cone_membership_oracle(generators: &[ExponentVector], x: &ExponentVector) -> bool {
    let k = generators.len();
    let m = x.rank();
    let mut system: Vec<Ineq> = Vec::new();

    // Equalities as two inequalities each.
    for row in 0..m {
        let coeffs: Vec<Rat> = generators
            .iter()
            .map(|g| novikov_kit::rat(g.coords()[row]))
            .collect();
        let bound = novikov_kit::rat(x.coords()[row]);
        system.push(Ineq {
            coeffs: coeffs.clone(),
            bound: bound.clone(),
        });
        system.push(Ineq {
            coeffs: coeffs.iter().map(|c| -c.clone()).collect(),
            bound: -bound,
        });
    }
    // Nonnegativity: −λ_j ≤ 0.
    for j in 0..k {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs[j] = -novikov_kit::rat(1);
        system.push(Ineq {
            coeffs,
            bound: Rat::zero(),
        });
    }

    for var in 0..k {
        system = eliminate(system, var);
        if system.is_empty() {
            return true;
        }
    }
    system.iter().all(|i| !i.bound.is_negative())
}

fn eliminate(system: Vec<Ineq>, var: usize) -> Vec<Ineq> {
    let mut lower = Vec::new(); // coefficient < 0
    let mut upper = Vec::new(); // coefficient > 0
    let mut rest = Vec::new();
    for ineq in system {
        let c = ineq.coeffs[var].clone();
        if c.is_negative() {
            lower.push(ineq);
        } else if c.is_positive() {
            upper.push(ineq);
        } else {
            rest.push(ineq);
        }
    }
    let mut out = rest;
    for lo in &lower {
        for up in &upper {
            // Scale so the eliminated coefficients cancel, then add.
            let a = -lo.coeffs[var].clone(); // > 0
            let b = up.coeffs[var].clone(); // > 0
            let coeffs: Vec<Rat> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(l, u)| l * &b + u * &a)
                .collect();
            let bound = &lo.bound * &b + &up.bound * &a;
            out.push(Ineq { coeffs, bound });
        }
    }
    dedup(out)
}

fn dedup(mut system: Vec<Ineq>) -> Vec<Ineq> {
    // Normalize each row by the largest absolute coefficient so duplicate
    // directions collapse; keeps the row count in check.
    for ineq in system.iter_mut() {
        let scale = ineq
            .coeffs
            .iter()
            .map(|c| c.abs())
            .chain(std::iter::once(ineq.bound.abs()))
            .max()
            .unwrap_or_else(Rat::zero);
        if !scale.is_zero() {
            for c in ineq.coeffs.iter_mut() {
                *c /= scale.clone();
            }
            ineq.bound /= scale;
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    system.retain(|i| {
        let key = format!("{:?}|{:?}", i.coeffs, i.bound);
        seen.insert(key)
    });
    system
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[i64]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    #[test]
    fn oracle_agrees_on_hand_cases() {
        let gens = vec![ev(&[-1, 0]), ev(&[-1, 1]), ev(&[-1, -1])];
        assert!(cone_membership_oracle(&gens, &ev(&[-3, 2])));
        assert!(cone_membership_oracle(&gens, &ev(&[0, 0])));
        assert!(!cone_membership_oracle(&gens, &ev(&[1, 0])));
        assert!(!cone_membership_oracle(&gens, &ev(&[0, 1])));
    }

    #[test]
    fn oracle_handles_single_generator() {
        let gens = vec![ev(&[-2, 1])];
        assert!(cone_membership_oracle(&gens, &ev(&[-4, 2])));
        assert!(!cone_membership_oracle(&gens, &ev(&[-4, 1])));
    }
}
