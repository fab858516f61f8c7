//! Exact double-description primitives: extreme rays of a pointed cone
//! given by homogeneous inequalities, and facet normals of a full-rank
//! generated cone via duality.
//!
//! Extreme rays of a pointed cone `{x : c·x ≤ 0}` are found
//! combinatorially: each extreme ray is the one-dimensional kernel of some
//! `(m−1)`-subset of constraints; candidates are checked against the full
//! system. This is exact and entirely adequate at the supported ambient
//! ranks.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{kernel_basis, rational_rank};
use crate::error::Error;
use crate::{Int, Rat, Result};

/// Scales a nonzero rational vector to the primitive integer vector on
/// the same ray (same direction, coprime entries).
pub(crate) fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the pointed cone `{x ∈ R^rank : c·x ≤ 0 ∀ c ∈ constraints}`,
/// as primitive integer vectors in lexicographic order. Errors if the
/// cone has a nontrivial lineality space.
pub(crate) fn extreme_rays(rank: usize, constraints: &[Vec<Rat>]) -> Result<Vec<Vec<Int>>> {
    if rank == 0 {
        return Err(Error::InvalidCone("ambient rank must be positive".into()));
    }
    if rational_rank(constraints, rank) < rank {
        return Err(Error::InvalidCone(
            "inequality system does not define a pointed cone".into(),
        ));
    }
    let mut rays: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut subset = Vec::with_capacity(rank.saturating_sub(1));
    enumerate_subsets(constraints.len(), rank - 1, 0, &mut subset, &mut |chosen| {
        let rows: Vec<Vec<Rat>> = chosen.iter().map(|&i| constraints[i].clone()).collect();
        if rational_rank(&rows, rank) + 1 != rank {
            return;
        }
        let kern = kernel_basis(&rows, rank);
        debug_assert_eq!(kern.len(), 1);
        let d = &kern[0];
        for dir in [1i64, -1] {
            let cand: Vec<Rat> = d
                .iter()
                .map(|x| x * Rat::from_integer(Int::from(dir)))
                .collect();
            if cand.iter().all(|x| x.is_zero()) {
                continue;
            }
            if constraints.iter().all(|c| !dot(c, &cand).is_positive()) {
                rays.insert(primitive_integer(&cand));
            }
        }
    });
    Ok(rays.into_iter().collect())
}

fn enumerate_subsets<F: FnMut(&[usize])>(
    n: usize,
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut F,
) {
    if current.len() == k {
        visit(current);
        return;
    }
    let remaining = k - current.len();
    for i in start..n {
        if n - i < remaining {
            break;
        }
        current.push(i);
        enumerate_subsets(n, k, i + 1, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn halfline_in_rank_one() {
        let rays = extreme_rays(1, &[rv(&[1])]).unwrap();
        assert_eq!(rays, vec![vec![Int::from(-1)]]);
    }

    #[test]
    fn quadrant_has_two_rays() {
        // {x ≤ 0, y ≤ 0}
        let rays = extreme_rays(2, &[rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        assert_eq!(rays.len(), 2);
        assert!(rays.contains(&vec![Int::from(-1), Int::from(0)]));
        assert!(rays.contains(&vec![Int::from(0), Int::from(-1)]));
    }

    #[test]
    fn single_ray_intersection() {
        // {x1 - x2 = 0, x1 ≤ 0} as three inequalities: the ray through (-1,-1).
        let rays =
            extreme_rays(2, &[rv(&[1, -1]), rv(&[-1, 1]), rv(&[1, 0])]).unwrap();
        assert_eq!(rays, vec![vec![Int::from(-1), Int::from(-1)]]);
    }

    #[test]
    fn non_pointed_system_is_rejected() {
        assert!(extreme_rays(2, &[rv(&[1, 0])]).is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![crate::ratio(-2, 3), crate::ratio(4, 3)];
        assert_eq!(primitive_integer(&v), vec![Int::from(-1), Int::from(2)]);
    }
}
