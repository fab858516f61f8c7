//! Scanning `Z^m` by increasing 1-norm.
//!
//! Several constructions only need *some* lattice point satisfying a
//! finite family of strict inequalities; scanning shells of constant
//! 1-norm in lexicographic order makes the chosen point canonical.

use crate::group_ring::ExponentVector;

/// Default shell bound for lattice scans. Desk-scale forms hit within a
/// handful of shells; the bound exists so degenerate input fails loudly
/// instead of spinning.
pub(crate) const DEFAULT_SCAN_BOUND: u64 = 64;

/// Returns the first lattice point (ordered by 1-norm, then
/// lexicographically) satisfying `pred`, scanning shells `0..=max_l1`.
pub(crate) fn scan_lattice<F>(rank: usize, max_l1: u64, mut pred: F) -> Option<ExponentVector>
where
    F: FnMut(&ExponentVector) -> bool,
{
    let mut point = vec![0i64; rank];
    for r in 0..=max_l1 {
        if let Some(found) = scan_shell(&mut point, 0, r as i64, &mut pred) {
            return Some(found);
        }
    }
    None
}

/// Fills `point[pos..]` with all completions of exact remaining 1-norm
/// `budget`, in lexicographic order, testing `pred` on each full point.
fn scan_shell<F>(
    point: &mut Vec<i64>,
    pos: usize,
    budget: i64,
    pred: &mut F,
) -> Option<ExponentVector>
where
    F: FnMut(&ExponentVector) -> bool,
{
    if pos == point.len() {
        if budget != 0 {
            return None;
        }
        let candidate = ExponentVector::new(point.clone());
        return pred(&candidate).then_some(candidate);
    }
    if pos + 1 == point.len() {
        // Last coordinate must absorb the whole budget.
        for v in [-budget, budget] {
            point[pos] = v;
            if let Some(found) = scan_shell(point, pos + 1, 0, pred) {
                return Some(found);
            }
            if budget == 0 {
                break;
            }
        }
        return None;
    }
    for v in -budget..=budget {
        point[pos] = v;
        if let Some(found) = scan_shell(point, pos + 1, budget - v.abs(), pred) {
            return Some(found);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_origin_first() {
        let p = scan_lattice(3, 2, |_| true).unwrap();
        assert_eq!(p.coords(), &[0, 0, 0]);
    }

    #[test]
    fn shell_order_is_by_norm_then_lex() {
        let mut seen = Vec::new();
        scan_lattice(2, 1, |p| {
            seen.push(p.coords().to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![-1, 0],
                vec![0, -1],
                vec![0, 1],
                vec![1, 0]
            ]
        );
    }

    #[test]
    fn respects_bound() {
        assert!(scan_lattice(2, 3, |p| p.l1_norm() > 3).is_none());
    }
}
