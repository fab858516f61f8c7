//! Ring-axiom and grading properties of the sparse Laurent arithmetic,
//! checked on randomized inputs with exact equality.

use novikov_kit::group_ring::{ExponentVector, GradingForm};
use novikov_kit::{int, rat, LaurentElement, Rat};
use proptest::prelude::*;

fn exponent(rank: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-4i64..=4, rank).prop_map(ExponentVector::new)
}

fn element(rank: usize) -> impl Strategy<Value = LaurentElement> {
    prop::collection::vec((exponent(rank), -5i64..=5), 0..6).prop_map(move |terms| {
        LaurentElement::from_terms(rank, terms.into_iter().map(|(e, c)| (e, int(c)))).unwrap()
    })
}

fn form(rank: usize) -> impl Strategy<Value = GradingForm> {
    prop::collection::vec((-3i64..=3, 1i64..=3), rank)
        .prop_filter_map("nonzero form", |ws| {
            if ws.iter().all(|(n, _)| *n == 0) {
                None
            } else {
                Some(
                    GradingForm::new(
                        ws.into_iter()
                            .map(|(n, d)| Rat::new(int(n), int(d)))
                            .collect(),
                    )
                    .unwrap(),
                )
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes(a in element(2), b in element(2)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn addition_associates(a in element(2), b in element(2), c in element(2)) {
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn multiplication_commutes(a in element(2), b in element(2)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in element(2), b in element(2), c in element(2)) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn multiplication_distributes(a in element(2), b in element(2), c in element(2)) {
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn one_is_neutral(a in element(3)) {
        prop_assert_eq!(a.mul(&LaurentElement::one(3)).unwrap(), a);
    }

    #[test]
    fn norm_is_submultiplicative(a in element(2), b in element(2)) {
        prop_assert!(a.mul(&b).unwrap().norm() <= a.norm() * b.norm());
    }

    #[test]
    fn norm_vanishes_only_at_zero(a in element(2)) {
        prop_assert_eq!(a.norm() == int(0), a.is_zero());
    }

    #[test]
    fn truncation_is_monotone(a in element(2), xi in form(2), c1 in -6i64..=6, c2 in -6i64..=6) {
        let (lo, hi) = (rat(c1.min(c2)), rat(c1.max(c2)));
        let at_hi = a.truncate_at(&xi, &hi).unwrap();
        let at_lo = a.truncate_at(&xi, &lo).unwrap();
        // Higher cutoff keeps a subset of the support.
        for e in at_hi.support() {
            prop_assert!(!at_lo.coeff(e).eq(&int(0)));
        }
        prop_assert!(at_hi.norm() <= at_lo.norm());
        // Truncation is idempotent and exact on the kept range.
        prop_assert_eq!(at_lo.truncate_at(&xi, &hi).unwrap(), at_hi);
    }

    #[test]
    fn grading_is_additive(xi in form(3), g in exponent(3), h in exponent(3)) {
        let sum = g.checked_add(&h).unwrap();
        prop_assert_eq!(
            xi.eval(&sum).unwrap(),
            xi.eval(&g).unwrap() + xi.eval(&h).unwrap()
        );
    }

    #[test]
    fn exact_division_inverts_multiplication(a in element(2), b in element(2)) {
        prop_assume!(!b.is_zero());
        let p = a.mul(&b).unwrap();
        let q = p.exact_div(&b).unwrap();
        prop_assert_eq!(q, Some(a));
    }
}
