//! Deterministic random generators for the randomized suites.

use novikov_kit::complex::{BoundaryEntry, CriticalPoint, MorseSystem};
use novikov_kit::cones::IntegralCone;
use novikov_kit::group_ring::{ExponentVector, GradingForm};
use novikov_kit::series::{default_theta, TypeLDatum};
use novikov_kit::{int, Int, LaurentElement, LaurentMatrix};
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Random integer-valued surjective grading form with small weights.
pub fn integral_grading_form<R: Rng>(rng: &mut R, m: usize) -> GradingForm {
    loop {
        let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
        let g = weights.iter().fold(0i64, |acc, &w| gcd(acc, w));
        if g == 1 {
            return GradingForm::from_ints(&weights).unwrap();
        }
    }
}

/// Random monomial exponent in `Ker ξ`, built from the kernel lattice
/// spanned by `e_j + w_j·θ`.
pub fn kernel_monomial<R: Rng>(
    rng: &mut R,
    xi: &GradingForm,
    theta: &ExponentVector,
    spread: i64,
) -> ExponentVector {
    let m = xi.rank();
    let weights: Vec<i64> = xi
        .integer_weights()
        .expect("integral form")
        .iter()
        .map(|w| i64::try_from(w.clone()).unwrap())
        .collect();
    let mut acc = ExponentVector::zero(m);
    for (j, w) in weights.iter().enumerate() {
        let c: i64 = rng.gen_range(-spread..=spread);
        if c == 0 {
            continue;
        }
        let basis = ExponentVector::unit(m, j)
            .checked_add(&theta.scaled(*w))
            .unwrap();
        acc = acc.checked_add(&basis.scaled(c)).unwrap();
    }
    acc
}

/// Random element supported at the single grading level `level`, with
/// norm between 0 and `max_norm`.
pub fn element_at_level<R: Rng>(
    rng: &mut R,
    xi: &GradingForm,
    theta: &ExponentVector,
    level: i64,
    max_norm: u32,
) -> LaurentElement {
    let m = xi.rank();
    let budget = rng.gen_range(0..=max_norm);
    let mut terms: Vec<(ExponentVector, Int)> = Vec::new();
    let mut used = 0u32;
    while used < budget {
        let size = rng.gen_range(1..=(budget - used).min(2));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let base = kernel_monomial(rng, xi, theta, 1);
        let exp = base.checked_add(&theta.scaled(-level)).unwrap();
        terms.push((exp, int(sign * size as i64)));
        used += size;
    }
    LaurentElement::from_terms(m, terms).unwrap()
}

/// Random matrix with all entries supported at grading level −1 and
/// `‖A‖ ≤ max_norm`.
pub fn level_minus_one_matrix<R: Rng>(
    rng: &mut R,
    xi: &GradingForm,
    theta: &ExponentVector,
    size: usize,
    max_norm: u32,
) -> LaurentMatrix {
    let m = xi.rank();
    let mut entries = Vec::with_capacity(size * size);
    for _ in 0..size * size {
        entries.push(element_at_level(rng, xi, theta, -1, max_norm));
    }
    LaurentMatrix::new(size, m, entries).unwrap()
}

/// Random type-(L) datum: `k×k` transfer matrix at level −1 with entry
/// norms ≤ `max_norm`, kernel-supported `X`, `Y`, small monomial shifts.
pub fn type_l_datum<R: Rng>(rng: &mut R, m: usize, k: usize, max_norm: u32) -> TypeLDatum {
    let xi = integral_grading_form(rng, m);
    let theta = default_theta(&xi).unwrap();
    let a = level_minus_one_matrix(rng, &xi, &theta, k, max_norm);
    let vector = |rng: &mut R| -> Vec<LaurentElement> {
        (0..k)
            .map(|_| element_at_level(rng, &xi, &theta, 0, 2))
            .collect()
    };
    let x = vector(rng);
    let y = vector(rng);
    let small = |rng: &mut R| -> ExponentVector {
        ExponentVector::new((0..m).map(|_| rng.gen_range(-2..=2)).collect())
    };
    TypeLDatum::new(small(rng), small(rng), a, x, y, theta, xi).unwrap()
}

/// Random full-rank cone with generators strictly negative on every
/// given form, entry magnitudes ≤ `spread`.
pub fn negative_cone<R: Rng>(
    rng: &mut R,
    m: usize,
    forms: &[&GradingForm],
    spread: i64,
) -> IntegralCone {
    loop {
        let mut gens: Vec<ExponentVector> = Vec::new();
        let mut attempts = 0;
        while gens.len() < m + 1 && attempts < 4000 {
            attempts += 1;
            let v = ExponentVector::new((0..m).map(|_| rng.gen_range(-spread..=spread)).collect());
            if v.is_zero() {
                continue;
            }
            let ok = forms.iter().all(|f| {
                f.eval(&v)
                    .map(|x| num_traits::Signed::is_negative(&x))
                    .unwrap_or(false)
            });
            if ok {
                gens.push(v);
            }
        }
        if gens.len() < m + 1 {
            continue;
        }
        let cone = IntegralCone::new(m, gens).unwrap();
        if cone.is_full_rank() {
            return cone;
        }
    }
}

/// Random full-rank cone with no sign constraints (for membership
/// fuzzing).
pub fn arbitrary_cone<R: Rng>(rng: &mut R, m: usize, spread: i64) -> IntegralCone {
    loop {
        let count = rng.gen_range(m..=m + 2);
        let gens: Vec<ExponentVector> = (0..count)
            .map(|_| ExponentVector::new((0..m).map(|_| rng.gen_range(-spread..=spread)).collect()))
            .collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let cone = IntegralCone::new(m, gens).unwrap();
        if cone.is_full_rank() {
            return cone;
        }
    }
}

/// A point guaranteed to lie in the cone: a random small nonnegative
/// integer combination of the generators.
pub fn point_inside<R: Rng>(rng: &mut R, cone: &IntegralCone) -> ExponentVector {
    let m = cone.rank();
    let mut acc = ExponentVector::zero(m);
    for g in cone.generators() {
        let c: i64 = rng.gen_range(0..=3);
        acc = acc.checked_add(&g.scaled(c)).unwrap();
    }
    acc
}

/// Random nearby lattice point (for membership fuzzing on both sides).
pub fn arbitrary_point<R: Rng>(rng: &mut R, m: usize, spread: i64) -> ExponentVector {
    ExponentVector::new((0..m).map(|_| rng.gen_range(-spread..=spread)).collect())
}

/// A three-index system built to cancel: `∂₂ = (u, −u)ᵀ`, `∂₁ = (w, w)`.
pub fn cancellation_system<R: Rng>(rng: &mut R, m: usize, k: usize) -> MorseSystem {
    let xi = integral_grading_form(rng, m);
    let theta = default_theta(&xi).unwrap();
    let datum = |rng: &mut R| -> TypeLDatum {
        let a = level_minus_one_matrix(rng, &xi, &theta, k, 2);
        let x = (0..k)
            .map(|_| element_at_level(rng, &xi, &theta, 0, 2))
            .collect();
        let y = (0..k)
            .map(|_| element_at_level(rng, &xi, &theta, 0, 2))
            .collect();
        let small = |rng: &mut R| -> ExponentVector {
            ExponentVector::new((0..m).map(|_| rng.gen_range(-1..=1)).collect())
        };
        TypeLDatum::new(small(rng), small(rng), a, x, y, theta.clone(), xi.clone()).unwrap()
    };
    let u = datum(rng);
    let w = datum(rng);

    let mut entries = BTreeMap::new();
    entries.insert(
        ("x".to_string(), "y1".to_string()),
        BoundaryEntry::TypeL(u.clone()),
    );
    entries.insert(
        ("x".to_string(), "y2".to_string()),
        BoundaryEntry::TypeL(u.negated()),
    );
    entries.insert(
        ("y1".to_string(), "z".to_string()),
        BoundaryEntry::TypeL(w.clone()),
    );
    entries.insert(("y2".to_string(), "z".to_string()), BoundaryEntry::TypeL(w));
    MorseSystem::new(
        m,
        xi,
        theta,
        vec![
            CriticalPoint {
                name: "x".into(),
                index: 2,
            },
            CriticalPoint {
                name: "y1".into(),
                index: 1,
            },
            CriticalPoint {
                name: "y2".into(),
                index: 1,
            },
            CriticalPoint {
                name: "z".into(),
                index: 0,
            },
        ],
        entries,
    )
    .unwrap()
}

/// True when the element is zero (re-export convenience for suites).
pub fn is_zero_int(i: &Int) -> bool {
    i.is_zero()
}
