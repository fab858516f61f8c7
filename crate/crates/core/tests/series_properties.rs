//! Randomized properties of the truncated-series layer: truncation
//! soundness, the level-sum bound on geometric series, semilinear power
//! consistency, and determinism of type-(L) evaluation under
//! re-truncation.

use novikov_kit::series::{
    geometric_series, growth_fit, growth_profile, semilinear_power, theoretical_growth_bound,
    type_l_eval, SemilinearMatrix,
};
use novikov_kit::{rat, Int};
use novikov_kit_testkit::{gen, rng};
use rand::Rng;

#[test]
fn geometric_series_truncation_soundness() {
    let mut rng = rng(0x5E1);
    for _ in 0..25 {
        let m = rng.gen_range(1..=3);
        let xi = gen::integral_grading_form(&mut rng, m);
        let theta = novikov_kit::series::default_theta(&xi).unwrap();
        let size = rng.gen_range(1..=3);
        let a = gen::level_minus_one_matrix(&mut rng, &xi, &theta, size, 2);
        let shallow = geometric_series(&a, &xi, &rat(-6)).unwrap();
        let deep = geometric_series(&a, &xi, &rat(-11)).unwrap();
        for i in 0..size {
            for j in 0..size {
                let re = deep[i][j].truncate_to(&rat(-6)).unwrap();
                assert_eq!(re.terms(), shallow[i][j].terms());
            }
        }
    }
}

#[test]
fn geometric_series_level_sums_respect_growth_bound() {
    let mut rng = rng(0xB0551);
    for _ in 0..25 {
        let m = rng.gen_range(1..=3);
        let xi = gen::integral_grading_form(&mut rng, m);
        let theta = novikov_kit::series::default_theta(&xi).unwrap();
        let size = rng.gen_range(1..=3);
        let a = gen::level_minus_one_matrix(&mut rng, &xi, &theta, size, 2);
        let depth = 12u32;
        let series = geometric_series(&a, &xi, &rat(-(depth as i64))).unwrap();
        let bound = theoretical_growth_bound(&a);
        for row in &series {
            for entry in row {
                for k in 0..=depth {
                    let level_sum: Int = entry
                        .terms()
                        .level_sum(&xi, &rat(-(k as i64)))
                        .unwrap();
                    assert!(
                        level_sum <= bound.at_level(k),
                        "level {k} sum {level_sum} exceeds {}",
                        bound.at_level(k)
                    );
                }
            }
        }
    }
}

#[test]
fn semilinear_power_composes() {
    let mut rng = rng(0x5E31);
    for _ in 0..30 {
        let m = rng.gen_range(2..=3);
        let xi = gen::integral_grading_form(&mut rng, m);
        let theta = novikov_kit::series::default_theta(&xi).unwrap();
        let size = rng.gen_range(1..=3);
        let mut entries = Vec::with_capacity(size * size);
        for _ in 0..size * size {
            entries.push(gen::element_at_level(&mut rng, &xi, &theta, 0, 2));
        }
        let mat = SemilinearMatrix::new(
            novikov_kit::LaurentMatrix::new(size, m, entries).unwrap(),
            theta.clone(),
            xi.clone(),
        )
        .unwrap();
        let x: Vec<_> = (0..size)
            .map(|_| gen::element_at_level(&mut rng, &xi, &theta, 0, 2))
            .collect();
        let s = rng.gen_range(0..=4u32);
        let all_at_once = semilinear_power(&mat, &x, s + 1).unwrap();
        let stepped =
            semilinear_power(&mat, &semilinear_power(&mat, &x, 1).unwrap(), s).unwrap();
        assert_eq!(all_at_once, stepped);
    }
}

#[test]
fn type_l_eval_retruncates_consistently() {
    let mut rng = rng(0x7E57);
    for _ in 0..30 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let d = gen::type_l_datum(&mut rng, m, k, 3);
        let deep = type_l_eval(&d, &rat(-10)).unwrap();
        let shallow = type_l_eval(&d, &rat(-5)).unwrap();
        assert_eq!(
            deep.truncate_to(&rat(-5)).unwrap().terms(),
            shallow.terms()
        );
    }
}

#[test]
fn growth_fit_bound_holds_on_profiles() {
    let mut rng = rng(0xF17);
    for _ in 0..20 {
        let m = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let d = gen::type_l_datum(&mut rng, m, k, 3);
        let series = type_l_eval(&d, &rat(-12)).unwrap();
        let profile = growth_profile(&series, 12).unwrap();
        let (a, b) = growth_fit(&profile).unwrap();
        for (c, n) in &profile {
            let cf = num_traits::ToPrimitive::to_f64(c).unwrap();
            let nf = num_traits::ToPrimitive::to_f64(n).unwrap();
            assert!(
                nf <= a * (-cf * b).exp(),
                "profile point ({cf}, {nf}) violates bound A={a}, B={b}"
            );
        }
    }
}
