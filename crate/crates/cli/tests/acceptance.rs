//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured evidence. Tolerances are pinned in the assertions.

use std::time::Instant;

use novikov_kit::cones::{
    cone_intersection_cover, growth_transfer_constants, integral_hull, IntegralCone,
    IntersectionCover,
};
use novikov_kit::group_ring::{ExponentVector, GradingForm};
use novikov_kit::rationality::{
    adjugate_closed_form, closed_form_type_l, expand, recognize, RationalPresentation,
    Recognition,
};
use novikov_kit::series::{geometric_series, type_l_eval};
use novikov_kit::{int, rat, Int, LaurentElement, LaurentMatrix, Rat};
use novikov_kit_testkit::{cone_membership_oracle, gen, rng};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

fn run_binary(args: &[&str]) -> (serde_json::Value, std::time::Duration) {
    let started = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_novikov-kit"))
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(out.status.success(), "command failed: {args:?}");
    (
        serde_json::from_slice(&out.stdout).expect("json report"),
        elapsed,
    )
}

/// Criterion 1: the worked example reproduces the published coefficients,
/// the exact recurrence, and the eigenvalue closed form, in under a
/// second.
#[test]
fn criterion_1_worked_example_reproduction() {
    let (report, elapsed) = run_binary(&["example-s3", "--depth", "25", "--json"]);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 26);

    let coeff = |k: usize| -> Int { rows[k]["n"].as_str().unwrap().parse().unwrap() };
    for (k, expected) in [(0, 0i64), (1, 0), (2, -4), (3, -12), (4, -32), (5, -84)] {
        assert_eq!(coeff(k), int(expected), "n_{k}");
    }
    // Exact recurrence n_{k+2} = 3 n_{k+1} − n_k for 2 ≤ k ≤ 23.
    for k in 2..=23usize {
        assert_eq!(
            coeff(k + 2),
            int(3) * coeff(k + 1) - coeff(k),
            "recurrence at k = {k}"
        );
    }
    // Closed form within 1e-9 relative error for k ≤ 25, recomputed here
    // rather than trusting the binary's own claim.
    let sqrt5 = 5f64.sqrt();
    let (l1, l2) = ((3.0 + sqrt5) / 2.0, (3.0 - sqrt5) / 2.0);
    for (k, row) in rows.iter().enumerate() {
        let expect = if k == 0 {
            0.0
        } else {
            -4.0 / sqrt5 * (l1.powi(k as i32 - 1) - l2.powi(k as i32 - 1))
        };
        let got: f64 = row["n"].as_str().unwrap().parse::<Int>().unwrap().to_f64().unwrap();
        if expect == 0.0 {
            assert_eq!(got, 0.0, "n_{k}");
        } else {
            assert!(
                ((got - expect) / expect).abs() <= 1e-9,
                "closed form at k = {k}: {got} vs {expect}"
            );
        }
    }
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "runtime {:?} exceeds 1 s",
        elapsed
    );
    println!(
        "[PASS] criterion 1: worked example exact to k=25, recurrence 2..=23, closed form <= 1e-9, runtime {elapsed:?}"
    );
}

/// Criterion 2: expansion of the closed form equals direct evaluation at
/// cutoff −12, exactly, for 100 randomized data, in under 30 s.
#[test]
fn criterion_2_closed_form_equals_series() {
    let started = Instant::now();
    let mut rng = rng(0xACC2);
    let cutoff = rat(-12);
    for case in 0..100 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let d = gen::type_l_datum(&mut rng, m, k, 3);
        let direct = type_l_eval(&d, &cutoff).unwrap();
        let rp = closed_form_type_l(&d).unwrap();
        let expanded = expand(&rp, d.xi(), &cutoff).unwrap();
        assert_eq!(
            direct.terms(),
            expanded.terms(),
            "case {case}: closed form disagrees with series"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "runtime {elapsed:?} exceeds 30 s");
    println!("[PASS] criterion 2: 100 randomized closed-form/series agreements at cutoff -12, runtime {elapsed:?}");
}

/// Criterion 3: the adjugate identity holds exactly and the determinant
/// stays in the localizing set, for the same distribution of matrices.
#[test]
fn criterion_3_adjugate_identity() {
    let mut rng = rng(0xACC3);
    for case in 0..100 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let xi = gen::integral_grading_form(&mut rng, m);
        let theta = novikov_kit::series::default_theta(&xi).unwrap();
        let a = gen::level_minus_one_matrix(&mut rng, &xi, &theta, k, 3);
        let (adj, det) = adjugate_closed_form(&a, &xi).unwrap();
        let one_minus = LaurentMatrix::identity(k, m).sub(&a).unwrap();
        assert_eq!(
            one_minus.mul(&adj).unwrap(),
            LaurentMatrix::identity(k, m).scale_element(&det).unwrap(),
            "case {case}: (1-A)·adj ≠ det·1"
        );
        assert_eq!(det.constant_term(), int(1), "case {case}: det constant term");
    }
    println!("[PASS] criterion 3: adjugate identity and det in S_xi for 100 randomized matrices");
}

/// Criterion 4: level sums of geometric-series entries obey the
/// (size·‖A‖)^k bound for k ≤ 15.
#[test]
fn criterion_4_level_sum_bound() {
    let mut rng = rng(0xACC4);
    for case in 0..40 {
        let m = rng.gen_range(1..=3);
        let size = rng.gen_range(1..=3);
        let xi = gen::integral_grading_form(&mut rng, m);
        let theta = novikov_kit::series::default_theta(&xi).unwrap();
        let a = gen::level_minus_one_matrix(&mut rng, &xi, &theta, size, 2);
        let series = geometric_series(&a, &xi, &rat(-15)).unwrap();
        let base = Int::from(size) * a.norm();
        for row in &series {
            for entry in row {
                for k in 0..=15u32 {
                    let sum = entry.terms().level_sum(&xi, &rat(-(k as i64))).unwrap();
                    let bound = num_traits::pow::pow(base.clone(), k as usize);
                    assert!(
                        sum <= bound,
                        "case {case}: level {k} sum {sum} exceeds ({size}·{})^{k} = {bound}",
                        a.norm()
                    );
                }
            }
        }
    }
    println!("[PASS] criterion 4: level sums within (size*norm)^k for k <= 15 on 40 randomized matrices");
}

/// Criterion 5: recognition round trip at depth 60 for ≥ 50 randomized
/// presentations; the oracle is the expansion itself.
#[test]
fn criterion_5_recognition_round_trip() {
    let mut rng = rng(0xACC5);
    let xi = GradingForm::from_ints(&[1]).unwrap();
    let theta = ExponentVector::new(vec![-1]);
    let depth = rat(-60);
    let mut nontrivial = 0;
    for case in 0..60 {
        let order = rng.gen_range(1..=3usize);
        let mut q_terms = vec![(ExponentVector::zero(1), int(1))];
        for i in 1..=order {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                q_terms.push((ExponentVector::new(vec![-(i as i64)]), int(c)));
            }
        }
        let mut p_terms = Vec::new();
        for i in 0..=2i64 {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                p_terms.push((ExponentVector::new(vec![-i]), int(c)));
            }
        }
        let q = LaurentElement::from_terms(1, q_terms).unwrap();
        let p = LaurentElement::from_terms(1, p_terms).unwrap();
        let rp = RationalPresentation::new(p, q, ExponentVector::zero(1), &xi).unwrap();
        let series = expand(&rp, &xi, &depth).unwrap();
        if !series.terms().is_zero() {
            nontrivial += 1;
        }
        match recognize(&series, &theta, 3).unwrap() {
            Recognition::Found(found) => {
                let re = expand(&found, &xi, &depth).unwrap();
                assert_eq!(
                    re.terms(),
                    series.terms(),
                    "case {case}: all 60 coefficients must match"
                );
            }
            Recognition::NotFound => panic!("case {case}: failed on a rational series"),
        }
    }
    assert!(nontrivial >= 50, "only {nontrivial} nontrivial cases");
    println!("[PASS] criterion 5: {nontrivial} recognition round trips exact to depth 60");
}

/// Criterion 6: the cone suite.
#[test]
fn criterion_6_cone_suite() {
    // (a) membership vs the independent Fourier–Motzkin oracle.
    let mut rng = rng(0xACC6);
    for case in 0..500 {
        let m = rng.gen_range(1..=3);
        let cone = gen::arbitrary_cone(&mut rng, m, 3);
        let point = if case % 2 == 0 {
            gen::point_inside(&mut rng, &cone)
        } else {
            gen::arbitrary_point(&mut rng, m, 6)
        };
        let ours = cone.contains(&point).unwrap().is_some();
        let oracle = cone_membership_oracle(cone.generators(), &point);
        assert_eq!(ours, oracle, "case {case}: membership disagreement");
    }

    // (b) hull outputs are integral (η₁,η₂)-cones containing the inputs.
    let mut hulls = 0;
    while hulls < 30 {
        let m = rng.gen_range(1..=3);
        let eta1 = gen::integral_grading_form(&mut rng, m);
        let eta2 = gen::integral_grading_form(&mut rng, m);
        let mut inputs: Vec<Vec<Rat>> = Vec::new();
        for _ in 0..200 {
            if inputs.len() >= 3 {
                break;
            }
            let v: Vec<Rat> = (0..m)
                .map(|_| Rat::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into()))
                .collect();
            if [&eta1, &eta2]
                .iter()
                .all(|f| f.eval_rational(&v).map(|x| x.is_negative()).unwrap_or(false))
            {
                inputs.push(v);
            }
        }
        if inputs.is_empty() {
            continue;
        }
        hulls += 1;
        let hull = integral_hull(m, &inputs, &eta1, &eta2).unwrap();
        assert!(hull.is_eta_cone(&eta1).unwrap());
        assert!(hull.is_eta_cone(&eta2).unwrap());
        for v in &inputs {
            let lcm: i64 = v
                .iter()
                .map(|x| i64::try_from(x.denom().clone()).unwrap())
                .fold(1, num_integer::lcm);
            let point = ExponentVector::new(
                v.iter()
                    .map(|x| i64::try_from((x * rat(lcm)).to_integer()).unwrap())
                    .collect(),
            );
            assert!(hull.contains(&point).unwrap().is_some());
        }
    }

    // (c) growth-transfer inclusion on every lattice point with ξ ≥ −20,
    // for 20 random integral (ξ,η)-cones, m ≤ 3. Verified with pure
    // integer arithmetic on the facet description.
    let mut verified_cones = 0;
    while verified_cones < 20 {
        let m = rng.gen_range(1..=3usize);
        let xi = gen::integral_grading_form(&mut rng, m);
        let eta = gen::integral_grading_form(&mut rng, m);
        if xi.is_negative_multiple_of(&eta) {
            continue;
        }
        let gamma = gen::negative_cone(&mut rng, m, &[&xi, &eta], 3);
        let b = gen::arbitrary_point(&mut rng, m, 2);
        verify_transfer_on_lattice(&gamma, &xi, &eta, &b, -20);
        verified_cones += 1;
    }

    // (d) intersection covers contain 1000 sampled intersection points
    // per case.
    let mut cover_cases = 0;
    while cover_cases < 6 {
        let m = rng.gen_range(1..=3usize);
        let xi = gen::integral_grading_form(&mut rng, m);
        let eta = gen::integral_grading_form(&mut rng, m);
        if xi.is_negative_multiple_of(&eta) {
            continue;
        }
        let common = gen::negative_cone(&mut rng, m, &[&xi, &eta], 3);
        let mut gens1 = gen::negative_cone(&mut rng, m, &[&xi], 3).generators().to_vec();
        gens1.extend(common.generators().iter().cloned());
        let g1 = IntegralCone::new(m, gens1).unwrap();
        let mut gens2 = gen::negative_cone(&mut rng, m, &[&eta], 3).generators().to_vec();
        gens2.extend(common.generators().iter().cloned());
        let g2 = IntegralCone::new(m, gens2).unwrap();
        let a1 = gen::arbitrary_point(&mut rng, m, 2);
        let a2 = gen::arbitrary_point(&mut rng, m, 2);
        let cover = match cone_intersection_cover(&g1, &a1, &g2, &a2, &xi, &eta).unwrap() {
            IntersectionCover::Cover(c) => c,
            IntersectionCover::Bounded => continue,
        };
        // base + (nonnegative combinations of common generators) is
        // guaranteed to lie in both shifted cones.
        let interior = common
            .generators()
            .iter()
            .fold(ExponentVector::zero(m), |acc, g| acc.checked_add(g).unwrap());
        let mut base = None;
        for n in 0..1000 {
            let cand = a1.checked_add(&interior.scaled(n)).unwrap();
            if g1.contains(&cand.checked_sub(&a1).unwrap()).unwrap().is_some()
                && g2.contains(&cand.checked_sub(&a2).unwrap()).unwrap().is_some()
            {
                base = Some(cand);
                break;
            }
        }
        let base = base.expect("interior walk enters the intersection");
        for sample in 0..1000 {
            let mut p = base.clone();
            for g in common.generators() {
                p = p.checked_add(&g.scaled(rng.gen_range(0..=4))).unwrap();
            }
            assert!(
                cover.contains(&p).unwrap(),
                "cover case {cover_cases}, sample {sample}: point {p:?} escapes"
            );
        }
        cover_cases += 1;
    }
    println!(
        "[PASS] criterion 6: membership vs oracle (500), hulls (30), transfer inclusion (20 cones, ξ >= -20), covers (6 cases x 1000 points)"
    );
}

/// Exhaustive integer check of `(Γ+b) ∩ {ξ ≥ c} ⊆ {η ≥ Ac+B}` for all
/// sampled `c ∈ {0,…,floor}`.
fn verify_transfer_on_lattice(
    gamma: &IntegralCone,
    xi: &GradingForm,
    eta: &GradingForm,
    b: &ExponentVector,
    floor: i64,
) {
    let (a_c, b_c) = growth_transfer_constants(gamma, xi, eta, b).unwrap();
    let m = gamma.rank();
    let facets: Vec<Vec<i64>> = gamma
        .facets()
        .unwrap()
        .iter()
        .map(|f| {
            f.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();
    let xi_w: Vec<i64> = xi
        .integer_weights()
        .unwrap()
        .iter()
        .map(|w| i64::try_from(w.clone()).unwrap())
        .collect();
    let eta_w: Vec<i64> = eta
        .integer_weights()
        .unwrap()
        .iter()
        .map(|w| i64::try_from(w.clone()).unwrap())
        .collect();
    // A = p/q (q > 0); the inclusion is checked as q·η(x) ≥ p·c + q·B.
    let p = i64::try_from(a_c.numer().clone()).unwrap();
    let q = i64::try_from(a_c.denom().clone()).unwrap();
    let qb = {
        let v = &a_c.denom().clone() * b_c.numer() / b_c.denom(); // q·B is integral by construction
        i64::try_from(v).unwrap()
    };

    let mut radius = 0i64;
    for g in gamma.generators() {
        let xv = xi.eval(g).unwrap();
        let lam_max = rat(floor) / xv;
        let reach: i64 = g.coords().iter().map(|c| c.abs()).max().unwrap_or(0);
        radius = radius.max(i64::try_from((lam_max * rat(reach)).ceil().to_integer()).unwrap());
    }

    let dot = |w: &[i64], x: &[i64]| -> i64 { w.iter().zip(x).map(|(a, b)| a * b).sum() };
    let mut point = vec![0i64; m];
    let mut stack = vec![(0usize, -radius - 1)];
    // Iterative box walk to keep this allocation-free in the hot loop.
    while let Some((pos, val)) = stack.pop() {
        if pos == m {
            let rel: Vec<i64> = point.iter().zip(b.coords()).map(|(x, s)| x - s).collect();
            if facets.iter().any(|f| dot(f, &rel) > 0) {
                continue;
            }
            let xv = dot(&xi_w, &point);
            if xv < floor {
                continue;
            }
            let ev = dot(&eta_w, &point);
            for c in floor..=0 {
                if xv >= c {
                    assert!(
                        q * ev >= p * c + qb,
                        "x = {point:?}: η = {ev} < A·{c} + B with A = {a_c}, B = {b_c}"
                    );
                }
            }
            continue;
        }
        let next = val + 1;
        if next > radius {
            continue;
        }
        stack.push((pos, next));
        point[pos] = next;
        stack.push((pos + 1, -radius - 1));
    }
}

/// Criterion 7: zero residual for `∂²` on the worked example and on 20
/// synthetic cancellation systems with three populated indices.
#[test]
fn criterion_7_d_squared() {
    let sys = novikov_kit::complex::builtin_example_s3().unwrap();
    let report = sys.verify_d_squared(&rat(-10)).unwrap();
    assert!(report.all_zero(), "worked example must be a complex");

    let mut rng = rng(0xACC7);
    for case in 0..20 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let sys = gen::cancellation_system(&mut rng, m, k);
        let report = sys.verify_d_squared(&rat(-8)).unwrap();
        assert_eq!(report.per_index.len(), 1, "case {case}: one composition");
        assert!(
            report.all_zero(),
            "case {case}: residual {:?}",
            report.per_index[0].residual_norm
        );
        assert!(
            report.per_index[0].validity_cutoff <= rat(0),
            "case {case}: the check must cover a nonempty range"
        );
    }
    println!("[PASS] criterion 7: d^2 = 0 exactly on the worked example and 20 synthetic systems");
}
