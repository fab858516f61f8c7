//! Integral cones over `Z^m` and the support-control constructions:
//! exact membership with witnesses, integral hulls with rank completion,
//! perturbation covers, intersection covers, and growth-transfer
//! constants.
//!
//! Membership is decided by an exact phase-1 simplex over the rationals.
//! Ray and facet enumeration (the double-description side) is exact as
//! well and supported for ambient rank ≤ 4, which covers every
//! construction here; membership itself has no rank restriction.

mod lattice;
mod linalg;
mod rays;
mod simplex;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::group_ring::{ensure_rank, ExponentVector, GradingForm};
use crate::{Int, Rat, Result};

pub(crate) use lattice::{scan_lattice, DEFAULT_SCAN_BOUND};

/// Largest ambient rank for which exact ray/facet enumeration is offered.
pub const MAX_DD_RANK: usize = 4;

/// The cone `Z⟨e_1,…,e_k⟩ = {λ_1 e_1 + … + λ_k e_k | λ_i ≥ 0}` spanned by
/// integer vectors.
///
/// Generators must be nonzero and share the ambient rank; full-rankness
/// is *not* required at construction (some predicates test for it) but is
/// part of being an integral η-cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegralCone {
    rank: usize,
    generators: Vec<ExponentVector>,
}

impl IntegralCone {
    pub fn new(rank: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        for g in &generators {
            ensure_rank(rank, g.rank())?;
            if g.is_zero() {
                return Err(Error::InvalidCone(
                    "zero vector is not a valid cone generator".into(),
                ));
            }
        }
        Ok(IntegralCone { rank, generators })
    }

    pub fn from_rows(rank: usize, rows: &[&[i64]]) -> Result<Self> {
        IntegralCone::new(
            rank,
            rows.iter()
                .map(|r| ExponentVector::new(r.to_vec()))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    fn generator_columns(&self) -> Vec<Vec<Rat>> {
        self.generators
            .iter()
            .map(|g| g.coords().iter().map(|&c| crate::rat(c)).collect())
            .collect()
    }

    /// `rk(e_1,…,e_k) = m`, tested by exact elimination.
    pub fn is_full_rank(&self) -> bool {
        linalg::rational_rank(&self.generator_columns(), self.rank) == self.rank
    }

    /// Membership `x ∈ Z`, with a nonnegative rational witness
    /// `λ` (`Σ λ_i e_i = x`) when the answer is yes.
    pub fn contains(&self, x: &ExponentVector) -> Result<Option<Vec<Rat>>> {
        ensure_rank(self.rank, x.rank())?;
        let target: Vec<Rat> = x.coords().iter().map(|&c| crate::rat(c)).collect();
        Ok(simplex::nonnegative_solution(
            &self.generator_columns(),
            &target,
        ))
    }

    /// Condition for an integral η-cone: full rank and `η(e_i) < 0` for
    /// every generator.
    pub fn is_eta_cone(&self, eta: &GradingForm) -> Result<bool> {
        ensure_rank(self.rank, eta.rank())?;
        for g in &self.generators {
            if !eta.eval(g)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(self.is_full_rank())
    }

    /// Facet normals of a full-rank cone: vectors `f` with
    /// `cone = {x : f·x ≤ 0 ∀f}`. Exact, rank ≤ [`MAX_DD_RANK`].
    pub fn facets(&self) -> Result<Vec<Vec<Rat>>> {
        if self.rank > MAX_DD_RANK {
            return Err(Error::RankTooLarge(self.rank, MAX_DD_RANK));
        }
        if !self.is_full_rank() {
            return Err(Error::InvalidCone(
                "facet enumeration requires a full-rank cone".into(),
            ));
        }
        let rows = self.generator_columns();
        let normals = rays::extreme_rays(self.rank, &rows)?;
        Ok(normals
            .into_iter()
            .map(|f| f.into_iter().map(Rat::from_integer).collect())
            .collect())
    }
}

/// A translated cone `Δ + b`; membership of `x` means `x − b ∈ Δ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftedCone {
    pub cone: IntegralCone,
    pub shift: ExponentVector,
}

impl ShiftedCone {
    pub fn new(cone: IntegralCone, shift: ExponentVector) -> Result<Self> {
        ensure_rank(cone.rank(), shift.rank())?;
        Ok(ShiftedCone { cone, shift })
    }

    pub fn contains(&self, x: &ExponentVector) -> Result<bool> {
        Ok(self.cone.contains(&x.checked_sub(&self.shift)?)?.is_some())
    }
}

/// First lattice point (by 1-norm, then lexicographic) strictly negative
/// on every given form.
pub fn find_negative_lattice_point(forms: &[&GradingForm]) -> Result<ExponentVector> {
    let rank = forms
        .first()
        .ok_or_else(|| Error::InvalidCone("no forms given".into()))?
        .rank();
    for f in forms {
        ensure_rank(rank, f.rank())?;
    }
    scan_lattice(rank, DEFAULT_SCAN_BOUND, |p| {
        forms
            .iter()
            .all(|f| f.eval(p).map(|v| v.is_negative()).unwrap_or(false))
    })
    .ok_or(Error::SearchExhausted(DEFAULT_SCAN_BOUND))
}

/// Integral hull with rank completion (the constructive side of the
/// density argument): returns a full-rank integral cone whose generators
/// are all strictly negative on both forms and which contains every input
/// vector.
///
/// Inputs are rational direction vectors, each strictly negative on both
/// forms; they are rescaled to primitive integer vectors (same rays) and
/// kept as generators. When they do not already span, the cone is
/// completed with vectors `K·h ± u_j` (`h` a common-negative integer
/// direction, `u_j` the standard basis, `K` minimal keeping both forms
/// strictly negative on all added generators).
pub fn integral_hull(
    rank: usize,
    inputs: &[Vec<Rat>],
    eta1: &GradingForm,
    eta2: &GradingForm,
) -> Result<IntegralCone> {
    ensure_rank(rank, eta1.rank())?;
    ensure_rank(rank, eta2.rank())?;
    let mut generators: Vec<ExponentVector> = Vec::new();
    for v in inputs {
        ensure_rank(rank, v.len())?;
        for eta in [eta1, eta2] {
            if !eta.eval_rational(v)?.is_negative() {
                return Err(Error::SupportViolation(format!(
                    "input generator is not strictly negative on {eta}"
                )));
            }
        }
        generators.push(int_vector_to_exponents(&rays::primitive_integer(v))?);
    }

    let spans = |gens: &[ExponentVector]| {
        let rows: Vec<Vec<Rat>> = gens
            .iter()
            .map(|g| g.coords().iter().map(|&c| crate::rat(c)).collect())
            .collect();
        linalg::rational_rank(&rows, rank) == rank
    };

    if !spans(&generators) {
        let h = find_negative_lattice_point(&[eta1, eta2])?;
        let completion = interior_star(rank, &h, &[eta1, eta2])?;
        generators.extend(completion);
        debug_assert!(spans(&generators));
    }
    generators.sort();
    generators.dedup();
    IntegralCone::new(rank, generators)
}

/// Generators `K·h ± u_j` around the direction `h`, with `K` minimal so
/// that every one of them is strictly negative on all `forms`. The 2m
/// vectors span `R^m` and squeeze `h` into the interior of any cone
/// containing them.
fn interior_star(
    rank: usize,
    h: &ExponentVector,
    forms: &[&GradingForm],
) -> Result<Vec<ExponentVector>> {
    let mut k: i64 = 1;
    'search: loop {
        if k > 1 << 40 {
            return Err(Error::SearchExhausted(1 << 40));
        }
        let base = h.scaled(k);
        let mut out = Vec::with_capacity(2 * rank);
        for j in 0..rank {
            for sign in [1i64, -1] {
                let mut coords = base.coords().to_vec();
                coords[j] += sign;
                let v = ExponentVector::new(coords);
                for f in forms {
                    if !f.eval(&v)?.is_negative() {
                        k *= 2;
                        continue 'search;
                    }
                }
                out.push(v);
            }
        }
        // Shrink back to the smallest valid K (the test above is monotone).
        if k > 1 {
            let mut lo = k / 2;
            let mut hi = k;
            while lo + 1 < hi {
                let mid = lo + (hi - lo) / 2;
                if star_is_negative(rank, h, mid, forms)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if hi != k {
                return interior_star_at(rank, h, hi);
            }
        }
        return Ok(out);
    }
}

fn star_is_negative(
    rank: usize,
    h: &ExponentVector,
    k: i64,
    forms: &[&GradingForm],
) -> Result<bool> {
    let base = h.scaled(k);
    for j in 0..rank {
        for sign in [1i64, -1] {
            let mut coords = base.coords().to_vec();
            coords[j] += sign;
            let v = ExponentVector::new(coords);
            for f in forms {
                if !f.eval(&v)?.is_negative() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn interior_star_at(rank: usize, h: &ExponentVector, k: i64) -> Result<Vec<ExponentVector>> {
    let base = h.scaled(k);
    let mut out = Vec::with_capacity(2 * rank);
    for j in 0..rank {
        for sign in [1i64, -1] {
            let mut coords = base.coords().to_vec();
            coords[j] += sign;
            out.push(ExponentVector::new(coords));
        }
    }
    Ok(out)
}

fn int_vector_to_exponents(v: &[Int]) -> Result<ExponentVector> {
    let coords = v
        .iter()
        .map(|x| {
            i64::try_from(x.clone())
                .map_err(|_| Error::InvalidCone("generator coordinate exceeds i64".into()))
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(ExponentVector::new(coords))
}

/// Output of [`perturbation_cone`]: the perturbing form family, the
/// inequality description of the cone `Γ` they cut out with `ξ`, an
/// integral ξ-cone `Γ₀ ⊇ Γ`, and the lattice shift `b` covering the given
/// right-hand bounds.
#[derive(Clone, Debug)]
pub struct PerturbationCover {
    /// The family `{+α_1, −α_1, …, +α_m, −α_m}` of independent forms with
    /// sup-norm below the requested ε.
    pub forms: Vec<GradingForm>,
    /// The forms `ξ + θ_i`; `Γ` is their common nonpositivity region.
    pub gamma_inequalities: Vec<GradingForm>,
    /// Integral ξ-cone containing `Γ`.
    pub gamma0: IntegralCone,
    /// Shift with `{x | (ξ+θ_i)(x) ≤ A_i ∀i} ⊆ Γ₀ + b`.
    pub shift: ExponentVector,
}

/// Realizes the perturbation-cover construction: returns independent
/// forms `±α_i` of sup-norm `min(ε/2, ‖ξ‖/2) < ε`, so that
/// `Γ = {x | (ξ±α_i)(x) ≤ 0}` is a ξ-cone, together with an integral
/// ξ-cone `Γ₀ ⊇ Γ` and a shift `b = −p·x₀` placing the whole region
/// `{(ξ±α_i)(x) ≤ A_i}` inside `Γ₀ + b`.
///
/// `bounds` lists the `A_i` in the order of `forms` (length `2m`).
pub fn perturbation_cone(
    xi: &GradingForm,
    epsilon: &Rat,
    bounds: &[Rat],
) -> Result<PerturbationCover> {
    let rank = xi.rank();
    if rank > MAX_DD_RANK {
        return Err(Error::RankTooLarge(rank, MAX_DD_RANK));
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidCone("ε must be positive".into()));
    }
    if bounds.len() != 2 * rank {
        return Err(Error::InvalidCone(format!(
            "expected 2m = {} bounds A_i, got {}",
            2 * rank,
            bounds.len()
        )));
    }

    let half = Rat::new(Int::from(1), Int::from(2));
    let scale = (epsilon * &half).min(xi.sup_norm() * &half);
    let mut forms = Vec::with_capacity(2 * rank);
    for j in 0..rank {
        let mut w = vec![Rat::zero(); rank];
        w[j] = scale.clone();
        let alpha = GradingForm::new(w)?;
        let minus = GradingForm::new(
            alpha.weights().iter().map(|x| -x.clone()).collect(),
        )?;
        forms.push(alpha);
        forms.push(minus);
    }

    let gamma_inequalities: Vec<GradingForm> = forms
        .iter()
        .map(|t| {
            GradingForm::new(
                xi.weights()
                    .iter()
                    .zip(t.weights())
                    .map(|(a, b)| a + b)
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;

    // Step 2 of the construction: an integer point strictly negative on ξ
    // and on every ξ+θ_i.
    let mut strict: Vec<&GradingForm> = vec![xi];
    strict.extend(gamma_inequalities.iter());
    let x0 = find_negative_lattice_point(&strict)?;

    // Smallest p ≥ 0 with A_i − p·β_i ≤ 0 for every i, β_i = −(ξ+θ_i)(x₀).
    let mut p = Int::zero();
    for (form, bound) in gamma_inequalities.iter().zip(bounds) {
        if bound.is_positive() {
            let beta = -form.eval(&x0)?;
            debug_assert!(beta.is_positive());
            let need = (bound / beta).ceil().to_integer();
            if need > p {
                p = need;
            }
        }
    }
    let p = i64::try_from(p).map_err(|_| Error::SearchExhausted(u64::MAX))?;
    let shift = x0.scaled(-p);

    // Γ₀ via the integral hull of Γ's extreme rays.
    let ineq_rows: Vec<Vec<Rat>> = gamma_inequalities
        .iter()
        .map(|f| f.weights().to_vec())
        .collect();
    let ray_list = rays::extreme_rays(rank, &ineq_rows)?;
    let ray_vecs: Vec<Vec<Rat>> = ray_list
        .iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    let gamma0 = integral_hull(rank, &ray_vecs, xi, xi)?;

    Ok(PerturbationCover {
        forms,
        gamma_inequalities,
        gamma0,
        shift,
    })
}

/// Result of the intersection-cover construction. When the two grading
/// forms are negatively proportional the region `(Γ₁+a₁) ∩ (Γ₂+a₂)` is
/// bounded and no cone cover exists.
#[derive(Clone, Debug)]
pub enum IntersectionCover {
    /// The forms are negatively proportional: the intersection is bounded.
    Bounded,
    /// A shifted integral (ξ,η)-cone containing the intersection.
    Cover(ShiftedCone),
}

/// Covers `(Γ₁+a₁) ∩ (Γ₂+a₂)` by a shifted integral (ξ,η)-cone `Δ + b`.
///
/// Follows the constructive proof: pick `h` with `ξ(h) < 0, η(h) < 0`,
/// enlarge each `Γ_i` so `h` is interior, choose `N` with
/// `a_i + N·h ∈ Γ_i` (so `Γ_i + a_i ⊆ Γ_i − N·h`), intersect exactly, and
/// take the integral hull; `b = −N·h`.
pub fn cone_intersection_cover(
    gamma1: &IntegralCone,
    a1: &ExponentVector,
    gamma2: &IntegralCone,
    a2: &ExponentVector,
    xi: &GradingForm,
    eta: &GradingForm,
) -> Result<IntersectionCover> {
    let rank = gamma1.rank();
    if rank > MAX_DD_RANK {
        return Err(Error::RankTooLarge(rank, MAX_DD_RANK));
    }
    ensure_rank(rank, gamma2.rank())?;
    ensure_rank(rank, a1.rank())?;
    ensure_rank(rank, a2.rank())?;
    ensure_rank(rank, xi.rank())?;
    ensure_rank(rank, eta.rank())?;
    if !gamma1.is_eta_cone(xi)? {
        return Err(Error::InvalidCone("Γ₁ is not an integral ξ-cone".into()));
    }
    if !gamma2.is_eta_cone(eta)? {
        return Err(Error::InvalidCone("Γ₂ is not an integral η-cone".into()));
    }
    if xi.is_negative_multiple_of(eta) {
        return Ok(IntersectionCover::Bounded);
    }

    let h = find_negative_lattice_point(&[xi, eta])?;
    let g1 = enlarge_around(gamma1, xi, &h)?;
    let g2 = enlarge_around(gamma2, eta, &h)?;

    // Exponential search for N with a_i + N·h in both enlarged cones;
    // membership is monotone in N because h generates.
    let mut n: i64 = 0;
    loop {
        let p1 = a1.checked_add(&h.scaled(n))?;
        let p2 = a2.checked_add(&h.scaled(n))?;
        if g1.contains(&p1)?.is_some() && g2.contains(&p2)?.is_some() {
            break;
        }
        n = if n == 0 { 1 } else { n * 2 };
        if n > 1 << 40 {
            return Err(Error::SearchExhausted(1 << 40));
        }
    }

    let mut constraints = g1.facets()?;
    constraints.extend(g2.facets()?);
    let ray_list = rays::extreme_rays(rank, &constraints)?;
    let ray_vecs: Vec<Vec<Rat>> = ray_list
        .iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    let delta = integral_hull(rank, &ray_vecs, xi, eta)?;
    let cover = ShiftedCone::new(delta, h.scaled(-n))?;
    Ok(IntersectionCover::Cover(cover))
}

/// Adds generators making `h` interior while preserving the integral
/// η-cone property for `form`.
fn enlarge_around(
    cone: &IntegralCone,
    form: &GradingForm,
    h: &ExponentVector,
) -> Result<IntegralCone> {
    let mut gens = cone.generators().to_vec();
    gens.extend(interior_star(cone.rank(), h, &[form])?);
    IntegralCone::new(cone.rank(), gens)
}

/// Growth-transfer constants for an integral (ξ,η)-cone: the smallest
/// `A > 0` with `η(e_i) ≥ A·ξ(e_i)` on all generators (namely
/// `A = max_i η(e_i)/ξ(e_i)`), and `B = η(b) − A·ξ(b)`, so that
/// `(Γ+b) ∩ {ξ ≥ c} ⊆ (Γ+b) ∩ {η ≥ Ac+B}` for every `c`.
pub fn growth_transfer_constants(
    gamma: &IntegralCone,
    xi: &GradingForm,
    eta: &GradingForm,
    b: &ExponentVector,
) -> Result<(Rat, Rat)> {
    ensure_rank(gamma.rank(), xi.rank())?;
    ensure_rank(gamma.rank(), eta.rank())?;
    ensure_rank(gamma.rank(), b.rank())?;
    let mut a: Option<Rat> = None;
    for g in gamma.generators() {
        let xv = xi.eval(g)?;
        let ev = eta.eval(g)?;
        if !xv.is_negative() || !ev.is_negative() {
            return Err(Error::SupportViolation(format!(
                "generator {g:?} is not strictly negative on both forms"
            )));
        }
        let ratio = ev / xv;
        a = Some(match a {
            None => ratio,
            Some(prev) => prev.max(ratio),
        });
    }
    let a = a.ok_or_else(|| Error::InvalidCone("cone has no generators".into()))?;
    let b_val = eta.eval(b)? - a.clone() * xi.eval(b)?;
    Ok((a, b_val))
}
