//! Truncated Novikov-ring elements and the operator machinery built on
//! them: geometric series of matrices with strictly negative grading,
//! θ-twisted (semilinear) matrix powers, evaluation of type-(L) data, and
//! exponential-growth profiling.
//!
//! A [`NovikovTruncation`] is a finitely stored element together with a
//! rational validity cutoff `c`: it agrees with the (possibly infinite)
//! element it represents on every monomial of grading ≥ `c`, and stores
//! nothing below. Cutoff bookkeeping under multiplication is pessimistic
//! but sound: results are only claimed where they are certain.

use num_traits::{ToPrimitive, Zero};

use crate::cones::{scan_lattice, DEFAULT_SCAN_BOUND};
use crate::error::Error;
use crate::group_ring::{ensure_rank, ExponentVector, GradingForm};
use crate::{Int, LaurentElement, LaurentMatrix, Rat, Result};

/// Hard cap on the number of series terms any single evaluation may sum.
const MAX_SERIES_STEPS: i64 = 100_000;

/// A Novikov-ring element known exactly at and above a grading cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovikovTruncation {
    terms: LaurentElement,
    xi: GradingForm,
    cutoff: Rat,
}

impl NovikovTruncation {
    /// Wraps `terms` as a truncation valid above `cutoff`; anything the
    /// caller passed below the cutoff is discarded.
    pub fn new(terms: LaurentElement, xi: GradingForm, cutoff: Rat) -> Result<Self> {
        ensure_rank(xi.rank(), terms.rank())?;
        let terms = terms.truncate_at(&xi, &cutoff)?;
        Ok(NovikovTruncation { terms, xi, cutoff })
    }

    pub fn zero(xi: GradingForm, cutoff: Rat) -> Self {
        let rank = xi.rank();
        NovikovTruncation {
            terms: LaurentElement::zero(rank),
            xi,
            cutoff,
        }
    }

    pub fn one(xi: GradingForm, cutoff: Rat) -> Result<Self> {
        let rank = xi.rank();
        NovikovTruncation::new(LaurentElement::one(rank), xi, cutoff)
    }

    pub fn terms(&self) -> &LaurentElement {
        &self.terms
    }

    pub fn xi(&self) -> &GradingForm {
        &self.xi
    }

    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    pub fn rank(&self) -> usize {
        self.terms.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Largest grading on the stored support; zero for the empty element
    /// (the convention the cutoff formula uses).
    pub fn max_grade(&self) -> Rat {
        self.terms
            .max_grade(&self.xi)
            .expect("rank validated at construction")
            .unwrap_or_else(Rat::zero)
    }

    fn ensure_same_grading(&self, other: &Self) -> Result<()> {
        if self.xi != other.xi {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    /// Sum, valid above the larger of the two cutoffs.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_grading(other)?;
        let cutoff = self.cutoff.clone().max(other.cutoff.clone());
        NovikovTruncation::new(self.terms.add(&other.terms)?, self.xi.clone(), cutoff)
    }

    pub fn negated(&self) -> Self {
        NovikovTruncation {
            terms: self.terms.negated(),
            xi: self.xi.clone(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Product with sound cutoff propagation: terms of one factor below
    /// its cutoff meet terms of the other of grading at most its
    /// max-grade, so the product is certain above
    /// `max(c_a + maxgrade(b), c_b + maxgrade(a))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_grading(other)?;
        let cutoff = (self.cutoff.clone() + other.max_grade())
            .max(other.cutoff.clone() + self.max_grade());
        NovikovTruncation::new(self.terms.mul(&other.terms)?, self.xi.clone(), cutoff)
    }

    /// Re-truncates to a higher cutoff `c' ≥ c`; asking for data below
    /// the validity bound is an error.
    pub fn truncate_to(&self, c: &Rat) -> Result<Self> {
        if *c < self.cutoff {
            return Err(Error::InsufficientDepth {
                requested: c.to_string(),
                cutoff: self.cutoff.to_string(),
            });
        }
        NovikovTruncation::new(self.terms.clone(), self.xi.clone(), c.clone())
    }

    /// Norm of the truncation at `c`: `N_c = ‖λ[c]‖`. Requires `c ≥ cutoff`.
    pub fn norm_at(&self, c: &Rat) -> Result<Int> {
        if *c < self.cutoff {
            return Err(Error::InsufficientDepth {
                requested: c.to_string(),
                cutoff: self.cutoff.to_string(),
            });
        }
        Ok(self.terms.truncate_at(&self.xi, c)?.norm())
    }
}

impl std::fmt::Display for NovikovTruncation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.terms)
    }
}

/// Canonical θ for an integral epimorphism ξ: the first lattice point
/// (by 1-norm, then lexicographic order) with `ξ(θ) = −1`. Any θ at
/// grading level −1 works; this one is fixed for determinism.
pub fn default_theta(xi: &GradingForm) -> Result<ExponentVector> {
    xi.ensure_integral_epimorphism()?;
    let minus_one = -crate::rat(1);
    scan_lattice(xi.rank(), DEFAULT_SCAN_BOUND, |p| {
        xi.eval(p).map(|v| v == minus_one).unwrap_or(false)
    })
    .ok_or(Error::SearchExhausted(DEFAULT_SCAN_BOUND))
}

/// Validates that every entry support lies in `Ker ξ`.
fn ensure_kernel_supported(entries: &[LaurentElement], xi: &GradingForm, what: &str) -> Result<()> {
    for e in entries {
        if !e.supported_at_level(xi, &Rat::zero())? && !e.is_zero() {
            return Err(Error::SupportViolation(format!(
                "{what} must be supported in Ker ξ"
            )));
        }
    }
    Ok(())
}

/// The matrix of a θ-semilinear endomorphism of a free `Z[Ker ξ]`-module:
/// entries in `Z[Ker ξ]`, a monomial θ at grading level −1, and an
/// integer-valued surjective grading ξ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearMatrix {
    entries: LaurentMatrix,
    theta: ExponentVector,
    xi: GradingForm,
}

impl SemilinearMatrix {
    pub fn new(entries: LaurentMatrix, theta: ExponentVector, xi: GradingForm) -> Result<Self> {
        xi.ensure_integral_epimorphism()?;
        ensure_rank(xi.rank(), entries.rank())?;
        ensure_rank(xi.rank(), theta.rank())?;
        if xi.eval(&theta)? != -crate::rat(1) {
            return Err(Error::SupportViolation(format!(
                "θ must satisfy ξ(θ) = −1, got ξ(θ) = {}",
                xi.eval(&theta)?
            )));
        }
        ensure_kernel_supported(entries.entries(), &xi, "semilinear matrix entries")?;
        Ok(SemilinearMatrix { entries, theta, xi })
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn theta(&self) -> &ExponentVector {
        &self.theta
    }

    pub fn xi(&self) -> &GradingForm {
        &self.xi
    }

    pub fn entries(&self) -> &LaurentMatrix {
        &self.entries
    }

    /// The twisted matrix `(m_ij · θ)` whose ordinary powers compute the
    /// semilinear ones.
    pub fn twisted(&self) -> Result<LaurentMatrix> {
        let theta_mono = LaurentElement::monomial(self.theta.clone(), Int::from(1));
        self.entries.scale_element(&theta_mono)
    }
}

/// `μ^s(x)` for the θ-semilinear map μ with matrix `M`: computed as
/// `(Mθ)^s · x · θ^{−s}`, the matrix form of the twisted power formula.
/// Input and output coordinate vectors live in `Z[Ker ξ]`.
pub fn semilinear_power(
    m: &SemilinearMatrix,
    x: &[LaurentElement],
    s: u32,
) -> Result<Vec<LaurentElement>> {
    if x.len() != m.size() {
        return Err(Error::MatrixShape(format!(
            "vector of length {} against size {}",
            x.len(),
            m.size()
        )));
    }
    ensure_kernel_supported(x, &m.xi, "semilinear argument")?;
    let twisted = m.twisted()?;
    let mut v = x.to_vec();
    for _ in 0..s {
        v = twisted.apply(&v)?;
    }
    let untwist = m.theta.scaled(-(s as i64));
    v.into_iter().map(|e| e.mul_monomial(&untwist)).collect()
}

/// `Σ_{s=0}^{S} A^s` for a matrix with every entry supported strictly
/// below grading zero, truncated at `cutoff`; `S = ⌈cutoff/δ⌉` with δ the
/// largest grading over all entry supports, so dropped powers cannot
/// contribute at or above the cutoff.
pub fn geometric_series(
    a: &LaurentMatrix,
    xi: &GradingForm,
    cutoff: &Rat,
) -> Result<Vec<Vec<NovikovTruncation>>> {
    ensure_rank(xi.rank(), a.rank())?;
    let mut delta: Option<Rat> = None;
    for e in a.entries() {
        if !e.supported_strictly_below_zero(xi)? {
            return Err(Error::SupportViolation(
                "geometric series requires all entry supports at ξ < 0".into(),
            ));
        }
        if let Some(g) = e.max_grade(xi)? {
            delta = Some(match delta {
                None => g,
                Some(d) => d.max(g),
            });
        }
    }
    let steps = match delta {
        None => 0, // zero matrix: the series is the identity
        Some(d) => {
            let s = (cutoff / d).ceil().to_integer();
            let s = i64::try_from(s).map_err(|_| Error::SearchExhausted(u64::MAX))?;
            if s > MAX_SERIES_STEPS {
                return Err(Error::SearchExhausted(MAX_SERIES_STEPS as u64));
            }
            s.max(0)
        }
    };

    let size = a.size();
    let rank = a.rank();
    let mut sum = LaurentMatrix::identity(size, rank);
    let mut power = LaurentMatrix::identity(size, rank);
    for _ in 1..=steps {
        power = power.mul(a)?;
        // Terms below the cutoff only sink lower under further powers.
        power = truncate_matrix(&power, xi, cutoff)?;
        sum = sum.add(&power)?;
    }

    let mut out = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 0..size {
            row.push(NovikovTruncation::new(
                sum.entry(i, j).clone(),
                xi.clone(),
                cutoff.clone(),
            )?);
        }
        out.push(row);
    }
    Ok(out)
}

fn truncate_matrix(m: &LaurentMatrix, xi: &GradingForm, cutoff: &Rat) -> Result<LaurentMatrix> {
    let entries = m
        .entries()
        .iter()
        .map(|e| e.truncate_at(xi, cutoff))
        .collect::<Result<Vec<_>>>()?;
    LaurentMatrix::new(m.size(), m.rank(), entries)
}

/// The data `(r, q, A, X, Y, θ)` of a type-(L) element: a transfer matrix
/// `A` over the grading-level −1 part of the ring, boundary vectors `X`,
/// `Y` over `Z[Ker ξ]`, and monomial conjugators `r`, `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeLDatum {
    r: ExponentVector,
    q: ExponentVector,
    a: LaurentMatrix,
    x: Vec<LaurentElement>,
    y: Vec<LaurentElement>,
    theta: ExponentVector,
    xi: GradingForm,
}

impl TypeLDatum {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        r: ExponentVector,
        q: ExponentVector,
        a: LaurentMatrix,
        x: Vec<LaurentElement>,
        y: Vec<LaurentElement>,
        theta: ExponentVector,
        xi: GradingForm,
    ) -> Result<Self> {
        xi.ensure_integral_epimorphism()?;
        let rank = xi.rank();
        ensure_rank(rank, r.rank())?;
        ensure_rank(rank, q.rank())?;
        ensure_rank(rank, a.rank())?;
        ensure_rank(rank, theta.rank())?;
        if xi.eval(&theta)? != -crate::rat(1) {
            return Err(Error::SupportViolation(format!(
                "θ must satisfy ξ(θ) = −1, got {}",
                xi.eval(&theta)?
            )));
        }
        if x.len() != a.size() || y.len() != a.size() {
            return Err(Error::MatrixShape(format!(
                "X, Y must have length {} to match A",
                a.size()
            )));
        }
        let minus_one = -crate::rat(1);
        for e in a.entries() {
            if !e.supported_at_level(&xi, &minus_one)? {
                return Err(Error::SupportViolation(
                    "matrix entries must be supported at grading level −1".into(),
                ));
            }
        }
        ensure_kernel_supported(&x, &xi, "X entries")?;
        ensure_kernel_supported(&y, &xi, "Y entries")?;
        Ok(TypeLDatum {
            r,
            q,
            a,
            x,
            y,
            theta,
            xi,
        })
    }

    pub fn size(&self) -> usize {
        self.a.size()
    }

    pub fn rank(&self) -> usize {
        self.xi.rank()
    }

    pub fn xi(&self) -> &GradingForm {
        &self.xi
    }

    pub fn theta(&self) -> &ExponentVector {
        &self.theta
    }

    pub fn r(&self) -> &ExponentVector {
        &self.r
    }

    pub fn q(&self) -> &ExponentVector {
        &self.q
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.a
    }

    pub fn x(&self) -> &[LaurentElement] {
        &self.x
    }

    pub fn y(&self) -> &[LaurentElement] {
        &self.y
    }

    /// A copy with `X` negated; evaluation is linear in `X`, so this is
    /// the additive inverse of the represented element.
    pub fn negated(&self) -> Self {
        TypeLDatum {
            x: self.x.iter().map(|e| e.negated()).collect(),
            ..self.clone()
        }
    }
}

/// Evaluates `κ = r · (Σ_{s} Σ_{ij} Y_i [A^s]_{ij} X_j) · q` down to
/// `cutoff`. The matrix sits at grading level exactly −1, so the `s`-th
/// summand contributes at level `ξ(r)+ξ(q)−s` and the sum is finite.
pub fn type_l_eval(d: &TypeLDatum, cutoff: &Rat) -> Result<NovikovTruncation> {
    let rank = d.rank();
    let offset = d.xi.eval(&d.r)? + d.xi.eval(&d.q)?;
    let steps_rat = (offset - cutoff).ceil().to_integer();
    let steps = i64::try_from(steps_rat).map_err(|_| Error::SearchExhausted(u64::MAX))?;
    if steps > MAX_SERIES_STEPS {
        return Err(Error::SearchExhausted(MAX_SERIES_STEPS as u64));
    }

    let mut total = LaurentElement::zero(rank);
    if steps >= 0 {
        let mut v = d.x.to_vec();
        total = dot(&d.y, &v)?;
        for _ in 1..=steps {
            v = d.a.apply(&v)?;
            total = total.add(&dot(&d.y, &v)?)?;
        }
    }
    let shift = d.r.checked_add(&d.q)?;
    let shifted = total.mul_monomial(&shift)?;
    NovikovTruncation::new(shifted, d.xi.clone(), cutoff.clone())
}

fn dot(y: &[LaurentElement], v: &[LaurentElement]) -> Result<LaurentElement> {
    let rank = y.first().map(|e| e.rank()).unwrap_or(0);
    let mut acc = LaurentElement::zero(rank);
    for (a, b) in y.iter().zip(v) {
        acc = acc.add(&a.mul(b)?)?;
    }
    Ok(acc)
}

/// Exact norms of the truncations `N_c` for `c = 0, −1, …, −depth`.
/// The element must be valid at least down to `−depth`.
pub fn growth_profile(a: &NovikovTruncation, depth: u32) -> Result<Vec<(Rat, Int)>> {
    let bottom = -crate::rat(depth as i64);
    if *a.cutoff() > bottom {
        return Err(Error::InsufficientDepth {
            requested: bottom.to_string(),
            cutoff: a.cutoff().to_string(),
        });
    }
    let mut out = Vec::with_capacity(depth as usize + 1);
    for k in 0..=depth {
        let c = -crate::rat(k as i64);
        out.push((c.clone(), a.norm_at(&c)?));
    }
    Ok(out)
}

/// Fits exponential-growth constants to a profile: the smallest `B ≥ 0`
/// read off consecutive ratios and the matching `A`, such that
/// `N_c ≤ A·e^{−cB}` holds at every profiled point (checked before
/// returning).
pub fn growth_fit(profile: &[(Rat, Int)]) -> Result<(f64, f64)> {
    if profile.is_empty() {
        return Err(Error::EmptyInput("growth profile".into()));
    }
    let points: Vec<(f64, f64)> = profile
        .iter()
        .map(|(c, n)| {
            (
                c.to_f64().expect("profile cutoffs are small rationals"),
                n.to_f64().unwrap_or(f64::MAX),
            )
        })
        .collect();

    let mut b: f64 = 0.0;
    for w in points.windows(2) {
        let (c0, n0) = w[0];
        let (c1, n1) = w[1];
        if n0 > 0.0 && n1 > 0.0 && c0 != c1 {
            // Slope of ln N between consecutive cutoffs (c0 > c1).
            let slope = (n1 / n0).ln() / (c0 - c1);
            if slope > b {
                b = slope;
            }
        }
    }

    let amp = |b: f64| -> f64 {
        points
            .iter()
            .map(|&(c, n)| n * (c * b).exp())
            .fold(0.0, f64::max)
    };
    let mut a = amp(b).max(0.0);
    // Guard the uniform bound against floating rounding at the argmax.
    for _ in 0..8 {
        if points.iter().all(|&(c, n)| n <= a * (-c * b).exp()) {
            return Ok((a, b));
        }
        a *= 1.0 + 4.0 * f64::EPSILON;
    }
    Ok((a, b))
}

/// The per-level bound `k ↦ (size·‖A‖)^k` on level sums of `Σ_s A^s`
/// entries, for a matrix over the level −1 part of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthBound {
    base: Int,
}

impl GrowthBound {
    pub fn base(&self) -> &Int {
        &self.base
    }

    pub fn at_level(&self, k: u32) -> Int {
        num_traits::pow::pow(self.base.clone(), k as usize)
    }
}

pub fn theoretical_growth_bound(a: &LaurentMatrix) -> GrowthBound {
    GrowthBound {
        base: Int::from(a.size()) * a.norm(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn ev(c: &[i64]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    fn elem(rank: usize, terms: &[(&[i64], i64)]) -> LaurentElement {
        LaurentElement::from_terms(rank, terms.iter().map(|(e, c)| (ev(e), int(*c)))).unwrap()
    }

    fn xi1() -> GradingForm {
        GradingForm::from_ints(&[1]).unwrap()
    }

    #[test]
    fn nv_mul_units() {
        let xi = xi1();
        let one = NovikovTruncation::one(xi.clone(), rat(-10)).unwrap();
        let p = one.mul(&one).unwrap();
        assert_eq!(p.terms(), &LaurentElement::one(1));
        assert_eq!(p.cutoff(), &rat(-10));
    }

    #[test]
    fn nv_mul_hand_product() {
        let xi = xi1();
        let a = NovikovTruncation::new(elem(1, &[(&[0], 1), (&[-1], 1)]), xi.clone(), rat(-5))
            .unwrap();
        let b = NovikovTruncation::new(elem(1, &[(&[0], 1), (&[-1], -1)]), xi.clone(), rat(-5))
            .unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.terms(), &elem(1, &[(&[0], 1), (&[-2], -1)]));
        assert_eq!(p.cutoff(), &rat(-5));
    }

    #[test]
    fn nv_mul_cutoff_formula() {
        let xi = xi1();
        // a: maxgrade 0, cutoff −5; b: maxgrade −1, cutoff −5 →
        // max(−5 + (−1), −5 + 0) = −5.
        let a = NovikovTruncation::new(elem(1, &[(&[0], 1)]), xi.clone(), rat(-5)).unwrap();
        let b = NovikovTruncation::new(elem(1, &[(&[-1], 2)]), xi.clone(), rat(-5)).unwrap();
        assert_eq!(a.mul(&b).unwrap().cutoff(), &rat(-5));
    }

    #[test]
    fn geometric_series_zero_matrix() {
        let xi = xi1();
        let a = LaurentMatrix::zero(1, 1);
        let u = geometric_series(&a, &xi, &rat(-7)).unwrap();
        assert_eq!(u[0][0].terms(), &LaurentElement::one(1));
    }

    #[test]
    fn geometric_series_single_variable() {
        let xi = xi1();
        let a = LaurentMatrix::from_rows(1, vec![vec![elem(1, &[(&[-1], 1)])]]).unwrap();
        let u = geometric_series(&a, &xi, &rat(-4)).unwrap();
        assert_eq!(
            u[0][0].terms(),
            &elem(1, &[(&[0], 1), (&[-1], 1), (&[-2], 1), (&[-3], 1), (&[-4], 1)])
        );
    }

    #[test]
    fn geometric_series_powers_of_two() {
        let xi = xi1();
        let a = LaurentMatrix::from_rows(1, vec![vec![elem(1, &[(&[-1], 2)])]]).unwrap();
        let u = geometric_series(&a, &xi, &rat(-3)).unwrap();
        assert_eq!(
            u[0][0].terms(),
            &elem(1, &[(&[0], 1), (&[-1], 2), (&[-2], 4), (&[-3], 8)])
        );
    }

    #[test]
    fn geometric_series_rejects_nonnegative_support() {
        let xi = xi1();
        let a = LaurentMatrix::from_rows(1, vec![vec![elem(1, &[(&[0], 1)])]]).unwrap();
        assert!(geometric_series(&a, &xi, &rat(-2)).is_err());
    }

    #[test]
    fn semilinear_power_examples() {
        // m = 2, ξ = (1,0), θ = t₁⁻¹, M = [[t₂]], x = [1].
        let xi = GradingForm::from_ints(&[1, 0]).unwrap();
        let theta = ev(&[-1, 0]);
        let m = SemilinearMatrix::new(
            LaurentMatrix::from_rows(2, vec![vec![elem(2, &[(&[0, 1], 1)])]]).unwrap(),
            theta,
            xi,
        )
        .unwrap();
        let x = vec![LaurentElement::one(2)];
        assert_eq!(semilinear_power(&m, &x, 0).unwrap(), x);
        let m1 = semilinear_power(&m, &x, 1).unwrap();
        assert_eq!(m1, vec![elem(2, &[(&[0, 1], 1)])]);
        let m2 = semilinear_power(&m, &x, 2).unwrap();
        assert_eq!(m2, vec![elem(2, &[(&[0, 2], 1)])]);
    }

    #[test]
    fn default_theta_is_canonical() {
        let xi = GradingForm::from_ints(&[1, 0]).unwrap();
        assert_eq!(default_theta(&xi).unwrap(), ev(&[-1, 0]));
        let xi = GradingForm::from_ints(&[2, 3]).unwrap();
        let theta = default_theta(&xi).unwrap();
        assert_eq!(xi.eval(&theta).unwrap(), rat(-1));
        assert_eq!(theta, ev(&[1, -1]));
        // Non-surjective integral form is rejected.
        let xi = GradingForm::from_ints(&[2, 4]).unwrap();
        assert!(default_theta(&xi).is_err());
    }

    #[test]
    fn type_l_trivial_datum() {
        // A = 0 is impossible at level −1 unless the matrix is the zero
        // matrix, which is supported nowhere, hence vacuously level −1.
        let xi = xi1();
        let d = TypeLDatum::new(
            ev(&[0]),
            ev(&[0]),
            LaurentMatrix::zero(1, 1),
            vec![LaurentElement::one(1)],
            vec![LaurentElement::one(1)],
            ev(&[-1]),
            xi,
        )
        .unwrap();
        let v = type_l_eval(&d, &rat(-6)).unwrap();
        assert_eq!(v.terms(), &LaurentElement::one(1));
    }

    #[test]
    fn type_l_geometric_case() {
        // m = 2, ξ = (1,0), A = [[t₁⁻¹]], X = Y = [1], r = q = 0.
        let xi = GradingForm::from_ints(&[1, 0]).unwrap();
        let d = TypeLDatum::new(
            ev(&[0, 0]),
            ev(&[0, 0]),
            LaurentMatrix::from_rows(2, vec![vec![elem(2, &[(&[-1, 0], 1)])]]).unwrap(),
            vec![LaurentElement::one(2)],
            vec![LaurentElement::one(2)],
            ev(&[-1, 0]),
            xi,
        )
        .unwrap();
        let v = type_l_eval(&d, &rat(-3)).unwrap();
        assert_eq!(
            v.terms(),
            &elem(
                2,
                &[(&[0, 0], 1), (&[-1, 0], 1), (&[-2, 0], 1), (&[-3, 0], 1)]
            )
        );
    }

    #[test]
    fn type_l_rejects_wrong_level() {
        let xi = xi1();
        assert!(TypeLDatum::new(
            ev(&[0]),
            ev(&[0]),
            LaurentMatrix::from_rows(1, vec![vec![elem(1, &[(&[0], 1)])]]).unwrap(),
            vec![LaurentElement::one(1)],
            vec![LaurentElement::one(1)],
            ev(&[-1]),
            xi,
        )
        .is_err());
    }

    #[test]
    fn growth_profile_of_unit() {
        let xi = xi1();
        let one = NovikovTruncation::one(xi, rat(-5)).unwrap();
        let prof = growth_profile(&one, 5).unwrap();
        assert!(prof.iter().all(|(_, n)| *n == int(1)));
        let (a, b) = growth_fit(&prof).unwrap();
        assert_eq!(b, 0.0);
        assert!((a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn growth_profile_geometric() {
        let xi = xi1();
        let terms = elem(1, &[(&[0], 1), (&[-1], 2), (&[-2], 4), (&[-3], 8)]);
        let t = NovikovTruncation::new(terms, xi, rat(-3)).unwrap();
        let prof = growth_profile(&t, 3).unwrap();
        let ns: Vec<Int> = prof.iter().map(|(_, n)| n.clone()).collect();
        assert_eq!(ns, vec![int(1), int(3), int(7), int(15)]);
        assert!(growth_profile(&t, 4).is_err(), "beyond validity");
    }

    #[test]
    fn growth_fit_pure_powers() {
        let prof: Vec<(Rat, Int)> = (0..=6)
            .map(|k| (rat(-k), Int::from(2i64.pow(k as u32))))
            .collect();
        let (a, b) = growth_fit(&prof).unwrap();
        assert!((b - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((a - 1.0).abs() < 1e-9);
        for (c, n) in &prof {
            let cf = c.to_f64().unwrap();
            assert!(n.to_f64().unwrap() <= a * (-cf * b).exp());
        }
    }

    #[test]
    fn growth_bound_examples() {
        let a = LaurentMatrix::from_rows(1, vec![vec![elem(1, &[(&[-1], 1)])]]).unwrap();
        let bound = theoretical_growth_bound(&a);
        assert_eq!(bound.at_level(7), int(1));
        let b2 = GrowthBound { base: int(2) };
        assert_eq!(b2.at_level(5), int(32));
        let z = theoretical_growth_bound(&LaurentMatrix::zero(2, 1));
        assert_eq!(z.at_level(0), int(1));
        assert_eq!(z.at_level(3), int(0));
    }

    #[test]
    fn truncation_soundness_against_deeper_run() {
        let xi = xi1();
        let a = LaurentMatrix::from_rows(
            1,
            vec![vec![elem(1, &[(&[-1], 1), (&[-2], -1)])]],
        )
        .unwrap();
        let shallow = geometric_series(&a, &xi, &rat(-4)).unwrap();
        let deep = geometric_series(&a, &xi, &rat(-9)).unwrap();
        let re = deep[0][0].truncate_to(&rat(-4)).unwrap();
        assert_eq!(re.terms(), shallow[0][0].terms());
    }
}
