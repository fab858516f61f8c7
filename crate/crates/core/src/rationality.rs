//! Certified rational closed forms.
//!
//! The Cramer mechanism behind rationality: for a matrix `A` supported
//! strictly below grading zero, `Σ_s A^s = adj(1−A)/det(1−A)` with
//! `det(1−A)` of constant term exactly 1, hence invertible in the
//! completion. The closed form of a type-(L) element follows, expansion
//! turns a presentation back into a truncation, and `recognize` recovers
//! a presentation from a sufficiently deep truncation by exact
//! linear-recurrence detection along a θ-direction.

use num_traits::One;

use crate::error::Error;
use crate::group_ring::{ensure_rank, ExponentVector, GradingForm};
use crate::series::{type_l_eval, NovikovTruncation, TypeLDatum};
use crate::{Int, LaurentElement, LaurentMatrix, Rat, Result};

/// A certified rational closed form `t^shift · P · Q^{-1}` with
/// `Q = 1 + (terms of grading < 0)`, the localization-denominator shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPresentation {
    p: LaurentElement,
    q: LaurentElement,
    shift: ExponentVector,
}

impl RationalPresentation {
    /// Validates the denominator shape against a grading form.
    pub fn new(
        p: LaurentElement,
        q: LaurentElement,
        shift: ExponentVector,
        xi: &GradingForm,
    ) -> Result<Self> {
        let rp = RationalPresentation { p, q, shift };
        rp.validate(xi)?;
        Ok(rp)
    }

    /// Builds without validation (deserialization path); call
    /// [`RationalPresentation::validate`] before arithmetic use.
    pub fn from_parts(p: LaurentElement, q: LaurentElement, shift: ExponentVector) -> Self {
        RationalPresentation { p, q, shift }
    }

    pub fn validate(&self, xi: &GradingForm) -> Result<()> {
        ensure_rank(xi.rank(), self.p.rank())?;
        ensure_rank(xi.rank(), self.q.rank())?;
        ensure_rank(xi.rank(), self.shift.rank())?;
        if self.q.constant_term() != Int::one() {
            return Err(Error::SupportViolation(
                "denominator must have constant term 1".into(),
            ));
        }
        let rest = self.q.sub(&LaurentElement::one(self.q.rank()))?;
        if !rest.supported_strictly_below_zero(xi)? {
            return Err(Error::SupportViolation(
                "denominator minus 1 must be supported at ξ < 0".into(),
            ));
        }
        Ok(())
    }

    pub fn numerator(&self) -> &LaurentElement {
        &self.p
    }

    pub fn denominator(&self) -> &LaurentElement {
        &self.q
    }

    pub fn shift(&self) -> &ExponentVector {
        &self.shift
    }
}

/// Determinant by cofactor expansion for small sizes, Bareiss
/// fraction-free elimination above; both exact in the Laurent ring.
pub fn determinant(m: &LaurentMatrix) -> Result<LaurentElement> {
    let k = m.size();
    if k == 0 {
        return Ok(LaurentElement::one(m.rank()));
    }
    if k <= 4 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

fn det_cofactor(m: &LaurentMatrix) -> Result<LaurentElement> {
    let k = m.size();
    if k == 1 {
        return Ok(m.entry(0, 0).clone());
    }
    let mut acc = LaurentElement::zero(m.rank());
    for j in 0..k {
        if m.entry(0, j).is_zero() {
            continue;
        }
        let sub = minor(m, 0, j)?;
        let term = m.entry(0, j).mul(&det_cofactor(&sub)?)?;
        acc = if j % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

fn det_bareiss(m: &LaurentMatrix) -> Result<LaurentElement> {
    let k = m.size();
    let mut a: Vec<Vec<LaurentElement>> = (0..k)
        .map(|i| (0..k).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut sign_flip = false;
    let mut prev = LaurentElement::one(m.rank());
    for p in 0..k - 1 {
        if a[p][p].is_zero() {
            let Some(swap) = (p + 1..k).find(|&i| !a[i][p].is_zero()) else {
                return Ok(LaurentElement::zero(m.rank()));
            };
            a.swap(p, swap);
            sign_flip = !sign_flip;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = a[p][p].mul(&a[i][j])?.sub(&a[i][p].mul(&a[p][j])?)?;
                a[i][j] = num.exact_div(&prev)?.ok_or_else(|| {
                    Error::Internal("Bareiss division failed in an integral domain".into())
                })?;
            }
        }
        for i in p + 1..k {
            a[i][p] = LaurentElement::zero(m.rank());
        }
        prev = a[p][p].clone();
    }
    let det = a[k - 1][k - 1].clone();
    Ok(if sign_flip { det.negated() } else { det })
}

fn minor(m: &LaurentMatrix, row: usize, col: usize) -> Result<LaurentMatrix> {
    let k = m.size();
    let mut entries = Vec::with_capacity((k - 1) * (k - 1));
    for i in 0..k {
        if i == row {
            continue;
        }
        for j in 0..k {
            if j == col {
                continue;
            }
            entries.push(m.entry(i, j).clone());
        }
    }
    LaurentMatrix::new(k - 1, m.rank(), entries)
}

/// Adjugate of a square matrix over the Laurent ring.
pub fn adjugate(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    let k = m.size();
    if k == 1 {
        return Ok(LaurentMatrix::identity(1, m.rank()));
    }
    let mut out = LaurentMatrix::zero(k, m.rank());
    for i in 0..k {
        for j in 0..k {
            // adj[i][j] = (−1)^{i+j} · det(minor with row j, column i removed)
            let d = determinant(&minor(m, j, i)?)?;
            *out.entry_mut(i, j) = if (i + j) % 2 == 0 { d } else { d.negated() };
        }
    }
    Ok(out)
}

/// Adjugate and determinant of `1 − A` for a matrix supported at `ξ < 0`;
/// the identity `(1−A)·adj = det·1` is re-checked exactly before
/// returning, and `det` is certified to lie in the localizing set
/// (constant term 1, remainder strictly below grading zero).
pub fn adjugate_closed_form(
    a: &LaurentMatrix,
    xi: &GradingForm,
) -> Result<(LaurentMatrix, LaurentElement)> {
    ensure_rank(xi.rank(), a.rank())?;
    for e in a.entries() {
        if !e.supported_strictly_below_zero(xi)? {
            return Err(Error::SupportViolation(
                "closed form requires all matrix entries at ξ < 0".into(),
            ));
        }
    }
    let one_minus = LaurentMatrix::identity(a.size(), a.rank()).sub(a)?;
    let adj = adjugate(&one_minus)?;
    let det = determinant(&one_minus)?;

    let product = one_minus.mul(&adj)?;
    let expected = LaurentMatrix::identity(a.size(), a.rank()).scale_element(&det)?;
    if product != expected {
        return Err(Error::Internal("adjugate identity failed".into()));
    }
    if det.constant_term() != Int::one()
        || !det
            .sub(&LaurentElement::one(a.rank()))?
            .supported_strictly_below_zero(xi)?
    {
        return Err(Error::Internal(
            "determinant left the localizing set".into(),
        ));
    }
    Ok((adj, det))
}

/// Closed form of a type-(L) element: `P = Y·adj(1−A)·X`,
/// `Q = det(1−A)`, monomial shift `r + q`.
pub fn closed_form_type_l(d: &TypeLDatum) -> Result<RationalPresentation> {
    let (adj, det) = adjugate_closed_form(d.matrix(), d.xi())?;
    let applied = adj.apply(d.x())?;
    let mut p = LaurentElement::zero(d.rank() as usize);
    for (yi, vi) in d.y().iter().zip(&applied) {
        p = p.add(&yi.mul(vi)?)?;
    }
    let shift = d.r().checked_add(d.q())?;
    RationalPresentation::new(p, det, shift, d.xi())
}

/// Expands a presentation back into a truncation:
/// `t^shift · P · Σ_{s≤S} (1−Q)^s` with `S` chosen so that omitted powers
/// cannot reach the cutoff.
pub fn expand(
    rp: &RationalPresentation,
    xi: &GradingForm,
    cutoff: &Rat,
) -> Result<NovikovTruncation> {
    rp.validate(xi)?;
    let rank = xi.rank();
    if rp.p.is_zero() {
        return Ok(NovikovTruncation::zero(xi.clone(), cutoff.clone()));
    }
    let r = LaurentElement::one(rank).sub(&rp.q)?; // 1 − Q, supported at ξ < 0
    let shift_grade = xi.eval(&rp.shift)?;
    let inner_cutoff = cutoff - &shift_grade;
    let p_top = rp
        .p
        .max_grade(xi)?
        .expect("numerator is nonzero here");

    let mut total = rp.p.truncate_at(xi, &inner_cutoff)?;
    if !r.is_zero() {
        let delta = r.max_grade(xi)?.expect("nonzero");
        let steps_rat = ((&inner_cutoff - &p_top) / delta).ceil().to_integer();
        let steps = i64::try_from(steps_rat)
            .map_err(|_| Error::SearchExhausted(u64::MAX))?
            .max(0);
        if steps > 100_000 {
            return Err(Error::SearchExhausted(100_000));
        }
        let mut acc = total.clone();
        for _ in 1..=steps {
            acc = acc.mul(&r)?.truncate_at(xi, &inner_cutoff)?;
            if acc.is_zero() {
                break;
            }
            total = total.add(&acc)?;
        }
    }
    NovikovTruncation::new(total.mul_monomial(&rp.shift)?, xi.clone(), cutoff.clone())
}

/// Result of recurrence recognition: either a certified presentation or
/// an honest "no recurrence of the allowed order fits".
#[derive(Clone, Debug)]
pub enum Recognition {
    Found(RationalPresentation),
    NotFound,
}

/// Fractions over the Laurent domain, just enough for exact elimination.
#[derive(Clone, Debug)]
struct Frac {
    num: LaurentElement,
    den: LaurentElement,
}

impl Frac {
    fn from_elem(e: LaurentElement) -> Self {
        let den = LaurentElement::one(e.rank());
        Frac { num: e, den }
    }

    fn zero(rank: usize) -> Self {
        Frac {
            num: LaurentElement::zero(rank),
            den: LaurentElement::one(rank),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(mut self) -> Result<Self> {
        if self.num.is_zero() {
            self.den = LaurentElement::one(self.num.rank());
            return Ok(self);
        }
        if let Some(q) = self.num.exact_div(&self.den)? {
            return Ok(Frac::from_elem(q));
        }
        if let Some(q) = self.den.exact_div(&self.num)? {
            // num/den = 1/q
            self.den = q;
            self.num = LaurentElement::one(self.den.rank());
        }
        Ok(self)
    }

    fn sub_mul(&self, factor: &Frac, other: &Frac) -> Result<Frac> {
        // self − factor·other
        let num = self
            .num
            .mul(&factor.den)?
            .mul(&other.den)?
            .sub(&factor.num.mul(&other.num)?.mul(&self.den)?)?;
        let den = self.den.mul(&factor.den)?.mul(&other.den)?;
        Frac { num, den }.reduce()
    }

    fn div(&self, other: &Frac) -> Result<Frac> {
        if other.is_zero() {
            return Err(Error::Internal("division by zero fraction".into()));
        }
        Frac {
            num: self.num.mul(&other.den)?,
            den: self.den.mul(&other.num)?,
        }
        .reduce()
    }
}

/// Recovers a rational presentation from a truncation by detecting the
/// least-order linear recurrence (order ≤ `max_deg`) of its θ-coefficient
/// sequence over the fraction field of `Z[Ker ξ]`.
///
/// The recurrence is fitted on the deepest available coefficients — the
/// transient of a numerator of higher degree than the recurrence order
/// has died out there — and then verified against the whole window: the
/// product `Q·a` must vanish on a tail of length at least
/// `2·order + 2`. The denominator is accepted only when it clears to a
/// genuine element of the ring with constant term 1; otherwise the next
/// order is tried, and `NotFound` is the honest answer when none fits.
pub fn recognize(
    a: &NovikovTruncation,
    theta: &ExponentVector,
    max_deg: usize,
) -> Result<Recognition> {
    let xi = a.xi().clone();
    xi.ensure_integral_epimorphism()?;
    ensure_rank(xi.rank(), theta.rank())?;
    if xi.eval(theta)? != -crate::rat(1) {
        return Err(Error::SupportViolation(format!(
            "θ must satisfy ξ(θ) = −1, got {}",
            xi.eval(theta)?
        )));
    }
    let rank = xi.rank();

    if a.terms().is_zero() {
        let rp = RationalPresentation::new(
            LaurentElement::zero(rank),
            LaurentElement::one(rank),
            ExponentVector::zero(rank),
            &xi,
        )?;
        return Ok(Recognition::Found(rp));
    }

    // Regrade as a power series in θ: factor t^shift so levels are ≤ 0,
    // then read off c_k ∈ Z[Ker ξ] at each level −k.
    let top = a
        .terms()
        .max_grade(&xi)?
        .expect("nonzero element")
        .to_integer();
    let top_i64 = i64::try_from(top).map_err(|_| Error::SearchExhausted(u64::MAX))?;
    let shift_vec = theta.scaled(-top_i64);
    let b = a.terms().mul_monomial(&shift_vec.negated())?;
    let b_cutoff = a.cutoff() - crate::rat(top_i64);
    let levels = (-b_cutoff).floor().to_integer();
    let levels = i64::try_from(levels).map_err(|_| Error::SearchExhausted(u64::MAX))?;
    if levels < 0 {
        return Err(Error::InsufficientDepth {
            requested: "0".into(),
            cutoff: a.cutoff().to_string(),
        });
    }
    let l = levels as usize;
    if l + 1 < 2 * max_deg + 2 {
        return Err(Error::InsufficientDepth {
            requested: format!("{} series coefficients", 2 * max_deg + 2),
            cutoff: format!("only {} available", l + 1),
        });
    }

    let mut coeffs: Vec<LaurentElement> = Vec::with_capacity(l + 1);
    for k in 0..=l as i64 {
        let part = b.level_part(&xi, &(-crate::rat(k)))?;
        coeffs.push(part.mul_monomial(&theta.scaled(-k))?);
    }

    for order in 0..=max_deg {
        if let Some(q_coeffs) = fit_recurrence(&coeffs, order, rank)? {
            // Q = 1 − Σ q_i θ^i as an honest ring element.
            let mut q = LaurentElement::one(rank);
            for (i, qi) in q_coeffs.iter().enumerate() {
                q = q.sub(&qi.mul_monomial(&theta.scaled(i as i64 + 1))?)?;
            }
            // Global verification: Q·b must be polynomial with a dead tail.
            let prod = q.mul(&b)?;
            let mut top_nonzero: i64 = -1;
            let mut ok = true;
            for k in 0..=l as i64 {
                if !prod.level_part(&xi, &(-crate::rat(k)))?.is_zero() {
                    top_nonzero = k;
                }
            }
            if top_nonzero + 2 * order as i64 + 2 > l as i64 {
                ok = false;
            }
            if ok {
                let p = prod.truncate_at(&xi, &(-crate::rat(top_nonzero.max(0))))?;
                let rp = RationalPresentation::new(p, q, shift_vec, &xi)?;
                return Ok(Recognition::Found(rp));
            }
        }
    }
    Ok(Recognition::NotFound)
}

/// Solves for `q_1..q_order` on the deepest available window and clears
/// denominators; returns `None` when the system is inconsistent or the
/// cleared leading coefficient is not a unit of `Z[Ker ξ]`.
fn fit_recurrence(
    coeffs: &[LaurentElement],
    order: usize,
    rank: usize,
) -> Result<Option<Vec<LaurentElement>>> {
    if order == 0 {
        return Ok(Some(Vec::new()));
    }
    let l = coeffs.len() - 1;
    let window = order + 4;
    let start = (l + 1).saturating_sub(window).max(order);
    if start > l {
        return Ok(None);
    }

    // Rows: c_n = Σ_i q_i c_{n−i} for n = start..=l.
    let mut rows: Vec<Vec<Frac>> = Vec::new();
    for n in start..=l {
        let mut row: Vec<Frac> = (1..=order)
            .map(|i| Frac::from_elem(coeffs[n - i].clone()))
            .collect();
        row.push(Frac::from_elem(coeffs[n].clone()));
        rows.push(row);
    }

    // Exact Gauss elimination over the fraction field.
    let cols = order;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut used_rows: Vec<usize> = Vec::new();
    for col in 0..cols {
        let Some(pr) = (0..rows.len())
            .find(|r| !used_rows.contains(r) && !rows[*r][col].is_zero())
        else {
            continue;
        };
        used_rows.push(pr);
        pivot_of_col[col] = Some(pr);
        let pivot = rows[pr][col].clone();
        for r in 0..rows.len() {
            if r == pr || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].div(&pivot)?;
            for c in 0..=cols {
                rows[r][c] = rows[r][c].sub_mul(&factor, &rows[pr][c])?;
            }
        }
    }
    // Inconsistent system: a zero row with nonzero right-hand side.
    for (r, row) in rows.iter().enumerate() {
        if used_rows.contains(&r) {
            continue;
        }
        if row[..cols].iter().all(|f| f.is_zero()) && !row[cols].is_zero() {
            return Ok(None);
        }
    }

    // Particular solution with free unknowns at zero.
    let mut sol: Vec<Frac> = vec![Frac::zero(rank); cols];
    for col in 0..cols {
        if let Some(pr) = pivot_of_col[col] {
            sol[col] = rows[pr][cols].div(&rows[pr][col])?;
        }
    }

    // Clear to ring elements: require every solved fraction to reduce to
    // an honest element (unit denominator after reduction).
    let mut out = Vec::with_capacity(cols);
    for f in sol {
        let f = f.reduce()?;
        match f.num.exact_div(&f.den)? {
            Some(elem) => out.push(elem),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Convenience: evaluation agreement between a datum's closed form and
/// its direct series evaluation, used by tests and the CLI cross-check.
pub fn closed_form_matches_series(d: &TypeLDatum, cutoff: &Rat) -> Result<bool> {
    let rp = closed_form_type_l(d)?;
    let direct = type_l_eval(d, cutoff)?;
    let expanded = expand(&rp, d.xi(), cutoff)?;
    Ok(direct.terms() == expanded.terms())
}
