//! Exact sparse arithmetic in the Laurent group ring `Z[Z^m]`.
//!
//! Elements are finite integer combinations of monomials `t^g`, `g ∈ Z^m`,
//! stored as a sorted sparse map from exponent vectors to nonzero
//! coefficients. A grading form `ξ: Z^m → Q` with exact rational weights
//! measures the "height" of each monomial; truncation keeps the part of an
//! element at or above a rational cutoff, and the 1-norm of a truncation
//! is the quantity whose growth the rest of the library studies.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::scalar::Coeff;
use crate::{Int, Rat, Result};

/// A point of the lattice `Z^m`, the exponent of a monomial.
///
/// Comparison is coordinatewise; the derived `Ord` is lexicographic, which
/// fixes the deterministic term order used everywhere (storage, printing,
/// serialization).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    /// The `j`-th standard basis vector of `Z^m`.
    pub fn unit(rank: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[j] = 1;
        ExponentVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_rank(self.rank(), other.rank())?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        ensure_rank(self.rank(), other.rank())?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn negated(&self) -> Self {
        ExponentVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A linear form `ξ: Z^m → Q` given by exact rational weights.
///
/// Houses the main grading `ξ` as well as secondary forms (`η`, classes of
/// nearby 1-forms) that the cone machinery compares against it. The zero
/// form is rejected at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingForm {
    weights: Vec<Rat>,
}

impl GradingForm {
    pub fn new(weights: Vec<Rat>) -> Result<Self> {
        if weights.iter().all(|w| w.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(GradingForm { weights })
    }

    /// Form with integer weights; convenience for tests and built-ins.
    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        GradingForm::new(weights.iter().map(|&w| crate::rat(w)).collect())
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// Exact evaluation `ξ(g) = Σ ξ_i g_i`.
    pub fn eval(&self, g: &ExponentVector) -> Result<Rat> {
        ensure_rank(self.rank(), g.rank())?;
        let mut acc = Rat::zero();
        for (w, &c) in self.weights.iter().zip(g.coords()) {
            if c != 0 {
                acc += w * Rat::from_integer(Int::from(c));
            }
        }
        Ok(acc)
    }

    /// Evaluation on a rational vector (used by the cone layer).
    pub fn eval_rational(&self, v: &[Rat]) -> Result<Rat> {
        ensure_rank(self.rank(), v.len())?;
        let mut acc = Rat::zero();
        for (w, c) in self.weights.iter().zip(v) {
            acc += w * c;
        }
        Ok(acc)
    }

    /// Sup-norm of the weight vector (the norm dual to the `L1` norm on
    /// the lattice).
    pub fn sup_norm(&self) -> Rat {
        self.weights
            .iter()
            .map(|w| w.abs())
            .max()
            .expect("forms are nonempty")
    }

    /// True if every weight is an integer.
    pub fn is_integer_valued(&self) -> bool {
        self.weights.iter().all(|w| w.is_integer())
    }

    /// Integer weights, if the form is integer-valued.
    pub fn integer_weights(&self) -> Option<Vec<Int>> {
        if !self.is_integer_valued() {
            return None;
        }
        Some(self.weights.iter().map(|w| w.to_integer()).collect())
    }

    /// Checks that the form is an epimorphism onto `Z`: integer weights
    /// with gcd 1. Required wherever a level decomposition is used.
    pub fn ensure_integral_epimorphism(&self) -> Result<Vec<Int>> {
        let ws = self
            .integer_weights()
            .ok_or_else(|| Error::GradingNotIntegral(format!("{self}")))?;
        let mut g = Int::zero();
        for w in &ws {
            g = g.gcd(w);
        }
        if g != Int::from(1) {
            return Err(Error::GradingNotIntegral(format!("{self}")));
        }
        Ok(ws)
    }

    /// True if `self = c · other` for some rational `c < 0`.
    pub fn is_negative_multiple_of(&self, other: &GradingForm) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let mut factor: Option<Rat> = None;
        for (a, b) in self.weights.iter().zip(&other.weights) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let c = a / b;
                    match &factor {
                        None => factor = Some(c),
                        Some(f) if *f == c => {}
                        Some(_) => return false,
                    }
                }
            }
        }
        matches!(factor, Some(f) if f.is_negative())
    }
}

impl fmt::Display for GradingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// A sparse Laurent "polynomial": a finite combination of lattice
/// monomials with nonzero coefficients in the scalar `C`.
///
/// Zero coefficients are never stored; the ambient rank is kept explicitly
/// so that the zero element still knows where it lives.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent<C: Coeff> {
    rank: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero(rank: usize) -> Self {
        Laurent {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Laurent::monomial(ExponentVector::zero(rank), C::one())
    }

    /// The single-term element `c · t^g`; collapses to zero if `c = 0`.
    pub fn monomial(exp: ExponentVector, coeff: C) -> Self {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { rank, terms }
    }

    /// Builds an element from (exponent, coefficient) pairs, merging
    /// duplicates and dropping zeros. Errors on mixed ranks.
    pub fn from_terms<I>(rank: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut terms: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (exp, coeff) in iter {
            ensure_rank(rank, exp.rank())?;
            if coeff.is_zero() {
                continue;
            }
            match terms.entry(exp) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + coeff;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(Laurent { rank, terms })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&ExponentVector::zero(self.rank))
    }

    /// Support of the element as a list of lattice points.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_rank(self.rank, other.rank)?;
        let mut out = self.terms.clone();
        for (exp, coeff) in &other.terms {
            match out.entry(exp.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + coeff.clone();
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms: out,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        Laurent {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Laurent::zero(self.rank);
        }
        Laurent {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Convolution product: exponents add componentwise.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_rank(self.rank, other.rank)?;
        let mut terms: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.checked_add(eb)?;
                let prod = ca.clone() * cb.clone();
                match terms.entry(exp) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + prod;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms,
        })
    }

    /// Multiplication by a single monomial `t^g` (translation of support).
    pub fn mul_monomial(&self, g: &ExponentVector) -> Result<Self> {
        ensure_rank(self.rank, g.rank())?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.checked_add(g)?, c.clone());
        }
        Ok(Laurent {
            rank: self.rank,
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Laurent::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The norm `‖a‖ = Σ |n_g|` over the support.
    pub fn norm(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc = acc + c.abs();
        }
        acc
    }

    /// Largest grading value attained on the support, if nonempty.
    pub fn max_grade(&self, xi: &GradingForm) -> Result<Option<Rat>> {
        let mut best: Option<Rat> = None;
        for e in self.terms.keys() {
            let v = xi.eval(e)?;
            best = Some(match best {
                None => v,
                Some(b) => b.max(v),
            });
        }
        Ok(best)
    }

    /// Smallest grading value attained on the support, if nonempty.
    pub fn min_grade(&self, xi: &GradingForm) -> Result<Option<Rat>> {
        let mut best: Option<Rat> = None;
        for e in self.terms.keys() {
            let v = xi.eval(e)?;
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
        Ok(best)
    }

    /// The truncation `a[c]`: exactly the terms with `ξ(g) ≥ c`.
    pub fn truncate_at(&self, xi: &GradingForm, c: &Rat) -> Result<Self> {
        ensure_rank(self.rank, xi.rank())?;
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            if xi.eval(e)? >= *c {
                terms.insert(e.clone(), k.clone());
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms,
        })
    }

    /// The part of the element supported at the single grading value `v`.
    pub fn level_part(&self, xi: &GradingForm, v: &Rat) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            if xi.eval(e)? == *v {
                terms.insert(e.clone(), k.clone());
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms,
        })
    }

    /// `Σ_{ξ(g) = v} |n_g|`, the level mass at grading `v`.
    pub fn level_sum(&self, xi: &GradingForm, v: &Rat) -> Result<C> {
        Ok(self.level_part(xi, v)?.norm())
    }

    /// True if every support point satisfies `ξ(g) = v`.
    pub fn supported_at_level(&self, xi: &GradingForm, v: &Rat) -> Result<bool> {
        for e in self.terms.keys() {
            if xi.eval(e)? != *v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True if every support point satisfies `ξ(g) < 0`.
    pub fn supported_strictly_below_zero(&self, xi: &GradingForm) -> Result<bool> {
        for e in self.terms.keys() {
            if !xi.eval(e)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinatewise minimum over the support; meaningful only for
    /// nonzero elements.
    fn support_box_min(&self) -> ExponentVector {
        let mut min = self
            .terms
            .keys()
            .next()
            .expect("nonzero element")
            .coords()
            .to_vec();
        for e in self.terms.keys() {
            for (m, &c) in min.iter_mut().zip(e.coords()) {
                if c < *m {
                    *m = c;
                }
            }
        }
        ExponentVector::new(min)
    }

    /// Exact division: returns `q` with `self = q · d`, or `None` when no
    /// such element exists. Both operands are shifted into nonnegative
    /// exponents, where lexicographic leading-term elimination is a
    /// terminating division algorithm (monomial orders well-order `N^m`).
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        ensure_rank(self.rank, d.rank)?;
        if d.is_zero() {
            return Ok(if self.is_zero() {
                Some(Laurent::zero(self.rank))
            } else {
                None
            });
        }
        if self.is_zero() {
            return Ok(Some(Laurent::zero(self.rank)));
        }
        let self_min = self.support_box_min();
        let d_min = d.support_box_min();
        let mut rem = self.mul_monomial(&self_min.negated())?;
        let dd = d.mul_monomial(&d_min.negated())?;
        let (d_lead_exp, d_lead_coeff) = {
            let (e, c) = dd.terms.iter().next_back().expect("nonzero");
            (e.clone(), c.clone())
        };
        let mut quo = Laurent::zero(self.rank);
        while !rem.is_zero() {
            let (r_exp, r_coeff) = {
                let (e, c) = rem.terms.iter().next_back().expect("nonzero");
                (e.clone(), c.clone())
            };
            // The leading monomial must be divisible exponentwise and in
            // its coefficient, or no quotient exists.
            if r_exp
                .coords()
                .iter()
                .zip(d_lead_exp.coords())
                .any(|(r, d)| r < d)
            {
                return Ok(None);
            }
            let c = r_coeff.clone() / d_lead_coeff.clone();
            if c.is_zero() || c.clone() * d_lead_coeff.clone() != r_coeff {
                return Ok(None);
            }
            let t = Laurent::monomial(r_exp.checked_sub(&d_lead_exp)?, c);
            rem = rem.sub(&t.mul(&dd)?)?;
            quo = quo.add(&t)?;
        }
        Ok(Some(quo.mul_monomial(&self_min.checked_sub(&d_min)?)?))
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints `m = 1` elements as polynomials in `t`, higher ranks with
/// variables `t1, …, tm`; terms appear in descending exponent order so
/// that series read from the constant term downward.
impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = C::one();
        let minus_one = -C::one();
        for (i, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let mut vars = String::new();
            for (j, &e) in exp.coords().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                if self.rank == 1 {
                    vars.push('t');
                } else {
                    vars.push_str(&format!("t{}", j + 1));
                }
                if e != 1 {
                    vars.push_str(&format!("^{e}"));
                }
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if *coeff == one || *coeff == minus_one {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}*{vars}")?;
            }
        }
        Ok(())
    }
}

/// A square matrix over the Laurent ring, used for transfer matrices and
/// adjugate computations. All entries share one ambient rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSquareMatrix<C: Coeff> {
    size: usize,
    rank: usize,
    entries: Vec<Laurent<C>>,
}

impl<C: Coeff> LaurentSquareMatrix<C> {
    pub fn new(size: usize, rank: usize, entries: Vec<Laurent<C>>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::MatrixShape(format!(
                "expected {}x{} = {} entries, got {}",
                size,
                size,
                size * size,
                entries.len()
            )));
        }
        for e in &entries {
            ensure_rank(rank, e.rank())?;
        }
        Ok(LaurentSquareMatrix {
            size,
            rank,
            entries,
        })
    }

    pub fn from_rows(rank: usize, rows: Vec<Vec<Laurent<C>>>) -> Result<Self> {
        let size = rows.len();
        for row in &rows {
            if row.len() != size {
                return Err(Error::MatrixShape(format!(
                    "row of length {} in a {}x{} matrix",
                    row.len(),
                    size,
                    size
                )));
            }
        }
        LaurentSquareMatrix::new(size, rank, rows.into_iter().flatten().collect())
    }

    pub fn zero(size: usize, rank: usize) -> Self {
        LaurentSquareMatrix {
            size,
            rank,
            entries: vec![Laurent::zero(rank); size * size],
        }
    }

    pub fn identity(size: usize, rank: usize) -> Self {
        let mut m = LaurentSquareMatrix::zero(size, rank);
        for i in 0..size {
            *m.entry_mut(i, i) = Laurent::one(rank);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &Laurent<C> {
        &self.entries[i * self.size + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Laurent<C> {
        &mut self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[Laurent<C>] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::MatrixShape(format!(
                "{} vs {}",
                self.size, other.size
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        LaurentSquareMatrix::new(self.size, self.rank, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        LaurentSquareMatrix {
            size: self.size,
            rank: self.rank,
            entries: self.entries.iter().map(|e| e.negated()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::MatrixShape(format!(
                "{} vs {}",
                self.size, other.size
            )));
        }
        let mut out = LaurentSquareMatrix::zero(self.size, self.rank);
        for i in 0..self.size {
            for j in 0..self.size {
                let mut acc = Laurent::zero(self.rank);
                for l in 0..self.size {
                    acc = acc.add(&self.entry(i, l).mul(other.entry(l, j))?)?;
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix–vector product `M·x`.
    pub fn apply(&self, x: &[Laurent<C>]) -> Result<Vec<Laurent<C>>> {
        if x.len() != self.size {
            return Err(Error::MatrixShape(format!(
                "vector of length {} against size {}",
                x.len(),
                self.size
            )));
        }
        let mut out = Vec::with_capacity(self.size);
        for i in 0..self.size {
            let mut acc = Laurent::zero(self.rank);
            for j in 0..self.size {
                acc = acc.add(&self.entry(i, j).mul(&x[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Entrywise scale by a ring element.
    pub fn scale_element(&self, c: &Laurent<C>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(c))
            .collect::<Result<_>>()?;
        LaurentSquareMatrix::new(self.size, self.rank, entries)
    }

    /// `max_ij ‖a_ij‖`, the matrix norm of the growth estimates.
    pub fn norm(&self) -> C {
        let mut best = C::zero();
        for e in &self.entries {
            let n = e.norm();
            if n > best {
                best = n;
            }
        }
        best
    }
}

pub(crate) fn ensure_rank(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::RankMismatch { expected, got });
    }
    Ok(())
}
