//! JSON file formats for every value the CLI reads or writes.
//!
//! Elements serialize as term lists ordered lexicographically by
//! exponent, so identical values always produce identical bytes.
//! Coefficients are emitted as plain JSON integers of arbitrary
//! precision; rational scalars accept either an integer or a `"num/den"`
//! string and are always written in lowest terms.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundaryEntry, CriticalPoint, MorseSystem};
use crate::cones::{IntegralCone, ShiftedCone};
use crate::error::Error;
use crate::group_ring::{ExponentVector, GradingForm};
use crate::rationality::RationalPresentation;
use crate::series::{default_theta, NovikovTruncation, TypeLDatum};
use crate::{Int, LaurentElement, LaurentMatrix, Rat, Result};

fn parse_err(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {detail}"))
}

// ---------------------------------------------------------------------------
// Scalars

/// A rational in a file: integer literal or "num/den" string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatRepr {
    Number(serde_json::Number),
    Text(String),
}

pub fn rat_from_repr(r: &RatRepr) -> Result<Rat> {
    let s = match r {
        RatRepr::Number(n) => n.to_string(),
        RatRepr::Text(t) => t.trim().to_string(),
    };
    parse_rational(&s)
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = Int::from_str(num.trim()).map_err(|e| parse_err("rational numerator", e))?;
        let d = Int::from_str(den.trim()).map_err(|e| parse_err("rational denominator", e))?;
        if d == Int::from(0) {
            return Err(parse_err("rational", "zero denominator"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = Int::from_str(s).map_err(|e| parse_err("rational", e))?;
        Ok(Rat::from_integer(n))
    }
}

pub fn rat_to_repr(r: &Rat) -> RatRepr {
    RatRepr::Text(r.to_string())
}

fn int_to_number(i: &Int) -> serde_json::Number {
    serde_json::from_str(&i.to_string()).expect("an integer literal is a valid JSON number")
}

fn number_to_int(n: &serde_json::Number) -> Result<Int> {
    Int::from_str(&n.to_string()).map_err(|e| parse_err("integer coefficient", e))
}

// ---------------------------------------------------------------------------
// Laurent elements

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRepr {
    pub exp: Vec<i64>,
    pub coeff: serde_json::Number,
}

pub fn laurent_to_repr(e: &LaurentElement) -> Vec<TermRepr> {
    e.iter_terms()
        .map(|(exp, coeff)| TermRepr {
            exp: exp.coords().to_vec(),
            coeff: int_to_number(coeff),
        })
        .collect()
}

pub fn laurent_from_repr(rank: usize, terms: &[TermRepr]) -> Result<LaurentElement> {
    LaurentElement::from_terms(
        rank,
        terms
            .iter()
            .map(|t| Ok((ExponentVector::new(t.exp.clone()), number_to_int(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

// ---------------------------------------------------------------------------
// Grading forms

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradingFormRepr {
    pub weights: Vec<String>,
}

pub fn grading_to_repr(xi: &GradingForm) -> GradingFormRepr {
    GradingFormRepr {
        weights: xi.weights().iter().map(|w| w.to_string()).collect(),
    }
}

pub fn grading_from_repr(r: &GradingFormRepr) -> Result<GradingForm> {
    GradingForm::new(
        r.weights
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?,
    )
}

// ---------------------------------------------------------------------------
// Cones

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeRepr {
    pub generators: Vec<Vec<i64>>,
}

pub fn cone_to_repr(c: &IntegralCone) -> ConeRepr {
    ConeRepr {
        generators: c
            .generators()
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
    }
}

pub fn cone_from_repr(r: &ConeRepr) -> Result<IntegralCone> {
    let rank = r
        .generators
        .first()
        .ok_or_else(|| parse_err("cone", "no generators"))?
        .len();
    IntegralCone::new(
        rank,
        r.generators
            .iter()
            .map(|g| ExponentVector::new(g.clone()))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftedConeRepr {
    pub generators: Vec<Vec<i64>>,
    pub shift: Vec<i64>,
}

pub fn shifted_cone_to_repr(c: &ShiftedCone) -> ShiftedConeRepr {
    ShiftedConeRepr {
        generators: c
            .cone
            .generators()
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
        shift: c.shift.coords().to_vec(),
    }
}

pub fn shifted_cone_from_repr(r: &ShiftedConeRepr) -> Result<ShiftedCone> {
    let cone = cone_from_repr(&ConeRepr {
        generators: r.generators.clone(),
    })?;
    ShiftedCone::new(cone, ExponentVector::new(r.shift.clone()))
}

// ---------------------------------------------------------------------------
// Matrices over the group ring

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub size: usize,
    pub entries: Vec<Vec<Vec<TermRepr>>>,
}

pub fn matrix_to_repr(m: &LaurentMatrix) -> MatrixRepr {
    MatrixRepr {
        size: m.size(),
        entries: (0..m.size())
            .map(|i| {
                (0..m.size())
                    .map(|j| laurent_to_repr(m.entry(i, j)))
                    .collect()
            })
            .collect(),
    }
}

pub fn matrix_from_repr(rank: usize, r: &MatrixRepr) -> Result<LaurentMatrix> {
    if r.entries.len() != r.size {
        return Err(parse_err(
            "matrix",
            format!("expected {} rows, got {}", r.size, r.entries.len()),
        ));
    }
    let mut rows = Vec::with_capacity(r.size);
    for row in &r.entries {
        if row.len() != r.size {
            return Err(parse_err(
                "matrix",
                format!("expected {} columns, got {}", r.size, row.len()),
            ));
        }
        rows.push(
            row.iter()
                .map(|e| laurent_from_repr(rank, e))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    LaurentMatrix::from_rows(rank, rows)
}

// ---------------------------------------------------------------------------
// Novikov truncations (series files)

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub xi: GradingFormRepr,
    pub cutoff: RatRepr,
    pub terms: Vec<TermRepr>,
}

pub fn series_to_repr(t: &NovikovTruncation) -> SeriesRepr {
    SeriesRepr {
        xi: grading_to_repr(t.xi()),
        cutoff: rat_to_repr(t.cutoff()),
        terms: laurent_to_repr(t.terms()),
    }
}

pub fn series_from_repr(r: &SeriesRepr) -> Result<NovikovTruncation> {
    let xi = grading_from_repr(&r.xi)?;
    let cutoff = rat_from_repr(&r.cutoff)?;
    let terms = laurent_from_repr(xi.rank(), &r.terms)?;
    NovikovTruncation::new(terms, xi, cutoff)
}

// ---------------------------------------------------------------------------
// Type-(L) data

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeLDatumRepr {
    pub r: Vec<i64>,
    pub q: Vec<i64>,
    #[serde(rename = "A")]
    pub a: MatrixRepr,
    #[serde(rename = "X")]
    pub x: Vec<Vec<TermRepr>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<TermRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<GradingFormRepr>,
}

pub fn type_l_to_repr(d: &TypeLDatum) -> TypeLDatumRepr {
    TypeLDatumRepr {
        r: d.r().coords().to_vec(),
        q: d.q().coords().to_vec(),
        a: matrix_to_repr(d.matrix()),
        x: d.x().iter().map(laurent_to_repr).collect(),
        y: d.y().iter().map(laurent_to_repr).collect(),
        theta: Some(d.theta().coords().to_vec()),
        xi: Some(grading_to_repr(d.xi())),
    }
}

/// Builds a datum, taking ξ and θ from the file when present and from
/// `context` otherwise; a missing θ falls back to the canonical one.
pub fn type_l_from_repr(
    r: &TypeLDatumRepr,
    context: Option<(&GradingForm, &ExponentVector)>,
) -> Result<TypeLDatum> {
    let xi = match (&r.xi, context) {
        (Some(repr), _) => grading_from_repr(repr)?,
        (None, Some((xi, _))) => xi.clone(),
        (None, None) => return Err(parse_err("type-L datum", "missing xi")),
    };
    let theta = match (&r.theta, context) {
        (Some(t), _) => ExponentVector::new(t.clone()),
        (None, Some((_, theta))) => theta.clone(),
        (None, None) => default_theta(&xi)?,
    };
    let rank = xi.rank();
    TypeLDatum::new(
        ExponentVector::new(r.r.clone()),
        ExponentVector::new(r.q.clone()),
        matrix_from_repr(rank, &r.a)?,
        r.x.iter()
            .map(|e| laurent_from_repr(rank, e))
            .collect::<Result<Vec<_>>>()?,
        r.y.iter()
            .map(|e| laurent_from_repr(rank, e))
            .collect::<Result<Vec<_>>>()?,
        theta,
        xi,
    )
}

// ---------------------------------------------------------------------------
// Rational presentations

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalPresentationRepr {
    #[serde(rename = "P")]
    pub p: Vec<TermRepr>,
    #[serde(rename = "Q")]
    pub q: Vec<TermRepr>,
    pub shift: Vec<i64>,
}

pub fn rational_to_repr(rp: &RationalPresentation) -> RationalPresentationRepr {
    RationalPresentationRepr {
        p: laurent_to_repr(rp.numerator()),
        q: laurent_to_repr(rp.denominator()),
        shift: rp.shift().coords().to_vec(),
    }
}

pub fn rational_from_repr(rank: usize, r: &RationalPresentationRepr) -> Result<RationalPresentation> {
    Ok(RationalPresentation::from_parts(
        laurent_from_repr(rank, &r.p)?,
        laurent_from_repr(rank, &r.q)?,
        ExponentVector::new(r.shift.clone()),
    ))
}

// ---------------------------------------------------------------------------
// Morse systems

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRepr {
    pub name: String,
    pub index: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDatumRepr {
    Zero(String),
    Rational { rational: RationalPresentationRepr },
    TypeL(Box<TypeLDatumRepr>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryRepr {
    pub from: String,
    pub to: String,
    pub datum: EntryDatumRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorseSystemRepr {
    pub m: usize,
    pub xi: GradingFormRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
    pub points: Vec<PointRepr>,
    pub entries: Vec<EntryRepr>,
}

pub fn morse_system_to_repr(sys: &MorseSystem) -> MorseSystemRepr {
    MorseSystemRepr {
        m: sys.rank(),
        xi: grading_to_repr(sys.xi()),
        theta: Some(sys.theta().coords().to_vec()),
        points: sys
            .points()
            .iter()
            .map(|p| PointRepr {
                name: p.name.clone(),
                index: p.index,
            })
            .collect(),
        entries: sys
            .entries()
            .iter()
            .map(|((from, to), entry)| EntryRepr {
                from: from.clone(),
                to: to.clone(),
                datum: match entry {
                    BoundaryEntry::Zero => EntryDatumRepr::Zero("zero".into()),
                    BoundaryEntry::Rational(rp) => EntryDatumRepr::Rational {
                        rational: rational_to_repr(rp),
                    },
                    BoundaryEntry::TypeL(d) => {
                        let mut repr = type_l_to_repr(d);
                        // ξ and θ are carried once at system level.
                        repr.xi = None;
                        repr.theta = None;
                        EntryDatumRepr::TypeL(Box::new(repr))
                    }
                },
            })
            .collect(),
    }
}

pub fn morse_system_from_repr(r: &MorseSystemRepr) -> Result<MorseSystem> {
    let xi = grading_from_repr(&r.xi)?;
    let theta = match &r.theta {
        Some(t) => ExponentVector::new(t.clone()),
        None => default_theta(&xi)?,
    };
    let mut entries = BTreeMap::new();
    for e in &r.entries {
        let entry = match &e.datum {
            EntryDatumRepr::Zero(tag) => {
                if tag != "zero" {
                    return Err(parse_err("entry", format!("unknown datum tag {tag:?}")));
                }
                BoundaryEntry::Zero
            }
            EntryDatumRepr::Rational { rational } => {
                BoundaryEntry::Rational(rational_from_repr(r.m, rational)?)
            }
            EntryDatumRepr::TypeL(repr) => {
                BoundaryEntry::TypeL(type_l_from_repr(repr, Some((&xi, &theta)))?)
            }
        };
        if entries
            .insert((e.from.clone(), e.to.clone()), entry)
            .is_some()
        {
            return Err(parse_err(
                "entry",
                format!("duplicate boundary entry {}→{}", e.from, e.to),
            ));
        }
    }
    MorseSystem::new(
        r.m,
        xi,
        theta,
        r.points
            .iter()
            .map(|p| CriticalPoint {
                name: p.name.clone(),
                index: p.index,
            })
            .collect(),
        entries,
    )
}

// ---------------------------------------------------------------------------
// Whole-file helpers

pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| {
        Error::Parse(format!(
            "JSON error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialization of plain data cannot fail")
}
