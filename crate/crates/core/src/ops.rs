//! Built-in associative base operations on `[0, ∞]` and exact images of
//! range sets under them.
//!
//! Every built-in is commutative, non-decreasing and continuous in each
//! argument on its valid domain. A one-argument section `x ↦ F(x, y)` is a
//! short list of constant or increasing affine pieces, which makes images and
//! preimages exact.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::Side;
use crate::number::ExtRat;
use crate::range_set::{Interval, RangeSet};

/// Parameterised built-in operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum OpKind {
    Sum,
    Product,
    /// `α·x·y`
    ScaledProduct {
        alpha: ExtRat,
    },
    /// `x + y + β`
    ShiftedSum {
        beta: ExtRat,
    },
    Max,
    Min,
    /// `x + y − x·y` on `[0,1]²`
    ProbSum,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Sum => f.write_str("sum"),
            OpKind::Product => f.write_str("product"),
            OpKind::ScaledProduct { alpha } => write!(f, "scaled_product({alpha})"),
            OpKind::ShiftedSum { beta } => write!(f, "shifted_sum({beta})"),
            OpKind::Max => f.write_str("max"),
            OpKind::Min => f.write_str("min"),
            OpKind::ProbSum => f.write_str("prob_sum"),
        }
    }
}

/// One piece of a section `x ↦ F(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionMap {
    Const(ExtRat),
    /// `slope·x + offset` with `slope > 0`, sending `∞` to `∞`.
    Affine {
        slope: BigRational,
        offset: BigRational,
    },
}

impl SectionMap {
    fn apply(&self, x: &ExtRat) -> ExtRat {
        match (self, x) {
            (SectionMap::Const(v), _) => v.clone(),
            (SectionMap::Affine { .. }, ExtRat::Infinity) => ExtRat::Infinity,
            (SectionMap::Affine { slope, offset }, ExtRat::Finite(r)) => ExtRat::from(slope * r + offset),
        }
    }

    /// Preimage of `t` as a signed value (may fall below zero).
    fn invert(slope: &BigRational, offset: &BigRational, t: &BigRational) -> BigRational {
        (t - offset) / slope
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPiece {
    pub domain: Interval,
    pub map: SectionMap,
}

impl SectionPiece {
    fn image(&self, a: &RangeSet) -> RangeSet {
        let part = a.intersect(&RangeSet::from_intervals([self.domain.clone()]));
        if part.is_empty() {
            return RangeSet::empty();
        }
        match &self.map {
            SectionMap::Const(v) => RangeSet::point(v.clone()),
            SectionMap::Affine { .. } => RangeSet::from_intervals(part.components().iter().map(|c| {
                Interval::new(self.map.apply(&c.lo), self.map.apply(&c.hi), c.lo_closed, c.hi_closed)
                    .expect("increasing map keeps intervals non-empty")
            })),
        }
    }

    fn preimage(&self, target: &RangeSet) -> RangeSet {
        let dom = RangeSet::from_intervals([self.domain.clone()]);
        match &self.map {
            SectionMap::Const(v) => {
                if target.contains(v) {
                    dom
                } else {
                    RangeSet::empty()
                }
            }
            SectionMap::Affine { slope, offset } => {
                let parts = target.components().iter().filter_map(|c| {
                    let (lo, lo_closed) = match &c.lo {
                        ExtRat::Infinity => (ExtRat::Infinity, c.lo_closed),
                        ExtRat::Finite(t) => {
                            let x = SectionMap::invert(slope, offset, t);
                            if x.is_negative() {
                                (ExtRat::zero(), true)
                            } else {
                                (ExtRat::Finite(x), c.lo_closed)
                            }
                        }
                    };
                    let hi = match &c.hi {
                        ExtRat::Infinity => ExtRat::Infinity,
                        ExtRat::Finite(t) => {
                            let x = SectionMap::invert(slope, offset, t);
                            if x.is_negative() {
                                return None;
                            }
                            ExtRat::Finite(x)
                        }
                    };
                    Interval::new(lo, hi, lo_closed, c.hi_closed)
                });
                RangeSet::from_intervals(parts).intersect(&dom)
            }
        }
    }
}

/// A registered base operation with its declared properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocOp {
    #[serde(flatten)]
    kind: OpKind,
    commutative: bool,
    cancellative: bool,
    neutral: Option<ExtRat>,
    monotone: (bool, bool),
    valid_domain: String,
}

impl<'de> Deserialize<'de> for AssocOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let kind = OpKind::deserialize(d)?;
        AssocOp::new(kind).map_err(serde::de::Error::custom)
    }
}

impl AssocOp {
    /// Registers a built-in after spot-checking its declared laws on a 7³ grid.
    pub fn new(kind: OpKind) -> Result<Self> {
        let name = kind.to_string();
        let reg_err = |reason: String| Error::Registration {
            name: name.clone(),
            reason,
        };
        let neutral = match &kind {
            OpKind::Sum | OpKind::Max | OpKind::ProbSum => Some(ExtRat::zero()),
            OpKind::Product => Some(ExtRat::one()),
            OpKind::Min => Some(ExtRat::Infinity),
            OpKind::ScaledProduct { alpha } => {
                let a = alpha
                    .as_rational()
                    .filter(|a| a.is_positive())
                    .ok_or_else(|| reg_err("alpha must be a positive rational".into()))?;
                Some(ExtRat::from(a.recip()))
            }
            OpKind::ShiftedSum { beta } => {
                if beta.is_infinite() {
                    return Err(reg_err("beta must be finite".into()));
                }
                beta.is_zero().then(ExtRat::zero)
            }
        };
        let cancellative = matches!(
            kind,
            OpKind::Sum | OpKind::Product | OpKind::ScaledProduct { .. } | OpKind::ShiftedSum { .. }
        );
        let valid_domain = match kind {
            OpKind::ProbSum => "[0,1]^2",
            OpKind::Product | OpKind::ScaledProduct { .. } => "[0,inf]^2 without 0*inf",
            _ => "[0,inf]^2",
        }
        .to_string();
        let op = AssocOp {
            kind,
            commutative: true,
            cancellative,
            neutral,
            monotone: (true, true),
            valid_domain,
        };
        op.spot_check().map_err(reg_err)?;
        Ok(op)
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellative
    }

    pub fn neutral(&self) -> Option<&ExtRat> {
        self.neutral.as_ref()
    }

    pub fn is_monotone(&self) -> (bool, bool) {
        self.monotone
    }

    pub fn valid_domain(&self) -> &str {
        &self.valid_domain
    }

    fn witness_grid(&self) -> Vec<ExtRat> {
        let pts: &[(i64, i64)] = match self.kind {
            OpKind::ProbSum => &[(0, 1), (1, 8), (1, 4), (1, 2), (3, 4), (7, 8), (1, 1)],
            _ => &[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1), (2, 1)],
        };
        let mut v: Vec<ExtRat> = pts.iter().map(|&(n, d)| ExtRat::ratio(n, d).unwrap()).collect();
        if !matches!(self.kind, OpKind::ProbSum) {
            v.push(ExtRat::Infinity);
        }
        v
    }

    fn spot_check(&self) -> std::result::Result<(), String> {
        let grid = self.witness_grid();
        let eval = |x: &ExtRat, y: &ExtRat| self.f_eval(x, y).ok();
        for x in &grid {
            for y in &grid {
                let Some(xy) = eval(x, y) else { continue };
                if self.commutative && eval(y, x) != Some(xy.clone()) {
                    return Err(format!("not commutative at ({x}, {y})"));
                }
                if let Some(e) = &self.neutral {
                    if eval(x, e).as_ref() != Some(x) {
                        return Err(format!("{e} is not neutral at {x}"));
                    }
                }
                for z in &grid {
                    if let (Some(l), Some(r)) = (eval(&xy, z), eval(y, z).and_then(|yz| eval(x, &yz))) {
                        if l != r {
                            return Err(format!("not associative at ({x}, {y}, {z})"));
                        }
                    }
                    if let Some(xz) = eval(x, z) {
                        if y <= z && xy > xz {
                            return Err(format!("not monotone at ({x}, {y}, {z})"));
                        }
                        let escape = x.is_zero() || x.is_infinite();
                        if self.cancellative && xy == xz && y != z && !escape {
                            return Err(format!("not cancellative at ({x}, {y}, {z})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn outside(&self, x: &ExtRat, y: &ExtRat) -> Error {
        Error::OutsideValidDomain {
            op: self.name(),
            at: format!("({x}, {y})"),
        }
    }

    pub fn f_eval(&self, x: &ExtRat, y: &ExtRat) -> Result<ExtRat> {
        let wrap = |r: Result<ExtRat>| r.map_err(|_| self.outside(x, y));
        match &self.kind {
            OpKind::Sum => Ok(x.add(y)),
            OpKind::Product => wrap(x.mul(y)),
            OpKind::ScaledProduct { alpha } => wrap(x.mul(y).map(|p| p.scale(alpha.as_rational().unwrap()))),
            OpKind::ShiftedSum { beta } => Ok(x.add(y).add(beta)),
            OpKind::Max => Ok(x.max(y).clone()),
            OpKind::Min => Ok(x.min(y).clone()),
            OpKind::ProbSum => {
                let one = ExtRat::one();
                if *x > one || *y > one {
                    return Err(self.outside(x, y));
                }
                let (a, b) = (x.as_rational().unwrap(), y.as_rational().unwrap());
                Ok(ExtRat::from(a + b - a * b))
            }
        }
    }

    /// The section `x ↦ F(x, y)` (`Side::Left`) or `x ↦ F(y, x)` (`Side::Right`).
    /// All built-ins are commutative, so both sides coincide.
    pub fn section(&self, y: &ExtRat, _side: Side) -> Result<Vec<SectionPiece>> {
        let all = || Interval::closed(ExtRat::zero(), ExtRat::Infinity).unwrap();
        let positive = || Interval::new(ExtRat::zero(), ExtRat::Infinity, false, true).unwrap();
        let piece = |domain: Interval, map: SectionMap| SectionPiece { domain, map };
        let affine = |slope: BigRational, offset: BigRational| SectionMap::Affine { slope, offset };
        let scaled = |k: BigRational| -> Vec<SectionPiece> {
            match y {
                ExtRat::Infinity => vec![piece(positive(), SectionMap::Const(ExtRat::Infinity))],
                ExtRat::Finite(v) if v.is_zero() => vec![piece(all(), SectionMap::Const(ExtRat::zero()))],
                ExtRat::Finite(v) => vec![piece(all(), affine(v * k, BigRational::zero()))],
            }
        };
        Ok(match &self.kind {
            OpKind::Sum | OpKind::ShiftedSum { .. } => {
                let beta = match &self.kind {
                    OpKind::ShiftedSum { beta } => beta.as_rational().unwrap().clone(),
                    _ => BigRational::zero(),
                };
                match y {
                    ExtRat::Infinity => vec![piece(all(), SectionMap::Const(ExtRat::Infinity))],
                    ExtRat::Finite(v) => vec![piece(all(), affine(BigRational::one(), v + beta))],
                }
            }
            OpKind::Product => scaled(BigRational::one()),
            OpKind::ScaledProduct { alpha } => scaled(alpha.as_rational().unwrap().clone()),
            OpKind::Max => {
                if y.is_infinite() {
                    vec![piece(all(), SectionMap::Const(ExtRat::Infinity))]
                } else {
                    vec![
                        piece(
                            Interval::closed(ExtRat::zero(), y.clone()).unwrap(),
                            SectionMap::Const(y.clone()),
                        ),
                        piece(
                            Interval::new(y.clone(), ExtRat::Infinity, false, true).unwrap(),
                            affine(BigRational::one(), BigRational::zero()),
                        ),
                    ]
                }
            }
            OpKind::Min => {
                if y.is_zero() {
                    vec![piece(all(), SectionMap::Const(ExtRat::zero()))]
                } else {
                    vec![
                        piece(
                            Interval::new(ExtRat::zero(), y.clone(), true, false).unwrap(),
                            affine(BigRational::one(), BigRational::zero()),
                        ),
                        piece(
                            Interval::closed(y.clone(), ExtRat::Infinity).unwrap(),
                            SectionMap::Const(y.clone()),
                        ),
                    ]
                }
            }
            OpKind::ProbSum => {
                let unit = Interval::closed(ExtRat::zero(), ExtRat::one()).unwrap();
                match y.as_rational() {
                    Some(v) if *v > BigRational::one() => {
                        return Err(self.outside(&ExtRat::zero(), y));
                    }
                    None => return Err(self.outside(&ExtRat::zero(), y)),
                    Some(v) if v.is_one() => vec![piece(unit, SectionMap::Const(ExtRat::one()))],
                    Some(v) => vec![piece(unit, affine(BigRational::one() - v, v.clone()))],
                }
            }
        })
    }

    /// `{F(x, y) : x ∈ a}` for a fixed `y`.
    pub fn section_image(&self, a: &RangeSet, y: &ExtRat) -> Result<RangeSet> {
        if a.is_empty() {
            return Ok(RangeSet::empty());
        }
        self.check_args(a, &RangeSet::point(y.clone()))?;
        let pieces = self.section(y, Side::Left)?;
        Ok(pieces.iter().fold(RangeSet::empty(), |acc, p| acc.union(&p.image(a))))
    }

    /// `{x : F(x, y) ∈ target}` (`Side::Left`) or `{x : F(y, x) ∈ target}`.
    pub fn f_section_preimage(&self, y: &ExtRat, target: &RangeSet, side: Side) -> Result<RangeSet> {
        let pieces = self.section(y, side)?;
        Ok(pieces
            .iter()
            .fold(RangeSet::empty(), |acc, p| acc.union(&p.preimage(target))))
    }

    /// Rejects argument sets that leave the valid domain.
    fn check_args(&self, a: &RangeSet, b: &RangeSet) -> Result<()> {
        match self.kind {
            OpKind::ProbSum => {
                let unit = RangeSet::closed(ExtRat::zero(), ExtRat::one());
                for s in [a, b] {
                    if !s.is_subset(&unit) {
                        let bad = s.difference(&unit);
                        return Err(self.outside(&bad.extrema()?.inf, &ExtRat::zero()));
                    }
                }
            }
            OpKind::Product | OpKind::ScaledProduct { .. } => {
                let (zero, inf) = (ExtRat::zero(), ExtRat::Infinity);
                if a.contains(&zero) && b.contains(&inf) {
                    return Err(self.outside(&zero, &inf));
                }
                if a.contains(&inf) && b.contains(&zero) {
                    return Err(self.outside(&inf, &zero));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Whether `M × M` lies inside the valid domain.
    pub fn accepts(&self, m: &RangeSet) -> Result<()> {
        self.check_args(m, m)
    }

    /// `F(A, B) = {F(x, y) : x ∈ A, y ∈ B}`, exactly.
    pub fn f_image(&self, a: &RangeSet, b: &RangeSet) -> Result<RangeSet> {
        if a.is_empty() || b.is_empty() {
            return Ok(RangeSet::empty());
        }
        self.check_args(a, b)?;
        let (pa, ia) = split(a);
        let (pb, ib) = split(b);
        let mut parts: Vec<RangeSet> = Vec::new();
        for x in &pa {
            for y in &pb {
                parts.push(RangeSet::point(self.f_eval(x, y)?));
            }
        }
        let interiors_a = RangeSet::from_intervals(ia.iter().cloned());
        let interiors_b = RangeSet::from_intervals(ib.iter().cloned());
        for y in &pb {
            parts.push(self.section_image(&interiors_a, y)?);
        }
        for x in &pa {
            parts.push(self.section_image(&interiors_b, x)?);
        }
        for u in &ia {
            for v in &ib {
                let lo = self.f_eval(&u.lo, &v.lo)?;
                let hi = self.f_eval(&u.hi, &v.hi)?;
                parts.push(if lo == hi {
                    RangeSet::point(lo)
                } else {
                    RangeSet::interval(lo, hi, false, false)
                });
            }
        }
        Ok(parts.iter().fold(RangeSet::empty(), |acc, p| acc.union(p)))
    }

    /// The points `x₂` at which `s ↦ F(s, x₂)` is constant on `s_set`.
    pub fn flat_set(&self, s_set: &RangeSet) -> RangeSet {
        if s_set.is_empty() || s_set.is_single_point() {
            return RangeSet::full();
        }
        let (zero, inf) = (ExtRat::zero(), ExtRat::Infinity);
        match &self.kind {
            OpKind::Sum | OpKind::ShiftedSum { .. } => RangeSet::point(inf),
            OpKind::Product | OpKind::ScaledProduct { .. } => {
                let mut pts = Vec::new();
                if !s_set.contains(&inf) {
                    pts.push(zero.clone());
                }
                if !s_set.contains(&zero) {
                    pts.push(inf);
                }
                RangeSet::from_points(pts)
            }
            OpKind::Max => {
                let sup = s_set.extrema().unwrap().sup;
                RangeSet::closed(sup, inf)
            }
            OpKind::Min => {
                let lo = s_set.extrema().unwrap().inf;
                RangeSet::closed(zero, lo)
            }
            OpKind::ProbSum => RangeSet::point(ExtRat::one()),
        }
    }

    /// Whether the valid domain is the unit square rather than `[0,∞]²`.
    pub fn is_unit_bounded(&self) -> bool {
        matches!(self.kind, OpKind::ProbSum)
    }
}

/// Splits a set into its attained endpoints and the open interiors of its
/// non-degenerate components.
fn split(s: &RangeSet) -> (Vec<ExtRat>, Vec<Interval>) {
    let mut points = Vec::new();
    let mut interiors = Vec::new();
    for c in s.components() {
        if c.lo_closed {
            points.push(c.lo.clone());
        }
        if !c.is_point() {
            if c.hi_closed {
                points.push(c.hi.clone());
            }
            interiors.push(Interval::new(c.lo.clone(), c.hi.clone(), false, false).unwrap());
        }
    }
    (points, interiors)
}
