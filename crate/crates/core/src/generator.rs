//! Piecewise monotone generators `f: [0,1] → [0,∞]`.
//!
//! Each piece is a constant, an affine map or a Möbius map on an interval of
//! `[0,1]`. Everything a generator answers (values, one-sided limits, range,
//! pseudo-inverse, level sets) is computed from the closed forms.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{format_signed, signed_serde, ExtRat};
use crate::range_set::{Interval, RangeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceExpr {
    Constant {
        c: ExtRat,
    },
    /// `a·x + b`
    Affine {
        #[serde(with = "signed_serde")]
        a: BigRational,
        #[serde(with = "signed_serde")]
        b: BigRational,
    },
    /// `(a·x + b) / (c·x + d)`
    Mobius {
        #[serde(with = "signed_serde")]
        a: BigRational,
        #[serde(with = "signed_serde")]
        b: BigRational,
        #[serde(with = "signed_serde")]
        c: BigRational,
        #[serde(with = "signed_serde")]
        d: BigRational,
    },
}

impl PieceExpr {
    /// Signed value of the formula at `x`; `None` at a pole.
    fn signed_value(&self, x: &BigRational) -> Option<BigRational> {
        match self {
            PieceExpr::Constant { c } => c.as_rational().cloned(),
            PieceExpr::Affine { a, b } => Some(a * x + b),
            PieceExpr::Mobius { a, b, c, d } => {
                let den = c * x + d;
                if den.is_zero() {
                    None
                } else {
                    Some((a * x + b) / den)
                }
            }
        }
    }

    /// Value (or limit) of the formula at a point of the piece's closure.
    fn value(&self, x: &BigRational) -> ExtRat {
        match self.signed_value(x) {
            Some(v) => ExtRat::from(v),
            None => ExtRat::Infinity,
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            PieceExpr::Constant { .. } => true,
            PieceExpr::Affine { a, .. } => a.is_zero(),
            PieceExpr::Mobius { a, b, c, d } => (a * d - b * c).is_zero(),
        }
    }

    /// The unique `x` with formula value `y`, for a strictly increasing formula.
    fn solve(&self, y: &BigRational) -> Option<BigRational> {
        match self {
            PieceExpr::Constant { .. } => None,
            PieceExpr::Affine { a, b } => (!a.is_zero()).then(|| (y - b) / a),
            PieceExpr::Mobius { a, b, c, d } => {
                let den = a - y * c;
                (!den.is_zero()).then(|| (y * d - b) / den)
            }
        }
    }

    fn pole(&self) -> Option<BigRational> {
        match self {
            PieceExpr::Mobius { c, d, .. } if !c.is_zero() => Some(-d / c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub domain: Interval,
    pub expr: PieceExpr,
}

impl Piece {
    fn lo(&self) -> &BigRational {
        self.domain.lo.as_rational().expect("validated finite")
    }

    fn hi(&self) -> &BigRational {
        self.domain.hi.as_rational().expect("validated finite")
    }

    /// Infimum of the piece's values: the formula's limit at the left end.
    fn low_value(&self) -> ExtRat {
        self.expr.value(self.lo())
    }

    /// Supremum of the piece's values: the formula's limit at the right end.
    fn high_value(&self) -> ExtRat {
        self.expr.value(self.hi())
    }

    fn image(&self) -> RangeSet {
        if self.expr.is_constant() || self.domain.is_point() {
            return RangeSet::point(self.low_value());
        }
        RangeSet::interval(
            self.low_value(),
            self.high_value(),
            self.domain.lo_closed,
            self.domain.hi_closed,
        )
    }

    /// `sup {x in domain : f(x) < y}`, or `None` when that set is empty.
    fn sup_below(&self, y: &ExtRat) -> Option<BigRational> {
        if self.low_value() >= *y {
            return None;
        }
        if self.expr.is_constant() || self.domain.is_point() || y.is_infinite() {
            return Some(self.hi().clone());
        }
        if self.high_value() < *y {
            return Some(self.hi().clone());
        }
        self.expr.solve(y.as_rational().expect("finite"))
    }

    /// `{x in domain : f(x) = v}`.
    fn level_set(&self, v: &ExtRat) -> RangeSet {
        if self.expr.is_constant() || self.domain.is_point() {
            return if self.low_value() == *v {
                RangeSet::from_intervals([self.domain.clone()])
            } else {
                RangeSet::empty()
            };
        }
        let x = match v.as_rational() {
            Some(r) => self.expr.solve(r),
            None => self.expr.pole(),
        };
        match x {
            Some(x) => {
                let x = ExtRat::Finite(x);
                if self.domain.contains(&x) && self.expr.value(x.as_rational().unwrap()) == *v {
                    RangeSet::point(x)
                } else {
                    RangeSet::empty()
                }
            }
            None => RangeSet::empty(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Outcome of the admissible-class test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFCertificate {
    pub member: bool,
    /// Least violating point, when not a member.
    pub witness: Option<ExtRat>,
    pub reason: Option<String>,
    /// Breakpoints that were checked; interior points of pieces satisfy the
    /// condition automatically because each formula is continuous.
    pub checked: Vec<ExtRat>,
    /// Whether the condition also holds at `x = 1` under `f(1+) = ∞`. Not part
    /// of membership; reported separately.
    pub right_end_clause: bool,
}

/// A validated piecewise generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "GeneratorDoc")]
pub struct Generator {
    pieces: Vec<Piece>,
    range: RangeSet,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub pieces: Vec<Piece>,
}

impl From<Generator> for GeneratorDoc {
    fn from(g: Generator) -> Self {
        GeneratorDoc { pieces: g.pieces }
    }
}

impl TryFrom<GeneratorDoc> for Generator {
    type Error = Error;

    fn try_from(doc: GeneratorDoc) -> Result<Self> {
        Generator::new(doc.pieces)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GeneratorDoc::deserialize(d)?;
        Generator::try_from(doc).map_err(serde::de::Error::custom)
    }
}

impl Generator {
    /// Validates coverage of `[0,1]`, per-piece well-formedness and global
    /// monotonicity. Pieces may be given in any order.
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::validation("pieces", "at least one piece is required"));
        }
        for (i, p) in pieces.iter().enumerate() {
            check_piece(i, p)?;
        }
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&pieces[i].domain, &pieces[j].domain);
            a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed))
        });
        check_coverage(&pieces, &order)?;
        for w in order.windows(2) {
            let (p, q) = (&pieces[w[0]], &pieces[w[1]]);
            let (before, after) = (p.high_value(), q.low_value());
            if before > after {
                return Err(Error::validation(
                    format!("pieces[{}]", w[1]),
                    format!("value drops from {before} to {after} at x = {}", q.domain.lo),
                ));
            }
        }
        let mut sorted = Vec::with_capacity(pieces.len());
        for &i in &order {
            sorted.push(std::mem::replace(
                &mut pieces[i],
                Piece {
                    domain: Interval::point(ExtRat::zero()),
                    expr: PieceExpr::Constant { c: ExtRat::zero() },
                },
            ));
        }
        let range = sorted.iter().fold(RangeSet::empty(), |acc, p| acc.union(&p.image()));
        Ok(Generator { pieces: sorted, range })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn piece_at(&self, x: &ExtRat) -> Result<&Piece> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .ok_or_else(|| Error::Domain(x.to_string()))
    }

    pub fn eval(&self, x: &ExtRat) -> Result<ExtRat> {
        let p = self.piece_at(x)?;
        Ok(p.expr.value(x.as_rational().expect("points of [0,1] are finite")))
    }

    pub fn f0(&self) -> ExtRat {
        self.eval(&ExtRat::zero()).expect("0 is covered")
    }

    pub fn f1(&self) -> ExtRat {
        self.eval(&ExtRat::one()).expect("1 is covered")
    }

    /// One-sided limit, with `f(0-) = 0` and `f(1+) = ∞`.
    pub fn side_limit(&self, x: &ExtRat, side: Side) -> Result<ExtRat> {
        if *x > ExtRat::one() {
            return Err(Error::Domain(x.to_string()));
        }
        let r = x.as_rational().expect("finite");
        let piece = match side {
            Side::Left if x.is_zero() => return Ok(ExtRat::zero()),
            Side::Right if *x == ExtRat::one() => return Ok(ExtRat::Infinity),
            Side::Left => self.pieces.iter().find(|p| p.domain.lo < *x && *x <= p.domain.hi),
            Side::Right => self.pieces.iter().find(|p| p.domain.lo <= *x && *x < p.domain.hi),
        };
        let piece = piece.ok_or_else(|| Error::Internal(format!("no piece next to {x}")))?;
        Ok(piece.expr.value(r))
    }

    /// `Ran(f)`.
    pub fn range(&self) -> &RangeSet {
        &self.range
    }

    /// `f⁻¹(y) = sup {x : f(x) < y}` with `sup ∅ = 0`.
    pub fn pseudo_inverse(&self, y: &ExtRat) -> ExtRat {
        // f is non-decreasing, so the last piece with a non-empty sub-level set decides.
        for p in self.pieces.iter().rev() {
            if let Some(s) = p.sup_below(y) {
                return ExtRat::Finite(s);
            }
        }
        ExtRat::zero()
    }

    /// Distinct piece endpoints in increasing order.
    pub fn breakpoints(&self) -> Vec<ExtRat> {
        let mut pts: Vec<ExtRat> = self
            .pieces
            .iter()
            .flat_map(|p| [p.domain.lo.clone(), p.domain.hi.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// `{x ∈ [0,1] : f(x) = v}`.
    pub fn level_set(&self, v: &ExtRat) -> RangeSet {
        self.pieces
            .iter()
            .fold(RangeSet::empty(), |acc, p| acc.union(&p.level_set(v)))
    }

    /// Whether `f` is constant on some `[x₀, x₀ + ε]` with value `v`.
    pub fn is_plateau_value(&self, v: &ExtRat) -> bool {
        self.level_set(v).components().iter().any(|c| !c.is_point())
    }

    /// No other point shares `f(x)`.
    pub fn injective_at(&self, x: &ExtRat) -> Result<bool> {
        let v = self.eval(x)?;
        Ok(self.level_set(&v) == RangeSet::point(x.clone()))
    }

    fn clause_holds(&self, x: &ExtRat) -> Result<Option<String>> {
        let fx = self.eval(x)?;
        let fxp = self.side_limit(x, Side::Right)?;
        if self.range.contains(&fxp) {
            if fx != fxp {
                return Ok(Some(format!("f({x}+) = {fxp} is attained but f({x}) = {fx}")));
            }
        } else if !self.injective_at(x)? {
            return Ok(Some(format!(
                "f({x}+) = {fxp} is not attained and f({x}) = {fx} is shared with other points"
            )));
        }
        Ok(None)
    }

    /// Tests the admissible-class condition at every point of `[0, 1)`.
    pub fn class_f_membership(&self) -> ClassFCertificate {
        let one = ExtRat::one();
        let checked: Vec<ExtRat> = self.breakpoints().into_iter().filter(|x| *x < one).collect();
        let mut cert = ClassFCertificate {
            member: true,
            witness: None,
            reason: None,
            checked: checked.clone(),
            right_end_clause: matches!(self.clause_holds(&one), Ok(None)),
        };
        for x in checked {
            if let Ok(Some(reason)) = self.clause_holds(&x) {
                cert.member = false;
                cert.witness = Some(x);
                cert.reason = Some(reason);
                break;
            }
        }
        cert
    }

    /// Membership in `B = N ∪ J`: either `f(x)` is not a plateau value, or
    /// `x` is the least point of its plateau.
    pub fn in_b(&self, x: &ExtRat) -> Result<bool> {
        Ok(self.b_witness(x)? == *x)
    }

    /// The representative in `B` sharing the value `f(x)`.
    pub fn b_witness(&self, x: &ExtRat) -> Result<ExtRat> {
        let v = self.eval(x)?;
        if !self.is_plateau_value(&v) {
            return Ok(x.clone());
        }
        let e = self.level_set(&v).extrema()?;
        if e.inf_attained {
            Ok(e.inf)
        } else {
            Err(Error::NotInClassF(format!("the level set of {v} has no least element")))
        }
    }
}

fn check_piece(i: usize, p: &Piece) -> Result<()> {
    let path = |field: &str| format!("pieces[{i}].{field}");
    let d = &p.domain;
    let (Some(lo), Some(hi)) = (d.lo.as_rational(), d.hi.as_rational()) else {
        return Err(Error::validation(path("domain"), "endpoints must lie in [0, 1]"));
    };
    if d.hi > ExtRat::one() {
        return Err(Error::validation(path("domain"), "endpoints must lie in [0, 1]"));
    }
    if Interval::new(d.lo.clone(), d.hi.clone(), d.lo_closed, d.hi_closed).is_none() {
        return Err(Error::validation(path("domain"), format!("empty domain {d}")));
    }
    let bad = |msg: String| Err(Error::validation(path("expr"), msg));
    match &p.expr {
        PieceExpr::Constant { .. } => Ok(()),
        PieceExpr::Affine { a, b } => {
            if a.is_negative() {
                return bad("decreasing affine piece".into());
            }
            if (a * lo + b).is_negative() {
                return bad(format!("negative value at x = {}", d.lo));
            }
            Ok(())
        }
        PieceExpr::Mobius { a, b, c, d: dd } => {
            if c.is_zero() && dd.is_zero() {
                return bad("denominator is identically zero".into());
            }
            let det = a * dd - b * c;
            if det.is_negative() {
                return bad("decreasing Möbius piece".into());
            }
            if let Some(pole) = p.expr.pole() {
                let at_hi = pole == *hi && lo < hi;
                if !at_hi && pole >= *lo && pole <= *hi {
                    return bad(format!("pole at {} inside the domain", format_signed(&pole)));
                }
                if at_hi && det.is_zero() {
                    return bad("removable pole at the right end".into());
                }
            }
            match p.expr.signed_value(lo) {
                Some(v) if v.is_negative() => bad(format!("negative value at x = {}", d.lo)),
                _ => Ok(()),
            }
        }
    }
}

fn check_coverage(pieces: &[Piece], order: &[usize]) -> Result<()> {
    let first = &pieces[order[0]].domain;
    if !(first.lo.is_zero() && first.lo_closed) {
        return Err(Error::validation("pieces", "point 0 is not covered"));
    }
    for w in order.windows(2) {
        let (p, q) = (&pieces[w[0]].domain, &pieces[w[1]].domain);
        let path = format!("pieces[{}].domain", w[1]);
        if q.lo < p.hi || (q.lo == p.hi && p.hi_closed && q.lo_closed) {
            return Err(Error::validation(path, format!("overlaps {p} near {}", q.lo)));
        }
        if q.lo > p.hi {
            return Err(Error::validation(
                path,
                format!("points between {} and {} are not covered", p.hi, q.lo),
            ));
        }
        if !p.hi_closed && !q.lo_closed {
            return Err(Error::validation(path, format!("point {} is not covered", q.lo)));
        }
    }
    let last = &pieces[*order.last().unwrap()].domain;
    if !(last.hi == ExtRat::one() && last.hi_closed) {
        return Err(Error::validation("pieces", "point 1 is not covered"));
    }
    Ok(())
}

/// Compact constructors for tests and fixtures.
pub mod build {
    use super::*;
    use crate::number::parse_signed;

    fn q(s: &str) -> ExtRat {
        s.parse().expect("valid rational")
    }

    fn r(s: &str) -> BigRational {
        parse_signed(s).expect("valid rational")
    }

    /// Domain from text such as `"[0,1/2)"` or `"{7/8}"`.
    pub fn dom(s: &str) -> Interval {
        let set: RangeSet = s.parse().expect("valid interval");
        set.components()[0].clone()
    }

    pub fn constant(domain: &str, c: &str) -> Piece {
        Piece {
            domain: dom(domain),
            expr: PieceExpr::Constant { c: q(c) },
        }
    }

    pub fn affine(domain: &str, a: &str, b: &str) -> Piece {
        Piece {
            domain: dom(domain),
            expr: PieceExpr::Affine { a: r(a), b: r(b) },
        }
    }

    pub fn mobius(domain: &str, a: &str, b: &str, c: &str, d: &str) -> Piece {
        Piece {
            domain: dom(domain),
            expr: PieceExpr::Mobius {
                a: r(a),
                b: r(b),
                c: r(c),
                d: r(d),
            },
        }
    }

    pub fn identity() -> Generator {
        Generator::new(vec![affine("[0,1]", "1", "0")]).unwrap()
    }
}
