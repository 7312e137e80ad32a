//! Finite unions of intervals and points of `[0, ∞]` in canonical form.
//!
//! All binary operations go through one sweep: collect every endpoint of
//! both operands, decide membership at each endpoint and on each open cell
//! between neighbours, then rebuild maximal runs. The rebuilt sequence is
//! the canonical form, so structural equality is set equality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::number::ExtRat;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: ExtRat,
    pub hi: ExtRat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// Returns `None` for an empty interval such as `(a, a]` or `(b, a)` with `a < b`.
    pub fn new(lo: ExtRat, hi: ExtRat, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        if lo < hi || (lo == hi && lo_closed && hi_closed) {
            Some(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            })
        } else {
            None
        }
    }

    pub fn point(x: ExtRat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn closed(lo: ExtRat, hi: ExtRat) -> Option<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &ExtRat) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Infimum and supremum with attainment flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub inf: ExtRat,
    pub inf_attained: bool,
    pub sup: ExtRat,
    pub sup_attained: bool,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RangeSet {
    components: Vec<Interval>,
}

impl RangeSet {
    pub fn empty() -> Self {
        RangeSet::default()
    }

    /// The universe `[0, ∞]`.
    pub fn full() -> Self {
        RangeSet {
            components: vec![Interval::closed(ExtRat::zero(), ExtRat::Infinity).unwrap()],
        }
    }

    pub fn point(x: ExtRat) -> Self {
        RangeSet {
            components: vec![Interval::point(x)],
        }
    }

    pub fn interval(lo: ExtRat, hi: ExtRat, lo_closed: bool, hi_closed: bool) -> Self {
        Self::from_intervals(Interval::new(lo, hi, lo_closed, hi_closed))
    }

    pub fn closed(lo: ExtRat, hi: ExtRat) -> Self {
        Self::interval(lo, hi, true, true)
    }

    pub fn from_points<I: IntoIterator<Item = ExtRat>>(points: I) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point))
    }

    /// Builds the canonical form of an arbitrary (possibly overlapping) union.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(parts: I) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        if parts.is_empty() {
            return RangeSet::empty();
        }
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = out.last_mut() {
                // Overlapping, or touching with at least one side closed.
                let joins = p.lo < last.hi || (p.lo == last.hi && (last.hi_closed || p.lo_closed));
                if joins {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    } else if p.hi == last.hi {
                        last.hi_closed |= p.hi_closed;
                    }
                    if p.lo == last.lo {
                        last.lo_closed |= p.lo_closed;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        RangeSet { components: out }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_single_point(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_point()
    }

    pub fn contains(&self, x: &ExtRat) -> bool {
        // Components are sorted and disjoint: find the last one starting at or before x.
        let idx = self.components.partition_point(|c| c.lo <= *x);
        idx > 0 && self.components[idx - 1].contains(x)
    }

    pub fn union(&self, other: &RangeSet) -> RangeSet {
        Self::from_intervals(self.components.iter().chain(&other.components).cloned())
    }

    pub fn intersect(&self, other: &RangeSet) -> RangeSet {
        if self.is_empty() || other.is_empty() {
            return RangeSet::empty();
        }
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &RangeSet) -> RangeSet {
        if self.is_empty() || other.is_empty() {
            return self.clone();
        }
        self.combine(other, |a, b| a && !b)
    }

    /// Complement relative to `[0, ∞]`.
    pub fn complement(&self) -> RangeSet {
        RangeSet::full().difference(self)
    }

    pub fn is_subset(&self, other: &RangeSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &RangeSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// All distinct component endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<ExtRat> {
        let mut pts: Vec<ExtRat> = Vec::with_capacity(self.components.len() * 2);
        for c in &self.components {
            pts.push(c.lo.clone());
            pts.push(c.hi.clone());
        }
        pts.dedup();
        pts
    }

    pub fn extrema(&self) -> Result<Extrema> {
        let first = self.components.first().ok_or(Error::EmptySet)?;
        let last = self.components.last().ok_or(Error::EmptySet)?;
        Ok(Extrema {
            inf: first.lo.clone(),
            inf_attained: first.lo_closed,
            sup: last.hi.clone(),
            sup_attained: last.hi_closed,
        })
    }

    /// `sup([0, x] ∩ self)` with attainment; `None` when the intersection is empty.
    pub fn sup_at_or_below(&self, x: &ExtRat) -> Option<(ExtRat, bool)> {
        let idx = self.components.partition_point(|c| c.lo <= *x);
        if idx == 0 {
            return None;
        }
        let c = &self.components[idx - 1];
        if c.contains(x) {
            return Some((x.clone(), true));
        }
        if c.hi <= *x {
            return Some((c.hi.clone(), c.hi_closed));
        }
        // x == c.lo with c.lo open: look one component further back.
        if idx >= 2 {
            let p = &self.components[idx - 2];
            Some((p.hi.clone(), p.hi_closed))
        } else {
            None
        }
    }

    /// `inf([x, ∞] ∩ self)` with attainment; `None` when the intersection is empty.
    pub fn inf_at_or_above(&self, x: &ExtRat) -> Option<(ExtRat, bool)> {
        let idx = self.components.partition_point(|c| c.hi < *x);
        let c = self.components.get(idx)?;
        if c.contains(x) {
            return Some((x.clone(), true));
        }
        if c.lo >= *x {
            return Some((c.lo.clone(), c.lo_closed));
        }
        // x == c.hi with c.hi open.
        self.components.get(idx + 1).map(|n| (n.lo.clone(), n.lo_closed))
    }

    /// The order span `⋃_{x,y∈s} [min{x,y}, max{x,y})`.
    pub fn o_span(&self) -> RangeSet {
        if self.is_empty() || self.is_single_point() {
            return RangeSet::empty();
        }
        let e = self.extrema().expect("non-empty");
        RangeSet::interval(e.inf, e.sup, e.inf_attained, false)
    }

    /// A finite set of representative points: every endpoint plus one interior
    /// point of each non-degenerate component.
    pub fn sample_points(&self) -> Vec<ExtRat> {
        let mut pts = Vec::new();
        for c in &self.components {
            if c.lo_closed {
                pts.push(c.lo.clone());
            }
            if !c.is_point() {
                pts.push(ExtRat::midpoint(&c.lo, &c.hi));
            }
            if c.hi_closed && !c.is_point() {
                pts.push(c.hi.clone());
            }
        }
        pts
    }

    fn combine(&self, other: &RangeSet, keep: impl Fn(bool, bool) -> bool) -> RangeSet {
        let mut cuts: Vec<ExtRat> = self.endpoints();
        cuts.extend(other.endpoints());
        cuts.push(ExtRat::zero());
        cuts.push(ExtRat::Infinity);
        cuts.sort();
        cuts.dedup();
        let member = |x: &ExtRat| keep(self.contains(x), other.contains(x));
        Self::from_cells(&cuts, member)
    }

    /// Rebuilds a set from membership at each cut point and on each open cell
    /// between consecutive cuts. `cuts` must be sorted, distinct, and span
    /// `[0, ∞]`.
    fn from_cells(cuts: &[ExtRat], member: impl Fn(&ExtRat) -> bool) -> RangeSet {
        let mut out: Vec<Interval> = Vec::new();
        // Current run: (lo, lo_closed) when a run is open.
        let mut run: Option<(ExtRat, bool)> = None;
        for (i, p) in cuts.iter().enumerate() {
            let at_point = member(p);
            match (&run, at_point) {
                (None, true) => run = Some((p.clone(), true)),
                (Some((lo, lc)), false) => {
                    out.push(Interval::new(lo.clone(), p.clone(), *lc, false).unwrap());
                    run = None;
                }
                _ => {}
            }
            let Some(next) = cuts.get(i + 1) else {
                if let Some((lo, lc)) = run.take() {
                    out.push(Interval::new(lo, p.clone(), lc, true).unwrap());
                }
                break;
            };
            let in_cell = member(&ExtRat::midpoint(p, next));
            match (&run, in_cell) {
                (None, true) => run = Some((p.clone(), false)),
                (Some((lo, lc)), false) => {
                    out.push(Interval::new(lo.clone(), p.clone(), *lc, true).unwrap());
                    run = None;
                }
                _ => {}
            }
        }
        RangeSet { components: out }
    }
}

impl fmt::Display for RangeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("{}");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RangeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RangeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "{}" || s == "∅" {
            return Ok(RangeSet::empty());
        }
        let bad = |part: &str| Error::Parse(format!("bad set component '{part}'"));
        let mut parts = Vec::new();
        for part in s.split(['u', '∪']) {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix('{').and_then(|p| p.strip_suffix('}')) {
                for x in inner.split(',').filter(|x| !x.trim().is_empty()) {
                    parts.push(Interval::point(x.parse()?));
                }
                continue;
            }
            let mut chars = part.chars();
            let open = chars.next().ok_or_else(|| bad(part))?;
            let close = chars.next_back().ok_or_else(|| bad(part))?;
            let lo_closed = match open {
                '[' => true,
                '(' => false,
                _ => return Err(bad(part)),
            };
            let hi_closed = match close {
                ']' => true,
                ')' => false,
                _ => return Err(bad(part)),
            };
            let (lo, hi) = chars.as_str().split_once(',').ok_or_else(|| bad(part))?;
            let iv = Interval::new(lo.parse()?, hi.parse()?, lo_closed, hi_closed).ok_or_else(|| bad(part))?;
            parts.push(iv);
        }
        Ok(RangeSet::from_intervals(parts))
    }
}

impl Serialize for RangeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RangeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
