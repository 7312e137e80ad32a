//! The gap system `S = {[b_k, d_k]}` and point set `C` of a range, and the
//! projection `G_M` of `[0, ∞]` onto the range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{Generator, Side};
use crate::number::ExtRat;
use crate::range_set::RangeSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gap {
    pub b: ExtRat,
    pub d: ExtRat,
}

impl Gap {
    pub fn closed(&self) -> RangeSet {
        RangeSet::closed(self.b.clone(), self.d.clone())
    }
}

impl Serialize for Gap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.b, &self.d).serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    gaps: Vec<Gap>,
    c_points: Vec<ExtRat>,
    m: RangeSet,
    c_set: RangeSet,
    m_minus_c: RangeSet,
    f0: ExtRat,
    f1: ExtRat,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct DecompositionDoc<'a> {
    #[serde(rename = "S")]
    s: &'a [Gap],
    #[serde(rename = "C")]
    c: &'a [ExtRat],
    #[serde(rename = "M")]
    m: &'a RangeSet,
    f0: &'a ExtRat,
    f1: &'a ExtRat,
    anchors: Vec<ExtRat>,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    warnings: &'a [String],
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionDoc {
            s: &self.gaps,
            c: &self.c_points,
            m: &self.m,
            f0: &self.f0,
            f1: &self.f1,
            anchors: self.anchors(),
            warnings: &self.warnings,
        }
        .serialize(s)
    }
}

/// Decomposes the range of a generator in the admissible class.
pub fn decompose(g: &Generator) -> Result<Decomposition> {
    let cert = g.class_f_membership();
    if !cert.member {
        return Err(Error::NotInClassF(format!(
            "condition fails at x = {}: {}",
            cert.witness.expect("witness on failure"),
            cert.reason.unwrap_or_default()
        )));
    }
    build(g, Vec::new())
}

/// Decomposes regardless of class membership; the result carries a warning
/// when the generator is outside the class.
pub fn decompose_forced(g: &Generator) -> Result<Decomposition> {
    let cert = g.class_f_membership();
    let mut warnings = Vec::new();
    if let (false, Some(x)) = (cert.member, cert.witness) {
        warnings.push(format!(
            "generator is outside the admissible class (x = {x}); G_M may differ from f(f^-1)"
        ));
    }
    build(g, warnings)
}

fn build(g: &Generator, warnings: Vec<String>) -> Result<Decomposition> {
    let m = g.range().clone();
    let mut gaps = Vec::new();
    let mut c_points = Vec::new();
    for x in g.breakpoints() {
        let left = g.side_limit(&x, Side::Left)?;
        let here = g.eval(&x)?;
        let right = g.side_limit(&x, Side::Right)?;
        if left < here {
            gaps.push(Gap {
                b: left.clone(),
                d: here.clone(),
            });
        }
        if here < right {
            gaps.push(Gap {
                b: here.clone(),
                d: right.clone(),
            });
        }
        if left < right {
            let mut jump_points = Vec::new();
            if m.contains(&right) {
                jump_points.push(right.clone());
            }
            if m.contains(&left) {
                jump_points.push(left.clone());
            }
            if !jump_points.contains(&here) {
                jump_points.push(here);
            }
            c_points.extend(jump_points);
        }
    }
    gaps.sort();
    gaps.dedup();
    c_points.sort();
    c_points.dedup();
    let c_set = RangeSet::from_points(c_points.iter().cloned());
    let m_minus_c = m.difference(&c_set);
    let d = Decomposition {
        gaps,
        c_points,
        c_set,
        m_minus_c,
        f0: g.f0(),
        f1: g.f1(),
        m,
        warnings,
    };
    d.check_invariants()?;
    Ok(d)
}

impl Decomposition {
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn c_points(&self) -> &[ExtRat] {
        &self.c_points
    }

    pub fn c_set(&self) -> &RangeSet {
        &self.c_set
    }

    pub fn m(&self) -> &RangeSet {
        &self.m
    }

    pub fn m_minus_c(&self) -> &RangeSet {
        &self.m_minus_c
    }

    pub fn f0(&self) -> &ExtRat {
        &self.f0
    }

    pub fn f1(&self) -> &ExtRat {
        &self.f1
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_forced(&self) -> bool {
        !self.warnings.is_empty()
    }

    fn gap(&self, k: usize) -> Result<&Gap> {
        self.gaps.get(k).ok_or(Error::NoSuchGap(k))
    }

    /// `a_k = d_k` if `d_k ∈ M`, else `b_k`.
    pub fn anchor(&self, k: usize) -> Result<ExtRat> {
        let g = self.gap(k)?;
        Ok(if self.m.contains(&g.d) {
            g.d.clone()
        } else {
            g.b.clone()
        })
    }

    pub fn anchors(&self) -> Vec<ExtRat> {
        (0..self.gaps.len()).map(|k| self.anchor(k).unwrap()).collect()
    }

    /// The punctured gap `[b_k, d_k] ∖ M`.
    pub fn punctured_gap(&self, k: usize) -> Result<RangeSet> {
        Ok(self.gap(k)?.closed().difference(&self.m))
    }

    /// Index of the gap whose punctured part contains `v`.
    pub fn gap_containing(&self, v: &ExtRat) -> Option<usize> {
        if self.m.contains(v) {
            return None;
        }
        self.gaps.iter().position(|g| g.b <= *v && *v <= g.d)
    }

    /// `G_M(x) = max(M ∩ {sup([0,x] ∩ M), inf([x,∞] ∩ M)})`.
    pub fn g_m(&self, x: &ExtRat) -> ExtRat {
        if self.m.contains(x) {
            return x.clone();
        }
        let above = self.m.inf_at_or_above(x).filter(|(_, attained)| *attained);
        let below = self.m.sup_at_or_below(x).filter(|(_, attained)| *attained);
        above.or(below).map(|(v, _)| v).expect("every gap has an endpoint in M")
    }

    fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        for (k, g) in self.gaps.iter().enumerate() {
            if g.b >= g.d {
                return fail(format!("gap {k} has non-positive length"));
            }
            let hits: Vec<&ExtRat> = self.c_points.iter().filter(|c| g.b <= **c && **c <= g.d).collect();
            let ok = match hits.as_slice() {
                [c] => **c == g.b || **c == g.d,
                [c1, c2] => **c1 == g.b && **c2 == g.d,
                _ => false,
            };
            if !ok {
                return fail(format!("gap [{}, {}] meets C in {hits:?}", g.b, g.d));
            }
            if !(self.m.contains(&g.b) || self.m.contains(&g.d)) {
                return fail(format!("gap [{}, {}] has no endpoint in M", g.b, g.d));
            }
        }
        for w in self.gaps.windows(2) {
            if w[1].b < w[0].d {
                return fail(format!(
                    "gaps [{}, {}] and [{}, {}] overlap",
                    w[0].b, w[0].d, w[1].b, w[1].d
                ));
            }
        }
        let covered = self
            .gaps
            .iter()
            .fold(RangeSet::empty(), |acc, g| acc.union(&g.closed()));
        let rebuilt = self.c_set.union(&covered.complement());
        if rebuilt != self.m {
            return fail(format!("reconstruction gives {rebuilt}, range is {}", self.m));
        }
        Ok(())
    }
}
