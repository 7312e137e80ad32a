//! Set-level associativity criteria built on the gap decomposition.
//!
//! Every set here is computed exactly from the piecewise sections of `F`.
//! Quantifiers over `y ∈ M` are instantiated on [`WitnessConfig::y_witnesses`],
//! so a violation found at some `y` is a proof while a clean pass is only as
//! strong as the witness set.

use serde::Serialize;

use super::scenario::{Scenario, WitnessConfig};
use super::verdict::{Outcome, Verdict, Witness};
use crate::error::Result;
use crate::generator::Side;
use crate::number::ExtRat;
use crate::range_set::RangeSet;

/// The sets attached to one `(y, k, l)` in the gap conditions.
///
/// Naming: `left_*` collects `x` with `F(x, y)` in the target, `right_*`
/// collects `x` with `F(y, x)` in the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FConditionSets {
    pub y: ExtRat,
    pub k: usize,
    pub l: usize,
    pub anchor_k: ExtRat,
    pub anchor_l: ExtRat,
    /// `{x ∈ M : F(x, y) ∈ P_k}`.
    pub left_k: RangeSet,
    /// `{x ∈ M : F(y, x) ∈ P_k}`.
    pub right_k: RangeSet,
    /// `{x ∈ M : F(x, y) ∈ P_l}`.
    pub left_l: RangeSet,
    /// `{x ∈ M : F(y, x) ∈ P_l}`.
    pub right_l: RangeSet,
    /// `{x ∈ M : F(x, y) ∈ M∖C}`.
    pub left_free: RangeSet,
    /// `{x ∈ M : F(y, x) ∈ M∖C}`.
    pub right_free: RangeSet,
    /// `O({a_k} ∪ F(left_k, y))`.
    pub i_left: RangeSet,
    /// `O({a_k} ∪ F(y, right_k))`.
    pub i_right: RangeSet,
    /// `O(F(left_k, a_l) ∪ F(a_k, right_l))`, empty unless both sets are non-empty.
    pub j: RangeSet,
    /// No pair in `left_k × right_free` has `F(F(x₁,y),x₂) ≠ F(a_k,x₂)`.
    pub h_left_empty: bool,
    /// No pair in `left_free × right_k` has `F(x₁,F(y,x₂)) ≠ F(x₁,a_k)`.
    pub h_right_empty: bool,
    /// No pair in `left_k × left_l` has `F(a_k,x₂) ≠ F(x₁,a_l)`.
    pub h_pair_empty: bool,
    /// `F(i_left, right_free) ∩ (M∖C)`.
    pub hit_left: RangeSet,
    /// `F(left_free, i_right) ∩ (M∖C)`.
    pub hit_right: RangeSet,
    /// `j ∩ (M∖C)`.
    pub hit_pair: RangeSet,
}

impl FConditionSets {
    /// First violated condition, if any, as `(name, offending set)`.
    pub fn violation(&self) -> Option<(&'static str, &RangeSet)> {
        if !self.h_left_empty && !self.hit_left.is_empty() {
            return Some(("left_section", &self.hit_left));
        }
        if !self.h_right_empty && !self.hit_right.is_empty() {
            return Some(("right_section", &self.hit_right));
        }
        if !self.h_pair_empty && !self.hit_pair.is_empty() {
            return Some(("gap_pair", &self.hit_pair));
        }
        None
    }
}

fn with_point(s: &RangeSet, p: &ExtRat) -> RangeSet {
    s.union(&RangeSet::point(p.clone()))
}

/// Computes every set of the gap conditions at `(y, k, l)`.
pub fn fcondition_sets(s: &Scenario, y: &ExtRat, k: usize, l: usize) -> Result<FConditionSets> {
    let d = s.decomposition();
    let op = s.op();
    let m = d.m();
    let free = d.m_minus_c();
    let (p_k, p_l) = (d.punctured_gap(k)?, d.punctured_gap(l)?);
    let (a_k, a_l) = (d.anchor(k)?, d.anchor(l)?);
    let pre = |target: &RangeSet, side: Side| -> Result<RangeSet> {
        Ok(op.f_section_preimage(y, target, side)?.intersect(m))
    };
    let left_k = pre(&p_k, Side::Left)?;
    let right_k = pre(&p_k, Side::Right)?;
    let left_l = pre(&p_l, Side::Left)?;
    let right_l = pre(&p_l, Side::Right)?;
    let left_free = pre(free, Side::Left)?;
    let right_free = pre(free, Side::Right)?;
    let y_set = RangeSet::point(y.clone());
    let ak_set = RangeSet::point(a_k.clone());
    let al_set = RangeSet::point(a_l.clone());

    let left_vals = op.f_image(&left_k, &y_set)?;
    let right_vals = op.f_image(&y_set, &right_k)?;
    let i_left = with_point(&left_vals, &a_k).o_span();
    let i_right = with_point(&right_vals, &a_k).o_span();
    let j = if left_k.is_empty() || right_l.is_empty() {
        RangeSet::empty()
    } else {
        op.f_image(&left_k, &al_set)?
            .union(&op.f_image(&ak_set, &right_l)?)
            .o_span()
    };

    // x₂ ↦ F(s, x₂) is constant in s exactly on the flat set, so each
    // pair set is empty iff its free coordinate lies there.
    let h_left_empty =
        left_k.is_empty() || right_free.is_empty() || right_free.is_subset(&op.flat_set(&with_point(&left_vals, &a_k)));
    let h_right_empty =
        right_k.is_empty() || left_free.is_empty() || left_free.is_subset(&op.flat_set(&with_point(&right_vals, &a_k)));
    let h_pair_empty = left_k.is_empty() || left_l.is_empty() || {
        let u = op.f_image(&ak_set, &left_l)?;
        let v = op.f_image(&left_k, &al_set)?;
        u.is_single_point() && u == v
    };

    let hit_left = op.f_image(&i_left, &right_free)?.intersect(free);
    let hit_right = op.f_image(&left_free, &i_right)?.intersect(free);
    let hit_pair = j.intersect(free);

    Ok(FConditionSets {
        y: y.clone(),
        k,
        l,
        anchor_k: a_k,
        anchor_l: a_l,
        left_k,
        right_k,
        left_l,
        right_l,
        left_free,
        right_free,
        i_left,
        i_right,
        j,
        h_left_empty,
        h_right_empty,
        h_pair_empty,
        hit_left,
        hit_right,
        hit_pair,
    })
}

/// `I_k = O({a_k} ∪ (F(M, M) ∩ P_k))`.
pub fn i_k_set(s: &Scenario, k: usize) -> Result<RangeSet> {
    let d = s.decomposition();
    let fmm = s.op().f_image(d.m(), d.m())?;
    let hits = fmm.intersect(&d.punctured_gap(k)?);
    Ok(with_point(&hits, &d.anchor(k)?).o_span())
}

/// `⋃_k I_k`.
pub fn union_i(s: &Scenario) -> Result<RangeSet> {
    let mut u = RangeSet::empty();
    for k in 0..s.decomposition().gaps().len() {
        u = u.union(&i_k_set(s, k)?);
    }
    Ok(u)
}

/// A representative point of a non-empty set, preferring its infimum.
fn pick(s: &RangeSet) -> ExtRat {
    s.sample_points()
        .into_iter()
        .next()
        .expect("non-empty set has a sample point")
}

fn single_point(s: &Scenario) -> Option<Verdict> {
    s.decomposition().m().is_single_point().then(|| {
        Verdict::new(Outcome::Associative, "single_point_range")
            .with_caveat("the range of f is one point, so the induced operation is constant")
    })
}

/// Sufficient test: `F(⋃I_k, M) ∩ M = ∅` and `F(M, ⋃I_k) ∩ M = ∅` imply
/// associativity. Under cancellativity and `F(M, M∖C) ⊆ M∖C` the test is
/// also necessary.
pub fn check_sufficient(s: &Scenario) -> Result<Verdict> {
    if let Some(v) = single_point(s) {
        return Ok(v);
    }
    let d = s.decomposition();
    let op = s.op();
    let m = d.m();
    let u = union_i(s)?;
    let left_full = op.f_image(&u, m)?;
    let right_full = op.f_image(m, &u)?;
    let left = left_full.intersect(m);
    let right = right_full.intersect(m);
    let closure = op.f_image(m, d.m_minus_c())?;

    let mut failed = Vec::new();
    if !op.is_cancellative() {
        failed.push(format!("not cancellative ({})", op.name()));
    }
    if !closure.is_subset(d.m_minus_c()) {
        failed.push(format!(
            "F(M, M\\C) = {closure} is not contained in M\\C = {}",
            d.m_minus_c()
        ));
    }

    let mut v = if left.is_empty() && right.is_empty() {
        Verdict::new(Outcome::Associative, "sufficient_condition")
    } else if failed.is_empty() {
        let hit = left.union(&right);
        Verdict::new(Outcome::NotAssociative, "sufficient_condition_converse").with_witness(Witness::Point {
            at: pick(&hit),
            set: "F(union_I, M) ∪ F(M, union_I) meets M".to_string(),
        })
    } else {
        Verdict::new(Outcome::Inconclusive, "sufficient_condition")
            .with_caveat("the test fails and the converse hypotheses do not hold")
    };
    if !failed.is_empty() {
        v = v.with_failed_hypothesis(failed.join("; "));
    }
    Ok(v.detail("union_I", &u)
        .detail("F(union_I, M)", &left_full)
        .detail("F(M, union_I)", &right_full)
        .detail("F(union_I, M) ∩ M", &left)
        .detail("F(M, union_I) ∩ M", &right)
        .detail("F(M, M\\C)", &closure)
        .detail("cancellative", op.is_cancellative()))
}

/// The three unions of the gap conditions and their total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Jfrak {
    /// `⋃ F(I_k^y, M_y)`.
    pub left: RangeSet,
    /// `⋃ F(M^y, I_y^k)`.
    pub right: RangeSet,
    /// `⋃ J_{k,l}^y`.
    pub pair: RangeSet,
    pub total: RangeSet,
    pub witnesses: Vec<ExtRat>,
}

/// Unions over the witness values of `y` and all gap indices.
pub fn jfrak(s: &Scenario, w: &WitnessConfig) -> Result<Jfrak> {
    let d = s.decomposition();
    let op = s.op();
    let n = d.gaps().len();
    let ys = w.y_witnesses(d);
    let (mut left, mut right, mut pair) = (RangeSet::empty(), RangeSet::empty(), RangeSet::empty());
    for y in &ys {
        for k in 0..n {
            for l in 0..n {
                let sets = fcondition_sets(s, y, k, l)?;
                if l == 0 {
                    left = left.union(&op.f_image(&sets.i_left, &sets.right_free)?);
                    right = right.union(&op.f_image(&sets.left_free, &sets.i_right)?);
                }
                pair = pair.union(&sets.j);
            }
        }
    }
    let total = left.union(&right).union(&pair);
    Ok(Jfrak {
        left,
        right,
        pair,
        total,
        witnesses: ys,
    })
}

/// The characterization: assuming `F(C, M) ∪ F(M, C) ⊆ M∖C`, the induced
/// operation is associative iff every gap condition holds for all `y ∈ M`.
pub fn check_fcondition(s: &Scenario, w: &WitnessConfig) -> Result<Verdict> {
    if let Some(v) = single_point(s) {
        return Ok(v);
    }
    let d = s.decomposition();
    let op = s.op();
    let m = d.m();
    let c = d.c_set();
    let hyp = op.f_image(c, m)?.union(&op.f_image(m, c)?);
    if !hyp.is_subset(d.m_minus_c()) {
        return Ok(Verdict::new(Outcome::NotApplicable, "gap_conditions")
            .with_failed_hypothesis(format!(
                "F(C, M) ∪ F(M, C) = {hyp} is not contained in M\\C = {}",
                d.m_minus_c()
            ))
            .detail("F(C, M) ∪ F(M, C)", &hyp));
    }
    let n = d.gaps().len();
    let ys = w.y_witnesses(d);
    for y in &ys {
        for k in 0..n {
            for l in 0..n {
                let sets = fcondition_sets(s, y, k, l)?;
                if let Some((name, offending)) = sets.violation() {
                    let pair = name == "gap_pair";
                    return Ok(Verdict::new(Outcome::NotAssociative, "gap_conditions")
                        .with_witness(Witness::Condition {
                            condition: name.to_string(),
                            y: y.clone(),
                            k,
                            l: pair.then_some(l),
                            offending: offending.to_string(),
                        })
                        .detail("F(C, M) ∪ F(M, C)", &hyp));
                }
            }
        }
    }
    Ok(Verdict::new(Outcome::ConditionHolds, "gap_conditions")
        .with_caveat(format!("y ranged over {} witness points of M", ys.len()))
        .detail("F(C, M) ∪ F(M, C)", &hyp))
}
