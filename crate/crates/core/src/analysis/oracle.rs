//! Brute-force associativity on finite cubes of exact points.

use std::collections::HashMap;

use super::scenario::{Scenario, WitnessConfig};
use super::verdict::{Outcome, Verdict, Witness};
use crate::error::Result;
use crate::number::ExtRat;

/// Interns values to dense ids and memoizes a binary operation on ids.
pub(crate) struct Table<F> {
    op: F,
    ids: HashMap<ExtRat, u32>,
    vals: Vec<ExtRat>,
    memo: HashMap<(u32, u32), u32>,
}

impl<F: Fn(&ExtRat, &ExtRat) -> Result<ExtRat>> Table<F> {
    pub(crate) fn new(op: F) -> Self {
        Table {
            op,
            ids: HashMap::new(),
            vals: Vec::new(),
            memo: HashMap::new(),
        }
    }

    pub(crate) fn intern(&mut self, v: &ExtRat) -> u32 {
        if let Some(&id) = self.ids.get(v) {
            return id;
        }
        let id = self.vals.len() as u32;
        self.vals.push(v.clone());
        self.ids.insert(v.clone(), id);
        id
    }

    pub(crate) fn value(&self, id: u32) -> &ExtRat {
        &self.vals[id as usize]
    }

    pub(crate) fn eval(&mut self, a: u32, b: u32) -> Result<u32> {
        if let Some(&r) = self.memo.get(&(a, b)) {
            return Ok(r);
        }
        let v = (self.op)(&self.vals[a as usize], &self.vals[b as usize])?;
        let r = self.intern(&v);
        self.memo.insert((a, b), r);
        Ok(r)
    }

    /// The lexicographically least triple of `points` (sorted) on which
    /// associativity fails.
    pub(crate) fn first_failure(&mut self, points: &[ExtRat]) -> Result<Option<Witness>> {
        let ids: Vec<u32> = points.iter().map(|p| self.intern(p)).collect();
        for &x in &ids {
            for &y in &ids {
                let xy = self.eval(x, y)?;
                for &z in &ids {
                    let lhs = self.eval(xy, z)?;
                    let yz = self.eval(y, z)?;
                    let rhs = self.eval(x, yz)?;
                    if lhs != rhs {
                        return Ok(Some(Witness::Triple {
                            x: self.value(x).clone(),
                            y: self.value(y).clone(),
                            z: self.value(z).clone(),
                            lhs: self.value(lhs).clone(),
                            rhs: self.value(rhs).clone(),
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `points ∪ {p ∘ q : p, q ∈ points}`, sorted.
    pub(crate) fn close_once(&mut self, points: &[ExtRat]) -> Result<Vec<ExtRat>> {
        let ids: Vec<u32> = points.iter().map(|p| self.intern(p)).collect();
        let mut out: Vec<ExtRat> = points.to_vec();
        for &a in &ids {
            for &b in &ids {
                let r = self.eval(a, b)?;
                out.push(self.value(r).clone());
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn verdict(found: Option<Witness>, provenance: &str, size: usize) -> Verdict {
    match found {
        Some(w) => Verdict::new(Outcome::NotAssociative, provenance).with_witness(w),
        None => Verdict::new(Outcome::Associative, provenance)
            .with_caveat(format!("no counterexample on a cube of {size} points per axis")),
    }
    .detail("cube_size", size)
}

/// Points of `[0,1]` for the `T` cube: piece endpoints, the `j/D` grid,
/// extra points, and one closure round under `T`.
pub fn t_cube(s: &Scenario, w: &WitnessConfig) -> Result<Vec<ExtRat>> {
    let one = ExtRat::one();
    let mut base = s.generator().breakpoints();
    base.extend(w.unit_grid());
    base.extend(w.extra_points.iter().filter(|p| **p <= one).cloned());
    base.sort();
    base.dedup();
    Table::new(|x: &ExtRat, y: &ExtRat| s.t_eval(x, y)).close_once(&base)
}

/// Associativity of `T` on [`t_cube`], reporting the least failing triple.
pub fn oracle_t(s: &Scenario, w: &WitnessConfig) -> Result<Verdict> {
    let pts = t_cube(s, w)?;
    let found = Table::new(|x: &ExtRat, y: &ExtRat| s.t_eval(x, y)).first_failure(&pts)?;
    Ok(verdict(found, "t_oracle", pts.len()))
}

/// Points of `M` for the `⊗` cube: the `y` witnesses plus one closure round.
pub fn otimes_cube(s: &Scenario, w: &WitnessConfig) -> Result<Vec<ExtRat>> {
    let base = w.y_witnesses(s.decomposition());
    Table::new(|x: &ExtRat, y: &ExtRat| s.otimes(x, y)).close_once(&base)
}

/// Associativity of `⊗` on [`otimes_cube`].
pub fn oracle_otimes(s: &Scenario, w: &WitnessConfig) -> Result<Verdict> {
    let pts = otimes_cube(s, w)?;
    let found = Table::new(|x: &ExtRat, y: &ExtRat| s.otimes(x, y)).first_failure(&pts)?;
    Ok(verdict(found, "otimes_oracle", pts.len()))
}
