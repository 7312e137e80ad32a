//! Grid checks of the t-norm family axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::oracle::Table;
use super::scenario::WitnessConfig;
use super::verdict::Witness;
use crate::error::Result;
use crate::number::ExtRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomKind {
    TNorm,
    TConorm,
    TSubnorm,
    TSuperconorm,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomKind::TNorm => "t-norm",
            AxiomKind::TConorm => "t-conorm",
            AxiomKind::TSubnorm => "t-subnorm",
            AxiomKind::TSuperconorm => "t-superconorm",
        })
    }
}

impl std::str::FromStr for AxiomKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t-norm" | "t_norm" => Ok(AxiomKind::TNorm),
            "t-conorm" | "t_conorm" => Ok(AxiomKind::TConorm),
            "t-subnorm" | "t_subnorm" => Ok(AxiomKind::TSubnorm),
            "t-superconorm" | "t_superconorm" => Ok(AxiomKind::TSuperconorm),
            other => Err(crate::error::Error::Parse(format!("unknown axiom family `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: AxiomKind,
    pub grid_denominator: u32,
    pub satisfied: bool,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn failed(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.holds)
    }
}

fn axiom_witness(axiom: &str, args: &[&ExtRat]) -> Option<Witness> {
    Some(Witness::Axiom {
        axiom: axiom.to_string(),
        args: args.iter().map(|a| (*a).clone()).collect(),
    })
}

/// Checks commutativity, associativity, monotonicity and the boundary axiom
/// of `kind` for `op` on the `j/D` grid of the unit square.
pub fn axiom_check<F>(op: F, kind: AxiomKind, w: &WitnessConfig) -> Result<AxiomReport>
where
    F: Fn(&ExtRat, &ExtRat) -> Result<ExtRat>,
{
    let grid = w.unit_grid();
    let mut t = Table::new(op);
    let ids: Vec<u32> = grid.iter().map(|g| t.intern(g)).collect();
    let n = ids.len();
    let mut table = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = t.eval(ids[i], ids[j])?;
        }
    }
    let val = |t: &Table<F>, id: u32| t.value(id).clone();

    let mut comm = None;
    'c: for i in 0..n {
        for j in (i + 1)..n {
            if table[i][j] != table[j][i] {
                comm = axiom_witness("commutativity", &[&grid[i], &grid[j]]);
                break 'c;
            }
        }
    }

    let assoc = t.first_failure(&grid)?;

    let mut mono = None;
    'm: for z in 0..n {
        for i in 0..n {
            for j in (i + 1)..n {
                if val(&t, table[i][z]) > val(&t, table[j][z]) {
                    mono = axiom_witness("monotonicity", &[&grid[i], &grid[j], &grid[z]]);
                    break 'm;
                }
            }
        }
    }

    let (one, zero) = (ExtRat::one(), ExtRat::zero());
    let i_one = n - 1;
    let mut bound = None;
    'b: for i in 0..n {
        let x = &grid[i];
        match kind {
            AxiomKind::TNorm | AxiomKind::TConorm => {
                let e = if kind == AxiomKind::TNorm { i_one } else { 0 };
                if val(&t, table[i][e]) != *x {
                    let unit = if kind == AxiomKind::TNorm { &one } else { &zero };
                    bound = axiom_witness("boundary", &[x, unit]);
                    break 'b;
                }
            }
            AxiomKind::TSubnorm | AxiomKind::TSuperconorm => {
                for j in 0..n {
                    let v = val(&t, table[i][j]);
                    let bad = if kind == AxiomKind::TSubnorm {
                        v > *x.min(&grid[j])
                    } else {
                        v < *x.max(&grid[j])
                    };
                    if bad {
                        bound = axiom_witness("boundary", &[x, &grid[j]]);
                        break 'b;
                    }
                }
            }
        }
    }

    let results: Vec<AxiomResult> = [
        ("commutativity", comm),
        ("associativity", assoc),
        ("monotonicity", mono),
        ("boundary", bound),
    ]
    .into_iter()
    .map(|(name, witness)| AxiomResult {
        axiom: name.to_string(),
        holds: witness.is_none(),
        witness,
    })
    .collect();
    Ok(AxiomReport {
        kind,
        grid_denominator: w.grid_denominator,
        satisfied: results.iter().all(|r| r.holds),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> WitnessConfig {
        WitnessConfig::with_grid(8)
    }

    #[test]
    fn min_is_a_t_norm_and_subnorm() {
        let min = |x: &ExtRat, y: &ExtRat| Ok(x.min(y).clone());
        assert!(axiom_check(min, AxiomKind::TNorm, &w()).unwrap().satisfied);
        assert!(axiom_check(min, AxiomKind::TSubnorm, &w()).unwrap().satisfied);
        let r = axiom_check(min, AxiomKind::TConorm, &w()).unwrap();
        let failed: Vec<&str> = r.failed().map(|f| f.axiom.as_str()).collect();
        assert_eq!(failed, ["boundary"]);
    }

    #[test]
    fn bounded_sum_is_a_t_conorm() {
        let s = |x: &ExtRat, y: &ExtRat| Ok(x.add(y).min(ExtRat::one()));
        assert!(axiom_check(s, AxiomKind::TConorm, &w()).unwrap().satisfied);
        assert!(axiom_check(s, AxiomKind::TSuperconorm, &w()).unwrap().satisfied);
    }

    #[test]
    fn projection_fails_commutativity() {
        let p = |x: &ExtRat, _: &ExtRat| Ok(x.clone());
        let r = axiom_check(p, AxiomKind::TNorm, &w()).unwrap();
        assert!(!r.results[0].holds);
        assert!(r.results[1].holds);
    }

    #[test]
    fn family_names_parse() {
        for k in [
            AxiomKind::TNorm,
            AxiomKind::TConorm,
            AxiomKind::TSubnorm,
            AxiomKind::TSuperconorm,
        ] {
            assert_eq!(k.to_string().parse::<AxiomKind>().unwrap(), k);
        }
    }
}
