use serde::{Deserialize, Serialize};

use crate::decomposition::{decompose, decompose_forced, Decomposition};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::number::ExtRat;
use crate::ops::AssocOp;

/// A generator paired with a base operation: `T(x,y) = f⁻¹(F(f(x), f(y)))`.
#[derive(Clone, Debug)]
pub struct Scenario {
    generator: Generator,
    op: AssocOp,
    decomposition: Decomposition,
}

impl Scenario {
    /// Builds a scenario; the generator must be in the admissible class.
    pub fn new(generator: Generator, op: AssocOp) -> Result<Self> {
        let decomposition = decompose(&generator)?;
        Self::assemble(generator, op, decomposition)
    }

    /// Builds a scenario even when the generator is outside the class.
    pub fn new_forced(generator: Generator, op: AssocOp) -> Result<Self> {
        let decomposition = decompose_forced(&generator)?;
        Self::assemble(generator, op, decomposition)
    }

    fn assemble(generator: Generator, op: AssocOp, decomposition: Decomposition) -> Result<Self> {
        op.accepts(decomposition.m())?;
        Ok(Scenario {
            generator,
            op,
            decomposition,
        })
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn op(&self) -> &AssocOp {
        &self.op
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    /// `x ⊗ y = G_M(F(x, y))` on `M`.
    pub fn otimes(&self, x: &ExtRat, y: &ExtRat) -> Result<ExtRat> {
        let m = self.decomposition.m();
        for v in [x, y] {
            if !m.contains(v) {
                return Err(Error::NotInM(v.to_string()));
            }
        }
        Ok(self.decomposition.g_m(&self.op.f_eval(x, y)?))
    }

    fn unit(x: &ExtRat) -> Result<()> {
        if *x > ExtRat::one() {
            Err(Error::Domain(x.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn t_eval(&self, x: &ExtRat, y: &ExtRat) -> Result<ExtRat> {
        Self::unit(x)?;
        Self::unit(y)?;
        let g = &self.generator;
        let v = self.op.f_eval(&g.eval(x)?, &g.eval(y)?)?;
        Ok(g.pseudo_inverse(&v))
    }

    /// `T` on `[0,1)²` and `min{x, y}` on the rest of the unit square.
    pub fn t_modified(&self, x: &ExtRat, y: &ExtRat) -> Result<ExtRat> {
        let one = ExtRat::one();
        if *x == one || *y == one {
            Self::unit(x)?;
            Self::unit(y)?;
            return Ok(x.min(y).clone());
        }
        self.t_eval(x, y)
    }

    /// `f*(x) = f(x)` for `x ∈ B`.
    pub fn f_star(&self, x: &ExtRat) -> Result<ExtRat> {
        if !self.generator.in_b(x)? {
            return Err(Error::NotInB(x.to_string()));
        }
        self.generator.eval(x)
    }

    /// `F₀(x, y) = f⁻¹(F(f*(x), f*(y)))` on `B²`.
    pub fn f0_reduction(&self, x: &ExtRat, y: &ExtRat) -> Result<ExtRat> {
        let v = self.op.f_eval(&self.f_star(x)?, &self.f_star(y)?)?;
        Ok(self.generator.pseudo_inverse(&v))
    }
}

/// Finite instantiation of the quantifiers over `[0,1]` and `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessConfig {
    #[serde(default = "default_grid")]
    pub grid_denominator: u32,
    #[serde(default)]
    pub extra_points: Vec<ExtRat>,
}

fn default_grid() -> u32 {
    16
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            grid_denominator: default_grid(),
            extra_points: Vec::new(),
        }
    }
}

impl WitnessConfig {
    pub fn with_grid(grid_denominator: u32) -> Self {
        WitnessConfig {
            grid_denominator,
            ..Default::default()
        }
    }

    /// `{j/D : 0 ≤ j ≤ D}`.
    pub fn unit_grid(&self) -> Vec<ExtRat> {
        let d = i64::from(self.grid_denominator.max(1));
        (0..=d).map(|j| ExtRat::ratio(j, d).unwrap()).collect()
    }

    /// Points of `M` used for `y` quantifiers: gap endpoints, `C`, anchors,
    /// component endpoints, component midpoints, and extra points, all
    /// restricted to `M`.
    pub fn y_witnesses(&self, d: &Decomposition) -> Vec<ExtRat> {
        let m = d.m();
        let mut pts: Vec<ExtRat> = Vec::new();
        for g in d.gaps() {
            pts.push(g.b.clone());
            pts.push(g.d.clone());
        }
        pts.extend(d.c_points().iter().cloned());
        pts.extend(d.anchors());
        pts.extend(m.endpoints());
        pts.extend(m.sample_points());
        pts.extend(self.extra_points.iter().cloned());
        pts.retain(|p| m.contains(p));
        pts.sort();
        pts.dedup();
        pts
    }
}
