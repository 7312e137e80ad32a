use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::number::ExtRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Associative,
    NotAssociative,
    ConditionHolds,
    NotApplicable,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Associative => "Associative",
            Outcome::NotAssociative => "NotAssociative",
            Outcome::ConditionHolds => "ConditionHolds",
            Outcome::NotApplicable => "NotApplicable",
            Outcome::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A triple with `(x∘y)∘z ≠ x∘(y∘z)`.
    Triple {
        x: ExtRat,
        y: ExtRat,
        z: ExtRat,
        lhs: ExtRat,
        rhs: ExtRat,
    },
    /// A violated gap condition at `y` and gaps `k`, `l`.
    Condition {
        condition: String,
        y: ExtRat,
        k: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        l: Option<usize>,
        offending: String,
    },
    /// A point of `M` reached where it must not be.
    Point { at: ExtRat, set: String },
    /// A grid point or pair violating an axiom.
    Axiom { axiom: String, args: Vec<ExtRat> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// The check that produced the verdict.
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, provenance: &str) -> Self {
        Verdict {
            outcome,
            provenance: provenance.to_string(),
            witness: None,
            failed_hypothesis: None,
            caveat: None,
            details: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_caveat(mut self, c: impl Into<String>) -> Self {
        self.caveat = Some(c.into());
        self
    }

    pub fn with_failed_hypothesis(mut self, h: impl Into<String>) -> Self {
        self.failed_hypothesis = Some(h.into());
        self
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    pub fn triple(&self) -> Option<[&ExtRat; 3]> {
        match &self.witness {
            Some(Witness::Triple { x, y, z, .. }) => Some([x, y, z]),
            _ => None,
        }
    }
}
