//! Scenario spec files: a generator, a base operation and analysis settings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{Scenario, WitnessConfig};
use crate::error::{Error, Result};
use crate::generator::{Generator, Piece};
use crate::ops::{AssocOp, OpKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Decompose,
    Gm,
    OtimesTable,
    TTable,
    Check,
    Axioms,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Decompose,
        Command::Gm,
        Command::OtimesTable,
        Command::TTable,
        Command::Check,
        Command::Axioms,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::Gm => "gm",
            Command::OtimesTable => "otimes-table",
            Command::TTable => "t-table",
            Command::Check => "check",
            Command::Axioms => "axioms",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown command `{s}`")))
    }
}

/// The on-disk form of a spec. Rationals are canonicalized on parse, so
/// rendering a parsed spec yields its canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub pieces: Vec<Piece>,
    #[serde(rename = "F")]
    pub op: OpKind,
    #[serde(default)]
    pub witness: WitnessConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commands: Vec<Command>,
    /// Analyse the generator even if it is outside the admissible class.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub force: bool,
    /// Published values to compare against; divergences become findings.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reference: BTreeMap<String, String>,
}

/// A parsed and validated spec.
#[derive(Clone, Debug)]
pub struct ScenarioSpec {
    pub doc: SpecDoc,
    pub scenario: Scenario,
}

impl PartialEq for ScenarioSpec {
    fn eq(&self, other: &Self) -> bool {
        self.doc == other.doc
    }
}

impl ScenarioSpec {
    pub fn witness(&self) -> &WitnessConfig {
        &self.doc.witness
    }

    pub fn name(&self) -> &str {
        self.doc.name.as_deref().unwrap_or("unnamed")
    }

    /// Canonical pretty-printed JSON.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("spec documents always serialize")
    }
}

/// Parses and validates a spec document.
///
/// Syntax errors carry line and column; semantic errors carry the field path.
pub fn parse_spec(text: &str) -> Result<ScenarioSpec> {
    build(parse_doc(text)?)
}

/// Parses a spec document without validating the scenario it describes.
pub fn parse_doc(text: &str) -> Result<SpecDoc> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = format!("line {} column {}", inner.line(), inner.column());
        if inner.is_data() {
            Error::validation(path, format!("{inner}"))
        } else {
            Error::Parse(format!("{at}: {inner}"))
        }
    })
}

fn prefix(path: &str, e: Error) -> Error {
    match e {
        Error::Validation { path: p, message } => Error::validation(format!("{path}{p}"), message),
        other => Error::validation(path.trim_end_matches('.'), other.to_string()),
    }
}

/// Validates a document into a runnable scenario.
pub fn build(doc: SpecDoc) -> Result<ScenarioSpec> {
    if doc.witness.grid_denominator == 0 {
        return Err(Error::validation(
            "witness.grid_denominator",
            "must be a positive integer",
        ));
    }
    let generator = Generator::new(doc.pieces.clone()).map_err(|e| match e {
        Error::Validation { .. } => e,
        other => prefix("pieces", other),
    })?;
    let op = AssocOp::new(doc.op.clone()).map_err(|e| prefix("F", e))?;
    let scenario = if doc.force {
        Scenario::new_forced(generator, op)
    } else {
        Scenario::new(generator, op)
    }
    .map_err(|e| match e {
        Error::OutsideValidDomain { .. } => prefix("F", e),
        Error::NotInClassF(_) => prefix("pieces", e),
        other => other,
    })?;
    Ok(ScenarioSpec { doc, scenario })
}
