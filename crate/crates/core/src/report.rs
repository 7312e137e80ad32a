//! Runs commands on a parsed spec and assembles deterministic JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    axiom_check, check_fcondition, check_sufficient, jfrak, oracle_otimes, oracle_t, union_i, AxiomKind, Outcome,
    Scenario, Verdict, WitnessConfig,
};
use crate::error::{Error, Result};
use crate::generator::ClassFCertificate;
use crate::number::ExtRat;
use crate::range_set::RangeSet;
use crate::spec::{Command, ScenarioSpec, SpecDoc};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sufficient,
    Fcondition,
    Oracle,
    #[default]
    All,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sufficient" => Ok(Method::Sufficient),
            "fcondition" => Ok(Method::Fcondition),
            "oracle" => Ok(Method::Oracle),
            "all" => Ok(Method::All),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

impl Method {
    fn includes(self, m: Method) -> bool {
        self == Method::All || self == m
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub method: Method,
    /// Overrides the grid denominator (default: the spec's for `check` and
    /// `axioms`, 8 for tables).
    pub grid: Option<u32>,
    pub at: Option<ExtRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl Finding {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Finding {
            kind: kind.to_string(),
            message: message.into(),
            details: BTreeMap::new(),
        }
    }

    fn detail(mut self, k: &str, v: impl ToString) -> Self {
        self.details.insert(k.to_string(), v.to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub method: Method,
    pub grid_denominator: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: SpecDoc,
    pub class_f: ClassFCertificate,
    pub decomposition: Value,
    pub tables: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, Value>,
    pub findings: Vec<Finding>,
    pub meta: Meta,
    /// Computed quantities keyed like the spec's `reference` map.
    #[serde(skip)]
    pub quantities: BTreeMap<String, String>,
    #[serde(skip)]
    pub verdict_values: BTreeMap<String, Verdict>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdict_values.get(name)
    }

    pub fn findings_of(&self, kind: &str) -> impl Iterator<Item = &Finding> {
        let kind = kind.to_string();
        self.findings.iter().filter(move |f| f.kind == kind)
    }

    /// A short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let name = self.scenario.name.as_deref().unwrap_or("unnamed");
        let _ = writeln!(out, "{} on {name}", self.meta.command);
        if let Some(m) = self.quantities.get("M") {
            let _ = writeln!(out, "  M = {m}");
        }
        if let Some(c) = self.quantities.get("C") {
            let _ = writeln!(out, "  C = {c}");
        }
        if let Some(v) = self.tables.get("gm_at") {
            let _ = writeln!(
                out,
                "  G_M({}) = {}",
                v["x"].as_str().unwrap_or(""),
                v["value"].as_str().unwrap_or("")
            );
        }
        for (k, v) in &self.verdict_values {
            let _ = write!(out, "  {k}: {}", v.outcome);
            if let Some(h) = &v.failed_hypothesis {
                let _ = write!(out, " [hypothesis: {h}]");
            }
            let _ = writeln!(out);
        }
        if let Some(Value::Object(ax)) = self.verdicts.get("axioms") {
            for (f, families) in ax {
                if let Value::Object(fams) = families {
                    for (fam, r) in fams {
                        let _ = writeln!(
                            out,
                            "  {f} {fam}: {}",
                            if r["satisfied"] == true { "holds" } else { "fails" }
                        );
                    }
                }
            }
        }
        for f in &self.findings {
            let _ = writeln!(out, "  finding [{}]: {}", f.kind, f.message);
        }
        out
    }
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts always serialize")
}

/// Points `j/D` over `[0, U]` plus `∞`, with `U` the first integer at or
/// above the finite part of `M`, capped at 24.
fn gm_grid(s: &Scenario, d: u32) -> Vec<ExtRat> {
    let m = s.decomposition().m();
    let finite_sup = m
        .endpoints()
        .into_iter()
        .filter(|e| !e.is_infinite())
        .max()
        .unwrap_or_else(ExtRat::zero);
    let r = finite_sup.as_rational().expect("finite").ceil().to_integer();
    let upper: i64 = i64::try_from(r).unwrap_or(24).clamp(1, 24);
    let d = i64::from(d);
    let mut pts: Vec<ExtRat> = (0..=upper * d).map(|j| ExtRat::ratio(j, d).unwrap()).collect();
    pts.push(ExtRat::Infinity);
    pts
}

fn matrix<F>(points: &[ExtRat], f: F) -> Result<Value>
where
    F: Fn(&ExtRat, &ExtRat) -> Result<ExtRat>,
{
    let mut rows = Vec::with_capacity(points.len());
    for x in points {
        let row: Result<Vec<String>> = points.iter().map(|y| f(x, y).map(|v| v.to_string())).collect();
        rows.push(row?);
    }
    Ok(json!({
        "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "values": rows,
    }))
}

/// Whether two sets differ only in points that close the right end of a
/// non-degenerate component of one of them.
fn right_endpoints_only(a: &RangeSet, b: &RangeSet) -> bool {
    let diff = a.difference(b).union(&b.difference(a));
    let sups: Vec<&ExtRat> = a
        .components()
        .iter()
        .chain(b.components())
        .filter(|c| !c.is_point())
        .map(|c| &c.hi)
        .collect();
    diff.components().iter().all(|c| c.is_point() && sups.contains(&&c.lo))
}

fn compare_reference(key: &str, reference: &str, computed: &str) -> Option<Finding> {
    let sets = (reference.parse::<RangeSet>(), computed.parse::<RangeSet>());
    let (equal, endpoint_only) = match sets {
        (Ok(a), Ok(b)) => (a == b, right_endpoints_only(&a, &b)),
        _ => (reference.trim() == computed, false),
    };
    (!equal).then(|| {
        let how = if endpoint_only {
            "differs only at right endpoints"
        } else {
            "differs"
        };
        Finding::new(
            "reference_divergence",
            format!("{key}: computed {computed} {how} from reference {reference}"),
        )
        .detail("quantity", key)
        .detail("reference", reference)
        .detail("computed", computed)
        .detail("right_endpoints_only", endpoint_only)
    })
}

/// Set-valued quantities of the criteria, for comparison with references.
fn set_quantities(s: &Scenario, w: &WitnessConfig, q: &mut BTreeMap<String, String>) -> Result<()> {
    let d = s.decomposition();
    let op = s.op();
    let (m, c, free) = (d.m(), d.c_set(), d.m_minus_c());
    let u = union_i(s)?;
    q.insert("union_I".into(), u.to_string());
    q.insert("F(union_I,M)".into(), op.f_image(&u, m)?.to_string());
    q.insert("F(M,union_I)".into(), op.f_image(m, &u)?.to_string());
    q.insert("F(M,M\\C)".into(), op.f_image(m, free)?.to_string());
    q.insert("F(M,M)".into(), op.f_image(m, m)?.to_string());
    q.insert("F(C,M)".into(), op.f_image(c, m)?.to_string());
    q.insert("F(M,C)".into(), op.f_image(m, c)?.to_string());
    let j = jfrak(s, w)?.total;
    q.insert("jfrak".into(), j.to_string());
    q.insert("jfrak∩(M\\C)".into(), j.intersect(free).to_string());
    q.insert("jfrak∩M".into(), j.intersect(m).to_string());
    Ok(())
}

/// Runs `command` on `spec`.
pub fn run(spec: &ScenarioSpec, command: Command, opts: &RunOptions) -> Result<Report> {
    let s = &spec.scenario;
    let d = s.decomposition();
    let table_grid = opts.grid.unwrap_or(8);
    let check_grid = opts.grid.unwrap_or(spec.witness().grid_denominator);
    let mut w = spec.witness().clone();
    w.grid_denominator = check_grid;

    let mut q: BTreeMap<String, String> = BTreeMap::new();
    q.insert("M".into(), d.m().to_string());
    q.insert("C".into(), d.c_set().to_string());
    q.insert("M\\C".into(), d.m_minus_c().to_string());
    q.insert("f0".into(), d.f0().to_string());
    q.insert("f1".into(), d.f1().to_string());

    let mut tables: BTreeMap<String, Value> = BTreeMap::new();
    let mut verdicts: BTreeMap<String, Verdict> = BTreeMap::new();
    let mut extra_verdicts: BTreeMap<String, Value> = BTreeMap::new();
    let mut findings: Vec<Finding> = Vec::new();

    for warning in d.warnings() {
        findings.push(Finding::new("forced_generator", warning.clone()));
    }

    let grid = match command {
        Command::Check | Command::Axioms => check_grid,
        _ => table_grid,
    };
    match command {
        Command::Decompose => {}
        Command::Gm => {
            if let Some(x) = &opts.at {
                tables.insert(
                    "gm_at".into(),
                    json!({"x": x.to_string(), "value": d.g_m(x).to_string()}),
                );
            }
            let rows: Vec<[String; 2]> = gm_grid(s, table_grid)
                .iter()
                .map(|x| [x.to_string(), d.g_m(x).to_string()])
                .collect();
            tables.insert("gm".into(), json!({"columns": ["x", "G_M(x)"], "rows": rows}));
        }
        Command::OtimesTable => {
            let pts = WitnessConfig::with_grid(table_grid).y_witnesses(d);
            tables.insert("otimes".into(), matrix(&pts, |x, y| s.otimes(x, y))?);
        }
        Command::TTable => {
            let pts = WitnessConfig::with_grid(table_grid).unit_grid();
            tables.insert("t".into(), matrix(&pts, |x, y| s.t_eval(x, y))?);
        }
        Command::Check => {
            let m = opts.method;
            if m.includes(Method::Sufficient) {
                verdicts.insert("sufficient".into(), check_sufficient(s)?);
            }
            if m.includes(Method::Fcondition) {
                verdicts.insert("fcondition".into(), check_fcondition(s, &w)?);
                tables.insert(
                    "jfrak".into(),
                    serde_json::to_value(jfrak(s, &w)?).expect("serializable"),
                );
            }
            if m.includes(Method::Oracle) {
                verdicts.insert("t_oracle".into(), oracle_t(s, &w)?);
                verdicts.insert("otimes_oracle".into(), oracle_otimes(s, &w)?);
            }
            if m == Method::All {
                set_quantities(s, &w, &mut q)?;
            }
            findings.extend(cross_check(&verdicts));
        }
        Command::Axioms => {
            let kinds = [
                AxiomKind::TNorm,
                AxiomKind::TConorm,
                AxiomKind::TSubnorm,
                AxiomKind::TSuperconorm,
            ];
            let mut by_fn = serde_json::Map::new();
            for (label, modified) in [("T", false), ("T_modified", true)] {
                let mut fams = serde_json::Map::new();
                for k in kinds {
                    let r = if modified {
                        axiom_check(|x: &ExtRat, y: &ExtRat| s.t_modified(x, y), k, &w)?
                    } else {
                        axiom_check(|x: &ExtRat, y: &ExtRat| s.t_eval(x, y), k, &w)?
                    };
                    fams.insert(k.to_string(), serde_json::to_value(r).expect("serializable"));
                }
                by_fn.insert(label.to_string(), Value::Object(fams));
            }
            extra_verdicts.insert("axioms".into(), Value::Object(by_fn));
        }
    }

    for (k, v) in &verdicts {
        q.insert(k.clone(), v.outcome.to_string());
    }
    for (key, reference) in &spec.doc.reference {
        if let Some(computed) = q.get(key) {
            findings.extend(compare_reference(key, reference, computed));
        }
    }

    let mut verdict_map: BTreeMap<String, Value> = verdicts.iter().map(|(k, v)| (k.clone(), verdict_json(v))).collect();
    verdict_map.extend(extra_verdicts);
    Ok(Report {
        scenario: spec.doc.clone(),
        class_f: s.generator().class_f_membership(),
        decomposition: serde_json::to_value(d).expect("serializable"),
        tables,
        verdicts: verdict_map,
        findings,
        meta: Meta {
            tool: "genassoc",
            version: env!("CARGO_PKG_VERSION"),
            command,
            method: opts.method,
            grid_denominator: grid,
        },
        quantities: q,
        verdict_values: verdicts,
    })
}

/// Disagreements between criteria and the oracles.
fn cross_check(v: &BTreeMap<String, Verdict>) -> Vec<Finding> {
    use Outcome::*;
    let mut out = Vec::new();
    let t = v.get("t_oracle").map(|x| x.outcome);
    let o = v.get("otimes_oracle").map(|x| x.outcome);
    if let (Some(t), Some(o)) = (t, o) {
        if t != o {
            out.push(
                Finding::new(
                    "oracle_disagreement",
                    format!("T is {t} on its cube while the induced operation on M is {o} on witnesses"),
                )
                .detail("t_oracle", t)
                .detail("otimes_oracle", o),
            );
        }
    }
    let Some(t) = t else { return out };
    for name in ["sufficient", "fcondition"] {
        let Some(c) = v.get(name) else { continue };
        let says = match c.outcome {
            Associative | ConditionHolds => Some(Associative),
            NotAssociative => Some(NotAssociative),
            NotApplicable | Inconclusive => None,
        };
        match says {
            Some(s) if s != t => out.push(
                Finding::new(
                    "criterion_contradiction",
                    format!("{name} says {} but the T oracle says {t}", c.outcome),
                )
                .detail("criterion", name)
                .detail("t_oracle", t),
            ),
            None => out.push(
                Finding::new(
                    "oracle_fallback",
                    format!("{name} is {}; the T oracle verdict {t} stands", c.outcome),
                )
                .detail("criterion", name)
                .detail("t_oracle", t),
            ),
            _ => {}
        }
    }
    out
}
