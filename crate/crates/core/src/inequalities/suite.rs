//! Batch evaluation of inequality checks over parameter grids.
//!
//! A suite is a JSON document:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "entries": [
//!     {
//!       "inequality": "young",
//!       "generator": "identity",
//!       "params": {"b": 2.0},
//!       "grid": {"p": [1.5, 2, 3], "a": {"random": {"lo": 0.5, "hi": 2, "count": 4}}}
//!     }
//!   ]
//! }
//! ```
//!
//! Grid axes are expanded as a cartesian product in lexicographic order of
//! their names, with the last name varying fastest. Grid values override
//! `params`. An entry without a grid yields a single item; an axis with no
//! values yields none.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    gla_means, hermite_hadamard_curved, hh_refined_curved, holder, holder_general, holder_interpolation, interpolation_exponent, minkowski,
    minkowski_extended, young, Curvature, InequalityVerdict,
};
use crate::calculus::QuadratureConfig;
use crate::error::{PseudoError, Result};
use crate::funcspec::{self, Expr};
use crate::generator::{Direction, GeneratorDoc, GeneratorSpec, PseudoContext};

/// Names accepted in the `inequality` field.
pub const INEQUALITIES: &[&str] = &[
    "young",
    "holder",
    "holder_general",
    "holder_interpolation",
    "minkowski",
    "minkowski_extended",
    "hermite_hadamard",
    "hh_refined",
    "gla_means",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRef {
    Name(String),
    Inline(GeneratorDoc),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomAxis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridAxis {
    Values(Vec<f64>),
    Random { random: RandomAxis },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    /// row name; defaults to the inequality name
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub inequality: String,
    /// falls back to the caller's context when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorRef>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub functions: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<BTreeMap<String, GridAxis>>,
    #[serde(default)]
    pub curvature: Curvature,
}

impl SuiteEntry {
    pub fn new(inequality: impl Into<String>) -> Self {
        SuiteEntry {
            label: None,
            inequality: inequality.into(),
            generator: None,
            params: BTreeMap::new(),
            functions: BTreeMap::new(),
            interval: None,
            grid: None,
            curvature: Curvature::Convex,
        }
    }
}

fn default_schema_version() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub entries: Vec<SuiteEntry>,
}

impl Suite {
    pub fn new(entries: Vec<SuiteEntry>) -> Self {
        Suite {
            schema_version: 1,
            entries,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let suite: Suite = serde_json::from_str(text).map_err(|e| PseudoError::Config(format!("suite JSON: {e}")))?;
        if suite.schema_version != 1 {
            return Err(PseudoError::Config(format!(
                "unsupported suite schema_version {}",
                suite.schema_version
            )));
        }
        Ok(suite)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemError {
    pub kind: String,
    pub message: String,
}

impl From<&PseudoError> for ItemError {
    fn from(e: &PseudoError) -> Self {
        ItemError {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteItem {
    pub entry: usize,
    pub index: usize,
    pub name: String,
    pub inequality: String,
    pub generator: String,
    pub direction: Direction,
    pub params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<InequalityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ItemError>,
}

impl SuiteItem {
    pub fn holds(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub held: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.summary.held == self.summary.total
    }
}

struct Prepared<'a> {
    entry: &'a SuiteEntry,
    ctx: PseudoContext,
    functions: BTreeMap<String, Expr>,
}

fn resolve_context(entry: &SuiteEntry, fallback: Option<&PseudoContext>) -> Result<PseudoContext> {
    match &entry.generator {
        Some(GeneratorRef::Name(name)) => PseudoContext::builtin(name),
        Some(GeneratorRef::Inline(doc)) => PseudoContext::new(GeneratorSpec::from_doc(doc)?),
        None => fallback
            .cloned()
            .ok_or_else(|| PseudoError::Config("suite entry names no generator and no default was given".into())),
    }
}

fn prepare<'a>(i: usize, entry: &'a SuiteEntry, fallback: Option<&PseudoContext>) -> Result<Prepared<'a>> {
    let ctx = resolve_context(entry, fallback).map_err(|e| match e {
        PseudoError::Config(m) => PseudoError::Config(format!("entry {i}: {m}")),
        other => PseudoError::Config(format!("entry {i}: {other}")),
    })?;
    let mut functions = BTreeMap::new();
    for (name, src) in &entry.functions {
        let expr = funcspec::parse(src).map_err(|e| PseudoError::Config(format!("entry {i}, function `{name}`: {e}")))?;
        functions.insert(name.clone(), expr);
    }
    Ok(Prepared { entry, ctx, functions })
}

fn axis_values(axis: &GridAxis, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    match axis {
        GridAxis::Values(v) => Ok(v.clone()),
        GridAxis::Random { random } => {
            if !(random.lo.is_finite() && random.hi.is_finite() && random.lo < random.hi) {
                return Err(PseudoError::Config(format!(
                    "random axis needs lo < hi, got [{}, {}]",
                    random.lo, random.hi
                )));
            }
            Ok((0..random.count).map(|_| rng.gen_range(random.lo..random.hi)).collect())
        }
    }
}

/// Expands an entry's grid into parameter sets in deterministic order.
fn expand(entry: &SuiteEntry, entry_index: usize, seed: u64) -> Result<Vec<BTreeMap<String, f64>>> {
    let Some(grid) = &entry.grid else {
        return Ok(vec![entry.params.clone()]);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(entry_index as u64);
    let axes = grid
        .iter()
        .map(|(name, axis)| Ok((name.as_str(), axis_values(axis, &mut rng)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![entry.params.clone()];
    for (name, values) in axes {
        out = out
            .into_iter()
            .flat_map(|base| {
                values.iter().map(move |&v| {
                    let mut p = base.clone();
                    p.insert(name.to_string(), v);
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

fn param(params: &BTreeMap<String, f64>, name: &str) -> Result<f64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| PseudoError::Parameter(format!("missing parameter `{name}`")))
}

impl Prepared<'_> {
    fn function(&self, name: &str) -> Result<&Expr> {
        self.functions
            .get(name)
            .ok_or_else(|| PseudoError::Parameter(format!("missing function `{name}`")))
    }

    fn interval(&self) -> Result<(f64, f64)> {
        self.entry
            .interval
            .map(|[a, b]| (a, b))
            .ok_or_else(|| PseudoError::Parameter("missing interval".into()))
    }

    fn run(&self, params: &BTreeMap<String, f64>, cfg: &QuadratureConfig) -> Result<InequalityVerdict> {
        let ctx = &self.ctx;
        let p = |name: &str| param(params, name);
        let curvature = self.entry.curvature;
        match self.entry.inequality.as_str() {
            "young" => young(ctx, p("a")?.into(), p("b")?.into(), p("p")?),
            "holder" => {
                let (a, b) = self.interval()?;
                holder(ctx, self.function("f")?, self.function("h")?, p("p")?, a, b, cfg)
            }
            "holder_general" => {
                let (a, b) = self.interval()?;
                let (f, h) = (self.function("f")?, self.function("h")?);
                holder_general(ctx, f, h, p("p")?, p("q")?, p("r")?, a, b, cfg)
            }
            "holder_interpolation" => {
                let (a, b) = self.interval()?;
                let (t, pp, q) = (p("t")?, p("p")?, p("q")?);
                let r = params.get("r").copied().unwrap_or_else(|| interpolation_exponent(t, pp, q));
                holder_interpolation(ctx, self.function("f")?, t, pp, q, r, a, b, cfg)
            }
            "minkowski" => {
                let (a, b) = self.interval()?;
                minkowski(ctx, self.function("f")?, self.function("h")?, p("p")?, a, b, cfg)
            }
            "minkowski_extended" => {
                let (a, b) = self.interval()?;
                minkowski_extended(ctx, self.function("f")?, self.function("h")?, p("p")?, a, b, cfg)
            }
            "hermite_hadamard" => {
                let (a, b) = self.interval()?;
                Ok(hermite_hadamard_curved(ctx, self.function("f")?, a, b, curvature, cfg)?.verdict("hermite_hadamard"))
            }
            "hh_refined" => {
                let (a, b) = self.interval()?;
                let chain = hh_refined_curved(ctx, self.function("f")?, a, b, p("lambda")?, curvature, cfg)?;
                Ok(chain.verdict("hh_refined"))
            }
            "gla_means" => Ok(gla_means(ctx, p("u")?.into(), p("v")?.into())?.verdict()),
            other => Err(PseudoError::UnknownInequality(other.to_string())),
        }
    }
}

/// Runs every grid item of every entry.
///
/// Generators and function expressions are resolved up front, and a failure
/// there aborts the whole run. Failures of individual items are recorded on
/// the item. Items are returned in entry order, then grid order.
pub fn check_suite(suite: &Suite, default_ctx: Option<&PseudoContext>, cfg: &QuadratureConfig, seed: u64) -> Result<SuiteReport> {
    cfg.validate()?;
    let prepared = suite
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| Ok((prepare(i, e, default_ctx)?, expand(e, i, seed)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut items = Vec::new();
    let mut summary = SuiteSummary::default();
    for (entry_index, (prep, grid)) in prepared.iter().enumerate() {
        let name = prep.entry.label.clone().unwrap_or_else(|| prep.entry.inequality.clone());
        for params in grid {
            let outcome = prep.run(params, cfg);
            summary.total += 1;
            let (verdict, error) = match outcome {
                Ok(mut v) => {
                    v.name = name.clone();
                    if v.holds {
                        summary.held += 1;
                    } else {
                        summary.failed += 1;
                    }
                    (Some(v), None)
                }
                Err(e) => {
                    summary.errors += 1;
                    (None, Some(ItemError::from(&e)))
                }
            };
            items.push(SuiteItem {
                entry: entry_index,
                index: items.len(),
                name: name.clone(),
                inequality: prep.entry.inequality.clone(),
                generator: prep.ctx.name().to_string(),
                direction: prep.ctx.direction(),
                params: params.clone(),
                verdict,
                error,
            });
        }
    }
    Ok(SuiteReport { items, summary })
}
