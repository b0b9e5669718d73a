//! Check catalog, body corpus, suite runner and extremizer search.
//!
//! A check is a trait object registered by id. Each (check, body) cell
//! evaluates one or more comparisons; the worst and tightest of them
//! decides the cell's status and is reported as its `lhs`/`rhs`.

mod body;
mod checks;
mod compare;
mod context;
mod search;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use body::{default_corpus, parse_bodies, Body, BodySource, BodySpec, Halfspaces};
pub use checks::{check, checks};
pub use compare::{binding, judge, Comparison, Relation, Side, Status, IDENTITY_SIGMA, SIGMA};
pub use context::{Context, GrassBatch, Placed, Sampled, SphereBatch, PLACEMENTS};
pub use search::{extremizer_search, SearchConfig, SearchStep, SearchTrace, SEARCH_FAMILIES, SEARCH_IDS};

use crate::error::{GeomError, Result};

/// Which bodies a check applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BodyClass {
    Any,
    Zonoid,
    /// Any body, evaluated after applying named positions.
    Positioned,
    BallApprox,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSpec {
    pub id: &'static str,
    /// The inequality or identity, in words.
    pub claim: &'static str,
    pub class: BodyClass,
    /// Free parameters the check ranges over.
    pub parameters: &'static str,
}

/// What a check hands back: its comparisons plus free-form detail.
#[derive(Debug, Clone, Default)]
pub struct Evaluation {
    pub comparisons: Vec<Comparison>,
    /// Overrides the reported sides when the headline quantity is not one
    /// of the comparisons.
    pub headline: Option<(Side, Side)>,
    pub detail: BTreeMap<String, Value>,
    pub skip: Option<String>,
}

impl Evaluation {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Evaluation { skip: Some(reason.into()), ..Default::default() }
    }

    pub fn push(&mut self, c: Comparison) {
        self.comparisons.push(c);
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.detail.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }
}

pub trait Check: Send + Sync {
    fn spec(&self) -> CheckSpec;
    fn evaluate(&self, ctx: &Context) -> Result<Evaluation>;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub body: String,
    pub n: usize,
    pub lhs: Option<Side>,
    pub rhs: Option<Side>,
    pub ratio: Option<f64>,
    pub status: Status,
    pub detail: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Directions per sphere sample.
    pub samples: usize,
    /// Subspaces per Grassmannian sample.
    pub grass_samples: usize,
    /// Inner Kubota samples for quermassintegrals of a single shadow.
    pub inner_samples: usize,
    /// Inner samples per subspace in the FGM check.
    pub fgm_inner_samples: usize,
    /// Subspaces for the per-subspace checks.
    pub frames: usize,
    pub ghp_directions: usize,
    pub tol: f64,
    pub seed: u64,
    pub position_tol: f64,
    pub position_max_iter: usize,
    pub mean_width_samples: usize,
    pub mean_width_steps: usize,
    /// Worker threads; `None` uses every core.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 20_000,
            grass_samples: 10_000,
            inner_samples: 4_000,
            fgm_inner_samples: 1_000,
            frames: 50,
            ghp_directions: 100,
            tol: 0.05,
            seed: 0,
            position_tol: 1e-6,
            position_max_iter: 500,
            mean_width_samples: 2_000,
            mean_width_steps: 30,
            jobs: None,
        }
    }
}

impl SuiteConfig {
    /// Sphere sample size `s`, Grassmannian samples `s / 2`.
    pub fn with_samples(mut self, s: usize) -> Self {
        self.samples = s.max(1);
        self.grass_samples = (s / 2).max(1);
        self
    }
}

/// Evaluates one check on a prepared body context.
pub fn run_check(check: &dyn Check, ctx: &Context) -> CheckResult {
    let spec = check.spec();
    let mut out = CheckResult {
        id: spec.id.to_string(),
        body: ctx.body.name.clone(),
        n: ctx.n(),
        lhs: None,
        rhs: None,
        ratio: None,
        status: Status::Skipped,
        detail: BTreeMap::new(),
    };
    let inadmissible = match spec.class {
        BodyClass::Zonoid if !ctx.body.is_zonoid() => Some("not a zonotope"),
        BodyClass::BallApprox if !ctx.body.ball_approx => Some("not a ball approximant"),
        _ => None,
    };
    if let Some(reason) = inadmissible {
        out.detail.insert("reason".into(), reason.into());
        return out;
    }
    let ev = match check.evaluate(ctx) {
        Ok(ev) => ev,
        Err(e) => {
            out.status = Status::Error;
            out.detail.insert("error".into(), e.to_string().into());
            return out;
        }
    };
    out.detail = ev.detail;
    if let Some(reason) = ev.skip {
        out.detail.insert("reason".into(), reason.into());
        return out;
    }
    let Some(b) = binding(&ev.comparisons) else {
        out.detail.insert("reason".into(), "nothing to compare".into());
        return out;
    };
    out.status = b.status;
    let (lhs, rhs) = ev.headline.unwrap_or((b.lhs, b.rhs));
    out.lhs = Some(lhs);
    out.rhs = Some(rhs);
    out.ratio = Some(lhs.value / rhs.value);
    out.detail.insert("binding".into(), b.label.clone().into());
    summarize(&ev.comparisons, &mut out.detail);
    out
}

/// Lists every comparison for small families, a summary for large ones.
fn summarize(cs: &[Comparison], detail: &mut BTreeMap<String, Value>) {
    if cs.len() <= 12 {
        detail.insert("variants".into(), serde_json::to_value(cs).unwrap_or(Value::Null));
        return;
    }
    let ratios = cs.iter().map(|c| c.ratio);
    let min = ratios.clone().fold(f64::INFINITY, f64::min);
    let max = ratios.fold(f64::NEG_INFINITY, f64::max);
    let mut counts = BTreeMap::new();
    for c in cs {
        *counts.entry(c.status.as_str()).or_insert(0usize) += 1;
    }
    detail.insert("variant_count".into(), cs.len().into());
    detail.insert("ratio_min".into(), min.into());
    detail.insert("ratio_max".into(), max.into());
    detail.insert("status_counts".into(), serde_json::to_value(counts).unwrap_or(Value::Null));
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub ids: Vec<String>,
    pub bodies: Vec<BodySpec>,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn any_fail(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,body,n,lhs,lhs_err,rhs,rhs_err,ratio,status\n");
        let side = |x: &Option<Side>| match x {
            Some(v) => (fmt_sig(v.value), fmt_sig(v.stderr)),
            None => (String::new(), String::new()),
        };
        for r in &self.results {
            let (l, le) = side(&r.lhs);
            let (h, he) = side(&r.rhs);
            let ratio = r.ratio.map(fmt_sig).unwrap_or_default();
            let _ = writeln!(s, "{},\"{}\",{},{l},{le},{h},{he},{ratio},{}", r.id, r.body, r.n, r.status.as_str());
        }
        s
    }
}

/// `x` with 9 significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let s = format!("{:.*}", (8 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.8e}", x);
        let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{e}")
    }
}

fn select(ids: &[String]) -> Result<Vec<Box<dyn Check>>> {
    if ids.is_empty() {
        return Ok(checks());
    }
    ids.iter().map(|id| check(id)).collect()
}

/// All admissible checks on one body, in registry order.
pub fn run_body(spec: &BodySpec, checks: &[Box<dyn Check>], cfg: &SuiteConfig) -> Vec<CheckResult> {
    match spec.build() {
        Ok(body) => {
            let ctx = Context::new(&body, cfg);
            checks.iter().map(|c| run_check(c.as_ref(), &ctx)).collect()
        }
        Err(e) => checks
            .iter()
            .map(|c| CheckResult {
                id: c.spec().id.to_string(),
                body: spec.label(),
                n: spec.dim,
                lhs: None,
                rhs: None,
                ratio: None,
                status: Status::Error,
                detail: BTreeMap::from([("error".to_string(), Value::from(e.to_string()))]),
            })
            .collect(),
    }
}

/// Runs `ids` (all when empty) on every body. Bodies run in parallel; the
/// report order and contents do not depend on the thread count.
pub fn run_suite(bodies: &[BodySpec], ids: &[String], cfg: &SuiteConfig) -> Result<Report> {
    let checks = select(ids)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| GeomError::Inadmissible(format!("thread pool: {e}")))?;
    let per_body: Vec<Vec<CheckResult>> =
        pool.install(|| bodies.par_iter().map(|b| run_body(b, &checks, cfg)).collect());
    Ok(Report {
        config: cfg.clone(),
        ids: checks.iter().map(|c| c.spec().id.to_string()).collect(),
        bodies: bodies.to_vec(),
        results: per_body.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig(24.0), "24");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265");
        assert_eq!(fmt_sig(-0.000123456789123), "-0.000123456789");
        assert_eq!(fmt_sig(1.5e-9), "1.5e-9");
        assert_eq!(fmt_sig(123456789012.0), "1.23456789e11");
        assert_eq!(fmt_sig(0.0), "0");
    }
}
