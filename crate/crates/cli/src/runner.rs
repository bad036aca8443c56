//! Running checks over parsed specs and collecting the report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use zpdlab_core::deriv::{
    check_condition_m, solve_tag, verify_lemma_f, verify_theorem_d1, verify_theorem_d2, verify_theorem_dd2,
    ConditionTag,
};
use zpdlab_core::idempotents::check_full_idempotent_span;
use zpdlab_core::sampling::{random_vector, rng};
use zpdlab_core::zero_products::{PairMode, PairSampler};
use zpdlab_core::zpd::{bilinear_space_from_pairs, check_prop_n, check_zpd, verify_ds_identities, Product};
use zpdlab_core::{BilinearMap, Certificate, IdempotentFamily, Outcome, Vector, Witness};

use crate::spec::{digest, parse_spec, Spec, SpecError};

pub const TOOL: &str = "zpdlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    D1,
    D2,
    Dd2,
    Ds,
    PropN,
    LemmaF,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [Theorem::D1, Theorem::D2, Theorem::Dd2, Theorem::Ds, Theorem::PropN, Theorem::LemmaF];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::D1 => "d1",
            Theorem::D2 => "d2",
            Theorem::Dd2 => "dd2",
            Theorem::Ds => "ds",
            Theorem::PropN => "prop-n",
            Theorem::LemmaF => "lemma-f",
        }
    }
}

#[derive(Debug, Error)]
#[error("unknown theorem `{0}` (expected one of d1, d2, dd2, ds, prop-n, lemma-f)")]
pub struct UnknownTheorem(String);

impl FromStr for Theorem {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
        Theorem::ALL.into_iter().find(|t| t.name() == wanted).ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Zpd,
    Zjpd,
    ImSpan,
    ConditionM,
    Solve(ConditionTag),
    Verify(Theorem),
}

impl Check {
    /// Everything `suite` runs, in report order.
    pub fn suite() -> Vec<Check> {
        let mut checks = vec![Check::Zpd, Check::Zjpd, Check::ImSpan, Check::ConditionM];
        checks.extend(Theorem::ALL.into_iter().map(Check::Verify));
        checks
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Zpd => f.write_str("check-zpd"),
            Check::Zjpd => f.write_str("check-zjpd"),
            Check::ImSpan => f.write_str("check-im-span"),
            Check::ConditionM => f.write_str("check-condition-m"),
            Check::Solve(tag) => write!(f, "solve --tag {tag}"),
            Check::Verify(t) => write!(f, "verify --theorem {}", t.name()),
        }
    }
}

/// A spec document with the name it is reported under.
#[derive(Debug, Clone)]
pub struct SpecSource {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub specs: Vec<SpecSource>,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// Pair budget; `None` means `50·n` for an algebra of dimension `n`.
    pub budget: Option<usize>,
    /// Random samples for the identity checks (ds, lemma-f).
    pub samples: usize,
    /// Target dimension of the bilinear maps in ds and prop-n.
    pub target_dim: usize,
}

impl RunConfig {
    pub fn new(command: impl Into<String>, specs: Vec<SpecSource>, checks: Vec<Check>) -> Self {
        RunConfig { command: command.into(), specs, checks, seed: 0, budget: None, samples: 1000, target_dim: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub spec: String,
    pub input_digest: String,
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub outcome: Option<Outcome>,
    pub dims: BTreeMap<String, usize>,
    pub witness: Option<Witness>,
    pub generators_used: usize,
    pub generators: Vec<(Vector, Vector)>,
    pub note: Option<String>,
    pub error: Option<String>,
}

impl Record {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.outcome == Some(Outcome::Refuted)
    }
}

/// Everything that is reproducible from the inputs and the seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportBody {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub spec: String,
    pub check: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub body: ReportBody,
    pub timings: Vec<Timing>,
}

impl Report {
    /// 0 when nothing was refuted or failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.body.records.iter().any(Record::failed) {
            1
        } else {
            0
        }
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report body serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Error)]
#[error("{name}: {source}")]
pub struct InputError {
    pub name: String,
    #[source]
    pub source: SpecError,
}

type CheckResult = Result<Certificate, String>;

fn need_family(spec: &Spec) -> Result<&IdempotentFamily, String> {
    spec.family.as_ref().ok_or_else(|| "no idempotent family: the algebra has no standard one and none was given".into())
}

/// A random map in the (sampled) space of bilinear maps killing two-sided
/// zero pairs, together with that space's dimension.
fn sample_g_map(spec: &Spec, family: &IdempotentFamily, t: usize, seed: u64, budget: usize) -> (BilinearMap, usize) {
    let alg = &spec.algebra;
    let pairs = PairSampler::with_family(alg, PairMode::TwoSided, seed, family.elements().to_vec()).take(budget);
    let space = bilinear_space_from_pairs(alg, t, pairs, false);
    let mut r = rng(seed);
    let mut v = Vector::zeros(space.ambient_dim());
    for b in space.basis() {
        v.axpy(&random_vector(&mut r, 1)[0], &b);
    }
    (BilinearMap::from_vectorized(alg.dim(), t, &v), space.dim())
}

fn run_check(spec: &Spec, check: Check, cfg: &RunConfig, budget: usize, params: &mut BTreeMap<String, Value>) -> CheckResult {
    let seed = cfg.seed;
    let module = &spec.module;
    match check {
        Check::Zpd => Ok(check_zpd(&spec.algebra, Product::Ordinary, seed, budget)),
        Check::Zjpd => Ok(check_zpd(&spec.algebra, Product::Jordan, seed, budget)),
        Check::ImSpan => Ok(check_full_idempotent_span(&spec.algebra, need_family(spec)?)),
        Check::ConditionM => Ok(check_condition_m(module, &spec.ideal)),
        Check::Solve(tag) => {
            params.insert("tag".into(), json!(tag.name()));
            let space = solve_tag(module, tag, seed, budget);
            // exact for definitions; sampled conditions only bound from above
            let mut cert = if tag.is_sampled() { Certificate::inconclusive() } else { Certificate::certified() };
            cert = cert
                .with_seed(seed)
                .with_dim("unknowns", space.source_dim() * space.target_dim())
                .with_dim("solution", space.dim())
                .with_witness(Witness::Maps { label: tag.name().into(), maps: space.space().basis() });
            if tag.is_sampled() {
                cert.generators_used = budget;
            }
            Ok(cert)
        }
        Check::Verify(theorem) => {
            params.insert("theorem".into(), json!(theorem.name()));
            let text = |e: &dyn std::error::Error| e.to_string();
            match theorem {
                Theorem::D1 => verify_theorem_d1(module, &spec.ideal, need_family(spec)?, seed, budget).map_err(|e| text(&e)),
                Theorem::D2 => verify_theorem_d2(module, &spec.ideal, need_family(spec)?, seed, budget).map_err(|e| text(&e)),
                Theorem::Dd2 => verify_theorem_dd2(module, &spec.ideal, need_family(spec)?, seed, budget).map_err(|e| text(&e)),
                Theorem::Ds => {
                    params.insert("samples".into(), json!(cfg.samples));
                    params.insert("target_dim".into(), json!(cfg.target_dim));
                    let family = need_family(spec)?;
                    let (phi, dim) = sample_g_map(spec, family, cfg.target_dim, seed, budget);
                    verify_ds_identities(&spec.algebra, &phi, family, cfg.samples, seed, budget)
                        .map(|c| c.with_dim("bilinear_space", dim))
                        .map_err(|e| text(&e))
                }
                Theorem::PropN => {
                    params.insert("target_dim".into(), json!(cfg.target_dim));
                    check_prop_n(&spec.algebra, need_family(spec)?, cfg.target_dim, seed, budget).map_err(|e| text(&e))
                }
                Theorem::LemmaF => {
                    params.insert("samples".into(), json!(cfg.samples));
                    Ok(verify_lemma_f(module, cfg.samples, seed))
                }
            }
        }
    }
}

/// Parses every spec first (any failure is an input error), then runs each
/// check on each spec in order.
pub fn run(cfg: &RunConfig) -> Result<Report, InputError> {
    let parsed: Vec<(&SpecSource, Spec)> = cfg
        .specs
        .iter()
        .map(|src| parse_spec(&src.text).map(|s| (src, s)).map_err(|source| InputError { name: src.name.clone(), source }))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    let mut timings = Vec::new();
    for (src, spec) in &parsed {
        let input_digest = digest(&src.text);
        let budget = cfg.budget.unwrap_or(50 * spec.algebra.dim());
        for &check in &cfg.checks {
            let mut params = BTreeMap::new();
            params.insert("seed".to_string(), json!(cfg.seed));
            params.insert("budget".to_string(), json!(budget));
            let started = Instant::now();
            let result = run_check(spec, check, cfg, budget, &mut params);
            timings.push(Timing {
                spec: src.name.clone(),
                check: check.to_string(),
                millis: started.elapsed().as_secs_f64() * 1000.0,
            });
            let base = Record {
                spec: src.name.clone(),
                input_digest: input_digest.clone(),
                check: check.to_string(),
                params,
                outcome: None,
                dims: BTreeMap::new(),
                witness: None,
                generators_used: 0,
                generators: Vec::new(),
                note: None,
                error: None,
            };
            records.push(match result {
                Ok(c) => Record {
                    outcome: Some(c.outcome),
                    dims: c.dims,
                    witness: c.witness,
                    generators_used: c.generators_used,
                    generators: c.generators,
                    note: c.note,
                    ..base
                },
                Err(e) => Record { error: Some(e), ..base },
            });
        }
    }
    let body = ReportBody {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        command: cfg.command.clone(),
        seed: cfg.seed,
        records,
    };
    Ok(Report { body, timings })
}

/// The specs `suite` runs when none are given.
pub fn builtin_suite() -> Vec<SpecSource> {
    [
        ("matrix(2)", "algebra = matrix(2)\n"),
        ("matrix(3)", "algebra = matrix(3)\n"),
        ("triangular(2)", "algebra = triangular(2)\n"),
        ("triangular(3)", "algebra = triangular(3)\n"),
        ("block([2,1]) ambient", "algebra = block([2,1])\nbimodule = ambient\n"),
        ("remark", "algebra = remark\n"),
    ]
    .into_iter()
    .map(|(name, text)| SpecSource { name: format!("builtin:{name}"), text: text.to_string() })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn source(text: &str) -> SpecSource {
        SpecSource { name: "inline".into(), text: text.into() }
    }

    #[test]
    fn empty_check_list_gives_empty_report() {
        let report = run(&RunConfig::new("check", vec![source("algebra = matrix(2)")], vec![])).unwrap();
        assert!(report.body.records.is_empty());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn refutation_sets_exit_code() {
        let cfg = RunConfig::new(
            "check-condition-m",
            vec![source("algebra = triangular(2)\nideal = [[0, 1, 0]]")],
            vec![Check::ConditionM],
        );
        let report = run(&cfg).unwrap();
        assert_eq!(report.body.records[0].outcome, Some(Outcome::Refuted));
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn hypothesis_failures_are_recorded_errors() {
        let cfg = RunConfig::new(
            "verify",
            vec![source("algebra = triangular(2)\nideal = [[0, 1, 0]]")],
            vec![Check::Verify(Theorem::D2)],
        );
        let report = run(&cfg).unwrap();
        assert!(report.body.records[0].error.as_deref().unwrap().contains("condition"));
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn default_budget_scales_with_dimension() {
        let report = run(&RunConfig::new("check-zpd", vec![source("algebra = triangular(3)")], vec![Check::Zpd])).unwrap();
        assert_eq!(report.body.records[0].params["budget"], json!(300));
        assert_eq!(report.body.records[0].outcome, Some(Outcome::Certified));
    }

    #[test]
    fn ds_on_sampled_g_maps() {
        let mut cfg = RunConfig::new(
            "verify",
            vec![source("algebra = matrix(2)"), source("algebra = triangular(3)")],
            vec![Check::Verify(Theorem::Ds)],
        );
        cfg.samples = 100;
        let report = run(&cfg).unwrap();
        for r in &report.body.records {
            assert_eq!(r.outcome, Some(Outcome::Certified), "{r:?}");
        }
    }

    #[test]
    fn theorem_names_parse() {
        assert_eq!("prop_n".parse::<Theorem>().unwrap(), Theorem::PropN);
        assert!("d9".parse::<Theorem>().is_err());
    }
}
