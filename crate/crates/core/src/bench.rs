//! Single runs, their printable records, and plan-driven sweeps.
//!
//! A plan is plain text with one directive per line:
//!
//! ```text
//! instance cycle:12                 # generator spec, optional seed=S weights=M
//! instance file:graphs/p7.txt
//! algo k-2k k=2
//! algo k-2l k=4 l=2
//! seeds 0..5                        # or an explicit list: seeds 1 4 9
//! trials 3
//! with-exact
//! ```
//!
//! Every `instance × algo × seed` combination is one run.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{approximate_radius, gonzalez_2approx, ApproxConfig, Decider, DEFAULT_DECIDER_BUDGET};
use crate::error::{parse_err, KCenterError, Result};
use crate::exact::{exact_k_radius_with_budget, DEFAULT_EXACT_BUDGET};
use crate::generators::{with_random_weights, GraphKind};
use crate::graph::{Dist, Graph, Vertex};

/// Algorithm selector for a run.
#[derive(Clone, Debug, PartialEq)]
pub enum Algo {
    Exact,
    Gonzalez,
    Approx(Decider),
}

impl Algo {
    pub fn id(&self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Gonzalez => "gonzalez",
            Algo::Approx(d) => d.id(),
        }
    }

    /// `(α, β)` the result must satisfy against the optimum.
    pub fn guarantee(&self, k: usize, weight_bound: u64) -> (f64, f64) {
        match self {
            Algo::Exact => (1.0, 0.0),
            Algo::Gonzalez => (2.0, 0.0),
            Algo::Approx(d) => d.guarantee(k, weight_bound),
        }
    }
}

impl FromStr for Algo {
    type Err = KCenterError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exact" => Algo::Exact,
            "gonzalez" => Algo::Gonzalez,
            other => Algo::Approx(other.parse()?),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveParams {
    pub algo: Algo,
    pub k: usize,
    /// Guided levels for `k-2l`.
    pub l: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub omega: f64,
    pub sample_const: f64,
    pub budget: u128,
    pub exact_budget: u128,
    pub fresh_samples: Option<bool>,
    pub with_exact: bool,
    pub timing: bool,
}

impl SolveParams {
    pub fn new(algo: Algo, k: usize) -> Self {
        let d = ApproxConfig::default();
        Self {
            algo,
            k,
            l: None,
            seed: 0,
            trials: 1,
            omega: d.omega,
            sample_const: d.sample_const,
            budget: DEFAULT_DECIDER_BUDGET,
            exact_budget: DEFAULT_EXACT_BUDGET,
            fresh_samples: None,
            with_exact: false,
            timing: true,
        }
    }

    fn config(&self) -> ApproxConfig {
        ApproxConfig {
            seed: self.seed,
            sample_const: self.sample_const,
            omega: self.omega,
            budget: self.budget,
            trials: self.trials,
            fresh_samples: self.fresh_samples,
        }
    }

    fn decider(&self) -> Result<Option<Decider>> {
        Ok(match &self.algo {
            Algo::Approx(Decider::Step2l { schedule, .. }) => {
                let l = self
                    .l
                    .ok_or_else(|| KCenterError::InvalidParams("k-2l needs l".into()))?;
                Some(Decider::Step2l {
                    l,
                    schedule: schedule.clone(),
                })
            }
            Algo::Approx(d) => Some(d.clone()),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub algo: String,
    pub k: usize,
    pub l: Option<usize>,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Search upper bound `U` (approximation runs only).
    pub upper: Option<Dist>,
    /// Smallest probe radius that returned a cover.
    pub probed: Option<Dist>,
    pub radius: Dist,
    pub centers: Vec<Vertex>,
    pub exact: Option<Dist>,
    pub bound_satisfied: Option<bool>,
    pub elapsed_ms: Option<u64>,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl RunRecord {
    pub fn to_kv(&self) -> String {
        let centers: Vec<String> = self.centers.iter().map(Vertex::to_string).collect();
        let mut s = format!(
            "algo={} k={} l={} seed={} n={} m={} upper={} probed={} radius={} centers={} exact={} bound_satisfied={}",
            self.algo,
            self.k,
            opt(&self.l),
            self.seed,
            self.n,
            self.m,
            opt(&self.upper),
            opt(&self.probed),
            self.radius,
            centers.join(","),
            opt(&self.exact),
            opt(&self.bound_satisfied),
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(s, " elapsed_ms={ms}");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// `radius <= α·exact + β` with a little slack for float rounding.
pub fn within_guarantee(radius: Dist, exact: Dist, alpha: f64, beta: f64) -> bool {
    radius as f64 <= alpha * exact as f64 + beta + 1e-9
}

/// One solve on `g`, optionally checked against the exact oracle.
pub fn run_solve(g: &Graph, p: &SolveParams) -> Result<RunRecord> {
    if p.k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    let components = g.component_count();
    if components > p.k {
        return Err(KCenterError::Infeasible { k: p.k, components });
    }
    let start = Instant::now();
    let (centers, radius, upper, probed) = match &p.algo {
        Algo::Exact => {
            let s = exact_k_radius_with_budget(g, p.k, p.exact_budget)?;
            (s.centers, s.radius, None, None)
        }
        Algo::Gonzalez => {
            let s = gonzalez_2approx(g, p.k)?;
            (s.centers, s.radius, None, None)
        }
        Algo::Approx(_) => {
            let d = p.decider()?.expect("approximation algorithm");
            let s = approximate_radius(g, p.k, &d, &p.config())?;
            (s.solution.centers, s.solution.radius, Some(s.upper), Some(s.probed))
        }
    };
    let elapsed = start.elapsed();

    let exact = match (&p.algo, p.with_exact) {
        (Algo::Exact, _) => Some(radius),
        (_, true) => match exact_k_radius_with_budget(g, p.k, p.exact_budget) {
            Ok(s) => Some(s.radius),
            Err(KCenterError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };
    let (alpha, beta) = match (&p.algo, p.decider()?) {
        (Algo::Approx(_), Some(d)) => d.guarantee(p.k, g.weight_bound()),
        (a, _) => a.guarantee(p.k, g.weight_bound()),
    };
    let l = match p.algo {
        Algo::Approx(Decider::Step2l { .. }) => p.l,
        _ => None,
    };
    Ok(RunRecord {
        algo: p.algo.id().to_string(),
        k: p.k,
        l,
        seed: p.seed,
        n: g.n(),
        m: g.m(),
        upper,
        probed,
        radius,
        centers: centers.to_vec(),
        exact,
        bound_satisfied: exact.map(|e| within_guarantee(radius, e, alpha, beta)),
        elapsed_ms: p.timing.then_some(elapsed.as_millis() as u64),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    Generated { kind: GraphKind, seed: u64, weights: Option<u64> },
    File(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanInstance {
    pub name: String,
    pub source: InstanceSource,
}

impl PlanInstance {
    pub fn load(&self) -> Result<Graph> {
        match &self.source {
            InstanceSource::Generated { kind, seed, weights } => {
                let g = kind.generate(*seed)?;
                match weights {
                    Some(m) => with_random_weights(&g, *m, *seed),
                    None => Ok(g),
                }
            }
            InstanceSource::File(path) => Graph::read_file(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanAlgo {
    pub algo: Algo,
    pub k: usize,
    pub l: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchPlan {
    pub instances: Vec<PlanInstance>,
    pub algos: Vec<PlanAlgo>,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub with_exact: bool,
}

fn key_value(tok: &str, ln: usize) -> Result<(&str, &str)> {
    tok.split_once('=')
        .ok_or_else(|| parse_err(ln, format!("expected key=value, found `{tok}`")))
}

fn number<T: FromStr>(s: &str, ln: usize) -> Result<T> {
    s.parse().map_err(|_| parse_err(ln, format!("bad number `{s}`")))
}

impl BenchPlan {
    pub fn parse(text: &str) -> Result<Self> {
        let mut plan = BenchPlan {
            instances: Vec::new(),
            algos: Vec::new(),
            seeds: vec![0],
            trials: 1,
            with_exact: false,
        };
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let args = &toks[1..];
            match toks[0] {
                "instance" => {
                    let spec = args.first().ok_or_else(|| parse_err(ln, "instance needs a spec"))?;
                    let source = if let Some(path) = spec.strip_prefix("file:") {
                        if args.len() > 1 {
                            return Err(parse_err(ln, "file instances take no options"));
                        }
                        InstanceSource::File(path.to_string())
                    } else {
                        let kind: GraphKind = spec.parse().map_err(|e: KCenterError| parse_err(ln, e.to_string()))?;
                        let (mut seed, mut weights) = (0, None);
                        for tok in &args[1..] {
                            match key_value(tok, ln)? {
                                ("seed", v) => seed = number(v, ln)?,
                                ("weights", v) => weights = Some(number(v, ln)?),
                                (k, _) => return Err(parse_err(ln, format!("unknown instance option `{k}`"))),
                            }
                        }
                        InstanceSource::Generated { kind, seed, weights }
                    };
                    plan.instances.push(PlanInstance {
                        name: line["instance".len()..].trim().to_string(),
                        source,
                    });
                }
                "algo" => {
                    let id = args.first().ok_or_else(|| parse_err(ln, "algo needs an id"))?;
                    let algo: Algo = id.parse().map_err(|e: KCenterError| parse_err(ln, e.to_string()))?;
                    let (mut k, mut l) = (None, None);
                    for tok in &args[1..] {
                        match key_value(tok, ln)? {
                            ("k", v) => k = Some(number(v, ln)?),
                            ("l", v) => l = Some(number(v, ln)?),
                            (key, _) => return Err(parse_err(ln, format!("unknown algo option `{key}`"))),
                        }
                    }
                    let k = k.ok_or_else(|| parse_err(ln, "algo needs k=<k>"))?;
                    if matches!(algo, Algo::Approx(Decider::Step2l { .. })) && l.is_none() {
                        return Err(parse_err(ln, "k-2l needs l=<l>"));
                    }
                    plan.algos.push(PlanAlgo { algo, k, l });
                }
                "seeds" => {
                    plan.seeds = match args {
                        [range] if range.contains("..") => {
                            let (a, b) = range.split_once("..").expect("checked");
                            (number(a, ln)?..number(b, ln)?).collect()
                        }
                        [] => return Err(parse_err(ln, "seeds needs a range or a list")),
                        list => list.iter().map(|s| number(s, ln)).collect::<Result<_>>()?,
                    };
                }
                "trials" => {
                    let [v] = args else {
                        return Err(parse_err(ln, "trials takes one number"));
                    };
                    plan.trials = number(v, ln)?;
                }
                "with-exact" => {
                    plan.with_exact = match args {
                        [] | ["true"] => true,
                        ["false"] => false,
                        _ => return Err(parse_err(ln, "with-exact takes no value or true/false")),
                    };
                }
                other => return Err(parse_err(ln, format!("unknown directive `{other}`"))),
            }
        }
        if plan.instances.is_empty() || plan.algos.is_empty() || plan.seeds.is_empty() {
            return Err(parse_err(0, "plan needs at least one instance, algo and seed"));
        }
        Ok(plan)
    }
}

/// One finished (or failed) run of a plan.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub algo: String,
    pub seed: u64,
    pub outcome: std::result::Result<RunRecord, String>,
}

/// Per `(instance, algo)` summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub instance: String,
    pub algo: String,
    pub runs: usize,
    pub failed: usize,
    /// Fraction of runs with a known optimum that met the guarantee.
    pub success_rate: Option<f64>,
    pub mean_ratio: Option<f64>,
}

/// Runs every combination in parallel; output order follows the plan.
pub fn run_plan(plan: &BenchPlan, base: &SolveParams) -> Result<Vec<BenchRow>> {
    let graphs: Vec<Graph> = plan.instances.iter().map(PlanInstance::load).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (gi, inst) in plan.instances.iter().enumerate() {
        for a in &plan.algos {
            for &seed in &plan.seeds {
                jobs.push((gi, inst, a, seed));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(gi, inst, a, seed)| {
            let params = SolveParams {
                algo: a.algo.clone(),
                k: a.k,
                l: a.l,
                seed,
                trials: plan.trials,
                with_exact: plan.with_exact || base.with_exact,
                ..base.clone()
            };
            BenchRow {
                instance: inst.name.clone(),
                algo: a.algo.id().to_string(),
                seed,
                outcome: run_solve(&graphs[gi], &params).map_err(|e| e.to_string()),
            }
        })
        .collect())
}

pub fn aggregate(rows: &[BenchRow]) -> Vec<Aggregate> {
    let mut out: Vec<Aggregate> = Vec::new();
    for row in rows {
        let pos = out
            .iter()
            .position(|a| a.instance == row.instance && a.algo == row.algo)
            .unwrap_or_else(|| {
                out.push(Aggregate {
                    instance: row.instance.clone(),
                    algo: row.algo.clone(),
                    runs: 0,
                    failed: 0,
                    success_rate: None,
                    mean_ratio: None,
                });
                out.len() - 1
            });
        out[pos].runs += 1;
        if row.outcome.is_err() {
            out[pos].failed += 1;
        }
    }
    for agg in &mut out {
        let recs: Vec<&RunRecord> = rows
            .iter()
            .filter(|r| r.instance == agg.instance && r.algo == agg.algo)
            .filter_map(|r| r.outcome.as_ref().ok())
            .collect();
        let checked: Vec<bool> = recs.iter().filter_map(|r| r.bound_satisfied).collect();
        if !checked.is_empty() {
            agg.success_rate = Some(checked.iter().filter(|&&b| b).count() as f64 / checked.len() as f64);
        }
        let ratios: Vec<f64> = recs
            .iter()
            .filter_map(|r| match r.exact {
                Some(0) => Some(if r.radius == 0 { 1.0 } else { f64::INFINITY }),
                Some(e) => Some(r.radius as f64 / e as f64),
                None => None,
            })
            .collect();
        if !ratios.is_empty() {
            agg.mean_ratio = Some(ratios.iter().sum::<f64>() / ratios.len() as f64);
        }
    }
    out
}

impl BenchRow {
    pub fn to_kv(&self) -> String {
        match &self.outcome {
            Ok(r) => format!("instance={} {}", self.instance.replace(' ', "_"), r.to_kv()),
            Err(e) => format!(
                "instance={} algo={} seed={} error=\"{}\"",
                self.instance.replace(' ', "_"),
                self.algo,
                self.seed,
                e
            ),
        }
    }

    pub fn to_json(&self) -> String {
        let v = match &self.outcome {
            Ok(r) => serde_json::json!({ "instance": self.instance, "record": r }),
            Err(e) => serde_json::json!({ "instance": self.instance, "algo": self.algo, "seed": self.seed, "error": e }),
        };
        v.to_string()
    }
}

impl Aggregate {
    pub fn to_kv(&self) -> String {
        let f = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
        format!(
            "aggregate instance={} algo={} runs={} failed={} success_rate={} mean_ratio={}",
            self.instance.replace(' ', "_"),
            self.algo,
            self.runs,
            self.failed,
            f(self.success_rate),
            f(self.mean_ratio)
        )
    }
}
