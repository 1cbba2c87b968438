//! Randomized decision procedures for k-center and the binary search that
//! turns them into approximation algorithms.
//!
//! Every decider answers "is there a cover at the relaxed radius?" for a
//! probed radius `R`. A `Covered` answer always carries centers whose radius
//! was recomputed exactly, so it is sound regardless of sampling luck; only
//! `AboveR` answers are probabilistic.

pub mod gonzalez;
pub mod sampling;
pub mod schedule;
pub mod search;
pub mod steps;
pub mod three_halves;
pub mod two_center;
pub mod weighted3;

use std::fmt;
use std::str::FromStr;

use crate::distance::{multi_source_dist, DistOracle};
use crate::error::{KCenterError, Result};
use crate::graph::{within, Dist, Vertex, UNREACHABLE};
use crate::seeding::derive_seed;
use crate::vertex_set::VertexSet;

pub use gonzalez::gonzalez_2approx;
pub use sampling::{sample_hitting_set, sample_size};
pub use schedule::{plan_deltas_combinatorial, plan_deltas_omega2, plan_deltas_omega_general, plan_deltas_tradeoff, DeltaSchedule, ScheduleMode};
pub use search::{approximate_radius, ApproxSolution};
pub use steps::{decide_kcenter_2k, decide_kcenter_2l};
pub use three_halves::decide_kcenter_32;
pub use two_center::decide_2center_53;
pub use weighted3::{decide_3center_74_weighted, weighted_exponents};

/// Default guard on tuple enumeration inside deciders.
pub const DEFAULT_DECIDER_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxConfig {
    pub seed: u64,
    /// Multiplier `c` in the sample size `⌈c · n^(1-δ) · ln n⌉`.
    pub sample_const: f64,
    /// Matrix multiplication exponent fed to the parameter formulas.
    pub omega: f64,
    pub budget: u128,
    /// Independent repetitions per probed radius; the first `Covered` wins.
    pub trials: usize,
    /// Fresh sample per recursion level in `k-2k` (`None`: algorithm
    /// default, which is one shared sample).
    pub fresh_samples: Option<bool>,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            sample_const: 3.0,
            omega: 2.372,
            budget: DEFAULT_DECIDER_BUDGET,
            trials: 1,
            fresh_samples: None,
        }
    }
}

impl ApproxConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sample_const > 0.0 && self.sample_const.is_finite()) {
            return Err(KCenterError::InvalidParams(format!(
                "sample constant must be positive, got {}",
                self.sample_const
            )));
        }
        if !(2.0..=3.0).contains(&self.omega) {
            return Err(KCenterError::InvalidParams(format!(
                "omega must lie in [2, 3], got {}",
                self.omega
            )));
        }
        if self.trials == 0 {
            return Err(KCenterError::InvalidParams("trials must be >= 1".into()));
        }
        Ok(())
    }

    /// Configuration for repetition `trial`; repetition 0 keeps the seed.
    pub fn for_trial(&self, trial: usize) -> Self {
        let seed = if trial == 0 {
            self.seed
        } else {
            derive_seed(self.seed, &[0x7121A1, trial as u64])
        };
        Self {
            seed,
            trials: 1,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionOutcome {
    Covered { centers: VertexSet, radius: Dist },
    AboveR,
}

impl DecisionOutcome {
    pub fn is_covered(&self) -> bool {
        matches!(self, DecisionOutcome::Covered { .. })
    }

    pub fn radius(&self) -> Option<Dist> {
        match self {
            DecisionOutcome::Covered { radius, .. } => Some(*radius),
            DecisionOutcome::AboveR => None,
        }
    }
}

/// The decision procedures available to [`approximate_radius`].
#[derive(Clone, Debug, PartialEq)]
pub enum Decider {
    /// (5/3, 2/3) for k = 2.
    TwoCenter53,
    /// (3/2, 1/2) for any k.
    ThreeHalves,
    /// Full-depth `Step` recursion: (2 - 1/(2k-1), 1 - 1/(2k-1)).
    Step2k,
    /// `Step` recursion with `l` guided levels: (2 - 1/(2l), 1 - 1/(2l)).
    Step2l { l: usize, schedule: Option<DeltaSchedule> },
    /// (7/4, M) for weighted 3-center.
    Weighted74,
}

impl Decider {
    pub fn id(&self) -> &'static str {
        match self {
            Decider::TwoCenter53 => "c2-53",
            Decider::ThreeHalves => "k-32",
            Decider::Step2k => "k-2k",
            Decider::Step2l { .. } => "k-2l",
            Decider::Weighted74 => "w3-74",
        }
    }

    /// One run at probed radius `r` (ignores `cfg.trials`).
    pub fn decide_once(&self, oracle: &DistOracle, k: usize, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
        match self {
            Decider::TwoCenter53 => {
                if k != 2 {
                    return Err(KCenterError::InvalidParams(format!("c2-53 needs k = 2, got {k}")));
                }
                decide_2center_53(oracle, r, cfg)
            }
            Decider::ThreeHalves => decide_kcenter_32(oracle, k, r, cfg),
            Decider::Step2k => decide_kcenter_2k(oracle, k, r, cfg),
            Decider::Step2l { l, schedule } => {
                let schedule = match schedule {
                    Some(s) => s.clone(),
                    None => plan_deltas_tradeoff(k, *l)?,
                };
                decide_kcenter_2l(oracle, k, *l, r, cfg, &schedule)
            }
            Decider::Weighted74 => {
                if k != 3 {
                    return Err(KCenterError::InvalidParams(format!("w3-74 needs k = 3, got {k}")));
                }
                decide_3center_74_weighted(oracle, r, cfg)
            }
        }
    }

    /// Runs up to `cfg.trials` independent repetitions, returning the first
    /// `Covered`.
    pub fn decide(&self, oracle: &DistOracle, k: usize, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
        cfg.validate()?;
        for t in 0..cfg.trials {
            let out = self.decide_once(oracle, k, r, &cfg.for_trial(t))?;
            if out.is_covered() {
                return Ok(out);
            }
        }
        Ok(DecisionOutcome::AboveR)
    }

    /// Radius a `Covered` answer at probe `r` is guaranteed not to exceed.
    pub fn target(&self, k: usize, r: Dist, weight_bound: u64) -> Dist {
        match self {
            Decider::TwoCenter53 => 2 * r - r / 3,
            Decider::ThreeHalves => r + r.div_ceil(2),
            Decider::Step2k => 2 * r - r / (2 * k as u64 - 1).max(1),
            Decider::Step2l { l, .. } => 2 * r - r / (2 * *l as u64).max(1),
            Decider::Weighted74 => 7 * r / 4 + weight_bound,
        }
    }

    /// Declared `(α, β)` such that the result is at most `α·R_k + β` w.h.p.
    pub fn guarantee(&self, k: usize, weight_bound: u64) -> (f64, f64) {
        match self {
            Decider::TwoCenter53 => (5.0 / 3.0, 2.0 / 3.0),
            Decider::ThreeHalves => (1.5, 0.5),
            Decider::Step2k => {
                let e = 1.0 / (2 * k - 1) as f64;
                (2.0 - e, 1.0 - e)
            }
            Decider::Step2l { l, .. } => {
                let e = 1.0 / (2 * l) as f64;
                (2.0 - e, 1.0 - e)
            }
            Decider::Weighted74 => (1.75, weight_bound as f64),
        }
    }
}

impl fmt::Display for Decider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parses an algorithm id; `k-2l` gets `l = 1` until set by the caller.
impl FromStr for Decider {
    type Err = KCenterError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "c2-53" => Decider::TwoCenter53,
            "k-32" => Decider::ThreeHalves,
            "k-2k" => Decider::Step2k,
            "k-2l" => Decider::Step2l { l: 1, schedule: None },
            "w3-74" => Decider::Weighted74,
            _ => return Err(KCenterError::InvalidParams(format!("unknown decider `{s}`"))),
        })
    }
}

/// `min_{s in set} d(s, v)` for every `v` from cached oracle rows;
/// all `UNREACHABLE` for an empty set.
pub(crate) fn dist_to_set(oracle: &DistOracle, set: &[Vertex]) -> Vec<Dist> {
    let mut out = vec![UNREACHABLE; oracle.graph().n()];
    for &s in set {
        for (o, &d) in out.iter_mut().zip(oracle.row(s).iter()) {
            *o = (*o).min(d);
        }
    }
    out
}

/// `{v : dist[v] > r}`, i.e. the complement of a ball given its distance array.
pub(crate) fn outside(dist: &[Dist], r: i64) -> VertexSet {
    VertexSet::from_iter(dist.len(), (0..dist.len()).filter(|&v| !within(dist[v], r)))
}

/// Pads `centers` to `k` distinct vertices (smallest unused ids first),
/// recomputes the exact covering radius and accepts it if within `target`.
pub(crate) fn certify(oracle: &DistOracle, centers: &[Vertex], k: usize, target: Dist) -> Result<Option<DecisionOutcome>> {
    let n = oracle.graph().n();
    let mut set = VertexSet::from_iter(n, centers.iter().copied());
    let want = k.min(n);
    let mut next = 0;
    while set.len() < want {
        set.insert(next);
        next += 1;
    }
    if set.is_empty() {
        return Ok(None);
    }
    let radius = multi_source_dist(oracle.graph(), &set)?.into_iter().max().unwrap_or(0);
    if radius != UNREACHABLE && radius <= target {
        Ok(Some(DecisionOutcome::Covered { centers: set, radius }))
    } else {
        Ok(None)
    }
}

/// `Covered` with every vertex when `k >= n`.
pub(crate) fn trivial_all(oracle: &DistOracle, k: usize) -> Option<DecisionOutcome> {
    let n = oracle.graph().n();
    (k >= n).then(|| DecisionOutcome::Covered {
        centers: VertexSet::full(n),
        radius: 0,
    })
}

pub(crate) fn ensure_unweighted(oracle: &DistOracle) -> Result<()> {
    if oracle.graph().is_weighted() {
        Err(KCenterError::WeightedGraph)
    } else {
        Ok(())
    }
}

/// Probe radius as a signed threshold.
#[inline]
pub(crate) fn signed(r: Dist) -> i64 {
    i64::try_from(r).unwrap_or(i64::MAX)
}
