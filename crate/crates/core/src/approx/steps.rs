//! The recursive `Step` deciders: full depth (`k-2k`) and the truncated
//! variant with `l` guided levels (`k-2l`).
//!
//! Level `i` holds a prefix `s_1..s_i` of approximate centers. It first tries
//! to finish with a tuple from the level's sample, and otherwise branches on
//! the vertices nearest the point of `B(prefix, R + (2i-1)α)^c` farthest
//! from the sample.

use crate::approx::sampling::{pow_ceil, sample_hitting_set};
use crate::approx::schedule::{plan_deltas_combinatorial, plan_deltas_omega2, DeltaSchedule};
use crate::approx::{certify, dist_to_set, ensure_unweighted, outside, signed, trivial_all, ApproxConfig, DecisionOutcome};
use crate::boolcover::{find_cover_tuple, intersect_balls};
use crate::distance::{closest_p_order, farthest_from_set, multi_source_dist, DistOracle};
use crate::error::{KCenterError, Result};
use crate::graph::{within, Dist, Vertex};
use crate::vertex_set::VertexSet;

const TAG_2K: u64 = 0x2C;
const TAG_2L: u64 = 0x2E;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Finish {
    /// Full depth: level `k - 1` scans `W_k`, then tries one point of `Q`.
    LastCenter,
    /// Truncated: level `l` completes with any `(k - l)`-tuple of `V`.
    CompleteFromV,
}

struct Engine<'a, 'g> {
    oracle: &'a DistOracle<'g>,
    cfg: &'a ApproxConfig,
    k: usize,
    r: Dist,
    alpha: Dist,
    target: Dist,
    finish: Finish,
    /// Level at which `finish` runs.
    depth: usize,
    schedule: DeltaSchedule,
    /// One sample for every level, or `None` to draw per call.
    shared: Option<VertexSet>,
    tag: u64,
    calls: u64,
}

impl Engine<'_, '_> {
    fn sample(&mut self, level: usize) -> (VertexSet, usize) {
        let n = self.oracle.graph().n();
        let delta = self.schedule.deltas[level];
        let w_size = pow_ceil(n, delta);
        match &self.shared {
            Some(s) => (s.clone(), w_size),
            None => {
                self.calls += 1;
                let s = sample_hitting_set(n, delta, self.cfg, &[self.tag, self.r, level as u64, self.calls]);
                (s, w_size)
            }
        }
    }

    fn step(&mut self, prefix: &mut Vec<Vertex>) -> Result<Option<DecisionOutcome>> {
        let g = self.oracle.graph();
        let n = g.n();
        let i = prefix.len();
        let t = signed(self.target);
        let to_prefix = dist_to_set(self.oracle, prefix);
        let z = outside(&to_prefix, t).to_vec();

        if self.finish == Finish::CompleteFromV && i == self.depth {
            let all: Vec<usize> = (0..n).collect();
            let arity = self.k - self.depth;
            if let Some(rest) = find_cover_tuple(self.oracle, &all, &z, t, arity, self.cfg.budget)? {
                prefix.extend(&rest);
                let out = certify(self.oracle, prefix, self.k, self.target)?;
                prefix.truncate(i);
                return Ok(out);
            }
            return Ok(None);
        }

        let region = if i == 0 {
            VertexSet::full(n)
        } else {
            outside(&to_prefix, signed(self.r + (2 * i as u64 - 1) * self.alpha))
        };
        if region.is_empty() {
            return certify(self.oracle, prefix, self.k, self.target);
        }
        let (s, w_size) = self.sample(i);
        let to_s = multi_source_dist(g, &s)?;
        let w = farthest_from_set(&to_s, &region).expect("region is non-empty");
        let big_w = closest_p_order(g, w, w_size)?;

        if self.finish == Finish::LastCenter && i + 1 == self.k {
            for &sk in &big_w {
                let row = self.oracle.row(sk);
                if z.iter().all(|&v| within(row[v], t)) {
                    prefix.push(sk);
                    let out = certify(self.oracle, prefix, self.k, self.target)?;
                    prefix.pop();
                    if out.is_some() {
                        return Ok(out);
                    }
                }
            }
            let mut su = s;
            su.intersect_with(&region);
            let q = intersect_balls(self.oracle, &su.to_vec(), signed(self.r));
            if let Some(q0) = q.first() {
                prefix.push(q0);
                let out = certify(self.oracle, prefix, self.k, self.target)?;
                prefix.pop();
                return Ok(out);
            }
            return Ok(None);
        }

        let s_list = s.to_vec();
        if let Some(rest) = find_cover_tuple(self.oracle, &s_list, &z, t, self.k - i, self.cfg.budget)? {
            prefix.extend(&rest);
            let out = certify(self.oracle, prefix, self.k, self.target)?;
            prefix.truncate(i);
            if out.is_some() {
                return Ok(out);
            }
        }
        for next in big_w {
            prefix.push(next);
            let out = self.step(prefix)?;
            prefix.pop();
            if out.is_some() {
                return Ok(out);
            }
        }
        Ok(None)
    }
}

/// Full-depth decider: `Covered` within `2R - ⌊R/(2k-1)⌋`, or `AboveR`.
///
/// One shared sample with `δ = 1/2` by default; `cfg.fresh_samples = Some(true)`
/// draws a fresh sample per call using the ω = 2 schedule.
pub fn decide_kcenter_2k(oracle: &DistOracle, k: usize, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
    ensure_unweighted(oracle)?;
    if k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    if let Some(all) = trivial_all(oracle, k) {
        return Ok(all);
    }
    oracle.precompute_all();
    let n = oracle.graph().n();
    let alpha = r / (2 * k as u64 - 1);
    let fresh = cfg.fresh_samples.unwrap_or(false);
    let (schedule, shared) = if fresh {
        (plan_deltas_omega2(k)?, None)
    } else {
        (plan_deltas_combinatorial(k)?, Some(sample_hitting_set(n, 0.5, cfg, &[TAG_2K, r])))
    };
    let mut engine = Engine {
        oracle,
        cfg,
        k,
        r,
        alpha,
        target: 2 * r - alpha,
        finish: Finish::LastCenter,
        depth: k - 1,
        schedule,
        shared,
        tag: TAG_2K,
        calls: 0,
    };
    Ok(engine.step(&mut Vec::with_capacity(k))?.unwrap_or(DecisionOutcome::AboveR))
}

/// `l` guided levels with fresh samples, then exhaustive
/// completion. `Covered` within `2R - ⌊R/(2l)⌋`, or `AboveR`.
pub fn decide_kcenter_2l(
    oracle: &DistOracle,
    k: usize,
    l: usize,
    r: Dist,
    cfg: &ApproxConfig,
    schedule: &DeltaSchedule,
) -> Result<DecisionOutcome> {
    ensure_unweighted(oracle)?;
    if l == 0 || l > k {
        return Err(KCenterError::InvalidParams(format!("need 1 <= l <= k, got l = {l}, k = {k}")));
    }
    if schedule.len() != l {
        return Err(KCenterError::InvalidParams(format!(
            "schedule has {} levels, expected {l}",
            schedule.len()
        )));
    }
    if let Some(all) = trivial_all(oracle, k) {
        return Ok(all);
    }
    oracle.precompute_all();
    let alpha = r / (2 * l as u64);
    let mut engine = Engine {
        oracle,
        cfg,
        k,
        r,
        alpha,
        target: 2 * r - alpha,
        finish: Finish::CompleteFromV,
        depth: l,
        schedule: schedule.clone(),
        shared: None,
        tag: TAG_2L,
        calls: 0,
    };
    Ok(engine.step(&mut Vec::with_capacity(k))?.unwrap_or(DecisionOutcome::AboveR))
}
