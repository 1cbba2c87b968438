use crate::approx::sampling::{pow_ceil, sample_hitting_set};
use crate::approx::{certify, dist_to_set, ensure_unweighted, outside, signed, trivial_all, ApproxConfig, DecisionOutcome};
use crate::boolcover::find_cover_tuple;
use crate::distance::{closest_p_order, farthest_from_set, multi_source_dist, DistOracle};
use crate::error::{KCenterError, Result};
use crate::graph::Dist;
use crate::vertex_set::VertexSet;

const TAG: u64 = 0x32;

/// k-center decider: `Covered` within `R + ⌈R/2⌉`, or `AboveR`.
pub fn decide_kcenter_32(oracle: &DistOracle, k: usize, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
    ensure_unweighted(oracle)?;
    if k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    if let Some(all) = trivial_all(oracle, k) {
        return Ok(all);
    }
    let g = oracle.graph();
    let n = g.n();
    let target = r + r.div_ceil(2);
    let t = signed(target);
    let delta = 1.0 / (k as f64 + 1.0);
    oracle.precompute_all();

    // case 1: k centers inside the sample
    let s = sample_hitting_set(n, delta, cfg, &[TAG, r]);
    let all: Vec<usize> = (0..n).collect();
    if let Some(tuple) = find_cover_tuple(oracle, &s.to_vec(), &all, t, k, cfg.budget)? {
        if let Some(out) = certify(oracle, &tuple, k, target)? {
            return Ok(out);
        }
    }

    // case 2: some s1 near an optimal center; complete with k - 1 vertices
    let to_s = multi_source_dist(g, &s)?;
    let w = farthest_from_set(&to_s, &VertexSet::full(n)).expect("non-empty graph");
    for s1 in closest_p_order(g, w, pow_ceil(n, delta))? {
        let z = outside(&dist_to_set(oracle, &[s1]), t).to_vec();
        if let Some(rest) = find_cover_tuple(oracle, &all, &z, t, k - 1, cfg.budget)? {
            let mut centers = rest;
            centers.push(s1);
            if let Some(out) = certify(oracle, &centers, k, target)? {
                return Ok(out);
            }
        }
    }
    Ok(DecisionOutcome::AboveR)
}
