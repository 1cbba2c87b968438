use crate::approx::sampling::{pow_ceil, sample_hitting_set};
use crate::approx::{certify, dist_to_set, ensure_unweighted, outside, signed, trivial_all, ApproxConfig, DecisionOutcome};
use crate::boolcover::{find_cover_tuple, intersect_balls};
use crate::distance::{closest_p_order, farthest_from_set, multi_source_dist, DistOracle};
use crate::error::Result;
use crate::graph::Dist;
use crate::vertex_set::VertexSet;

const TAG: u64 = 0x2C53;

/// Sampling exponents `(δ, γ)` for the first and second phase.
pub fn two_center_exponents(omega: f64) -> (f64, f64) {
    let delta = (2.0 * omega - 3.0) / (3.0 * omega - 3.0);
    let gamma = (omega * omega - 3.0 * omega + 3.0) / (3.0 * omega - 3.0);
    (delta, gamma)
}

/// 2-center decider: `Covered` within `2R - ⌊R/3⌋`, or `AboveR`.
pub fn decide_2center_53(oracle: &DistOracle, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
    ensure_unweighted(oracle)?;
    if let Some(all) = trivial_all(oracle, 2) {
        return Ok(all);
    }
    let g = oracle.graph();
    let n = g.n();
    let a = r / 3;
    let target = 2 * r - a;
    let t = signed(target);
    let (delta, gamma) = two_center_exponents(cfg.omega);

    // phase 1: a pair from S
    let s = sample_hitting_set(n, delta, cfg, &[TAG, r, 1]);
    let s_list = s.to_vec();
    let all: Vec<usize> = (0..n).collect();
    if let Some(pair) = find_cover_tuple(oracle, &s_list, &all, t, 2, cfg.budget)? {
        if let Some(out) = certify(oracle, &pair, 2, target)? {
            return Ok(out);
        }
    }

    let to_s = multi_source_dist(g, &s)?;
    let w = farthest_from_set(&to_s, &VertexSet::full(n)).expect("non-empty graph");
    let big_w = closest_p_order(g, w, pow_ceil(n, delta))?;

    // phase 2: one shared T for every s1
    let tset = sample_hitting_set(n, gamma, cfg, &[TAG, r, 2]);
    let to_t = multi_source_dist(g, &tset)?;
    let w_size = pow_ceil(n, gamma);
    for &s1 in &big_w {
        let u = outside(&dist_to_set(oracle, &[s1]), signed(r + a));
        let Some(ws) = farthest_from_set(&to_t, &u) else {
            // s1 alone is within R + a of everything
            if let Some(out) = certify(oracle, &[s1], 2, target)? {
                return Ok(out);
            }
            continue;
        };
        for s2 in closest_p_order(g, ws, w_size)? {
            if let Some(out) = certify(oracle, &[s1, s2], 2, target)? {
                return Ok(out);
            }
        }
        let mut tu = tset.clone();
        tu.intersect_with(&u);
        let q = intersect_balls(oracle, &tu.to_vec(), signed(r));
        if let Some(q0) = q.first() {
            if let Some(out) = certify(oracle, &[s1, q0], 2, target)? {
                return Ok(out);
            }
        }
    }
    Ok(DecisionOutcome::AboveR)
}
