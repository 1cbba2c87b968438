//! 3-center on graphs with integer weights in `[1, M]`.
//!
//! Thresholds are the integer floors of `R + x`, `2R - x`, `3R - 2x` with
//! `x = 3R/4`, each padded by `M` where a sampled pivot can overshoot a
//! shortest path by one edge.

use crate::approx::sampling::{pow_ceil, sample_hitting_set};
use crate::approx::{certify, dist_to_set, outside, signed, trivial_all, ApproxConfig, DecisionOutcome};
use crate::boolcover::{find_cover_tuple, intersect_balls};
use crate::distance::{closest_p_order, farthest_from_set, multi_source_dist, DistOracle};
use crate::error::Result;
use crate::graph::{Dist, Vertex};
use crate::vertex_set::VertexSet;

const TAG: u64 = 0x374;

/// Sampling exponents for the three samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedExponents {
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// `true` when the formulas left the feasible region and all three were
    /// reset to 1/3.
    pub fallback: bool,
}

/// `β = (2(ω-1) - 3μ) / (3 - ω + 1/ω)`, `γ = 1/3 - β(ω+1)/(3ω)`,
/// `δ = 1/3 - β(ω-2)/(3ω)` with `m = n^(1+μ)`. Falls back to 1/3 each unless
/// all lie in (0, 1), `γ <= β`, `γ <= δ` and `β + γ + δ <= 1`.
pub fn weighted_exponents(n: usize, m: usize, omega: f64) -> WeightedExponents {
    let third = WeightedExponents {
        beta: 1.0 / 3.0,
        gamma: 1.0 / 3.0,
        delta: 1.0 / 3.0,
        fallback: true,
    };
    if n < 2 || m == 0 {
        return third;
    }
    let mu = (m as f64).ln() / (n as f64).ln() - 1.0;
    let w = omega;
    let beta = (2.0 * (w - 1.0) - 3.0 * mu) / (3.0 - w + 1.0 / w);
    let gamma = 1.0 / 3.0 - beta * (w + 1.0) / (3.0 * w);
    let delta = 1.0 / 3.0 - beta * (w - 2.0) / (3.0 * w);
    let open = |x: f64| x > 0.0 && x < 1.0;
    let feasible = open(beta)
        && open(gamma)
        && open(delta)
        && gamma <= beta + 1e-12
        && gamma <= delta + 1e-12
        && beta + gamma + delta <= 1.0 + 1e-12;
    if feasible {
        WeightedExponents {
            beta,
            gamma,
            delta,
            fallback: false,
        }
    } else {
        third
    }
}

/// `Covered` within `⌊7R/4⌋ + M`, or `AboveR`.
pub fn decide_3center_74_weighted(oracle: &DistOracle, r: Dist, cfg: &ApproxConfig) -> Result<DecisionOutcome> {
    const K: usize = 3;
    if let Some(all) = trivial_all(oracle, K) {
        return Ok(all);
    }
    let g = oracle.graph();
    let n = g.n();
    let m_bound = g.weight_bound();
    let seven = 7 * r / 4;
    let target = seven + m_bound;
    let ex = weighted_exponents(n, g.m(), cfg.omega);

    let s1 = sample_hitting_set(n, ex.delta, cfg, &[TAG, r, 1]);
    let s2 = sample_hitting_set(n, ex.gamma, cfg, &[TAG, r, 2]);
    let s3 = sample_hitting_set(n, ex.beta, cfg, &[TAG, r, 3]);
    let all: Vec<Vertex> = (0..n).collect();

    // phase 1: a triple inside S1 at radius R + x
    if let Some(t) = find_cover_tuple(oracle, &s1.to_vec(), &all, signed(seven), K, cfg.budget)? {
        if let Some(out) = certify(oracle, &t, K, target)? {
            return Ok(out);
        }
    }

    let to_s1 = multi_source_dist(g, &s1)?;
    let to_s2 = multi_source_dist(g, &s2)?;
    let to_s3 = multi_source_dist(g, &s3)?;
    let w1 = farthest_from_set(&to_s1, &VertexSet::full(n)).expect("non-empty graph");
    let big_w1 = closest_p_order(g, w1, pow_ceil(n, ex.delta))?;
    let s2_list = s2.to_vec();

    for &a in &big_w1 {
        let from_a = dist_to_set(oracle, &[a]);
        let u1 = outside(&from_a, signed(target));
        if u1.is_empty() {
            if let Some(out) = certify(oracle, &[a], K, target)? {
                return Ok(out);
            }
            continue;
        }

        // case I: sampled points far from s1 are covered by a pair at radius R
        let far_cut = signed(5 * r / 4 + m_bound);
        let t_far: Vec<Vertex> = s2_list.iter().copied().filter(|&t| from_a[t] as i128 > far_cut as i128).collect();
        if let Some(pair) = find_cover_tuple(oracle, &all, &t_far, signed(r), 2, cfg.budget)? {
            if let Some(out) = certify(oracle, &[a, pair[0], pair[1]], K, target)? {
                return Ok(out);
            }
        }

        // case II: a second pivot near an optimal center
        let w2 = farthest_from_set(&to_s2, &u1).expect("u1 is non-empty");
        for b in closest_p_order(g, w2, pow_ceil(n, ex.gamma))? {
            let u2 = outside(&dist_to_set(oracle, &[a, b]), signed(3 * r / 2));
            let Some(w3) = farthest_from_set(&to_s3, &u2) else {
                if let Some(out) = certify(oracle, &[a, b], K, target)? {
                    return Ok(out);
                }
                continue;
            };
            for c in closest_p_order(g, w3, pow_ceil(n, ex.beta))? {
                if let Some(out) = certify(oracle, &[a, b, c], K, target)? {
                    return Ok(out);
                }
            }
            let mut su = s3.clone();
            su.intersect_with(&u2);
            if let Some(q0) = intersect_balls(oracle, &su.to_vec(), signed(r)).first() {
                if let Some(out) = certify(oracle, &[a, b, q0], K, target)? {
                    return Ok(out);
                }
            }
        }
    }
    Ok(DecisionOutcome::AboveR)
}
