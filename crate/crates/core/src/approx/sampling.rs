use rand::seq::index;

use crate::approx::ApproxConfig;
use crate::seeding::rng_for;
use crate::vertex_set::VertexSet;

/// `min(n, max(1, ⌈c · n^(1-δ) · ln n⌉))`.
pub fn sample_size(n: usize, delta: f64, c: f64) -> usize {
    if n == 0 {
        return 0;
    }
    let nf = n as f64;
    let raw = (c * nf.powf(1.0 - delta) * nf.ln()).ceil();
    if raw >= nf {
        n
    } else {
        (raw as usize).max(1)
    }
}

/// Uniform sample without replacement, sized by [`sample_size`]. `tags`
/// separate independent samples drawn under the same configuration seed.
pub fn sample_hitting_set(n: usize, delta: f64, cfg: &ApproxConfig, tags: &[u64]) -> VertexSet {
    let size = sample_size(n, delta, cfg.sample_const);
    let mut rng = rng_for(cfg.seed, tags);
    VertexSet::from_iter(n, index::sample(&mut rng, n, size))
}

/// `⌈n^e⌉`, at least 1 (tolerant of rounding noise in `powf`).
pub(crate) fn pow_ceil(n: usize, e: f64) -> usize {
    (((n as f64).powf(e) - 1e-9).ceil() as usize).max(1)
}
