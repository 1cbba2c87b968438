use crate::approx::{ApproxConfig, Decider, DecisionOutcome};
use crate::distance::{bfs, DistOracle};
use crate::error::{KCenterError, Result};
use crate::exact::CenterSolution;
use crate::graph::{Dist, Graph};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxSolution {
    pub solution: CenterSolution,
    /// Initial upper bound on the optimum fed to the search.
    pub upper: Dist,
    /// Smallest probed radius that returned `Covered`.
    pub probed: Dist,
}

/// Binary search over probe radii in `[0, U]` with `U` the eccentricity of
/// vertex 0 (or `n·M` on weighted or disconnected inputs), keeping the best
/// certified cover seen.
pub fn approximate_radius(g: &Graph, k: usize, decider: &Decider, cfg: &ApproxConfig) -> Result<ApproxSolution> {
    if k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    cfg.validate()?;
    let n = g.n();
    if k >= n {
        return Ok(ApproxSolution {
            solution: CenterSolution {
                centers: VertexSet::full(n),
                radius: 0,
            },
            upper: 0,
            probed: 0,
        });
    }
    let components = g.component_count();
    if components > k {
        return Err(KCenterError::Infeasible { k, components });
    }
    let upper = if !g.is_weighted() && components == 1 {
        bfs(g, 0)?.eccentricity()
    } else {
        n as u64 * g.weight_bound()
    };

    let oracle = DistOracle::new(g);
    let mut best: Option<CenterSolution> = None;
    let mut keep = |out: DecisionOutcome| -> bool {
        match out {
            DecisionOutcome::Covered { centers, radius } => {
                if best.as_ref().is_none_or(|b| radius < b.radius) {
                    best = Some(CenterSolution { centers, radius });
                }
                true
            }
            DecisionOutcome::AboveR => false,
        }
    };

    if !keep(decider.decide(&oracle, k, upper, cfg)?) {
        return Err(KCenterError::DecisionFailed { upper });
    }
    let (mut lo, mut hi) = (0, upper);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if keep(decider.decide(&oracle, k, mid, cfg)?) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(ApproxSolution {
        solution: best.expect("upper probe succeeded"),
        upper,
        probed: hi,
    })
}
