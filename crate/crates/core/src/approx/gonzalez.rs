use crate::distance::{multi_source_dist, shortest_paths};
use crate::error::{KCenterError, Result};
use crate::exact::CenterSolution;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Farthest-first traversal from vertex 0. Stops early once every vertex is
/// a center, then pads to `k` with the smallest unused ids.
pub fn gonzalez_2approx(g: &Graph, k: usize) -> Result<CenterSolution> {
    if k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    let n = g.n();
    if n == 0 {
        return Err(KCenterError::InvalidGraph("graph has no vertices".into()));
    }
    let k = k.min(n);
    let mut centers = VertexSet::empty(n);
    centers.insert(0);
    let mut dist = shortest_paths(g, 0)?.dist;
    while centers.len() < k {
        // max_by_key keeps the last maximum; scan manually for smallest id
        let mut far = 0;
        for v in 1..n {
            if dist[v] > dist[far] {
                far = v;
            }
        }
        if dist[far] == 0 {
            break;
        }
        centers.insert(far);
        let row = shortest_paths(g, far)?;
        for (d, &r) in dist.iter_mut().zip(row.iter()) {
            *d = (*d).min(r);
        }
    }
    let mut next = 0;
    while centers.len() < k {
        centers.insert(next);
        next += 1;
    }
    let radius = multi_source_dist(g, &centers)?.into_iter().max().unwrap_or(0);
    Ok(CenterSolution { centers, radius })
}
