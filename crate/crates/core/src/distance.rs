//! Single-source, multi-source and all-pairs shortest paths, plus the
//! ball-style queries built on them.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::Deref;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{KCenterError, Result};
use crate::graph::{Dist, Graph, Vertex, UNREACHABLE};
use crate::vertex_set::VertexSet;

/// Distances from one source to every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistRow {
    pub source: Vertex,
    pub dist: Vec<Dist>,
}

impl Deref for DistRow {
    type Target = [Dist];
    fn deref(&self) -> &[Dist] {
        &self.dist
    }
}

impl DistRow {
    /// Largest distance in the row (`UNREACHABLE` if some vertex is).
    pub fn eccentricity(&self) -> Dist {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// Unweighted BFS distances.
pub fn bfs(g: &Graph, source: Vertex) -> Result<DistRow> {
    g.check_vertex(source)?;
    if g.is_weighted() {
        return Err(KCenterError::WeightedGraph);
    }
    let mut dist = vec![UNREACHABLE; g.n()];
    bfs_into(g, std::iter::once(source), &mut dist);
    Ok(DistRow { source, dist })
}

fn bfs_into(g: &Graph, sources: impl Iterator<Item = Vertex>, dist: &mut [Dist]) {
    let mut queue = VecDeque::new();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = du;
                queue.push_back(v);
            }
        }
    }
}

/// Weighted shortest paths. Works on unweighted graphs too (all weights 1).
pub fn dijkstra(g: &Graph, source: Vertex) -> Result<DistRow> {
    g.check_vertex(source)?;
    let mut dist = vec![UNREACHABLE; g.n()];
    dijkstra_into(g, std::iter::once(source), &mut dist);
    Ok(DistRow { source, dist })
}

fn dijkstra_into(g: &Graph, sources: impl Iterator<Item = Vertex>, dist: &mut [Dist]) {
    let mut heap = BinaryHeap::new();
    for s in sources {
        dist[s] = 0;
        heap.push(Reverse((0, s)));
    }
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for (v, w) in g.weighted_neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
}

/// Distances from `source` using BFS or Dijkstra as the graph requires.
pub fn shortest_paths(g: &Graph, source: Vertex) -> Result<DistRow> {
    if g.is_weighted() {
        dijkstra(g, source)
    } else {
        bfs(g, source)
    }
}

/// `d(v, sources)` for every `v`, computed in one traversal.
pub fn multi_source_dist(g: &Graph, sources: &VertexSet) -> Result<Vec<Dist>> {
    if sources.is_empty() {
        return Err(KCenterError::EmptySources);
    }
    if sources.universe() != g.n() {
        return Err(KCenterError::InvalidParams(format!(
            "vertex set over {} vertices used with a graph of {}",
            sources.universe(),
            g.n()
        )));
    }
    let mut dist = vec![UNREACHABLE; g.n()];
    if g.is_weighted() {
        dijkstra_into(g, sources.iter(), &mut dist);
    } else {
        bfs_into(g, sources.iter(), &mut dist);
    }
    Ok(dist)
}

/// One row per vertex, computed in parallel.
pub fn all_pairs(g: &Graph) -> Vec<DistRow> {
    (0..g.n())
        .into_par_iter()
        .map(|s| shortest_paths(g, s).expect("source in range"))
        .collect()
}

/// Vertex of `restrict` farthest from the set whose distances are given,
/// smallest id on ties. `None` when `restrict` is empty.
pub fn farthest_from_set(dist_to_s: &[Dist], restrict: &VertexSet) -> Option<Vertex> {
    let mut best: Option<(Dist, Vertex)> = None;
    for v in restrict.iter() {
        let d = dist_to_s[v];
        if best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

/// The `p` vertices nearest to `w` (fewer if fewer are reachable), in
/// discovery order. Unweighted graphs break ties by BFS discovery order;
/// weighted graphs by vertex id.
pub fn closest_p_order(g: &Graph, w: Vertex, p: usize) -> Result<Vec<Vertex>> {
    g.check_vertex(w)?;
    if p == 0 {
        return Err(KCenterError::InvalidParams("p must be >= 1".into()));
    }
    let mut order = Vec::with_capacity(p.min(g.n()));
    if g.is_weighted() {
        let mut dist = vec![UNREACHABLE; g.n()];
        let mut done = vec![false; g.n()];
        let mut heap = BinaryHeap::new();
        dist[w] = 0;
        heap.push(Reverse((0, w)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] || d > dist[u] {
                continue;
            }
            done[u] = true;
            order.push(u);
            if order.len() == p {
                break;
            }
            for (v, wt) in g.weighted_neighbors(u) {
                if d + wt < dist[v] {
                    dist[v] = d + wt;
                    heap.push(Reverse((d + wt, v)));
                }
            }
        }
    } else {
        let mut seen = vec![false; g.n()];
        seen[w] = true;
        order.push(w);
        let mut head = 0;
        while head < order.len() && order.len() < p {
            let u = order[head];
            head += 1;
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                    if order.len() == p {
                        break;
                    }
                }
            }
        }
    }
    Ok(order)
}

pub fn closest_p_nodes(g: &Graph, w: Vertex, p: usize) -> Result<VertexSet> {
    Ok(VertexSet::from_iter(g.n(), closest_p_order(g, w, p)?))
}

/// Lazily computed distance rows shared across deciders and probes.
pub struct DistOracle<'g> {
    graph: &'g Graph,
    rows: Vec<OnceLock<DistRow>>,
}

impl<'g> DistOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            rows: (0..graph.n()).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Oracle with every row filled up front (in parallel).
    pub fn eager(graph: &'g Graph) -> Self {
        let oracle = Self::new(graph);
        oracle.precompute_all();
        oracle
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn precompute_all(&self) {
        self.rows.par_iter().enumerate().for_each(|(s, cell)| {
            cell.get_or_init(|| shortest_paths(self.graph, s).expect("source in range"));
        });
    }

    /// Panics if `u` is out of range.
    pub fn row(&self, u: Vertex) -> &DistRow {
        self.rows[u].get_or_init(|| shortest_paths(self.graph, u).expect("source in range"))
    }

    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> Dist {
        self.row(u).dist[v]
    }
}
