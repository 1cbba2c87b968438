//! Seeded test-instance generators.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{KCenterError, Result};
use crate::graph::{Graph, Vertex};
use crate::seeding::rng_for;

const ER_ATTEMPTS: u64 = 64;

/// Generator families exposed through the CLI.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    ErdosRenyi { n: usize, p: f64 },
    Cycle { n: usize },
    Path { n: usize },
    Grid { w: usize, h: usize },
    Star { leaves: usize },
    Complete { n: usize },
}

impl GraphKind {
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            GraphKind::ErdosRenyi { n, p } => erdos_renyi(n, p, seed),
            GraphKind::Cycle { n } => cycle(n),
            GraphKind::Path { n } => path(n),
            GraphKind::Grid { w, h } => grid(w, h),
            GraphKind::Star { leaves } => star(leaves),
            GraphKind::Complete { n } => complete(n),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            GraphKind::Cycle { n } => write!(f, "cycle:{n}"),
            GraphKind::Path { n } => write!(f, "path:{n}"),
            GraphKind::Grid { w, h } => write!(f, "grid:{w}:{h}"),
            GraphKind::Star { leaves } => write!(f, "star:{leaves}"),
            GraphKind::Complete { n } => write!(f, "complete:{n}"),
        }
    }
}

/// Parses the compact `kind:param[:param]` form, e.g. `er:30:0.2`, `grid:4:5`.
impl FromStr for GraphKind {
    type Err = KCenterError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || KCenterError::InvalidParams(format!("cannot parse graph kind `{s}`"));
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<usize>().ok()).ok_or_else(bad);
        let kind = match parts[0] {
            "er" | "erdos_renyi" => GraphKind::ErdosRenyi {
                n: num(1)?,
                p: parts.get(2).and_then(|p| p.parse().ok()).ok_or_else(bad)?,
            },
            "cycle" => GraphKind::Cycle { n: num(1)? },
            "path" => GraphKind::Path { n: num(1)? },
            "grid" => GraphKind::Grid { w: num(1)?, h: num(2)? },
            "star" => GraphKind::Star { leaves: num(1)? },
            "complete" => GraphKind::Complete { n: num(1)? },
            _ => return Err(bad()),
        };
        let arity = match kind {
            GraphKind::ErdosRenyi { .. } | GraphKind::Grid { .. } => 3,
            _ => 2,
        };
        if parts.len() != arity {
            return Err(bad());
        }
        Ok(kind)
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(KCenterError::InvalidParams(msg.into()))
    }
}

/// G(n, p) without any connectivity repair.
pub fn erdos_renyi_raw(n: usize, p: f64, seed: u64) -> Result<Graph> {
    need(n >= 1, "n must be >= 1")?;
    need((0.0..=1.0).contains(&p), "p must lie in [0, 1]")?;
    let mut rng = rng_for(seed, &[0xE5]);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::unweighted(n, &edges)
}

/// Connected G(n, p): resamples a bounded number of times, then falls back
/// to the largest component of the last draw (relabelled in id order).
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut last = None;
    for attempt in 0..ER_ATTEMPTS {
        let g = erdos_renyi_raw(n, p, seed.wrapping_add(attempt.wrapping_mul(0x0010_0000_0001)))?;
        if g.component_count() == 1 {
            return Ok(g);
        }
        last = Some(g);
    }
    Ok(largest_component(&last.expect("at least one attempt")))
}

/// Induced subgraph on the largest connected component (lowest label on ties).
pub fn largest_component(g: &Graph) -> Graph {
    let (count, labels) = g.component_labels();
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l] += 1;
    }
    let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap_or(0);
    let mut new_id = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if labels[v] == best {
            new_id[v] = next;
            next += 1;
        }
    }
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, _, _)| labels[u] == best)
        .map(|(u, v, w)| (new_id[u], new_id[v], w))
        .collect();
    if g.is_weighted() {
        Graph::weighted(next, &edges, g.weight_bound()).expect("subgraph of a valid graph")
    } else {
        let plain: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::unweighted(next, &plain).expect("subgraph of a valid graph")
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "a cycle needs n >= 3")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::unweighted(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    need(n >= 1, "a path needs n >= 1")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::unweighted(n, &edges)
}

/// `w × h` grid, vertex `(x, y)` numbered `y * w + x`.
pub fn grid(w: usize, h: usize) -> Result<Graph> {
    need(w >= 1 && h >= 1, "grid sides must be >= 1")?;
    let id = |x: usize, y: usize| -> Vertex { y * w + x };
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::unweighted(w * h, &edges)
}

/// `K_{1,leaves}` with the hub at vertex 0.
pub fn star(leaves: usize) -> Result<Graph> {
    need(leaves >= 1, "a star needs at least one leaf")?;
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::unweighted(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n >= 1, "n must be >= 1")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::unweighted(n, &edges)
}

/// Same topology with weights drawn uniformly from `[1, max_weight]`.
pub fn with_random_weights(g: &Graph, max_weight: u64, seed: u64) -> Result<Graph> {
    need(max_weight >= 1, "max weight must be >= 1")?;
    let mut rng = rng_for(seed, &[0x3E1]);
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .map(|(u, v, _)| (u, v, rng.gen_range(1..=max_weight)))
        .collect();
    Graph::weighted(g.n(), &edges, max_weight)
}

/// Same topology with every edge set to `weight`.
pub fn with_uniform_weight(g: &Graph, weight: u64) -> Result<Graph> {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v, _)| (u, v, weight)).collect();
    Graph::weighted(g.n(), &edges, weight)
}
