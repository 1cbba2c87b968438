//! Immutable undirected graphs in compressed adjacency form, plus the
//! plain-text edge-list format (`n m [M]` header, then `u v [w]` lines).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{parse_err, KCenterError, Result};

pub type Vertex = usize;

/// Shortest-path length. Unreachable pairs use [`UNREACHABLE`], which
/// orders above every finite distance.
pub type Dist = u64;

pub const UNREACHABLE: Dist = Dist::MAX;

/// `true` iff a vertex at distance `d` lies within radius `r`.
/// Negative radii cover nothing; unreachable vertices are never covered.
#[inline]
pub fn within(d: Dist, r: i64) -> bool {
    r >= 0 && d != UNREACHABLE && d <= r as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    weights: Option<Vec<u64>>,
    weight_bound: u64,
}

impl Graph {
    /// Builds an unweighted graph. Rejects self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn unweighted(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::build(n, &weighted, 1, false)
    }

    /// Builds a weighted graph whose weights lie in `[1, weight_bound]`.
    pub fn weighted(n: usize, edges: &[(Vertex, Vertex, u64)], weight_bound: u64) -> Result<Self> {
        if weight_bound == 0 {
            return Err(KCenterError::InvalidGraph("weight bound must be >= 1".into()));
        }
        Self::build(n, edges, weight_bound, true)
    }

    fn build(n: usize, edges: &[(Vertex, Vertex, u64)], bound: u64, keep_weights: bool) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut degree = vec![0usize; n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(KCenterError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(KCenterError::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if w == 0 || w > bound {
                return Err(KCenterError::BadWeight { u, v, weight: w, bound });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(KCenterError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut adj: Vec<(Vertex, u64)> = vec![(0, 0); offsets[n]];
        let mut fill = offsets[..n].to_vec();
        for &(u, v, w) in edges {
            adj[fill[u]] = (v, w);
            fill[u] += 1;
            adj[fill[v]] = (u, w);
            fill[v] += 1;
        }
        // adjacency order is ascending neighbour id
        for u in 0..n {
            adj[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        let targets = adj.iter().map(|&(v, _)| v).collect();
        let weights = keep_weights.then(|| adj.iter().map(|&(_, w)| w).collect());
        Ok(Self {
            n,
            offsets,
            targets,
            weights,
            weight_bound: bound,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    /// Declared bound `M` on edge weights (1 for unweighted graphs).
    #[inline]
    pub fn weight_bound(&self) -> u64 {
        self.weight_bound
    }

    #[inline]
    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    #[inline]
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Neighbours with edge weights (weight 1 for unweighted graphs).
    pub fn weighted_neighbors(&self, u: Vertex) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        let ws = self.weights.as_deref();
        range.map(move |i| (self.targets[i], ws.map_or(1, |w| w[i])))
    }

    #[inline]
    pub fn degree(&self, u: Vertex) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Each undirected edge once, with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, u64)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for (v, w) in self.weighted_neighbors(u) {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(KCenterError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Connected-component label per vertex (labels in order of first vertex).
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    /// Serializes to the edge-list text format. The weight bound and per-edge
    /// weights are written only for weighted graphs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.is_weighted() {
            let _ = writeln!(s, "{} {} {}", self.n, self.m(), self.weight_bound);
            for (u, v, w) in self.edges() {
                let _ = writeln!(s, "{u} {v} {w}");
            }
        } else {
            let _ = writeln!(s, "{} {}", self.n, self.m());
            for (u, v, _) in self.edges() {
                let _ = writeln!(s, "{u} {v}");
            }
        }
        s
    }

    /// Parses the edge-list text format. Blank lines and lines starting with
    /// `#` are ignored. When the header carries `M > 1` every edge line must
    /// carry a weight; otherwise the weight column is optional.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| match l {
                Ok(s) => {
                    let t = s.trim();
                    !t.is_empty() && !t.starts_with('#')
                }
                Err(_) => true,
            });

        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let header = header?;
        let fields = parse_numbers(hline, &header)?;
        let (n, m, bound) = match fields.as_slice() {
            [n, m] => (*n as usize, *m as usize, None),
            [n, m, b] => (*n as usize, *m as usize, Some(*b)),
            _ => return Err(parse_err(hline, "header must be `n m [M]`")),
        };
        if bound == Some(0) {
            return Err(parse_err(hline, "weight bound M must be >= 1"));
        }
        let weighted = bound.is_some_and(|b| b > 1);
        let bound = bound.unwrap_or(1);

        let mut edges = Vec::with_capacity(m);
        for (lno, line) in lines.by_ref().take(m) {
            let line = line?;
            let f = parse_numbers(lno, &line)?;
            let (u, v, w) = match f.as_slice() {
                [u, v] if !weighted => (*u, *v, 1),
                [u, v] => return Err(parse_err(lno, format!("edge ({u}, {v}) needs a weight since M > 1"))),
                [u, v, w] => (*u, *v, *w),
                _ => return Err(parse_err(lno, "edge line must be `u v [w]`")),
            };
            if w == 0 || w > bound {
                return Err(parse_err(lno, format!("weight {w} outside [1, {bound}]")));
            }
            edges.push((u as usize, v as usize, w));
        }
        if edges.len() != m {
            return Err(parse_err(0, format!("expected {m} edge lines, found {}", edges.len())));
        }
        if let Some((lno, _)) = lines.next() {
            return Err(parse_err(lno, "trailing data after the declared edges"));
        }
        let g = if weighted {
            Self::weighted(n, &edges, bound)
        } else {
            let plain: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
            Self::unweighted(n, &plain)
        };
        g.map_err(|e| parse_err(0, e.to_string()))
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse(text.as_bytes())
    }

    pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::parse(std::io::BufReader::new(f))
    }
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("expected a non-negative integer, got `{tok}`")))
        })
        .collect()
}
