//! Certificate checks and the brute-force k-center oracle.

use crate::distance::{multi_source_dist, DistOracle};
use crate::error::{KCenterError, Result};
use crate::graph::{Dist, Graph, UNREACHABLE};
use crate::vertex_set::VertexSet;

/// Default cap on the number of k-subsets the exact oracle may enumerate.
pub const DEFAULT_EXACT_BUDGET: u128 = 100_000_000;

/// A center set with its verified covering radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSolution {
    pub centers: VertexSet,
    pub radius: Dist,
}

/// `max_v d(v, centers)`; `UNREACHABLE` if some vertex cannot be reached.
pub fn cover_radius(g: &Graph, centers: &VertexSet) -> Result<Dist> {
    let d = multi_source_dist(g, centers)?;
    Ok(d.into_iter().max().unwrap_or(0))
}

/// `true` iff every vertex lies within `r` of some center.
pub fn verify_cover(g: &Graph, centers: &VertexSet, r: Dist) -> bool {
    if g.n() == 0 {
        return true;
    }
    match cover_radius(g, centers) {
        Ok(d) => d != UNREACHABLE && d <= r,
        Err(_) => false,
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn exact_k_radius(g: &Graph, k: usize) -> Result<CenterSolution> {
    exact_k_radius_with_budget(g, k, DEFAULT_EXACT_BUDGET)
}

/// Optimal k-center by depth-first enumeration of k-subsets in lexicographic
/// order. A branch is cut once no completion can strictly beat the incumbent,
/// so the answer is the lexicographically smallest optimal set.
pub fn exact_k_radius_with_budget(g: &Graph, k: usize, budget: u128) -> Result<CenterSolution> {
    if k == 0 {
        return Err(KCenterError::InvalidParams("k must be >= 1".into()));
    }
    let n = g.n();
    if n == 0 {
        return Err(KCenterError::InvalidGraph("graph has no vertices".into()));
    }
    let k = k.min(n);
    let needed = binomial(n, k);
    if needed > budget {
        return Err(KCenterError::BudgetExceeded { needed, budget });
    }
    if k == n {
        return Ok(CenterSolution {
            centers: VertexSet::full(n),
            radius: 0,
        });
    }

    let oracle = DistOracle::eager(g);
    // sufmin[j][v] = min over u >= j of d(u, v); row n is all UNREACHABLE
    let mut sufmin = vec![vec![UNREACHABLE; n]; n + 1];
    for j in (0..n).rev() {
        let (head, tail) = sufmin.split_at_mut(j + 1);
        let row = oracle.row(j);
        for v in 0..n {
            head[j][v] = row[v].min(tail[0][v]);
        }
    }

    let mut search = Search {
        oracle: &oracle,
        sufmin: &sufmin,
        n,
        k,
        chosen: Vec::with_capacity(k),
        best: None,
    };
    let cur = vec![UNREACHABLE; n];
    search.descend(0, &cur);
    let (radius, centers) = search.best.expect("at least one subset visited");
    Ok(CenterSolution {
        centers: VertexSet::from_iter(n, centers),
        radius,
    })
}

struct Search<'a> {
    oracle: &'a DistOracle<'a>,
    sufmin: &'a [Vec<Dist>],
    n: usize,
    k: usize,
    chosen: Vec<usize>,
    best: Option<(Dist, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, start: usize, cur: &[Dist]) {
        let remaining = self.k - self.chosen.len();
        if remaining == 0 {
            let r = cur.iter().copied().max().unwrap_or(0);
            if self.best.as_ref().is_none_or(|(b, _)| r < *b) {
                self.best = Some((r, self.chosen.clone()));
            }
            return;
        }
        let last_start = self.n - remaining;
        let mut next = vec![0; self.n];
        for c in start..=last_start {
            if let Some((b, _)) = &self.best {
                // every completion draws its remaining centers from c..n
                let lb = cur
                    .iter()
                    .zip(&self.sufmin[c])
                    .map(|(&a, &s)| a.min(s))
                    .max()
                    .unwrap_or(0);
                if lb >= *b {
                    return;
                }
            }
            let row = self.oracle.row(c);
            for v in 0..self.n {
                next[v] = cur[v].min(row[v]);
            }
            self.chosen.push(c);
            self.descend(c + 1, &next);
            self.chosen.pop();
        }
    }
}
