//! Coverage tests over bitset "uncovered" masks.
//!
//! A candidate's mask has bit `j` set when it fails to reach `Z[j]` within the
//! probed radius, so a tuple of candidates covers `Z` exactly when the AND of
//! their masks is zero. Tuple search splits the arity in two halves: the
//! smaller half is materialized (and deduplicated by mask), the larger half is
//! streamed depth-first and each streamed mask is tested against every stored
//! one.

use std::collections::HashSet;

use crate::distance::DistOracle;
use crate::error::{KCenterError, Result};
use crate::graph::{within, Graph, Vertex};
use crate::vertex_set::{words_for, VertexSet, WORD_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoveredRow {
    pub candidate: Vertex,
    pub mask: Vec<u64>,
}

impl UncoveredRow {
    pub fn is_zero(&self) -> bool {
        self.mask.iter().all(|&w| w == 0)
    }

    /// Positions `j` with the bit set.
    pub fn uncovered_positions(&self) -> Vec<usize> {
        VertexSet::from_words(self.mask.len() * WORD_BITS, self.mask.clone()).to_vec()
    }
}

/// One mask per candidate over the target list `z` (bit order = order of `z`).
/// Negative `r` marks everything uncovered.
pub fn uncovered_masks(oracle: &DistOracle, candidates: &[Vertex], z: &[Vertex], r: i64) -> Vec<UncoveredRow> {
    let words = words_for(z.len());
    candidates
        .iter()
        .map(|&c| {
            let row = oracle.row(c);
            let mut mask = vec![0u64; words];
            for (j, &v) in z.iter().enumerate() {
                if !within(row[v], r) {
                    mask[j / WORD_BITS] |= 1 << (j % WORD_BITS);
                }
            }
            UncoveredRow { candidate: c, mask }
        })
        .collect()
}

/// Number of `arity`-tuples the larger half enumerates, compared with `budget`.
fn check_budget(candidates: usize, arity: usize, budget: u128) -> Result<()> {
    let half = arity.div_ceil(2) as u32;
    let needed = (candidates as u128).checked_pow(half).unwrap_or(u128::MAX);
    if needed > budget {
        Err(KCenterError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Searches multisets of `arity` candidates whose masks AND to zero.
///
/// Returns the candidate ids of the first hit, sorted ascending (repeats
/// allowed), or `None`. `z_len` is the length of the target list the masks
/// were built against; with `z_len == 0` the first tuple is returned, and
/// arity 0 succeeds exactly when `z_len == 0`.
pub fn exists_cover_tuple(rows: &[UncoveredRow], arity: usize, z_len: usize, budget: u128) -> Result<Option<Vec<Vertex>>> {
    if arity == 0 {
        return Ok((z_len == 0).then(Vec::new));
    }
    if rows.is_empty() {
        return Ok(None);
    }
    if z_len == 0 {
        return Ok(Some(vec![rows[0].candidate; arity]));
    }
    check_budget(rows.len(), arity, budget)?;
    let words = words_for(z_len);

    let left_arity = arity / 2;
    let right_arity = arity - left_arity;

    // materialize the left half
    let mut left: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    if left_arity == 0 {
        left.push((vec![u64::MAX; words], Vec::new()));
    } else {
        let mut seen = HashSet::new();
        let mut idx = Vec::with_capacity(left_arity);
        collect_left(rows, left_arity, 0, &mut idx, &vec![u64::MAX; words], &mut seen, &mut left);
    }

    let mut idx = Vec::with_capacity(right_arity);
    let hit = stream_right(rows, right_arity, 0, &mut idx, &vec![u64::MAX; words], &left);
    Ok(hit.map(|(r, l)| {
        let mut t: Vec<Vertex> = r.iter().chain(&l).map(|&i| rows[i].candidate).collect();
        // a zero prefix hit leaves slots free: repeat its last member
        while t.len() < arity {
            t.push(*t.last().expect("non-empty hit"));
        }
        t.sort_unstable();
        t
    }))
}

fn and_into(acc: &[u64], mask: &[u64], out: &mut Vec<u64>) {
    out.clear();
    out.extend(acc.iter().zip(mask).map(|(a, b)| a & b));
}

fn collect_left(
    rows: &[UncoveredRow],
    remaining: usize,
    start: usize,
    idx: &mut Vec<usize>,
    acc: &[u64],
    seen: &mut HashSet<Vec<u64>>,
    out: &mut Vec<(Vec<u64>, Vec<usize>)>,
) {
    if remaining == 0 {
        if seen.insert(acc.to_vec()) {
            out.push((acc.to_vec(), idx.clone()));
        }
        return;
    }
    let mut next = Vec::with_capacity(acc.len());
    for i in start..rows.len() {
        and_into(acc, &rows[i].mask, &mut next);
        idx.push(i);
        collect_left(rows, remaining - 1, i, idx, &next, seen, out);
        idx.pop();
    }
}

fn stream_right(
    rows: &[UncoveredRow],
    remaining: usize,
    start: usize,
    idx: &mut Vec<usize>,
    acc: &[u64],
    left: &[(Vec<u64>, Vec<usize>)],
) -> Option<(Vec<usize>, Vec<usize>)> {
    if acc.iter().all(|&w| w == 0) {
        return Some((idx.clone(), Vec::new()));
    }
    if remaining == 0 {
        return left
            .iter()
            .find(|(m, _)| m.iter().zip(acc).all(|(a, b)| a & b == 0))
            .map(|(_, l)| (idx.clone(), l.clone()));
    }
    let mut next = Vec::with_capacity(acc.len());
    for i in start..rows.len() {
        and_into(acc, &rows[i].mask, &mut next);
        idx.push(i);
        let found = stream_right(rows, remaining - 1, i, idx, &next, left);
        idx.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Convenience wrapper: builds masks for `candidates` against `z` at radius
/// `r` and searches for a covering `arity`-tuple.
pub fn find_cover_tuple(
    oracle: &DistOracle,
    candidates: &[Vertex],
    z: &[Vertex],
    r: i64,
    arity: usize,
    budget: u128,
) -> Result<Option<Vec<Vertex>>> {
    let rows = uncovered_masks(oracle, candidates, z, r);
    exists_cover_tuple(&rows, arity, z.len(), budget)
}

/// `{v : d(t, v) <= r for every t in t_prime}`; all of `V` when `t_prime` is empty.
pub fn intersect_balls(oracle: &DistOracle, t_prime: &[Vertex], r: i64) -> VertexSet {
    let g: &Graph = oracle.graph();
    let mut out = VertexSet::full(g.n());
    for &t in t_prime {
        let row = oracle.row(t);
        let ball = VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| within(row[v], r)));
        out.intersect_with(&ball);
        if out.is_empty() {
            break;
        }
    }
    out
}
