//! Set Cover and orthogonal-vectors instances.
//!
//! Set Cover text: header `a_count b_count`, then one line per `b` with the
//! ids of its neighbours in `A`. OV text: header `count d`, then one
//! bitstring of length `d` per line. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use crate::boolcover::{exists_cover_tuple, UncoveredRow};
use crate::error::{parse_err, KCenterError, Result};
use crate::vertex_set::{words_for, WORD_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    a_count: usize,
    /// Sorted, deduplicated neighbours of each `b`.
    adj: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    /// Every `b` needs at least one neighbour and every id must be `< a_count`.
    pub fn new(a_count: usize, mut adj: Vec<Vec<usize>>) -> Result<Self> {
        for (b, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(KCenterError::InvalidInstance(format!("element b{b} has no neighbour in A")));
            }
            if let Some(&a) = list.iter().find(|&&a| a >= a_count) {
                return Err(KCenterError::InvalidInstance(format!(
                    "element b{b} lists a{a}, but a_count = {a_count}"
                )));
            }
        }
        Ok(Self { a_count, adj })
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, b: usize) -> &[usize] {
        &self.adj[b]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// All `(a, b)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(b, list)| list.iter().map(move |&a| (a, b)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Elements of `B` with no neighbour in `cover`.
    pub fn uncovered(&self, cover: &[usize]) -> Vec<usize> {
        (0..self.b_count())
            .filter(|&b| !self.adj[b].iter().any(|a| cover.contains(a)))
            .collect()
    }

    pub fn is_cover(&self, cover: &[usize]) -> bool {
        self.uncovered(cover).is_empty()
    }

    /// Some cover with at most `size` elements, searched exhaustively.
    pub fn find_cover(&self, size: usize, budget: u128) -> Result<Option<Vec<usize>>> {
        let b_count = self.b_count();
        let words = words_for(b_count);
        let rows: Vec<UncoveredRow> = (0..self.a_count)
            .map(|a| {
                let mut mask = vec![0u64; words];
                for b in 0..b_count {
                    if self.adj[b].binary_search(&a).is_err() {
                        mask[b / WORD_BITS] |= 1 << (b % WORD_BITS);
                    }
                }
                UncoveredRow { candidate: a, mask }
            })
            .collect();
        let hit = exists_cover_tuple(&rows, size, b_count, budget)?;
        Ok(hit.map(|mut t| {
            t.dedup();
            t
        }))
    }

    /// Smallest cover size, trying sizes in increasing order.
    pub fn min_cover_size(&self, budget: u128) -> Result<usize> {
        for s in 0..=self.a_count {
            if self.find_cover(s, budget)?.is_some() {
                return Ok(s);
            }
        }
        // every b has a neighbour, so A itself is a cover
        unreachable!("A covers B")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.a_count, self.b_count());
        for list in &self.adj {
            let line: Vec<String> = list.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = content_lines(reader);
        let (ln, header) = lines.next().transpose()?.ok_or_else(|| parse_err(0, "missing header"))?;
        let [a_count, b_count] = parse_numbers::<2>(&header, ln)?;
        let mut adj = Vec::with_capacity(b_count);
        for item in lines {
            let (ln, line) = item?;
            if adj.len() == b_count {
                return Err(parse_err(ln, "more element lines than b_count"));
            }
            let list = line
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|_| parse_err(ln, format!("bad a-id `{tok}`"))))
                .collect::<Result<Vec<_>>>()?;
            adj.push(list);
        }
        if adj.len() != b_count {
            return Err(parse_err(0, format!("expected {b_count} element lines, found {}", adj.len())));
        }
        Self::new(a_count, adj)
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse(text.as_bytes())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OVInstance {
    dim: usize,
    vectors: Vec<Vec<bool>>,
}

impl OVInstance {
    pub fn new(dim: usize, vectors: Vec<Vec<bool>>) -> Result<Self> {
        if let Some(i) = vectors.iter().position(|v| v.len() != dim) {
            return Err(KCenterError::InvalidInstance(format!(
                "vector {i} has length {}, expected {dim}",
                vectors[i].len()
            )));
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }

    /// `true` when no coordinate is 1 in every chosen vector.
    pub fn is_orthogonal(&self, ids: &[usize]) -> bool {
        (0..self.dim).all(|i| ids.iter().any(|&v| !self.vectors[v][i]))
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = content_lines(reader);
        let (ln, header) = lines.next().transpose()?.ok_or_else(|| parse_err(0, "missing header"))?;
        let [count, dim] = parse_numbers::<2>(&header, ln)?;
        let mut vectors = Vec::with_capacity(count);
        for item in lines {
            let (ln, line) = item?;
            let bits = line
                .trim()
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_err(ln, format!("bad bit `{c}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if bits.len() != dim {
                return Err(parse_err(ln, format!("expected {dim} bits, found {}", bits.len())));
            }
            vectors.push(bits);
        }
        if vectors.len() != count {
            return Err(parse_err(0, format!("expected {count} vectors, found {}", vectors.len())));
        }
        Self::new(dim, vectors)
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse(text.as_bytes())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

/// `A` = the vectors, `B` = the coordinates, `(a, i)` adjacent iff `a[i] = 0`.
/// Fails when some coordinate is 1 in every vector.
pub fn ov_to_setcover(ov: &OVInstance) -> Result<SetCoverInstance> {
    let adj = (0..ov.dim)
        .map(|i| (0..ov.vectors.len()).filter(|&a| !ov.vectors[a][i]).collect())
        .collect();
    SetCoverInstance::new(ov.vectors.len(), adj)
}

/// `A' = A^g` (tuple `(a_1..a_g)` has id `Σ a_j · |A|^(j-1)`), adjacent to `b`
/// iff some component is.
pub fn power_setcover(sc: &SetCoverInstance, g: usize, budget: u128) -> Result<SetCoverInstance> {
    if g == 0 {
        return Err(KCenterError::InvalidParams("power must be >= 1".into()));
    }
    let a = sc.a_count;
    let size = (a as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    let edges_bound = size.saturating_mul(sc.b_count() as u128);
    if edges_bound > budget {
        return Err(KCenterError::BudgetExceeded {
            needed: edges_bound,
            budget,
        });
    }
    let size = size as usize;
    let mut adj = vec![Vec::new(); sc.b_count()];
    let mut digits = vec![0usize; g];
    for id in 0..size {
        let mut rest = id;
        for d in digits.iter_mut() {
            *d = rest % a;
            rest /= a;
        }
        for (b, list) in adj.iter_mut().enumerate() {
            if digits.iter().any(|x| sc.adj[b].binary_search(x).is_ok()) {
                list.push(id);
            }
        }
    }
    SetCoverInstance::new(size, adj)
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(s) => {
            let t = s.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i + 1, t.to_string())))
        }
    })
}

fn parse_numbers<const N: usize>(line: &str, ln: usize) -> Result<[usize; N]> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != N {
        return Err(parse_err(ln, format!("expected {N} numbers, found {}", toks.len())));
    }
    let mut out = [0; N];
    for (o, tok) in out.iter_mut().zip(toks) {
        *o = tok.parse().map_err(|_| parse_err(ln, format!("bad number `{tok}`")))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BIG: u128 = 1 << 40;

    #[test]
    fn ov_examples() {
        let zeros = OVInstance::new(2, vec![vec![false, false], vec![false, false]]).unwrap();
        let sc = ov_to_setcover(&zeros).unwrap();
        assert_eq!(sc.edge_count(), 4);
        assert!(sc.is_cover(&[1]));

        let ones = OVInstance::new(2, vec![vec![true, true]]).unwrap();
        assert!(ov_to_setcover(&ones).is_err());

        let ov = OVInstance::parse_str("2 3\n101\n010\n").unwrap();
        let sc = ov_to_setcover(&ov).unwrap();
        assert_eq!(sc.neighbors(0), &[1]);
        assert_eq!(sc.neighbors(1), &[0]);
        assert_eq!(sc.neighbors(2), &[1]);
        assert!(sc.is_cover(&[0, 1]));
        assert!(ov.is_orthogonal(&[0, 1]));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let sc = SetCoverInstance::parse_str("# demo\n3 2\n0 2\n\n1\n").unwrap();
        assert_eq!(SetCoverInstance::parse_str(&sc.to_text()).unwrap(), sc);
        assert!(SetCoverInstance::parse_str("3 2\n0\n").is_err());
        assert!(SetCoverInstance::parse_str("3 1\n5\n").is_err());
        assert!(SetCoverInstance::parse_str("3 1\nx\n").is_err());
        assert!(OVInstance::parse_str("1 3\n10\n").is_err());
        assert!(OVInstance::parse_str("1 2\n1a\n").is_err());
    }

    #[test]
    fn power_examples() {
        let sc = SetCoverInstance::new(4, vec![vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(power_setcover(&sc, 1, BIG).unwrap(), sc);
        // identity-like instance: 4 sets needed, 2 after squaring
        assert_eq!(sc.min_cover_size(BIG).unwrap(), 4);
        let sq = power_setcover(&sc, 2, BIG).unwrap();
        assert_eq!(sq.a_count(), 16);
        assert_eq!(sq.min_cover_size(BIG).unwrap(), 2);

        let pair = SetCoverInstance::new(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(pair.min_cover_size(BIG).unwrap(), 2);
        assert_eq!(power_setcover(&pair, 2, BIG).unwrap().min_cover_size(BIG).unwrap(), 1);

        assert!(power_setcover(&sc, 0, BIG).is_err());
        assert!(matches!(
            power_setcover(&sc, 8, 1000),
            Err(KCenterError::BudgetExceeded { .. })
        ));
    }

    fn arb_setcover() -> impl Strategy<Value = SetCoverInstance> {
        (1usize..5, 1usize..5).prop_flat_map(|(a, b)| {
            proptest::collection::vec(proptest::collection::btree_set(0..a, 1..=a), b)
                .prop_map(move |lists| SetCoverInstance::new(a, lists.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
        })
    }

    fn brute_min(sc: &SetCoverInstance) -> usize {
        (0u32..1 << sc.a_count())
            .filter(|m| {
                let chosen: Vec<usize> = (0..sc.a_count()).filter(|a| m >> a & 1 == 1).collect();
                sc.is_cover(&chosen)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    proptest! {
        #[test]
        fn power_edge_count_and_cover_sizes(sc in arb_setcover(), g in 1usize..4) {
            let p = power_setcover(&sc, g, BIG).unwrap();
            let a = sc.a_count();
            let want: usize = (0..sc.b_count())
                .map(|b| a.pow(g as u32) - (a - sc.neighbors(b).len()).pow(g as u32))
                .sum();
            prop_assert_eq!(p.edge_count(), want);
            // size-k' cover of the power exists iff a size-k'g cover of the base does
            let base = brute_min(&sc);
            prop_assert_eq!(p.min_cover_size(BIG).unwrap(), base.div_ceil(g));
        }

        #[test]
        fn min_cover_matches_subsets(sc in arb_setcover()) {
            prop_assert_eq!(sc.min_cover_size(BIG).unwrap(), brute_min(&sc));
        }
    }
}
