//! Hard k-center instances built from Set Cover.
//!
//! A base gadget `Gad(Â, B̂, ĉ, L)` has a copy of `A`, a copy of `B` and a hub
//! `ĉ`; every Set Cover edge `(a, b)` becomes an `L`-edge path `â – b̂` and
//! every `â` is joined to `ĉ` by an `L`-edge path.
//!
//! Numbering is deterministic. Gadgets are laid out in recursion pre-order;
//! inside a gadget come `Â`, `B̂`, `ĉ`, the `â – b̂` path internals by `(a, b)`
//! with each path listed from the `â` end, then the `â – ĉ` internals by `a`.
//! The connector paths of a recursive level follow the child subtree they
//! lead into, and the `ℓ`-edge tails on the outermost `B'` come last.

pub mod io;
pub mod setcover;

use std::fmt;

use crate::error::{KCenterError, Result};
use crate::graph::{Dist, Graph, Vertex};
use crate::vertex_set::VertexSet;

pub use setcover::{ov_to_setcover, power_setcover, OVInstance, SetCoverInstance};

/// Default guard on the number of generated vertices.
pub const DEFAULT_GADGET_BUDGET: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    ACopy { a: usize, gadget: usize },
    BCopy { b: usize, gadget: usize },
    Hub { gadget: usize },
    /// Internal node of a gadget path or of a connector owned by `gadget`.
    PathInternal { gadget: usize },
    Tail { b: usize },
}

impl Role {
    pub fn gadget(&self) -> Option<usize> {
        match *self {
            Role::ACopy { gadget, .. } | Role::BCopy { gadget, .. } | Role::Hub { gadget } | Role::PathInternal { gadget } => {
                Some(gadget)
            }
            Role::Tail { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// One gadget at `L = ℓ` plus tails; centers are the cover copies only.
    Simple,
    /// The recursive construction with parameter `t`.
    Recursive { t: usize },
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Simple => f.write_str("simple"),
            Construction::Recursive { .. } => f.write_str("recursive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetOutput {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub predicted_yes_radius: Dist,
    pub center_budget: usize,
    pub construction: Construction,
    pub ell: usize,
    /// Cover size `k` the budget was computed for.
    pub k: usize,
}

impl GadgetOutput {
    pub fn gadget_count(&self) -> usize {
        self.roles
            .iter()
            .filter_map(Role::gadget)
            .max()
            .map_or(0, |g| g + 1)
    }

    /// Radius the construction keeps NO instances at or above.
    pub fn no_radius_bound(&self) -> Dist {
        match self.construction {
            Construction::Simple => 3 * self.ell as Dist,
            Construction::Recursive { t } => ((4 * t + 1) * self.ell) as Dist,
        }
    }
}

/// A single base gadget with its role table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetFragment {
    pub graph: Graph,
    pub roles: Vec<Role>,
}

struct Builder {
    roles: Vec<Role>,
    edges: Vec<(Vertex, Vertex)>,
}

/// Vertex ids of one placed gadget.
struct Placed {
    a_start: Vertex,
    b_start: Vertex,
    ab_start: Vertex,
    len: usize,
}

impl Placed {
    fn b(&self, b: usize) -> Vertex {
        self.b_start + b
    }

    /// `v_{a,b,j}` for the `e`-th edge, `1 <= j < L`, counted from `â`.
    fn internal(&self, e: usize, j: usize) -> Vertex {
        debug_assert!(j >= 1 && j < self.len);
        self.ab_start + e * (self.len - 1) + (j - 1)
    }
}

impl Builder {
    fn new() -> Self {
        Self {
            roles: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, role: Role) -> Vertex {
        self.roles.push(role);
        self.roles.len() - 1
    }

    /// `len`-edge path from `from` to `to` with fresh internal nodes.
    fn path(&mut self, from: Vertex, to: Vertex, len: usize, role: Role) {
        let mut prev = from;
        for _ in 1..len {
            let v = self.vertex(role);
            self.edges.push((prev, v));
            prev = v;
        }
        self.edges.push((prev, to));
    }

    fn gadget(&mut self, sc: &SetCoverInstance, edges: &[(usize, usize)], len: usize, gadget: usize) -> Placed {
        let a_start = self.roles.len();
        for a in 0..sc.a_count() {
            self.vertex(Role::ACopy { a, gadget });
        }
        let b_start = self.roles.len();
        for b in 0..sc.b_count() {
            self.vertex(Role::BCopy { b, gadget });
        }
        let hub = self.vertex(Role::Hub { gadget });
        let ab_start = self.roles.len();
        let internal = Role::PathInternal { gadget };
        for &(a, b) in edges {
            self.path(a_start + a, b_start + b, len, internal);
        }
        for a in 0..sc.a_count() {
            self.path(a_start + a, hub, len, internal);
        }
        Placed {
            a_start,
            b_start,
            ab_start,
            len,
        }
    }

    fn tails(&mut self, placed: &Placed, b_count: usize, ell: usize) {
        for b in 0..b_count {
            let mut prev = placed.b(b);
            for _ in 0..ell {
                let v = self.vertex(Role::Tail { b });
                self.edges.push((prev, v));
                prev = v;
            }
        }
    }

    fn finish(self) -> Result<(Graph, Vec<Role>)> {
        let g = Graph::unweighted(self.roles.len(), &self.edges)?;
        Ok((g, self.roles))
    }
}

/// `Gad(Â, B̂, ĉ, L)` alone; it has `L·(|E| + |A|)` edges.
pub fn build_base_gadget(sc: &SetCoverInstance, len: usize) -> Result<GadgetFragment> {
    if len == 0 {
        return Err(KCenterError::InvalidParams("path length L must be >= 1".into()));
    }
    let mut b = Builder::new();
    let placed = b.gadget(sc, &sc.edges(), len, 0);
    debug_assert_eq!(placed.a_start, 0);
    let (graph, roles) = b.finish()?;
    Ok(GadgetFragment { graph, roles })
}

/// One gadget at `L = ℓ` with an `ℓ`-edge tail on each `b'`. A size-`k`
/// cover gives radius `2ℓ` with `k` centers.
pub fn gen_simple_lb(sc: &SetCoverInstance, k: usize, ell: usize) -> Result<GadgetOutput> {
    if ell == 0 {
        return Err(KCenterError::InvalidParams("ell must be >= 1".into()));
    }
    let mut b = Builder::new();
    let placed = b.gadget(sc, &sc.edges(), ell, 0);
    b.tails(&placed, sc.b_count(), ell);
    let (graph, roles) = b.finish()?;
    Ok(GadgetOutput {
        graph,
        roles,
        predicted_yes_radius: 2 * ell as Dist,
        center_budget: k,
        construction: Construction::Simple,
        ell,
        k,
    })
}

/// Vertex and edge counts of the recursive construction without building it.
pub fn recursive_size(sc: &SetCoverInstance, t: usize, ell: usize) -> (u128, u128) {
    fn go(sc: &SetCoverInstance, t: usize, ell: usize, p: usize, acc: &mut (u128, u128)) {
        let (a, b, e) = (sc.a_count() as u128, sc.b_count() as u128, sc.edge_count() as u128);
        let len = ((2 * t + 1 - p) * ell) as u128;
        acc.0 += a + b + 1 + (len - 1) * (e + a);
        acc.1 += len * (e + a);
        for q in 1..=(2 * t - p) / (2 * p) {
            go(sc, t, ell, (2 * q + 1) * p, acc);
            let conn = (2 * q * p * ell) as u128;
            acc.0 += e * (conn - 1);
            acc.1 += e * conn;
        }
    }
    let mut acc = (0, 0);
    go(sc, t, ell, 1, &mut acc);
    let tails = (ell * sc.b_count()) as u128;
    (acc.0 + tails, acc.1 + tails)
}

/// The recursive construction. Yes radius `(2t+1)ℓ` with `f(t)·(k+1)`
/// centers; `t = 1` and `t = 2` give the two small warm-up instances.
pub fn gen_recursive_lb(sc: &SetCoverInstance, k: usize, t: usize, ell: usize, budget: u128) -> Result<GadgetOutput> {
    if t == 0 || ell == 0 {
        return Err(KCenterError::InvalidParams(format!("need t >= 1 and ell >= 1, got t = {t}, ell = {ell}")));
    }
    let (vertices, _) = recursive_size(sc, t, ell);
    if vertices > budget {
        return Err(KCenterError::BudgetExceeded { needed: vertices, budget });
    }

    struct Rec<'a> {
        sc: &'a SetCoverInstance,
        edges: &'a [(usize, usize)],
        t: usize,
        ell: usize,
        next_gadget: usize,
        b: Builder,
    }

    impl Rec<'_> {
        fn recurse(&mut self, p: usize) -> Placed {
            let gid = self.next_gadget;
            self.next_gadget += 1;
            let len = (2 * self.t + 1 - p) * self.ell;
            let edges = self.edges;
            let me = self.b.gadget(self.sc, edges, len, gid);
            for q in 1..=(2 * self.t - p) / (2 * p) {
                let child = self.recurse((2 * q + 1) * p);
                let conn = 2 * q * p * self.ell;
                for (e, &(_, bb)) in edges.iter().enumerate() {
                    let junction = me.internal(e, len - conn);
                    self.b.path(junction, child.b(bb), conn, Role::PathInternal { gadget: gid });
                }
            }
            me
        }
    }

    let edges = sc.edges();
    let mut rec = Rec {
        sc,
        edges: &edges,
        t,
        ell,
        next_gadget: 0,
        b: Builder::new(),
    };
    let top = rec.recurse(1);
    rec.b.tails(&top, sc.b_count(), ell);
    let gadgets = rec.next_gadget;
    let (graph, roles) = rec.b.finish()?;
    Ok(GadgetOutput {
        graph,
        roles,
        predicted_yes_radius: ((2 * t + 1) * ell) as Dist,
        center_budget: gadgets * (k + 1),
        construction: Construction::Recursive { t },
        ell,
        k,
    })
}

/// Copies of `cover` in every gadget's `Â`, plus every hub for the recursive
/// construction.
pub fn yes_case_centers(gout: &GadgetOutput, sc: &SetCoverInstance, cover: &[usize]) -> Result<VertexSet> {
    if let Some(&a) = cover.iter().find(|&&a| a >= sc.a_count()) {
        return Err(KCenterError::InvalidInstance(format!("cover lists a{a}, but a_count = {}", sc.a_count())));
    }
    if let Some(&uncovered) = sc.uncovered(cover).first() {
        return Err(KCenterError::InvalidCover { uncovered });
    }
    let with_hubs = matches!(gout.construction, Construction::Recursive { .. });
    let n = gout.graph.n();
    Ok(VertexSet::from_iter(
        n,
        gout.roles.iter().enumerate().filter_map(|(v, role)| match *role {
            Role::ACopy { a, .. } if cover.contains(&a) => Some(v),
            Role::Hub { .. } if with_hubs => Some(v),
            _ => None,
        }),
    ))
}

/// Gadget-count tables for parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCounts {
    /// `f(t) = h(1) = g(2t)`.
    pub f: usize,
    /// `g(T)` for `T = 0..=2t`.
    pub g_table: Vec<usize>,
    /// `h(p)` for `p = 1..=2t` at index `p`; index 0 is unused and 0.
    pub h_table: Vec<usize>,
}

pub fn count_gadgets(t: usize) -> Result<GadgetCounts> {
    if t == 0 {
        return Err(KCenterError::InvalidParams("t must be >= 1".into()));
    }
    let top = 2 * t;
    let mut h = vec![0usize; top + 1];
    for p in (1..=top).rev() {
        h[p] = 1 + (1..=(top - p) / (2 * p)).map(|q| h[(2 * q + 1) * p]).sum::<usize>();
    }
    let mut g = vec![0usize; top + 1];
    for big_t in 1..=top {
        g[big_t] = 1 + (3..=big_t).step_by(2).map(|m| g[big_t / m]).sum::<usize>();
    }
    Ok(GadgetCounts {
        f: h[1],
        g_table: g,
        h_table: h,
    })
}
