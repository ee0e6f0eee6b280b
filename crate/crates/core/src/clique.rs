//! Exact maximum clique by bitset branch and bound with greedy-coloring bounds.
//!
//! Vertices are renumbered by descending degree (ties by index) so that the
//! sequential coloring visits high-degree vertices first. Each node colors
//! its candidate set, then branches on candidates from the highest color down,
//! cutting as soon as `|clique| + color` cannot beat the bound.
//!
//! Cayley graphs over GF(2)^n (edges `c ~ c ^ d` for `d` in a connection set)
//! are vertex transitive, so some maximum clique contains the zero pattern
//! and only its neighbourhood needs searching.

use std::time::{Duration, Instant};

pub const MAX_VERTICES: usize = 512;
const WORDS: usize = MAX_VERTICES / 64;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits([u64; WORDS]);

impl Bits {
    const EMPTY: Bits = Bits([0; WORDS]);

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn is_empty(&self, nw: usize) -> bool {
        self.0[..nw].iter().all(|&w| w == 0)
    }

    #[inline]
    fn and(&self, other: &Bits, nw: usize) -> Bits {
        let mut out = Bits::EMPTY;
        for k in 0..nw {
            out.0[k] = self.0[k] & other.0[k];
        }
        out
    }

    #[inline]
    fn and_not_assign(&mut self, other: &Bits, nw: usize) {
        for k in 0..nw {
            self.0[k] &= !other.0[k];
        }
    }

    #[inline]
    fn first(&self, nw: usize) -> Option<usize> {
        for k in 0..nw {
            if self.0[k] != 0 {
                return Some(k * 64 + self.0[k].trailing_zeros() as usize);
            }
        }
        None
    }

    fn count(&self, nw: usize) -> usize {
        self.0[..nw].iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Explicit graph on at most 512 vertices, optionally remembering the
/// connection set it was generated from.
#[derive(Clone)]
pub struct CliqueGraph {
    n: usize,
    rows: Vec<Bits>,
    connection_set: Option<Vec<u32>>,
}

impl std::fmt::Debug for CliqueGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CliqueGraph")
            .field("vertices", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl CliqueGraph {
    pub fn new(vertex_count: usize) -> Self {
        assert!(
            vertex_count <= MAX_VERTICES,
            "at most {MAX_VERTICES} vertices"
        );
        CliqueGraph {
            n: vertex_count,
            rows: vec![Bits::EMPTY; vertex_count],
            connection_set: None,
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(vertex_count);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Cayley graph on GF(2)^bits: `c ~ c ^ d` for every `d` in `connection_set`.
    pub fn cayley(bits: usize, connection_set: &[u32]) -> Self {
        let size = 1usize << bits;
        let mut g = Self::new(size);
        let mut conn: Vec<u32> = connection_set
            .iter()
            .copied()
            .filter(|&d| d != 0 && (d as usize) < size)
            .collect();
        conn.sort_unstable();
        conn.dedup();
        for c in 0..size {
            for &d in &conn {
                g.rows[c].set(c ^ d as usize);
            }
        }
        g.connection_set = Some(conn);
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n);
        if a != b {
            self.rows[a].set(b);
            self.rows[b].set(a);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn connection_set(&self) -> Option<&[u32]> {
        self.connection_set.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.rows[a].get(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count(WORDS)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Pairwise adjacency of distinct members.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &a)| {
            vertices[i + 1..]
                .iter()
                .all(|&b| a != b && self.has_edge(a, b))
        })
    }
}

/// Node-count and wall-clock limits for one solver run.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            max_nodes: None,
            time_limit: Some(limit),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub prunes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Size of `witness`.
    pub size: usize,
    /// A clique, sorted ascending.
    pub witness: Vec<usize>,
    /// True when `size` is proven maximum: the search finished and
    /// `size >= lower_bound`.
    pub exact: bool,
    pub budget_exhausted: bool,
    pub stats: SolverStats,
}

struct Solver<'a> {
    adj: &'a [Bits],
    nw: usize,
    floor: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    stats: SolverStats,
    max_nodes: u64,
    deadline: Option<Instant>,
    exhausted: bool,
    order_buf: Vec<Vec<(usize, usize)>>,
}

impl Solver<'_> {
    fn bound(&self) -> usize {
        self.best.len().max(self.floor)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.stats.nodes >= self.max_nodes {
            self.exhausted = true;
        } else if self.stats.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    /// Greedy sequential coloring of `p`; fills `order` with (vertex, color)
    /// for vertices whose color could still improve on the bound.
    fn color(&self, p: &Bits, order: &mut Vec<(usize, usize)>) {
        order.clear();
        let kmin = (self.bound() + 1).saturating_sub(self.current.len());
        let mut uncolored = *p;
        let mut color = 0;
        while !uncolored.is_empty(self.nw) {
            color += 1;
            let mut q = uncolored;
            while let Some(v) = q.first(self.nw) {
                uncolored.clear(v);
                q.clear(v);
                q.and_not_assign(&self.adj[v], self.nw);
                if color >= kmin {
                    order.push((v, color));
                }
            }
        }
    }

    fn expand(&mut self, mut p: Bits, depth: usize) {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if self.out_of_budget() {
            return;
        }
        let mut order = self.order_buf.pop().unwrap_or_default();
        self.color(&p, &mut order);
        for &(v, color) in order.iter().rev() {
            if self.current.len() + color <= self.bound() {
                self.stats.prunes += 1;
                break;
            }
            self.current.push(v);
            let next = p.and(&self.adj[v], self.nw);
            if next.is_empty(self.nw) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next, depth + 1);
            }
            self.current.pop();
            p.clear(v);
            if self.exhausted {
                break;
            }
        }
        self.order_buf.push(order);
    }
}

fn greedy_clique(adj: &[Bits], n: usize, nw: usize) -> Vec<usize> {
    let mut clique = Vec::new();
    let mut cand = Bits::EMPTY;
    for v in 0..n {
        cand.set(v);
    }
    while let Some(v) = cand.first(nw) {
        clique.push(v);
        cand = cand.and(&adj[v], nw);
    }
    clique
}

/// Maximum clique of `g`, searching only for cliques of size at least
/// `lower_bound`. When the true maximum is below `lower_bound` the outcome
/// carries whatever smaller clique was found and `exact == false`.
pub fn max_clique(g: &CliqueGraph, lower_bound: usize, budget: Budget) -> CliqueOutcome {
    let n = g.n;
    if n == 0 {
        return CliqueOutcome {
            size: 0,
            witness: Vec::new(),
            exact: lower_bound == 0,
            budget_exhausted: false,
            stats: SolverStats::default(),
        };
    }
    let nw = n.div_ceil(64);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let adj: Vec<Bits> = order
        .iter()
        .map(|&v| {
            let mut row = Bits::EMPTY;
            for u in 0..n {
                if g.rows[v].get(u) {
                    row.set(pos[u]);
                }
            }
            row
        })
        .collect();

    let initial = greedy_clique(&adj, n, nw);
    let mut solver = Solver {
        adj: &adj,
        nw,
        floor: lower_bound.saturating_sub(1),
        best: initial,
        current: Vec::new(),
        stats: SolverStats::default(),
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        exhausted: false,
        order_buf: Vec::new(),
    };
    let mut all = Bits::EMPTY;
    for v in 0..n {
        all.set(v);
    }
    solver.expand(all, 0);

    let mut witness: Vec<usize> = solver.best.iter().map(|&k| order[k]).collect();
    witness.sort_unstable();
    debug_assert!(g.is_clique(&witness));
    let exhausted = solver.exhausted;
    CliqueOutcome {
        size: witness.len(),
        exact: !exhausted && witness.len() >= lower_bound,
        witness,
        budget_exhausted: exhausted,
        stats: solver.stats,
    }
}

/// Maximum clique of the Cayley graph on GF(2)^bits with the given connection
/// set, found as `{0} ∪` a maximum clique of the neighbourhood of zero.
/// The witness lists patterns (vertex ids are the patterns themselves).
pub fn max_clique_cayley(
    connection_set: &[u32],
    bits: usize,
    lower_bound: usize,
    budget: Budget,
) -> CliqueOutcome {
    assert!(bits <= 9, "Cayley search supports at most 9 bits");
    let size = 1usize << bits;
    let mut member = vec![false; size];
    let mut nbhd: Vec<u32> = Vec::new();
    for &d in connection_set {
        if d != 0 && (d as usize) < size && !member[d as usize] {
            member[d as usize] = true;
            nbhd.push(d);
        }
    }
    nbhd.sort_unstable();
    let mut local = CliqueGraph::new(nbhd.len());
    for a in 0..nbhd.len() {
        for b in a + 1..nbhd.len() {
            if member[(nbhd[a] ^ nbhd[b]) as usize] {
                local.rows[a].set(b);
                local.rows[b].set(a);
            }
        }
    }
    let inner = max_clique(&local, lower_bound.saturating_sub(1), budget);
    let mut witness = vec![0usize];
    witness.extend(inner.witness.iter().map(|&k| nbhd[k] as usize));
    witness.sort_unstable();
    CliqueOutcome {
        size: witness.len(),
        exact: !inner.budget_exhausted && witness.len() >= lower_bound,
        witness,
        budget_exhausted: inner.budget_exhausted,
        stats: inner.stats,
    }
}
