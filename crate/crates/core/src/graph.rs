//! Simple undirected graphs, graph-state stabilizers and graph6 I/O.

use std::fmt;

use rand::Rng;

use crate::error::{CwsError, Result};
use crate::pauli::{check_qubits, PauliOperator, MAX_QUBITS};

/// Simple graph on at most 16 vertices; row `i` is the neighbourhood bitmask of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Checks symmetry and an empty diagonal.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Self> {
        let n = adj.len();
        check_qubits(n)?;
        for (i, &row) in adj.iter().enumerate() {
            if row >> n != 0 || row >> i & 1 == 1 {
                return Err(CwsError::InvalidParameter(format!(
                    "adjacency row {i} has bits outside the graph or on the diagonal"
                )));
            }
            for j in 0..n {
                if (row >> j & 1) != (adj[j] >> i & 1) {
                    return Err(CwsError::InvalidParameter(format!(
                        "adjacency is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Uniform random graph with edge probability 1/2.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                if rng.gen::<bool>() {
                    g.toggle_edge_unchecked(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(CwsError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(CwsError::InvalidParameter(format!(
                "self-loop at vertex {a}"
            )));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub(crate) fn toggle_edge_unchecked(&mut self, a: usize, b: usize) {
        self.adj[a] ^= 1 << b;
        self.adj[b] ^= 1 << a;
    }

    /// Toggles every edge inside the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.local_complement_unchecked(v))
    }

    pub(crate) fn local_complement_unchecked(&self, v: usize) -> Graph {
        let nb = self.adj[v];
        let mut adj = self.adj.clone();
        let mut rest = nb;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[u] ^= nb & !(1 << u);
        }
        Graph { n: self.n, adj }
    }

    /// Relabels so that new vertex `k` is old vertex `order[k]`.
    pub fn relabeled(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = vec![0usize; self.n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let adj = order
            .iter()
            .map(|&v| {
                let mut row = 0u32;
                let mut rest = self.adj[v];
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    row |= 1 << pos[u];
                }
                row
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// The graph with one extra vertex adjacent to `neighbourhood`.
    pub fn extended(&self, neighbourhood: u32) -> Result<Graph> {
        check_qubits(self.n + 1)?;
        if neighbourhood >> self.n != 0 {
            return Err(CwsError::InvalidParameter(
                "neighbourhood outside graph".into(),
            ));
        }
        let new = self.n;
        let mut adj = self.adj.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            if neighbourhood >> i & 1 == 1 {
                *row |= 1 << new;
            }
        }
        adj.push(neighbourhood);
        Ok(Graph { n: self.n + 1, adj })
    }

    pub fn is_connected(&self) -> bool {
        let full = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & full == full
    }

    /// All labeled graphs on `n` vertices (2^(n(n-1)/2) of them).
    pub fn all_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
        if n == 0 || n > 7 {
            return Err(CwsError::QubitCount { n, min: 1, max: 7 });
        }
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        Ok((0u64..1 << pairs.len()).map(move |mask| {
            let mut g = Graph { n, adj: vec![0; n] };
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.toggle_edge_unchecked(i, j);
                }
            }
            g
        }))
    }

    pub fn to_graph6(&self) -> String {
        let mut out = String::with_capacity(2 + self.n * self.n / 12);
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(line: &str) -> Result<Graph> {
        let err = |reason: &str| CwsError::Graph6 {
            line: line.to_string(),
            reason: reason.to_string(),
        };
        let s = line.trim_end_matches(['\n', '\r']);
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        let Some(&first) = bytes.first() else {
            return Err(err("empty line"));
        };
        if !(63..=126).contains(&first) {
            return Err(err("invalid size byte"));
        }
        if first == 126 {
            return Err(err("graphs with more than 62 vertices are not supported"));
        }
        let n = (first - 63) as usize;
        if n == 0 || n > MAX_QUBITS {
            return Err(err(&format!("vertex count {n} outside 1..={MAX_QUBITS}")));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        let body = &bytes[1..];
        if body.len() != nbytes {
            return Err(err(&format!(
                "expected {nbytes} data bytes, found {}",
                body.len()
            )));
        }
        let mut bits = Vec::with_capacity(nbytes * 6);
        for &b in body {
            if !(63..=126).contains(&b) {
                return Err(err("data byte out of range"));
            }
            let v = b - 63;
            for k in (0..6).rev() {
                bits.push(v >> k & 1 == 1);
            }
        }
        if bits[nbits..].iter().any(|&b| b) {
            return Err(err("nonzero padding bits"));
        }
        let mut g = Graph { n, adj: vec![0; n] };
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] {
                    g.toggle_edge_unchecked(i, j);
                }
                k += 1;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", self.to_graph6(), self.edges())
    }
}

/// Reads graph6 lines, skipping blanks and `#` comment lines.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(Graph::from_graph6)
        .collect()
}

/// Word stabilizer in standard form: generator `i` is `X_i Z^{rows[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormStabilizer {
    n: usize,
    rows: Vec<u32>,
}

impl StandardFormStabilizer {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn generators(&self) -> Vec<PauliOperator> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| PauliOperator::from_parts(self.n, 1 << i, r, 0))
            .collect()
    }

    /// `XOR_{i in u} rows[i]` for every `u` in `0..2^n`.
    pub fn row_combinations(&self) -> Vec<u32> {
        let mut table = vec![0u32; 1 << self.n];
        for u in 1..table.len() {
            let low = u.trailing_zeros() as usize;
            table[u] = table[u & (u - 1)] ^ self.rows[low];
        }
        table
    }
}

pub fn graph_state_stabilizer(g: &Graph) -> StandardFormStabilizer {
    StandardFormStabilizer {
        n: g.n,
        rows: g.adj.clone(),
    }
}
