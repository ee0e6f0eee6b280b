//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use num_complex::Complex64;
use rand::Rng;

use cws_core::clique::CliqueGraph;
use cws_core::code::{read_code_file, CodeFile};
use cws_core::PauliOperator;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture_stabilizer(name: &str) -> Vec<PauliOperator> {
    match read_code_file(&fixture(name)).expect("fixture parses") {
        CodeFile::Stabilizer(g) => g,
        CodeFile::Cws(_) => panic!("{name} should list stabilizer generators only"),
    }
}

// ---------- dense matrices from the printed form ----------

pub type Matrix = Vec<Vec<Complex64>>;

fn letter_matrix(c: char) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match c {
        'I' => [[one, o], [o, one]],
        'X' => [[o, one], [one, o]],
        'Y' => [[o, -i], [i, o]],
        'Z' => [[one, o], [o, -one]],
        _ => panic!("bad letter {c}"),
    }
}

/// Matrix of a printed Pauli string such as `-iXYZ`; basis bit j is qubit j+1.
pub fn dense_from_string(s: &str) -> Matrix {
    let (coef, letters) = if let Some(rest) = s.strip_prefix("+i") {
        (Complex64::new(0.0, 1.0), rest)
    } else if let Some(rest) = s.strip_prefix("-i") {
        (Complex64::new(0.0, -1.0), rest)
    } else if let Some(rest) = s.strip_prefix('-') {
        (Complex64::new(-1.0, 0.0), rest)
    } else {
        (Complex64::new(1.0, 0.0), s.strip_prefix('+').unwrap_or(s))
    };
    let chars: Vec<char> = letters.chars().collect();
    let dim = 1usize << chars.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (row, mrow) in m.iter_mut().enumerate() {
        for (col, entry) in mrow.iter_mut().enumerate() {
            let mut v = coef;
            for (j, &c) in chars.iter().enumerate() {
                let lm = letter_matrix(c);
                v *= lm[row >> j & 1][col >> j & 1];
            }
            *entry = v;
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

pub fn random_pauli_string<R: Rng>(n: usize, rng: &mut R) -> String {
    let prefix = ["", "+i", "-", "-i"][rng.gen_range(0..4)];
    let letters: String = (0..n)
        .map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)])
        .collect();
    format!("{prefix}{letters}")
}

// ---------- letter-level error-set oracle ----------

/// Single-qubit product modulo phase, from the multiplication table.
pub fn letter_product(a: char, b: char) -> char {
    match (a, b) {
        ('I', c) | (c, 'I') => c,
        (x, y) if x == y => 'I',
        ('X', 'Y') | ('Y', 'X') => 'Z',
        ('Y', 'Z') | ('Z', 'Y') => 'X',
        ('X', 'Z') | ('Z', 'X') => 'Y',
        _ => unreachable!(),
    }
}

pub fn string_product(a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .map(|(x, y)| letter_product(x, y))
        .collect()
}

pub fn ad1_strings(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let base = |n: usize| vec!['I'; n];
    out.insert(base(n).into_iter().collect());
    for i in 0..n {
        for c in ['X', 'Y', 'Z'] {
            let mut s = base(n);
            s[i] = c;
            out.insert(s.into_iter().collect());
        }
        for j in i + 1..n {
            for a in ['X', 'Y'] {
                for b in ['X', 'Y'] {
                    let mut s = base(n);
                    s[i] = a;
                    s[j] = b;
                    out.insert(s.into_iter().collect());
                }
            }
        }
    }
    out
}

pub fn ad2_strings(n: usize) -> BTreeSet<String> {
    let e1: Vec<String> = ad1_strings(n).into_iter().collect();
    let mut out = BTreeSet::new();
    for a in &e1 {
        for b in &e1 {
            out.insert(string_product(a, b));
        }
    }
    out
}

pub fn swap_xy_at(s: &str, q: usize) -> String {
    s.chars()
        .enumerate()
        .map(|(j, c)| match (j == q, c) {
            (true, 'X') => 'Y',
            (true, 'Y') => 'X',
            (_, c) => c,
        })
        .collect()
}

// ---------- graphs ----------

/// graph6 decoder written from the format description, bit by bit.
pub fn decode_graph6(line: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u8> = line.bytes().collect();
    let n = (bytes[0] - 63) as usize;
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push(v >> k & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    (n, edges)
}

/// Number of multisets of connected classes, by the Euler transform.
pub fn euler_transform(connected: &[u64], n: usize) -> u64 {
    // connected[k] = number of connected classes on k vertices, connected[0] unused
    let mut b = vec![0u64; n + 1];
    b[0] = 1;
    for k in 1..=n {
        let mut next = vec![0u64; n + 1];
        // choose a multiset of size-k components: stars and bars
        for total in 0..=n {
            if b[total] == 0 {
                continue;
            }
            let mut m = 0;
            while total + m * k <= n {
                let ways = multichoose(connected[k], m as u64);
                next[total + m * k] += b[total] * ways;
                m += 1;
            }
        }
        b = next;
    }
    b[n]
}

fn multichoose(c: u64, m: u64) -> u64 {
    // C(c + m - 1, m)
    if m == 0 {
        return 1;
    }
    if c == 0 {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m as u128 {
        num *= (c as u128) + i;
        den *= i + 1;
    }
    (num / den) as u64
}

// ---------- cliques ----------

pub fn random_clique_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> CliqueGraph {
    let mut g = CliqueGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Every maximal clique, by plain Bron-Kerbosch without pivoting.
pub fn maximal_cliques(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn bk(
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        adj: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let mut p = p;
        let mut x = x;
        while let Some(v) = p.pop() {
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| adj(u, v)).collect();
            bk(r, np, nx, adj, out);
            r.pop();
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(
        &mut Vec::new(),
        (0..n).collect(),
        Vec::new(),
        &adj,
        &mut out,
    );
    out
}

pub fn naive_max_clique(g: &CliqueGraph) -> usize {
    maximal_cliques(g.vertex_count(), |a, b| g.has_edge(a, b))
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

pub fn as_set(v: &[String]) -> HashSet<String> {
    v.iter().cloned().collect()
}
