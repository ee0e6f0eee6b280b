//! Standard-form CWS machinery.
//!
//! With word stabilizer generators `X_i Z^{r_i}` and word operators
//! `Z^{c_l}`, a Pauli error `E = ±Z^v X^u` acts on the graph state like
//! `Z^{Cl(E)}` with `Cl(E) = v ^ XOR_{u_i = 1} r_i`. Hence
//! `<w_i|E|w_j> = ±<S|Z^{c_i ^ c_j ^ Cl(E)}|S>`, nonzero exactly when
//! `c_i ^ c_j == Cl(E)`:
//!
//! * errors with `Cl(E) != 0` forbid the difference `Cl(E)` between codewords
//!   and never touch the diagonal;
//! * errors with `Cl(E) == 0` lie in `±S` up to phase; the diagonal entry is
//!   `(-1)^{c_i·u} <S|E|S>`, which is uniform over the code iff
//!   `(c_i ^ c_j)·u == 0` for every pair.
//!
//! Both constraints depend only on `c_i ^ c_j`, so the compatibility graph is
//! a Cayley graph on GF(2)^n.

use std::collections::HashSet;

use crate::clifford::{permute_masks, AxisPerm};
use crate::clique::CliqueGraph;
use crate::code::{format_bits, CwsCode};
use crate::error::{CwsError, Result};
use crate::error_model::ErrorSet;
use crate::gf2::{parity, XorBasis};
use crate::graph::{graph_state_stabilizer, Graph, StandardFormStabilizer};
use crate::pauli::PauliOperator;

/// The classical map `Cl_S(±Z^v X^u) = v ^ XOR_{i in u} r_i`.
pub fn cl_s(s: &StandardFormStabilizer, e: &PauliOperator) -> Result<u32> {
    if s.num_qubits() != e.num_qubits() {
        return Err(CwsError::LengthMismatch(s.num_qubits(), e.num_qubits()));
    }
    let mut out = e.z_mask();
    let mut u = e.x_mask();
    while u != 0 {
        let i = u.trailing_zeros() as usize;
        u &= u - 1;
        out ^= s.rows()[i];
    }
    Ok(out)
}

/// Nonzero images `D` and the x-masks `U0` of non-identity errors with image zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalErrorImage {
    n: usize,
    nonzero: Vec<u32>,
    zero_image_x: Vec<u32>,
}

impl ClassicalErrorImage {
    pub fn new(
        n: usize,
        nonzero: impl IntoIterator<Item = u32>,
        zero_image_x: impl IntoIterator<Item = u32>,
    ) -> Self {
        let mut d: Vec<u32> = nonzero.into_iter().filter(|&c| c != 0).collect();
        d.sort_unstable();
        d.dedup();
        let mut u: Vec<u32> = zero_image_x.into_iter().collect();
        u.sort_unstable();
        u.dedup();
        ClassicalErrorImage {
            n,
            nonzero: d,
            zero_image_x: u,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn nonzero(&self) -> &[u32] {
        &self.nonzero
    }

    pub fn zero_image_x(&self) -> &[u32] {
        &self.zero_image_x
    }

    pub fn has_zero_image(&self) -> bool {
        !self.zero_image_x.is_empty()
    }

    /// Whether two codewords may coexist.
    pub fn compatible(&self, a: u32, b: u32) -> bool {
        let d = a ^ b;
        d != 0
            && self.nonzero.binary_search(&d).is_err()
            && self
                .zero_image_x
                .iter()
                .all(|&u| parity((d & u) as u64) == 0)
    }

    /// All nonzero differences allowed between codewords.
    pub fn connection_set(&self) -> Vec<u32> {
        (1u32..1 << self.n)
            .filter(|&d| self.compatible(0, d))
            .collect()
    }
}

pub fn classical_image(s: &StandardFormStabilizer, es: &ErrorSet) -> Result<ClassicalErrorImage> {
    if s.num_qubits() != es.num_qubits() {
        return Err(CwsError::LengthMismatch(s.num_qubits(), es.num_qubits()));
    }
    let mut nonzero = Vec::new();
    let mut zero = Vec::new();
    for e in es.members().iter().filter(|e| !e.is_identity()) {
        match cl_s(s, e)? {
            0 => zero.push(e.x_mask()),
            c => nonzero.push(c),
        }
    }
    Ok(ClassicalErrorImage::new(s.num_qubits(), nonzero, zero))
}

/// The Cayley compatibility graph on all `2^n` patterns.
pub fn build_compatibility_graph(img: &ClassicalErrorImage) -> CliqueGraph {
    CliqueGraph::cayley(img.n, &img.connection_set())
}

/// Some non-identity error acts as a stabilizer element.
pub fn is_degenerate(img: &ClassicalErrorImage) -> bool {
    img.has_zero_image()
}

/// True when the codewords form a coset of a linear code.
pub fn is_additive(codewords: &[u32]) -> Result<bool> {
    let Some(&c0) = codewords.first() else {
        return Err(CwsError::InvalidParameter("empty codeword list".into()));
    };
    let shifted: HashSet<u32> = codewords.iter().map(|&c| c ^ c0).collect();
    if shifted.len() != codewords.len() {
        return Err(CwsError::InvalidParameter("duplicate codewords".into()));
    }
    if !shifted.len().is_power_of_two() {
        return Ok(false);
    }
    Ok(shifted
        .iter()
        .all(|&a| shifted.iter().all(|&b| shifted.contains(&(a ^ b)))))
}

/// Explains the first pair of codewords that violates the edge rule.
pub fn check_clique(
    img: &ClassicalErrorImage,
    es: &ErrorSet,
    s: &StandardFormStabilizer,
    codewords: &[u32],
) -> Result<()> {
    let n = img.n;
    let mut seen = HashSet::new();
    for &c in codewords {
        if c >> n != 0 {
            return Err(CwsError::NotAClique(format!(
                "codeword {c:#b} has bits beyond {n} qubits"
            )));
        }
        if !seen.insert(c) {
            return Err(CwsError::NotAClique(format!(
                "duplicate codeword {}",
                format_bits(c, n)
            )));
        }
    }
    for (i, &a) in codewords.iter().enumerate() {
        for &b in &codewords[i + 1..] {
            if img.compatible(a, b) {
                continue;
            }
            let d = a ^ b;
            let culprit = es
                .members()
                .iter()
                .filter(|e| !e.is_identity())
                .find(|e| {
                    let c = cl_s(s, e).unwrap_or(0);
                    c == d || (c == 0 && parity((d & e.x_mask()) as u64) == 1)
                })
                .map(|e| e.letter_string())
                .unwrap_or_else(|| "?".into());
            return Err(CwsError::NotAClique(format!(
                "codewords {} and {} conflict through error {culprit}",
                format_bits(a, n),
                format_bits(b, n)
            )));
        }
    }
    Ok(())
}

/// Presents a standard-form clique as a code for the untransformed error set.
///
/// The search used the graph state of `g` against `es` relabeled by `perm`;
/// with `U` the table unitary of `perm`, the emitted generators and word
/// operators are the standard-form ones conjugated by `U†`.
pub fn assemble_code(
    g: &Graph,
    perm: &AxisPerm,
    codewords: &[u32],
    es: &ErrorSet,
) -> Result<CwsCode> {
    let n = g.num_vertices();
    if perm.len() != n {
        return Err(CwsError::LengthMismatch(n, perm.len()));
    }
    if es.num_qubits() != n {
        return Err(CwsError::LengthMismatch(n, es.num_qubits()));
    }
    if codewords.is_empty() {
        return Err(CwsError::InvalidParameter("empty codeword list".into()));
    }
    let s = graph_state_stabilizer(g);
    let transformed = es.transform(perm)?;
    let img = classical_image(&s, &transformed)?;
    check_clique(&img, &transformed, &s, codewords)?;

    let back = perm.local_clifford().inverse();
    let stabilizer = s
        .generators()
        .iter()
        .map(|p| back.conjugate(p))
        .collect::<Result<Vec<_>>>()?;
    let word_operators = codewords
        .iter()
        .map(|&c| back.conjugate(&PauliOperator::from_parts(n, 0, c, 0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CwsCode {
        n,
        stabilizer,
        word_operators,
        codewords: codewords.to_vec(),
        perm: Some(perm.clone()),
        error_set: Some(es.kind()),
        additive: is_additive(codewords)?,
        degenerate: is_degenerate(&img),
    })
}

/// Fast per-instance image used by the search driver.
pub(crate) struct ImageKernel {
    n: usize,
    combos: Vec<u32>,
}

/// Connection set of one search instance as a bitset over `2^n <= 512` patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ConnectionKey(pub [u64; 8]);

impl ConnectionKey {
    pub fn patterns(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, &w) in self.0.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push((k * 64) as u32 + rest.trailing_zeros());
                rest &= rest - 1;
            }
        }
        out
    }
}

pub(crate) struct InstanceImage {
    pub key: ConnectionKey,
    pub zero_image_span: Vec<u32>,
}

impl ImageKernel {
    pub fn new(g: &Graph) -> Self {
        let s = graph_state_stabilizer(g);
        ImageKernel {
            n: g.num_vertices(),
            combos: s.row_combinations(),
        }
    }

    /// `members` are (x, z) masks of the canonical set, identity excluded.
    pub fn image(&self, members: &[(u32, u32)], perm: &AxisPerm) -> InstanceImage {
        let (xz, yz) = perm.masks();
        let mut forbidden = [0u64; 8];
        let mut span = XorBasis::new();
        for &(x, z) in members {
            let (px, pz) = permute_masks(xz, yz, x, z);
            let c = pz ^ self.combos[px as usize];
            if c == 0 {
                span.insert(px as u64);
            } else {
                forbidden[(c >> 6) as usize] |= 1 << (c & 63);
            }
        }
        let size = 1usize << self.n;
        let basis: Vec<u32> = span.rows().iter().map(|&v| v as u32).collect();
        let mut key = [0u64; 8];
        for d in 1..size {
            if forbidden[d >> 6] >> (d & 63) & 1 == 1 {
                continue;
            }
            if basis.iter().any(|&u| (d as u32 & u).count_ones() & 1 == 1) {
                continue;
            }
            key[d >> 6] |= 1 << (d & 63);
        }
        InstanceImage {
            key: ConnectionKey(key),
            zero_image_span: basis,
        }
    }
}
