//! Conversion of stabilizer codes and general CWS codes to standard form.
//!
//! A stabilizer code with `n - k` generators becomes a CWS code by extending
//! the generators to a maximal abelian word stabilizer and taking the `2^k`
//! products of logical X operators as word operators. A local Clifford then
//! takes the word stabilizer to a graph-state stabilizer: Hadamards make the
//! X block invertible, phase gates clear Y's from the diagonal and Pauli Z's
//! fix signs.

use crate::clifford::{AxisPerm, LocalClifford, SingleQubitClifford};
use crate::code::CwsCode;
use crate::engine::{cl_s, classical_image, is_additive, is_degenerate};
use crate::error::{CwsError, Result};
use crate::error_model::ErrorSet;
use crate::gf2::{null_space, solve, XorBasis};
use crate::graph::{graph_state_stabilizer, Graph};
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerGroup;

/// A CWS code seen through a local Clifford: `clifford` maps the word
/// stabilizer onto the graph-state stabilizer of `graph` (all signs +) and
/// each word operator onto a Pauli acting on the graph state as `Z^{codeword}`.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub graph: Graph,
    pub clifford: LocalClifford,
    /// Coset representatives of the letter permutation induced by `clifford`.
    pub perm: AxisPerm,
    pub codewords: Vec<u32>,
}

fn pack(p: &PauliOperator) -> u64 {
    p.x_mask() as u64 | (p.z_mask() as u64) << p.num_qubits()
}

/// Functional `v -> symplectic product of v with p` in the packed layout.
fn dual(p: &PauliOperator) -> u64 {
    p.z_mask() as u64 | (p.x_mask() as u64) << p.num_qubits()
}

fn unpack_hermitian(v: u64, n: usize) -> PauliOperator {
    let mask = (1u64 << n) - 1;
    let x = (v & mask) as u32;
    let z = (v >> n & mask) as u32;
    let ys = (x & z).count_ones() as u8;
    // sign +1 relative to the letter product
    PauliOperator::from_parts(n, x, z, (4 - ys % 4) % 4)
}

fn conjugate_all(rows: &mut [PauliOperator], l: &LocalClifford) {
    for r in rows.iter_mut() {
        *r = l.conjugate(r).expect("matching length");
    }
}

fn single(n: usize, q: usize, c: SingleQubitClifford) -> LocalClifford {
    let mut per = vec![SingleQubitClifford::IDENTITY; n];
    per[q] = c;
    LocalClifford::new(per)
}

/// Standard form of a CWS code given by `n` word stabilizer generators and word operators.
pub fn standard_form(
    word_stabilizer: &[PauliOperator],
    word_operators: &[PauliOperator],
) -> Result<StandardForm> {
    let group = StabilizerGroup::new(word_stabilizer.to_vec())?;
    let n = group.num_qubits();
    if group.rank() != n {
        return Err(CwsError::InvalidStabilizer(format!(
            "word stabilizer needs {n} generators, found {}",
            group.rank()
        )));
    }
    let mut rows = word_stabilizer.to_vec();
    let mut clifford = LocalClifford::identity(n);

    // eliminate on the X block; the X-free rows pick the Hadamard columns
    let mut work = rows.clone();
    let mut r = 0;
    for col in 0..n {
        let bit = 1u32 << col;
        let Some(sel) = (r..n).find(|&i| work[i].x_mask() & bit != 0) else {
            continue;
        };
        work.swap(r, sel);
        for i in 0..n {
            if i != r && work[i].x_mask() & bit != 0 {
                work[i] = work[i].compose(&work[r]);
            }
        }
        r += 1;
    }
    let mut zb = XorBasis::new();
    let mut hadamard_cols = Vec::new();
    for p in &work[r..] {
        // pivot of the reduced row is a fresh column
        let before = zb.rank();
        zb.insert(p.z_mask() as u64);
        debug_assert_eq!(zb.rank(), before + 1);
    }
    for &row in zb.rows() {
        hadamard_cols.push(63 - row.leading_zeros() as usize);
    }
    for &q in &hadamard_cols {
        let h = single(n, q, SingleQubitClifford::HADAMARD);
        conjugate_all(&mut rows, &h);
        clifford.then_on(q, SingleQubitClifford::HADAMARD);
    }

    // Gauss-Jordan to X block = identity
    for col in 0..n {
        let bit = 1u32 << col;
        let Some(sel) = (col..n).find(|&i| rows[i].x_mask() & bit != 0) else {
            return Err(CwsError::InvalidStabilizer(
                "X block stayed singular after Hadamards".into(),
            ));
        };
        rows.swap(col, sel);
        for i in 0..n {
            if i != col && rows[i].x_mask() & bit != 0 {
                rows[i] = rows[i].compose(&rows[col]);
            }
        }
    }
    for q in 0..n {
        if rows[q].z_mask() >> q & 1 == 1 {
            conjugate_all(&mut rows, &single(n, q, SingleQubitClifford::PHASE));
            clifford.then_on(q, SingleQubitClifford::PHASE);
        }
    }
    for q in 0..n {
        if rows[q].sign_exp() == 2 {
            conjugate_all(&mut rows, &single(n, q, SingleQubitClifford::PAULI_Z));
            clifford.then_on(q, SingleQubitClifford::PAULI_Z);
        }
    }
    let adjacency: Vec<u32> = rows.iter().map(|p| p.z_mask()).collect();
    let graph = Graph::from_adjacency(adjacency)?;
    debug_assert!(rows
        .iter()
        .zip(graph_state_stabilizer(&graph).generators())
        .all(|(a, b)| *a == b));

    let s = graph_state_stabilizer(&graph);
    let codewords = word_operators
        .iter()
        .map(|w| cl_s(&s, &clifford.conjugate(w)?))
        .collect::<Result<Vec<_>>>()?;
    let perm = clifford.axis_perm();
    Ok(StandardForm {
        graph,
        clifford,
        perm,
        codewords,
    })
}

/// Word stabilizer and word operators for the stabilizer code with the given generators.
pub fn stabilizer_code_to_cws(
    generators: &[PauliOperator],
) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>)> {
    let group = StabilizerGroup::new(generators.to_vec())?;
    let n = group.num_qubits();
    let mut word = generators.to_vec();
    let mut span = XorBasis::new();
    for g in &word {
        span.insert(pack(g));
    }
    let mut added = Vec::new();
    while word.len() < n {
        let duals: Vec<u64> = word.iter().map(dual).collect();
        let candidate = null_space(&duals, 2 * n)
            .into_iter()
            .find(|&v| !span.contains(v))
            .expect("an isotropic subspace below dimension n extends");
        span.insert(candidate);
        let p = unpack_hermitian(candidate, n);
        word.push(p);
        added.push(p);
    }

    // logical X_j: commutes with the code stabilizer, anticommutes only with added_j
    let mut constraint_rows: Vec<u64> = generators.iter().map(dual).collect();
    constraint_rows.extend(added.iter().map(dual));
    let mut logical = Vec::new();
    for j in 0..added.len() {
        let mut rhs = vec![false; generators.len()];
        rhs.extend((0..added.len()).map(|l| l == j));
        let v = solve(&constraint_rows, &rhs, 2 * n).ok_or_else(|| {
            CwsError::InvalidStabilizer("no logical operator for an added generator".into())
        })?;
        logical.push(unpack_hermitian(v, n));
    }
    let k = logical.len();
    let word_ops = (0u32..1 << k)
        .map(|mask| {
            let mut w = PauliOperator::from_parts(n, 0, 0, 0);
            for (j, l) in logical.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    w = w.compose(l);
                }
            }
            w
        })
        .collect();
    Ok((word, word_ops))
}

/// Full CWS record for a stabilizer code; `degenerate` and `error_set` are
/// filled in when `es` is given.
pub fn cws_code_from_stabilizer(
    generators: &[PauliOperator],
    es: Option<&ErrorSet>,
) -> Result<(CwsCode, StandardForm)> {
    let (word, ops) = stabilizer_code_to_cws(generators)?;
    let form = standard_form(&word, &ops)?;
    let n = word.len();
    let degenerate = match es {
        Some(es) => {
            let img = classical_image(
                &graph_state_stabilizer(&form.graph),
                &es.transform(&form.perm)?,
            )?;
            is_degenerate(&img)
        }
        None => false,
    };
    let code = CwsCode {
        n,
        stabilizer: word,
        word_operators: ops,
        codewords: form.codewords.clone(),
        perm: Some(form.perm.clone()),
        error_set: es.map(|e| e.kind()),
        additive: is_additive(&form.codewords)?,
        degenerate,
    };
    Ok((code, form))
}

/// Stabilizer generators of an additive CWS code: the elements of the word
/// stabilizer commuting with every word operator.
pub fn stabilizer_of_additive_code(code: &CwsCode) -> Result<Vec<PauliOperator>> {
    let group = StabilizerGroup::new(code.stabilizer.clone())?;
    let n = group.num_qubits();
    if group.rank() != n {
        return Err(CwsError::InvalidStabilizer(
            "word stabilizer is not maximal".into(),
        ));
    }
    let gens = group.generators();
    let rows = code
        .word_operators
        .iter()
        .map(|w| {
            let mut row = 0u64;
            for (i, g) in gens.iter().enumerate() {
                if !g.commutes(w)? {
                    row |= 1 << i;
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let out: Vec<PauliOperator> = null_space(&rows, n)
        .into_iter()
        .map(|a| {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| a >> i & 1 == 1)
                .fold(PauliOperator::from_parts(n, 0, 0, 0), |acc, (_, g)| {
                    acc.compose(g)
                })
        })
        .collect();
    let k = code.dimension();
    if !k.is_power_of_two() || out.len() + k.trailing_zeros() as usize != n {
        return Err(CwsError::CodeDefect(format!(
            "code of dimension {k} is not additive ({} commuting generators)",
            out.len()
        )));
    }
    Ok(out)
}
