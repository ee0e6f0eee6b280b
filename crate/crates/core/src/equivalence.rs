//! Equivalence of stabilizer codes under local Cliffords, optionally combined
//! with a permutation of the qubits.
//!
//! Signs are ignored: a local Pauli realizes every sign pattern on a
//! stabilizer group, so two codes are equivalent iff some per-qubit letter
//! relabeling (an element of GL(2, F2) acting on `(x, z)`) maps one sign-free
//! group onto the other. The search assigns qubits one at a time and prunes
//! with per-qubit and pairwise letter/weight counts over all group elements.

use crate::code::CwsCode;
use crate::error::{CwsError, Result};
use crate::gf2::{null_space, XorBasis};
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::StabilizerGroup;

/// Group elements are enumerated in full, so the rank is kept small.
pub const MAX_EQUIVALENCE_RANK: usize = 16;

/// The six invertible relabelings of the letters, as images of X=1, Z=2, Y=3.
const RELABELINGS: [[u8; 4]; 6] = [
    [0, 1, 2, 3],
    [0, 2, 1, 3],
    [0, 1, 3, 2],
    [0, 3, 2, 1],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
];

/// A map taking code `a` onto code `b`: qubit `j` of `a` lands on
/// `qubits[j]` of `b`, with `letters[j]` giving the images of X, Y and Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEquivalence {
    pub qubits: Vec<usize>,
    pub letters: Vec<[Letter; 3]>,
}

impl LocalEquivalence {
    /// Image of `p` under the map, phase dropped.
    pub fn apply(&self, p: &PauliOperator) -> Result<PauliOperator> {
        let n = p.num_qubits();
        if n != self.qubits.len() {
            return Err(CwsError::LengthMismatch(self.qubits.len(), n));
        }
        let mut out = vec![Letter::I; n];
        for (j, letter) in p.letters().into_iter().enumerate() {
            out[self.qubits[j]] = match letter {
                Letter::I => Letter::I,
                Letter::X => self.letters[j][0],
                Letter::Y => self.letters[j][1],
                Letter::Z => self.letters[j][2],
            };
        }
        PauliOperator::from_letters(&out)
    }
}

/// Stabilizer generators of an additive CWS code: the word-stabilizer
/// elements commuting with every word operator.
pub fn code_stabilizer(code: &CwsCode) -> Result<Vec<PauliOperator>> {
    if !code.additive {
        return Err(CwsError::InvalidParameter(
            "only additive codes have a stabilizer group".into(),
        ));
    }
    let gens = &code.stabilizer;
    if gens.len() > 63 {
        return Err(CwsError::InvalidParameter("too many generators".into()));
    }
    // row l: which generators anticommute with word operator l
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
        .collect::<Result<Vec<u64>>>()?;
    null_space(&rows, gens.len())
        .into_iter()
        .map(|combo| {
            let mut p = PauliOperator::identity(code.n)?;
            for (i, g) in gens.iter().enumerate() {
                if combo >> i & 1 == 1 {
                    p = p.multiply(g)?;
                }
            }
            Ok(p)
        })
        .collect()
}

/// Sign-free stabilizer group with the counting tables used for pruning.
struct GroupProfile {
    n: usize,
    gens: Vec<(u32, u32)>,
    span: XorBasis,
    /// `single[(j * 4 + l) * (n + 1) + w]`: elements of weight `w` with letter `l` on `j`.
    single: Vec<u32>,
    /// `pair[((j * n + k) * 16 + l * 4 + m) * (n + 1) + w]`.
    pair: Vec<u32>,
}

fn letter_code(x: u32, z: u32, q: usize) -> usize {
    ((x >> q & 1) | (z >> q & 1) << 1) as usize
}

fn pack(x: u32, z: u32) -> u64 {
    x as u64 | (z as u64) << 32
}

impl GroupProfile {
    fn new(generators: &[PauliOperator]) -> Result<Self> {
        let group = StabilizerGroup::new(generators.to_vec())?;
        let n = group.num_qubits();
        let gens: Vec<(u32, u32)> = group
            .generators()
            .iter()
            .map(|g| (g.x_mask(), g.z_mask()))
            .collect();
        if gens.len() > MAX_EQUIVALENCE_RANK {
            return Err(CwsError::InvalidParameter(format!(
                "stabilizer rank {} above {MAX_EQUIVALENCE_RANK}",
                gens.len()
            )));
        }
        let mut span = XorBasis::new();
        for &(x, z) in &gens {
            span.insert(pack(x, z));
        }
        let bins = n + 1;
        let mut single = vec![0u32; n * 4 * bins];
        let mut pair = vec![0u32; n * n * 16 * bins];
        for combo in 0u32..1 << gens.len() {
            let (mut x, mut z) = (0u32, 0u32);
            for (i, &(gx, gz)) in gens.iter().enumerate() {
                if combo >> i & 1 == 1 {
                    x ^= gx;
                    z ^= gz;
                }
            }
            let w = (x | z).count_ones() as usize;
            for j in 0..n {
                let l = letter_code(x, z, j);
                single[(j * 4 + l) * bins + w] += 1;
                for k in 0..n {
                    let m = letter_code(x, z, k);
                    pair[((j * n + k) * 16 + l * 4 + m) * bins + w] += 1;
                }
            }
        }
        Ok(GroupProfile {
            n,
            gens,
            span,
            single,
            pair,
        })
    }

    fn single(&self, j: usize, l: usize) -> &[u32] {
        let bins = self.n + 1;
        let at = (j * 4 + l) * bins;
        &self.single[at..at + bins]
    }

    fn pair(&self, j: usize, k: usize, l: usize, m: usize) -> &[u32] {
        let bins = self.n + 1;
        let at = ((j * self.n + k) * 16 + l * 4 + m) * bins;
        &self.pair[at..at + bins]
    }
}

struct Matcher<'a> {
    a: &'a GroupProfile,
    b: &'a GroupProfile,
    permute: bool,
    qubits: Vec<usize>,
    relabel: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn fits(&self, j: usize, t: usize, s: usize) -> bool {
        let sigma = &RELABELINGS[s];
        if (1..4).any(|l| self.a.single(j, l) != self.b.single(t, sigma[l] as usize)) {
            return false;
        }
        for k in 0..j {
            let (tk, sk) = (self.qubits[k], &RELABELINGS[self.relabel[k]]);
            for l in 0..4 {
                for m in 0..4 {
                    if l == 0 && m == 0 {
                        continue;
                    }
                    let got = self.b.pair(t, tk, sigma[l] as usize, sk[m] as usize);
                    if self.a.pair(j, k, l, m) != got {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn maps_group(&self) -> bool {
        self.a.gens.iter().all(|&(x, z)| {
            let (mut mx, mut mz) = (0u32, 0u32);
            for j in 0..self.a.n {
                let image = RELABELINGS[self.relabel[j]][letter_code(x, z, j)] as u32;
                mx |= (image & 1) << self.qubits[j];
                mz |= (image >> 1) << self.qubits[j];
            }
            self.b.span.contains(pack(mx, mz))
        })
    }

    fn search(&mut self, j: usize) -> bool {
        if j == self.a.n {
            return self.maps_group();
        }
        let targets: Vec<usize> = if self.permute {
            (0..self.a.n).filter(|&t| !self.used[t]).collect()
        } else {
            vec![j]
        };
        for t in targets {
            for s in 0..RELABELINGS.len() {
                if !self.fits(j, t, s) {
                    continue;
                }
                self.qubits[j] = t;
                self.relabel[j] = s;
                self.used[t] = true;
                if self.search(j + 1) {
                    return true;
                }
                self.used[t] = false;
            }
        }
        false
    }
}

/// Finds a local Clifford (and, with `permute`, a qubit permutation) taking
/// the stabilizer group generated by `a` onto the one generated by `b`.
pub fn local_equivalence(
    a: &[PauliOperator],
    b: &[PauliOperator],
    permute: bool,
) -> Result<Option<LocalEquivalence>> {
    let (pa, pb) = (GroupProfile::new(a)?, GroupProfile::new(b)?);
    if pa.n != pb.n {
        return Err(CwsError::LengthMismatch(pa.n, pb.n));
    }
    if pa.gens.len() != pb.gens.len() {
        return Ok(None);
    }
    let n = pa.n;
    let mut m = Matcher {
        a: &pa,
        b: &pb,
        permute,
        qubits: vec![0; n],
        relabel: vec![0; n],
        used: vec![false; n],
    };
    if !m.search(0) {
        return Ok(None);
    }
    let from_code = |c: u8| match c {
        1 => Letter::X,
        2 => Letter::Z,
        _ => Letter::Y,
    };
    let letters = m
        .relabel
        .iter()
        .map(|&s| {
            let sigma = RELABELINGS[s];
            [
                from_code(sigma[1]),
                from_code(sigma[3]),
                from_code(sigma[2]),
            ]
        })
        .collect();
    Ok(Some(LocalEquivalence {
        qubits: m.qubits,
        letters,
    }))
}

/// Splits codes into equivalence classes; returns the class index of each.
pub fn equivalence_classes(codes: &[Vec<PauliOperator>], permute: bool) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(codes.len());
    for (i, code) in codes.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if local_equivalence(code, &codes[r], permute)?.is_some() {
                found = Some(c);
                break;
            }
        }
        class.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_paulis;

    #[test]
    fn five_qubit_code_under_relabeling() {
        let a = parse_paulis(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap();
        let (x, y, z) = (Letter::X, Letter::Y, Letter::Z);
        let map = LocalEquivalence {
            qubits: vec![3, 0, 4, 1, 2],
            letters: vec![[z, y, x], [x, y, z], [y, x, z], [y, z, x], [x, z, y]],
        };
        let b: Vec<PauliOperator> = a.iter().map(|g| map.apply(g).unwrap()).collect();
        assert!(local_equivalence(&a, &a, false).unwrap().is_some());
        let found = local_equivalence(&a, &b, true)
            .unwrap()
            .expect("relabeled copy");
        let group = StabilizerGroup::new(b).unwrap();
        for g in &a {
            assert!(group
                .element_matching(&found.apply(g).unwrap())
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn weight_profiles_separate_codes() {
        let a = parse_paulis(&["ZZI", "IZZ"]).unwrap();
        let b = parse_paulis(&["ZZI", "IZX"]).unwrap();
        let c = parse_paulis(&["ZZZ", "XXI"]).unwrap();
        assert!(local_equivalence(&a, &b, false).unwrap().is_some());
        assert!(local_equivalence(&a, &c, true).unwrap().is_none());
    }
}
