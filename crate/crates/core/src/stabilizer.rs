//! Abelian Pauli subgroups without `-I`, with exact-sign membership tests.

use crate::error::{CwsError, Result};
use crate::pauli::PauliOperator;

#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    // echelon rows paired with the group element they stand for
    rows: Vec<(u64, PauliOperator)>,
}

impl StabilizerGroup {
    /// Validates Hermitian, pairwise commuting and independent generators.
    /// Independence plus Hermiticity rules out `-I` in the group.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(CwsError::InvalidStabilizer("no generators".into()));
        };
        let n = first.num_qubits();
        for (i, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(CwsError::LengthMismatch(n, g.num_qubits()));
            }
            if !g.is_hermitian() {
                return Err(CwsError::InvalidStabilizer(format!(
                    "generator {g} is not Hermitian"
                )));
            }
            if g.is_identity() {
                return Err(CwsError::InvalidStabilizer(format!(
                    "generator {i} is proportional to the identity"
                )));
            }
            for h in &generators[..i] {
                if !g.commutes_unchecked(h) {
                    return Err(CwsError::InvalidStabilizer(format!(
                        "generators {h} and {g} anticommute"
                    )));
                }
            }
        }
        let mut group = StabilizerGroup {
            n,
            generators: Vec::new(),
            rows: Vec::new(),
        };
        for g in generators {
            if !group.push_row(g) {
                return Err(CwsError::InvalidStabilizer(format!(
                    "generator {g} is dependent on the others"
                )));
            }
            group.generators.push(g);
        }
        Ok(group)
    }

    fn reduce(&self, p: &PauliOperator) -> (u64, PauliOperator) {
        let mut v = p.symplectic();
        let mut elem = PauliOperator::from_parts(self.n, 0, 0, 0);
        for (r, e) in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
                elem = elem.compose(e);
            }
        }
        (v, elem)
    }

    fn push_row(&mut self, g: PauliOperator) -> bool {
        let (v, elem) = self.reduce(&g);
        if v == 0 {
            return false;
        }
        // the reduced vector belongs to the group element elem · g
        let row_elem = elem.compose(&g);
        let pos = self
            .rows
            .partition_point(|(x, _)| x.leading_zeros() < v.leading_zeros());
        self.rows.insert(pos, (v, row_elem));
        true
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The group element equal to `p` up to phase, if one exists.
    pub fn element_matching(&self, p: &PauliOperator) -> Result<Option<PauliOperator>> {
        if p.num_qubits() != self.n {
            return Err(CwsError::LengthMismatch(self.n, p.num_qubits()));
        }
        let (v, elem) = self.reduce(p);
        Ok(if v == 0 { Some(elem) } else { None })
    }

    /// Exact membership, sign included.
    pub fn contains(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.element_matching(p)? == Some(*p))
    }

    pub fn commutes_with_all(&self, p: &PauliOperator) -> Result<bool> {
        if p.num_qubits() != self.n {
            return Err(CwsError::LengthMismatch(self.n, p.num_qubits()));
        }
        Ok(self.generators.iter().all(|g| g.commutes_unchecked(p)))
    }

    /// All 2^rank elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<PauliOperator> {
        let k = self.rank();
        (0u64..1 << k)
            .map(|mask| {
                let mut e = PauliOperator::from_parts(self.n, 0, 0, 0);
                for (i, g) in self.generators.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        e = e.compose(g);
                    }
                }
                e
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_paulis;

    #[test]
    fn membership_with_sign() {
        let g = StabilizerGroup::new(parse_paulis(&["XX", "ZZ"]).unwrap()).unwrap();
        let yy: PauliOperator = "-YY".parse().unwrap();
        assert!(g.contains(&yy).unwrap());
        assert!(!g.contains(&yy.negated()).unwrap());
        assert_eq!(
            g.element_matching(&"YY".parse().unwrap()).unwrap(),
            Some(yy)
        );
        assert!(g
            .element_matching(&"XI".parse().unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(StabilizerGroup::new(parse_paulis(&["XI", "ZI"]).unwrap()).is_err());
        assert!(StabilizerGroup::new(parse_paulis(&["XX", "ZZ", "-YY"]).unwrap()).is_err());
        assert!(StabilizerGroup::new(parse_paulis(&["+iXX"]).unwrap()).is_err());
        assert!(StabilizerGroup::new(vec![]).is_err());
    }

    #[test]
    fn elements_never_include_minus_identity() {
        let g = StabilizerGroup::new(parse_paulis(&["XZI", "ZXZ", "IZX"]).unwrap()).unwrap();
        let elems = g.elements();
        assert_eq!(elems.len(), 8);
        for e in elems {
            assert!(e.is_hermitian());
            if e.is_identity() {
                assert_eq!(e.phase_exp(), 0);
            }
            assert!(g.contains(&e).unwrap());
        }
    }
}
