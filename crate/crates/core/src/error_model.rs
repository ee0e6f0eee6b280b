//! Asymmetric Pauli error sets for amplitude damping and dephasing.
//!
//! Members are stored modulo global phase (phase exponent 0): detecting `E`
//! and detecting `c·E` are the same linear condition.
//!
//! * `AD1`: `{I} ∪ {X_i, Y_i, Z_i} ∪ {A_i B_j : A, B ∈ {X, Y}, i < j}`.
//!   `A_1` and its adjoint span the same space as `X` and `Y`, so detecting
//!   this set corrects one emission or absorption error and detects the
//!   `Z` part of the no-jump operator.
//! * `AD2`: all pairwise products of `AD1` members.
//! * `DEPHASE(r)`: `{I} ∪ {X_i, Y_i} ∪ {Z^s : 1 <= |s| <= r}`.
//! * `CUSTOM`: any user-supplied list.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{permute_masks, AxisPerm};
use crate::error::{CwsError, Result};
use crate::pauli::{check_qubits, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ErrorSetKind {
    Ad1,
    Ad2,
    Dephase { r: usize },
    Custom,
}

impl ErrorSetKind {
    pub fn name(&self) -> &'static str {
        match self {
            ErrorSetKind::Ad1 => "ad1",
            ErrorSetKind::Ad2 => "ad2",
            ErrorSetKind::Dephase { .. } => "dephase",
            ErrorSetKind::Custom => "custom",
        }
    }

    pub fn r(&self) -> Option<usize> {
        match self {
            ErrorSetKind::Dephase { r } => Some(*r),
            _ => None,
        }
    }

    /// Builds a kind from a CLI name and optional `r`.
    pub fn from_name(name: &str, r: Option<usize>) -> Result<Self> {
        match (name.to_ascii_lowercase().as_str(), r) {
            ("ad1", None) => Ok(ErrorSetKind::Ad1),
            ("ad2", None) => Ok(ErrorSetKind::Ad2),
            ("dephase", Some(r)) => Ok(ErrorSetKind::Dephase { r }),
            ("dephase", None) => Err(CwsError::InvalidParameter(
                "the dephase error set needs --r".into(),
            )),
            ("custom", None) => Ok(ErrorSetKind::Custom),
            (other, Some(_)) if other != "dephase" => Err(CwsError::InvalidParameter(format!(
                "--r only applies to the dephase error set, not {other}"
            ))),
            (other, _) => Err(CwsError::InvalidParameter(format!(
                "unknown error set {other:?}"
            ))),
        }
    }

    /// Builds the canonical set for this kind (not available for CUSTOM).
    pub fn build(&self, n: usize) -> Result<ErrorSet> {
        match *self {
            ErrorSetKind::Ad1 => build_ad1(n),
            ErrorSetKind::Ad2 => build_ad2(n),
            ErrorSetKind::Dephase { r } => build_dephase(n, r),
            ErrorSetKind::Custom => Err(CwsError::InvalidParameter(
                "custom error sets are read from a file".into(),
            )),
        }
    }
}

impl fmt::Display for ErrorSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorSetKind::Dephase { r } => write!(f, "dephase(r={r})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for ErrorSetKind {
    type Err = CwsError;

    /// Accepts `ad1`, `ad2`, `custom` and `dephase:R`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, r)) => {
                let r = r
                    .parse()
                    .map_err(|_| CwsError::InvalidParameter(format!("bad r in {s:?}")))?;
                Self::from_name(name, Some(r))
            }
            None => Self::from_name(s, None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorSet {
    n: usize,
    kind: ErrorSetKind,
    members: Vec<PauliOperator>,
}

impl ErrorSet {
    /// Canonicalizes phases, prepends the identity if absent and drops duplicates.
    pub fn new(
        n: usize,
        kind: ErrorSetKind,
        members: impl IntoIterator<Item = PauliOperator>,
    ) -> Result<Self> {
        check_qubits(n)?;
        let id = PauliOperator::from_parts(n, 0, 0, 0);
        let mut seen = HashSet::from([(0u32, 0u32)]);
        let mut out = vec![id];
        for p in members {
            if p.num_qubits() != n {
                return Err(CwsError::LengthMismatch(n, p.num_qubits()));
            }
            if seen.insert((p.x_mask(), p.z_mask())) {
                out.push(p.without_phase());
            }
        }
        Ok(ErrorSet {
            n,
            kind,
            members: out,
        })
    }

    /// One Pauli string per line; blank and `#` lines are skipped.
    pub fn parse_custom(n: usize, text: &str) -> Result<Self> {
        let members = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse::<PauliOperator>)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, ErrorSetKind::Custom, members)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ErrorSetKind {
        self.kind
    }

    /// Members, identity first.
    pub fn members(&self) -> &[PauliOperator] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.members.iter().any(|m| m.eq_mod_phase(p))
    }

    pub fn mask_set(&self) -> HashSet<(u32, u32)> {
        self.members
            .iter()
            .map(|p| (p.x_mask(), p.z_mask()))
            .collect()
    }

    /// Relabels every member by `perm`.
    pub fn transform(&self, perm: &AxisPerm) -> Result<ErrorSet> {
        if perm.len() != self.n {
            return Err(CwsError::LengthMismatch(self.n, perm.len()));
        }
        let (xz, yz) = perm.masks();
        let members = self
            .members
            .iter()
            .map(|p| {
                let (x, z) = permute_masks(xz, yz, p.x_mask(), p.z_mask());
                PauliOperator::from_parts(self.n, x, z, 0)
            })
            .collect();
        // a letter relabeling is a bijection, so no new duplicates appear
        Ok(ErrorSet {
            n: self.n,
            kind: self.kind,
            members,
        })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(CwsError::QubitCount {
            n,
            min: 2,
            max: crate::pauli::MAX_QUBITS,
        });
    }
    check_qubits(n)
}

fn xy_pairs(n: usize) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (1u32 << i, 1u32 << j);
            // (x, z) for XX, XY, YX, YY on qubits i < j
            for (zi, zj) in [(0, 0), (0, bj), (bi, 0), (bi, bj)] {
                out.push(PauliOperator::from_parts(n, bi | bj, zi | zj, 0));
            }
        }
    }
    out
}

fn singles(n: usize, x: bool, y: bool, z: bool) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for i in 0..n {
        let b = 1u32 << i;
        if x {
            out.push(PauliOperator::from_parts(n, b, 0, 0));
        }
        if y {
            out.push(PauliOperator::from_parts(n, b, b, 0));
        }
        if z {
            out.push(PauliOperator::from_parts(n, 0, b, 0));
        }
    }
    out
}

pub fn build_ad1(n: usize) -> Result<ErrorSet> {
    check_n(n)?;
    let mut members = singles(n, true, true, true);
    members.extend(xy_pairs(n));
    ErrorSet::new(n, ErrorSetKind::Ad1, members)
}

pub fn build_ad2(n: usize) -> Result<ErrorSet> {
    let ad1 = build_ad1(n)?;
    let m = ad1.members();
    let mut products = Vec::with_capacity(m.len() * m.len() / 2);
    for (a, p) in m.iter().enumerate() {
        for q in &m[a..] {
            products.push(p.compose(q));
        }
    }
    ErrorSet::new(n, ErrorSetKind::Ad2, products)
}

pub fn build_dephase(n: usize, r: usize) -> Result<ErrorSet> {
    check_n(n)?;
    if r < 1 || r > n {
        return Err(CwsError::InvalidParameter(format!(
            "dephasing weight r = {r} must lie in 1..={n}"
        )));
    }
    let mut members = singles(n, true, true, false);
    for s in 1u32..1 << n {
        if s.count_ones() as usize <= r {
            members.push(PauliOperator::from_parts(n, 0, s, 0));
        }
    }
    ErrorSet::new(n, ErrorSetKind::Dephase { r }, members)
}

/// Lexicographic stream of all 3^n axis permutations.
#[derive(Clone, Debug)]
pub struct AxisPermIter {
    n: usize,
    next: u64,
    total: u64,
}

impl Iterator for AxisPermIter {
    type Item = AxisPerm;

    fn next(&mut self) -> Option<AxisPerm> {
        if self.next >= self.total {
            return None;
        }
        let p = AxisPerm::from_index(self.n, self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AxisPermIter {}

pub fn axis_perm_iterator(n: usize) -> AxisPermIter {
    AxisPermIter {
        n,
        next: 0,
        total: 3u64.pow(n as u32),
    }
}
