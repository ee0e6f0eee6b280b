//! Single-qubit Clifford actions on Pauli letters.
//!
//! Up to phases the single-qubit Clifford group acts on `{X, Y, Z}` as the
//! symmetric group S3. Because every error set used here is symmetric under
//! `X <-> Y` on each qubit, only one representative per coset of that swap is
//! needed: identity, `X <-> Z` (Hadamard) and `Y <-> Z` (`exp(-i pi X / 4)`).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{CwsError, Result};
use crate::pauli::{Letter, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxisLabel {
    #[serde(rename = "ID")]
    Id,
    #[serde(rename = "XZ")]
    SwapXZ,
    #[serde(rename = "YZ")]
    SwapYZ,
}

impl AxisLabel {
    pub const ALL: [AxisLabel; 3] = [AxisLabel::Id, AxisLabel::SwapXZ, AxisLabel::SwapYZ];

    pub fn apply(self, letter: Letter) -> Letter {
        use Letter::*;
        match (self, letter) {
            (AxisLabel::SwapXZ, X) => Z,
            (AxisLabel::SwapXZ, Z) => X,
            (AxisLabel::SwapYZ, Y) => Z,
            (AxisLabel::SwapYZ, Z) => Y,
            (_, l) => l,
        }
    }

    /// Exact conjugation action of the fixed table unitary (I, H or V).
    pub fn clifford(self) -> SingleQubitClifford {
        match self {
            AxisLabel::Id => SingleQubitClifford::IDENTITY,
            AxisLabel::SwapXZ => SingleQubitClifford::HADAMARD,
            AxisLabel::SwapYZ => SingleQubitClifford::SQRT_X_DAG,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AxisLabel::Id => "ID",
            AxisLabel::SwapXZ => "XZ",
            AxisLabel::SwapYZ => "YZ",
        }
    }
}

impl FromStr for AxisLabel {
    type Err = CwsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ID" | "I" => Ok(AxisLabel::Id),
            "XZ" | "SWAP_XZ" | "H" => Ok(AxisLabel::SwapXZ),
            "YZ" | "SWAP_YZ" | "V" => Ok(AxisLabel::SwapYZ),
            other => Err(CwsError::InvalidParameter(format!(
                "unknown axis permutation label {other:?}"
            ))),
        }
    }
}

/// Per-qubit axis permutation labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AxisPerm {
    labels: Vec<AxisLabel>,
}

impl AxisPerm {
    pub fn new(labels: Vec<AxisLabel>) -> Self {
        AxisPerm { labels }
    }

    pub fn identity(n: usize) -> Self {
        AxisPerm {
            labels: vec![AxisLabel::Id; n],
        }
    }

    /// The `index`-th permutation in lexicographic order, qubit 1 most significant.
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut labels = vec![AxisLabel::Id; n];
        for slot in labels.iter_mut().rev() {
            *slot = AxisLabel::ALL[(index % 3) as usize];
            index /= 3;
        }
        AxisPerm { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[AxisLabel] {
        &self.labels
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&l| l == AxisLabel::Id)
    }

    /// Bit masks of qubits carrying `X <-> Z` and `Y <-> Z` respectively.
    pub fn masks(&self) -> (u32, u32) {
        let mut xz = 0;
        let mut yz = 0;
        for (j, l) in self.labels.iter().enumerate() {
            match l {
                AxisLabel::SwapXZ => xz |= 1 << j,
                AxisLabel::SwapYZ => yz |= 1 << j,
                AxisLabel::Id => {}
            }
        }
        (xz, yz)
    }

    /// Relabels the letters of `p`; the result carries phase exponent 0.
    pub fn apply(&self, p: &PauliOperator) -> Result<PauliOperator> {
        if self.len() != p.num_qubits() {
            return Err(CwsError::LengthMismatch(self.len(), p.num_qubits()));
        }
        let (xz, yz) = self.masks();
        let (x, z) = permute_masks(xz, yz, p.x_mask(), p.z_mask());
        Ok(PauliOperator::from_parts(p.num_qubits(), x, z, 0))
    }

    pub fn local_clifford(&self) -> LocalClifford {
        LocalClifford::new(self.labels.iter().map(|l| l.clifford()).collect())
    }

    pub fn to_csv(&self) -> String {
        self.labels
            .iter()
            .map(|l| l.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for AxisPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl FromStr for AxisPerm {
    type Err = CwsError;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<AxisLabel>>>()?;
        Ok(AxisPerm { labels })
    }
}

/// Letter relabeling on packed masks. X<->Z swaps the bits, Y<->Z sends x to x^z.
#[inline]
pub(crate) fn permute_masks(xz: u32, yz: u32, x: u32, z: u32) -> (u32, u32) {
    let id = !(xz | yz);
    let nx = (x & id) | (z & xz) | ((x ^ z) & yz);
    let nz = (z & id) | (x & xz) | (z & yz);
    (nx, nz)
}

/// Exact conjugation action `P -> U P U†` of a single-qubit Clifford, stored
/// as the images of `X` and `Z` (each a signed Hermitian Pauli).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SingleQubitClifford {
    x_image: (Letter, bool),
    z_image: (Letter, bool),
}

impl SingleQubitClifford {
    pub const IDENTITY: Self = Self::raw((Letter::X, false), (Letter::Z, false));
    /// H: X -> Z, Z -> X.
    pub const HADAMARD: Self = Self::raw((Letter::Z, false), (Letter::X, false));
    /// exp(-i pi X / 4): X -> X, Z -> -Y.
    pub const SQRT_X_DAG: Self = Self::raw((Letter::X, false), (Letter::Y, true));
    /// diag(1, i): X -> Y, Z -> Z.
    pub const PHASE: Self = Self::raw((Letter::Y, false), (Letter::Z, false));
    /// Conjugation by Z: X -> -X, Z -> Z.
    pub const PAULI_Z: Self = Self::raw((Letter::X, true), (Letter::Z, false));

    const fn raw(x_image: (Letter, bool), z_image: (Letter, bool)) -> Self {
        SingleQubitClifford { x_image, z_image }
    }

    /// Validates that the images are distinct non-identity letters.
    pub fn new(x_image: (Letter, bool), z_image: (Letter, bool)) -> Result<Self> {
        if x_image.0 == Letter::I || z_image.0 == Letter::I || x_image.0 == z_image.0 {
            return Err(CwsError::InvalidParameter(
                "Clifford images of X and Z must be distinct non-identity letters".into(),
            ));
        }
        Ok(Self::raw(x_image, z_image))
    }

    fn signed_single(letter: Letter, negative: bool) -> PauliOperator {
        let p = PauliOperator::single(1, 0, letter).expect("single qubit");
        if negative {
            p.negated()
        } else {
            p
        }
    }

    pub fn image_of_x(&self) -> PauliOperator {
        Self::signed_single(self.x_image.0, self.x_image.1)
    }

    pub fn image_of_z(&self) -> PauliOperator {
        Self::signed_single(self.z_image.0, self.z_image.1)
    }

    /// Exact image of a single-qubit Pauli.
    pub fn conjugate(&self, p: &PauliOperator) -> PauliOperator {
        debug_assert_eq!(p.num_qubits(), 1);
        let mut out = PauliOperator::from_parts(1, 0, 0, p.phase_exp());
        if p.z_mask() & 1 == 1 {
            out = out.compose(&self.image_of_z());
        }
        if p.x_mask() & 1 == 1 {
            out = out.compose(&self.image_of_x());
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let x = self.conjugate(&other.image_of_x());
        let z = self.conjugate(&other.image_of_z());
        Self::from_images(&x, &z)
    }

    fn from_images(x: &PauliOperator, z: &PauliOperator) -> Self {
        let sign = |p: &PauliOperator| {
            debug_assert!(p.is_hermitian());
            p.sign_exp() == 2
        };
        Self::raw((x.letter(0), sign(x)), (z.letter(0), sign(z)))
    }

    pub fn inverse(&self) -> Self {
        let mut acc = *self;
        loop {
            let next = acc.compose(self);
            if next == Self::IDENTITY {
                return acc;
            }
            acc = next;
        }
    }

    /// Image letter of X, Y and Z, ignoring signs.
    pub fn letter_map(&self, letter: Letter) -> Letter {
        match letter {
            Letter::I => Letter::I,
            Letter::X => self.x_image.0,
            Letter::Z => self.z_image.0,
            Letter::Y => {
                let (x1, z1) = self.x_image.0.bits();
                let (x2, z2) = self.z_image.0.bits();
                Letter::from_bits(x1 ^ x2, z1 ^ z2)
            }
        }
    }

    /// Coset representative of `{self, self ∘ (X<->Y)}` by where Z is sent.
    pub fn axis_label(&self) -> AxisLabel {
        match self.z_image.0 {
            Letter::X => AxisLabel::SwapXZ,
            Letter::Y => AxisLabel::SwapYZ,
            _ => AxisLabel::Id,
        }
    }
}

/// Tensor product of single-qubit Clifford actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalClifford {
    per_qubit: Vec<SingleQubitClifford>,
}

impl LocalClifford {
    pub fn new(per_qubit: Vec<SingleQubitClifford>) -> Self {
        LocalClifford { per_qubit }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![SingleQubitClifford::IDENTITY; n])
    }

    pub fn per_qubit(&self) -> &[SingleQubitClifford] {
        &self.per_qubit
    }

    pub fn len(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_qubit.is_empty()
    }

    /// Post-composes qubit `q` with `c` (apply the current action, then `c`).
    pub fn then_on(&mut self, q: usize, c: SingleQubitClifford) {
        self.per_qubit[q] = c.compose(&self.per_qubit[q]);
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.per_qubit.iter().map(|c| c.inverse()).collect())
    }

    /// Exact `U P U†`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        let n = p.num_qubits();
        if n != self.len() {
            return Err(CwsError::LengthMismatch(self.len(), n));
        }
        let mut out = PauliOperator::from_parts(n, 0, 0, p.phase_exp());
        for (j, c) in self.per_qubit.iter().enumerate() {
            let zj = p.z_mask() >> j & 1 == 1;
            let xj = p.x_mask() >> j & 1 == 1;
            if zj {
                out = out.compose(&embed(n, j, &c.image_of_z()));
            }
            if xj {
                out = out.compose(&embed(n, j, &c.image_of_x()));
            }
        }
        Ok(out)
    }

    /// Per-qubit coset representatives of the induced letter permutation.
    pub fn axis_perm(&self) -> AxisPerm {
        AxisPerm::new(self.per_qubit.iter().map(|c| c.axis_label()).collect())
    }
}

fn embed(n: usize, qubit: usize, single: &PauliOperator) -> PauliOperator {
    PauliOperator::from_parts(
        n,
        single.x_mask() << qubit,
        single.z_mask() << qubit,
        single.phase_exp(),
    )
}

/// 2x2 unitaries realizing the axis permutation table: I, H and V = exp(-i pi X / 4).
pub fn table_unitary<T: Float>(label: AxisLabel) -> [[Complex<T>; 2]; 2] {
    let one = T::one();
    let zero = T::zero();
    let s = one / (one + one).sqrt();
    let c = |re: T, im: T| Complex::new(re, im);
    match label {
        AxisLabel::Id => [[c(one, zero), c(zero, zero)], [c(zero, zero), c(one, zero)]],
        AxisLabel::SwapXZ => [[c(s, zero), c(s, zero)], [c(s, zero), c(-s, zero)]],
        AxisLabel::SwapYZ => [[c(s, zero), c(zero, -s)], [c(zero, -s), c(s, zero)]],
    }
}
