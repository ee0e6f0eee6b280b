//! n-qubit Pauli operators in binary symplectic form with exact phase tracking.
//!
//! An operator is stored as `i^phase · Z^z · X^x`, where bit `j` of each mask
//! refers to qubit `j + 1` (the `j`-th character of the string form). The
//! string form writes the tensor product of letters with an optional sign
//! prefix `+`, `-`, `+i` or `-i`; the sign is relative to the letter product,
//! so `"Y"` is Hermitian even though `Y = i^3 · Z X` internally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CwsError, Result};

/// Largest supported qubit count; masks are single machine words.
pub const MAX_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: u8,
    x: u32,
    z: u32,
    phase: u8,
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(CwsError::QubitCount {
            n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

impl PauliOperator {
    /// Builds `i^phase · Z^z · X^x`.
    pub fn new(n: usize, x_mask: u32, z_mask: u32, phase_exp: u8) -> Result<Self> {
        check_qubits(n)?;
        let m = full_mask(n);
        if x_mask & !m != 0 || z_mask & !m != 0 {
            return Err(CwsError::InvalidParameter(format!(
                "mask bits above qubit {n} are set"
            )));
        }
        Ok(Self::from_parts(n, x_mask, z_mask, phase_exp))
    }

    pub(crate) fn from_parts(n: usize, x: u32, z: u32, phase: u8) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&n));
        debug_assert_eq!(x & !full_mask(n), 0);
        debug_assert_eq!(z & !full_mask(n), 0);
        PauliOperator {
            n: n as u8,
            x,
            z,
            phase: phase & 3,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    /// Hermitian single-letter operator on `qubit` (0-based).
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Result<Self> {
        check_qubits(n)?;
        if qubit >= n {
            return Err(CwsError::InvalidParameter(format!(
                "qubit {qubit} out of range for {n} qubits"
            )));
        }
        let (x, z) = letter.bits();
        let bit = 1u32 << qubit;
        let phase = if letter == Letter::Y { 3 } else { 0 };
        Ok(Self::from_parts(
            n,
            if x { bit } else { 0 },
            if z { bit } else { 0 },
            phase,
        ))
    }

    /// Hermitian operator with the given letters and sign +1.
    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let n = letters.len();
        check_qubits(n)?;
        let (mut x, mut z) = (0u32, 0u32);
        for (j, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u32) << j;
            z |= (bz as u32) << j;
        }
        let ys = (x & z).count_ones() as u8;
        Ok(Self::from_parts(n, x, z, (3 * ys) & 3))
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u32 {
        self.x
    }

    pub fn z_mask(&self) -> u32 {
        self.z
    }

    /// Exponent `p` in `i^p · Z^z X^x`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Exponent `s` in `i^s · (letter product)`.
    pub fn sign_exp(&self) -> u8 {
        (self.phase + (self.x & self.z).count_ones() as u8) & 3
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_qubits()).map(|j| self.letter(j)).collect()
    }

    /// The letter string without any sign prefix.
    pub fn letter_string(&self) -> String {
        self.letters().into_iter().map(Letter::as_char).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn with_phase(&self, phase_exp: u8) -> Self {
        Self {
            phase: phase_exp & 3,
            ..*self
        }
    }

    pub fn without_phase(&self) -> Self {
        self.with_phase(0)
    }

    pub fn negated(&self) -> Self {
        self.with_phase(self.phase + 2)
    }

    /// True when the operator squares to `+I`.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + (self.x & self.z).count_ones()) % 2 == 0
    }

    /// Packed symplectic vector: x in the low 32 bits, z in the high 32 bits.
    pub fn symplectic(&self) -> u64 {
        self.x as u64 | (self.z as u64) << 32
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(CwsError::LengthMismatch(
                self.num_qubits(),
                other.num_qubits(),
            ));
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.compose(other))
    }

    pub(crate) fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        // Z^a X^b Z^c X^d = (-1)^{|b & c|} Z^{a^c} X^{b^d}
        let swaps = (self.x & other.z).count_ones() as u8;
        Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: (self.phase + other.phase + 2 * swaps) & 3,
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// Operator equality ignoring the global phase.
    pub fn eq_mod_phase(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign_exp() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letter_string())
    }
}

impl FromStr for PauliOperator {
    type Err = CwsError;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| CwsError::ParsePauli {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (sign, body) = if let Some(rest) = t.strip_prefix("+i") {
            (1u8, rest)
        } else if let Some(rest) = t.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else {
            (0, t)
        };
        if body.is_empty() {
            return Err(err("no qubit letters"));
        }
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                other => Err(err(&format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.len() > MAX_QUBITS {
            return Err(err(&format!("more than {MAX_QUBITS} qubits")));
        }
        let p = Self::from_letters(&letters)?;
        Ok(p.with_phase(p.phase + sign))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a sequence of Pauli strings that must all have the same length.
pub fn parse_paulis<S: AsRef<str>>(items: &[S]) -> Result<Vec<PauliOperator>> {
    let ops = items
        .iter()
        .map(|s| s.as_ref().parse::<PauliOperator>())
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = ops.first() {
        for p in &ops {
            first.check_len(p)?;
        }
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_y_is_i_z() {
        let xy = p("X").multiply(&p("Y")).unwrap();
        assert!(xy.eq_mod_phase(&p("Z")));
        assert_eq!(xy, p("+iZ"));
        assert_eq!(xy.phase_exp(), (p("Z").phase_exp() + 1) & 3);
    }

    #[test]
    fn identity_is_neutral() {
        let a = p("-iXYZIY");
        let id = PauliOperator::identity(5).unwrap();
        assert_eq!(a.multiply(&id).unwrap(), a);
        assert_eq!(id.multiply(&a).unwrap(), a);
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            p("XI").multiply(&p("X")),
            Err(CwsError::LengthMismatch(2, 1))
        ));
        assert!(p("XI").commutes(&p("ZZZ")).is_err());
    }

    #[test]
    fn parse_masks_and_sign() {
        let a = p("XXIIZZ");
        assert_eq!(a.x_mask(), 0b000011);
        assert_eq!(a.z_mask(), 0b110000);
        assert_eq!(a.phase_exp(), 0);
        assert_eq!(p("-ZII").phase_exp(), 2);
        assert_eq!(p("+XZ").to_string(), "XZ");
        assert_eq!(p("-iY").to_string(), "-iY");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<PauliOperator>().is_err());
        assert!("-".parse::<PauliOperator>().is_err());
        assert!("XQZ".parse::<PauliOperator>().is_err());
        assert!("XXXXXXXXXXXXXXXXX".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(PauliOperator::identity(4).unwrap().weight(), 0);
        assert_eq!(p("ZIZ").weight(), 2);
        assert_eq!(p("XYZI").weight(), 3);
    }

    #[test]
    fn squares_are_plus_minus_identity() {
        for s in ["X", "Y", "Z", "+iX", "XYZ", "-iYY"] {
            let a = p(s);
            let sq = a.multiply(&a).unwrap();
            assert!(sq.is_identity());
            assert!(sq.phase_exp() == 0 || sq.phase_exp() == 2);
            assert_eq!(sq.phase_exp() == 0, a.is_hermitian());
        }
    }

    #[test]
    fn masks_above_n_are_rejected() {
        assert!(PauliOperator::new(2, 0b100, 0, 0).is_err());
        assert!(PauliOperator::new(17, 0, 0, 0).is_err());
    }
}
