//! Dense and symbolic certification of error detection.
//!
//! The dense path builds `|S>` and the basis `w_l|S>` as state vectors and
//! evaluates `<w_i|E|w_j>` for every error; the symbolic path decides the
//! same question for stabilizer codes with GF(2) linear algebra.

use num_complex::Complex;
use num_traits::Float;
use serde_json::{json, Value};

use crate::code::CwsCode;
use crate::error::{CwsError, Result};
use crate::error_model::ErrorSet;
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerGroup;

/// Largest qubit count handled by the dense path.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Cap on the number of violations stored in a report (all are counted).
pub const MAX_REPORTED_VIOLATIONS: usize = 64;

fn i_pow<T: Float>(k: u8) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

fn check_dense(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(CwsError::QubitCount {
            n,
            min: 1,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

/// `P|psi>` with basis index bit `j` holding qubit `j + 1`.
pub fn apply_pauli<T: Float>(p: &PauliOperator, state: &[Complex<T>]) -> Vec<Complex<T>> {
    assert_eq!(state.len(), 1 << p.num_qubits(), "state length");
    let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
    let phase: Complex<T> = i_pow(p.phase_exp());
    let mut out = vec![Complex::new(T::zero(), T::zero()); state.len()];
    for (b, &amp) in state.iter().enumerate() {
        let t = b ^ x;
        let v = phase * amp;
        out[t] = if (t & z).count_ones() & 1 == 1 { -v } else { v };
    }
    out
}

pub fn inner<T: Float>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (u, v)| {
            acc + u.conj() * v
        })
}

fn norm<T: Float>(a: &[Complex<T>]) -> T {
    inner(a, a).re.sqrt()
}

/// The unique state fixed by `generators`, normalized with its first nonzero
/// amplitude real and positive.
pub fn stabilizer_state_vector<T: Float>(generators: &[PauliOperator]) -> Result<Vec<Complex<T>>> {
    let group = StabilizerGroup::new(generators.to_vec())?;
    let n = group.num_qubits();
    check_dense(n)?;
    if group.rank() != n {
        return Err(CwsError::InvalidStabilizer(format!(
            "{} generators do not fix a state on {n} qubits",
            group.rank()
        )));
    }
    let dim = 1usize << n;
    let half = T::from(0.5).unwrap();
    // each nonzero overlap has squared magnitude at least 2^-n
    let threshold = T::from(0.5 / dim as f64).unwrap().sqrt();
    for b in 0..dim {
        let mut v = vec![Complex::new(T::zero(), T::zero()); dim];
        v[b] = Complex::new(T::one(), T::zero());
        for g in generators {
            let gv = apply_pauli(g, &v);
            for (a, w) in v.iter_mut().zip(gv) {
                *a = (*a + w) * half;
            }
        }
        let nv = norm(&v);
        if nv > threshold {
            let first = v
                .iter()
                .find(|a| a.norm() > threshold * T::from(1e-3).unwrap())
                .copied()
                .unwrap();
            let fix = first.conj() / (first.norm() * nv);
            return Ok(v.into_iter().map(|a| a * fix).collect());
        }
    }
    Err(CwsError::InvalidStabilizer(
        "projector annihilates every basis state".into(),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation<T> {
    OffDiagonal {
        error: PauliOperator,
        i: usize,
        j: usize,
        magnitude: T,
    },
    DiagonalSpread {
        error: PauliOperator,
        i: usize,
        spread: T,
    },
}

impl<T: Float> Violation<T> {
    pub fn error(&self) -> &PauliOperator {
        match self {
            Violation::OffDiagonal { error, .. } | Violation::DiagonalSpread { error, .. } => error,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Violation::OffDiagonal {
                error,
                i,
                j,
                magnitude,
            } => json!({
                "kind": "off_diagonal",
                "error": error.to_string(),
                "i": i,
                "j": j,
                "magnitude": magnitude.to_f64(),
            }),
            Violation::DiagonalSpread { error, i, spread } => json!({
                "kind": "diagonal_spread",
                "error": error.to_string(),
                "i": i,
                "spread": spread.to_f64(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DetectionReport<T> {
    pub ok: bool,
    /// First violations found, at most [`MAX_REPORTED_VIOLATIONS`].
    pub violations: Vec<Violation<T>>,
    pub violation_count: usize,
    /// `c_E = <w_0|E|w_0>` for every member of the error set, in set order.
    pub c_values: Vec<(PauliOperator, Complex<T>)>,
    pub degenerate: bool,
    pub tol: T,
}

impl<T: Float> DetectionReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "tol": self.tol.to_f64(),
            "degenerate": self.degenerate,
            "violation_count": self.violation_count,
            "violations": self.violations.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "c_values": self.c_values.iter().map(|(e, c)| json!({
                "error": e.to_string(),
                "re": c.re.to_f64(),
                "im": c.im.to_f64(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks `<w_i|E|w_j> = c_E delta_ij` for every `E` in `es`.
pub fn verify_detection<T: Float>(
    code: &CwsCode,
    es: &ErrorSet,
    tol: T,
) -> Result<DetectionReport<T>> {
    let n = code.n;
    check_dense(n)?;
    if es.num_qubits() != n {
        return Err(CwsError::LengthMismatch(n, es.num_qubits()));
    }
    if code.word_operators.is_empty() {
        return Err(CwsError::CodeDefect("code has no word operators".into()));
    }
    let s = stabilizer_state_vector::<T>(&code.stabilizer)?;
    let basis: Vec<Vec<Complex<T>>> = code
        .word_operators
        .iter()
        .map(|w| {
            if w.num_qubits() != n {
                return Err(CwsError::LengthMismatch(n, w.num_qubits()));
            }
            Ok(apply_pauli(w, &s))
        })
        .collect::<Result<_>>()?;
    let k = basis.len();
    for i in 0..k {
        for j in i..k {
            let target = if i == j { T::one() } else { T::zero() };
            let g = inner(&basis[i], &basis[j]);
            if (g - Complex::new(target, T::zero())).norm() > tol {
                return Err(CwsError::CodeDefect(format!(
                    "basis states {i} and {j} have overlap {:.3e}",
                    g.norm().to_f64().unwrap_or(f64::NAN)
                )));
            }
        }
    }

    let mut violations = Vec::new();
    let mut violation_count = 0;
    let mut c_values = Vec::with_capacity(es.len());
    let mut degenerate = false;
    let mut record = |v: Violation<T>, count: &mut usize| {
        *count += 1;
        if violations.len() < MAX_REPORTED_VIOLATIONS {
            violations.push(v);
        }
    };
    for e in es.members() {
        let images: Vec<_> = basis.iter().map(|b| apply_pauli(e, b)).collect();
        let c = inner(&basis[0], &images[0]);
        let mut clean = true;
        for i in 0..k {
            for (j, img) in images.iter().enumerate() {
                let m = inner(&basis[i], img);
                if i == j {
                    let spread = (m - c).norm();
                    if spread > tol {
                        clean = false;
                        record(
                            Violation::DiagonalSpread {
                                error: *e,
                                i,
                                spread,
                            },
                            &mut violation_count,
                        );
                    }
                } else if m.norm() > tol {
                    clean = false;
                    record(
                        Violation::OffDiagonal {
                            error: *e,
                            i,
                            j,
                            magnitude: m.norm(),
                        },
                        &mut violation_count,
                    );
                }
            }
        }
        if clean && !e.is_identity() && (c.norm() - T::one()).abs() <= tol {
            degenerate = true;
        }
        c_values.push((*e, c));
    }
    Ok(DetectionReport {
        ok: violation_count == 0,
        violations,
        violation_count,
        c_values,
        degenerate,
        tol,
    })
}

/// Symbolic classification of an error set against a stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub ok: bool,
    /// Non-identity errors equal to a stabilizer element up to phase.
    pub in_stabilizer: Vec<PauliOperator>,
    /// Errors commuting with every generator but outside the stabilizer.
    pub violations: Vec<PauliOperator>,
}

pub fn centralizer_report(
    generators: &[PauliOperator],
    es: &ErrorSet,
) -> Result<CentralizerReport> {
    let group = StabilizerGroup::new(generators.to_vec())?;
    if es.num_qubits() != group.num_qubits() {
        return Err(CwsError::LengthMismatch(
            group.num_qubits(),
            es.num_qubits(),
        ));
    }
    let mut in_stabilizer = Vec::new();
    let mut violations = Vec::new();
    for e in es.members().iter().filter(|e| !e.is_identity()) {
        if !group.commutes_with_all(e)? {
            continue;
        }
        if group.element_matching(e)?.is_some() {
            in_stabilizer.push(*e);
        } else {
            violations.push(*e);
        }
    }
    Ok(CentralizerReport {
        ok: violations.is_empty(),
        in_stabilizer,
        violations,
    })
}

/// True iff no member of `es` lies in `C(S)` outside `S`.
pub fn centralizer_check(generators: &[PauliOperator], es: &ErrorSet) -> Result<bool> {
    Ok(centralizer_report(generators, es)?.ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_model::{build_ad1, ErrorSetKind};
    use crate::pauli::parse_paulis;

    #[test]
    fn plus_state() {
        let v = stabilizer_state_vector::<f64>(&parse_paulis(&["X"]).unwrap()).unwrap();
        let h = 0.5f64.sqrt();
        assert!((v[0].re - h).abs() < 1e-12 && (v[1].re - h).abs() < 1e-12);
    }

    #[test]
    fn minus_sign_is_respected() {
        let v = stabilizer_state_vector::<f64>(&parse_paulis(&["-Z"]).unwrap()).unwrap();
        assert!(v[0].norm() < 1e-12);
        assert!((v[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn y_phases() {
        let y: PauliOperator = "Y".parse().unwrap();
        let out = apply_pauli(&y, &[Complex::new(1.0f64, 0.0), Complex::new(0.0, 0.0)]);
        // Y|0> = i|1>
        assert!((out[1] - Complex::new(0.0, 1.0)).norm() < 1e-12);
        assert!(out[0].norm() < 1e-12);
    }

    #[test]
    fn incomplete_generators_rejected() {
        let gens = parse_paulis(&["XZI", "ZXZ"]).unwrap();
        assert!(stabilizer_state_vector::<f64>(&gens).is_err());
    }

    #[test]
    fn bit_flip_code_detects_x_only() {
        // 3-qubit bit-flip code detects single X but not single Z
        let code = CwsCode {
            n: 3,
            stabilizer: parse_paulis(&["ZZI", "IZZ", "XXX"]).unwrap(),
            word_operators: parse_paulis(&["III", "ZZZ"]).unwrap(),
            codewords: vec![],
            perm: None,
            error_set: None,
            additive: true,
            degenerate: false,
        };
        let xs = ErrorSet::new(
            3,
            ErrorSetKind::Custom,
            parse_paulis(&["XII", "IXI", "IIX"]).unwrap(),
        )
        .unwrap();
        let r = verify_detection(&code, &xs, 1e-9).unwrap();
        assert!(r.ok, "{:?}", r.violations);
        let zs = ErrorSet::new(3, ErrorSetKind::Custom, parse_paulis(&["ZII"]).unwrap()).unwrap();
        let r = verify_detection(&code, &zs, 1e-9).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violation_count, r.violations.len());
        assert!(centralizer_check(&parse_paulis(&["ZZI", "IZZ"]).unwrap(), &xs).unwrap());
        assert!(!centralizer_check(&parse_paulis(&["ZZI", "IZZ"]).unwrap(), &zs).unwrap());
    }

    #[test]
    fn dimension_limit() {
        let es = build_ad1(11).unwrap();
        let code = CwsCode {
            n: 11,
            stabilizer: vec![],
            word_operators: vec![],
            codewords: vec![],
            perm: None,
            error_set: None,
            additive: true,
            degenerate: false,
        };
        assert!(matches!(
            verify_detection(&code, &es, 1e-9f64),
            Err(CwsError::QubitCount { .. })
        ));
    }
}
