mod common;

use common::{dense_from_string, matmul, max_diff};
use cws_core::clifford::{table_unitary, AxisLabel, AxisPerm, LocalClifford, SingleQubitClifford};
use cws_core::PauliOperator;
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn pauli_string(max_n: usize) -> impl Strategy<Value = String> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::sample::select(vec!["", "+i", "-", "-i"]),
            prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n),
        )
            .prop_map(|(p, l)| format!("{p}{}", l.into_iter().collect::<String>()))
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = (String, String)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = || {
            (
                prop::sample::select(vec!["", "+i", "-", "-i"]),
                prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n),
            )
                .prop_map(|(p, l)| format!("{p}{}", l.into_iter().collect::<String>()))
        };
        (one(), one())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn string_round_trip(s in pauli_string(8)) {
        let p: PauliOperator = s.parse().unwrap();
        let canonical = if let Some(rest) = s.strip_prefix('+').filter(|r| !r.starts_with('i')) { rest.to_string() } else { s.clone() };
        prop_assert_eq!(p.to_string(), canonical);
    }

    #[test]
    fn product_matches_matrices((a, b) in pair(4)) {
        let pa: PauliOperator = a.parse().unwrap();
        let pb: PauliOperator = b.parse().unwrap();
        let prod = pa.multiply(&pb).unwrap();
        let expect = matmul(&dense_from_string(&a), &dense_from_string(&b));
        prop_assert!(max_diff(&dense_from_string(&prod.to_string()), &expect) < TOL);
    }

    #[test]
    fn commutation_matches_matrices((a, b) in pair(4)) {
        let pa: PauliOperator = a.parse().unwrap();
        let pb: PauliOperator = b.parse().unwrap();
        let ab = matmul(&dense_from_string(&a), &dense_from_string(&b));
        let ba = matmul(&dense_from_string(&b), &dense_from_string(&a));
        prop_assert_eq!(pa.commutes(&pb).unwrap(), max_diff(&ab, &ba) < TOL);
        let same_phase = pa.multiply(&pb).unwrap() == pb.multiply(&pa).unwrap();
        prop_assert_eq!(pa.commutes(&pb).unwrap(), same_phase);
    }

    #[test]
    fn hermitian_matches_matrix(s in pauli_string(4)) {
        let p: PauliOperator = s.parse().unwrap();
        let m = dense_from_string(&s);
        let adj: Vec<Vec<Complex64>> = (0..m.len()).map(|i| (0..m.len()).map(|j| m[j][i].conj()).collect()).collect();
        prop_assert_eq!(p.is_hermitian(), max_diff(&m, &adj) < TOL);
    }

    #[test]
    fn associativity(((a, b), c) in pair(6).prop_flat_map(|(a, b)| {
        let n = a.trim_start_matches(['+', '-', 'i']).len();
        ((Just(a), Just(b)), prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n)
            .prop_map(|l| l.into_iter().collect::<String>()))
    })) {
        let (pa, pb, pc): (PauliOperator, PauliOperator, PauliOperator) = (a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap());
        let left = pa.multiply(&pb).unwrap().multiply(&pc).unwrap();
        let right = pa.multiply(&pb.multiply(&pc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Conjugating by the table unitaries agrees with the exact symbolic conjugation.
    #[test]
    fn local_clifford_conjugation_matches_unitaries(s in pauli_string(3), idx in 0u64..27) {
        let p: PauliOperator = s.parse().unwrap();
        let n = p.num_qubits();
        let perm = AxisPerm::from_index(n, idx % 3u64.pow(n as u32));
        let u = local_unitary(&perm);
        let udag: Vec<Vec<Complex64>> = (0..u.len()).map(|i| (0..u.len()).map(|j| u[j][i].conj()).collect()).collect();
        let expect = matmul(&matmul(&u, &dense_from_string(&s)), &udag);
        let got = perm.local_clifford().conjugate(&p).unwrap();
        prop_assert!(max_diff(&dense_from_string(&got.to_string()), &expect) < TOL);
        // letters follow the permutation table
        prop_assert_eq!(got.letter_string(), perm.apply(&p).unwrap().letter_string());
    }
}

fn local_unitary(perm: &AxisPerm) -> Vec<Vec<Complex64>> {
    let n = perm.len();
    let dim = 1usize << n;
    let mats: Vec<[[Complex64; 2]; 2]> = perm
        .labels()
        .iter()
        .map(|&l| table_unitary::<f64>(l))
        .collect();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (row, mrow) in m.iter_mut().enumerate() {
        for (col, entry) in mrow.iter_mut().enumerate() {
            let mut v = Complex64::new(1.0, 0.0);
            for (j, u) in mats.iter().enumerate() {
                v *= u[row >> j & 1][col >> j & 1];
            }
            *entry = v;
        }
    }
    m
}

#[test]
fn examples_from_the_algebra() {
    let x: PauliOperator = "X".parse().unwrap();
    let y: PauliOperator = "Y".parse().unwrap();
    assert_eq!(x.multiply(&y).unwrap().to_string(), "+iZ");
    assert_eq!(y.multiply(&x).unwrap().to_string(), "-iZ");
    let yy: PauliOperator = "YY".parse().unwrap();
    assert_eq!(yy.multiply(&yy).unwrap().to_string(), "II");
    assert!("XX"
        .parse::<PauliOperator>()
        .unwrap()
        .commutes(&"ZZ".parse().unwrap())
        .unwrap());
    assert!("X"
        .parse::<PauliOperator>()
        .unwrap()
        .multiply(&"XX".parse().unwrap())
        .is_err());
}

#[test]
fn table_unitaries_realize_the_letter_maps() {
    for label in AxisLabel::ALL {
        let u = table_unitary::<f64>(label);
        let um = vec![vec![u[0][0], u[0][1]], vec![u[1][0], u[1][1]]];
        let udag = vec![
            vec![u[0][0].conj(), u[1][0].conj()],
            vec![u[0][1].conj(), u[1][1].conj()],
        ];
        for s in ["X", "Y", "Z"] {
            let img = matmul(&matmul(&um, &dense_from_string(s)), &udag);
            let letter = label.clifford().conjugate(&s.parse().unwrap());
            assert!(
                max_diff(&img, &dense_from_string(&letter.to_string())) < TOL,
                "{label:?} on {s}"
            );
        }
    }
}

#[test]
fn single_qubit_cliffords_form_a_group() {
    let gens = [SingleQubitClifford::HADAMARD, SingleQubitClifford::PHASE];
    let mut seen = vec![SingleQubitClifford::IDENTITY];
    let mut frontier = seen.clone();
    while let Some(c) = frontier.pop() {
        for g in gens {
            let d = g.compose(&c);
            if !seen.contains(&d) {
                seen.push(d);
                frontier.push(d);
            }
        }
    }
    // 24 elements modulo Paulis and phases
    assert_eq!(seen.len(), 24);
    for c in &seen {
        assert_eq!(c.compose(&c.inverse()), SingleQubitClifford::IDENTITY);
    }
    let local = LocalClifford::new(seen[..3].to_vec());
    let p: PauliOperator = "XYZ".parse().unwrap();
    assert_eq!(
        local
            .inverse()
            .conjugate(&local.conjugate(&p).unwrap())
            .unwrap(),
        p
    );
}
