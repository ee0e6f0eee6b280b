mod common;

use std::collections::HashSet;

use common::{decode_graph6, euler_transform};
use cws_core::canon::{canonical_form, canonical_graph, canonical_labeling};
use cws_core::graph::graph_state_stabilizer;
use cws_core::orbits::{lc_orbit, lc_orbit_representatives, load_or_compute};
use cws_core::{Graph, Letter, PauliOperator, StabilizerGroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Local complementation at `v` as a letter map: Z<->Y on `v`, X<->Y on its neighbours.
fn lc_letters(p: &PauliOperator, v: usize, nbrs: u32) -> PauliOperator {
    let letters: Vec<Letter> = (0..p.num_qubits())
        .map(|q| {
            let l = p.letter(q);
            match (q == v, nbrs >> q & 1 == 1, l) {
                (true, _, Letter::Z) => Letter::Y,
                (true, _, Letter::Y) => Letter::Z,
                (_, true, Letter::X) => Letter::Y,
                (_, true, Letter::Y) => Letter::X,
                _ => l,
            }
        })
        .collect();
    PauliOperator::from_letters(&letters).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_matches_reference_decoder(g in arb_graph(16)) {
        let line = g.to_graph6();
        let (n, edges) = decode_graph6(&line);
        prop_assert_eq!(n, g.num_vertices());
        let mut expect = g.edges();
        expect.sort();
        let mut got = edges;
        got.sort();
        prop_assert_eq!(got, expect);
        prop_assert_eq!(Graph::from_graph6(&line).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(9), seed in any::<u64>()) {
        let h = g.relabeled(&shuffled_order(g.num_vertices(), seed));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let (form, order) = canonical_labeling(&g);
        prop_assert_eq!(canonical_form(&g.relabeled(&order)), form);
        prop_assert_eq!(canonical_graph(&g).1, canonical_graph(&h).1);
    }

    #[test]
    fn local_complement_is_an_involution(g in arb_graph(10), v in 0usize..10) {
        let v = v % g.num_vertices();
        let h = g.local_complement(v).unwrap();
        prop_assert_eq!(h.neighbors(v), g.neighbors(v));
        prop_assert_eq!(h.local_complement(v).unwrap(), g);
    }

    #[test]
    fn local_complement_is_local_clifford(g in arb_graph(8), v in 0usize..8) {
        let v = v % g.num_vertices();
        let h = g.local_complement(v).unwrap();
        let group = StabilizerGroup::new(graph_state_stabilizer(&g).generators()).unwrap();
        for gen in graph_state_stabilizer(&h).generators() {
            let mapped = lc_letters(&gen, v, g.neighbors(v));
            prop_assert!(group.element_matching(&mapped).unwrap().is_some(), "{} not in S(G)", mapped);
        }
    }

    #[test]
    fn graph_state_generators_commute(g in arb_graph(12)) {
        let gens = graph_state_stabilizer(&g).generators();
        for a in &gens {
            for b in &gens {
                prop_assert!(a.commutes(b).unwrap());
            }
        }
        prop_assert_eq!(StabilizerGroup::new(gens).unwrap().rank(), g.num_vertices());
    }
}

#[test]
fn path_on_three_vertices_has_a_two_class_orbit() {
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let orbit = lc_orbit(&p3);
    let forms: HashSet<_> = orbit.iter().map(|(f, _)| *f).collect();
    let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(
        forms,
        HashSet::from([canonical_form(&p3), canonical_form(&k3)])
    );
}

#[test]
fn connected_class_counts() {
    let expect = [1, 1, 2, 4, 11, 26];
    for (n, &count) in (2..=7).zip(&expect) {
        let reps = lc_orbit_representatives(n, true).unwrap();
        assert_eq!(reps.len(), count, "n={n}");
        assert!(reps.iter().all(Graph::is_connected));
    }
}

#[test]
fn all_class_counts_follow_from_connected_ones() {
    // connected[k] for k = 0..=8
    let connected = [0, 1, 1, 1, 2, 4, 11, 26, 101];
    assert_eq!(lc_orbit_representatives(8, true).unwrap().len(), 101);
    for n in 2..=8 {
        let reps = lc_orbit_representatives(n, false).unwrap();
        assert_eq!(reps.len() as u64, euler_transform(&connected, n), "n={n}");
    }
    assert_eq!(euler_transform(&connected, 5), 11);
    assert_eq!(euler_transform(&connected, 6), 26);
    assert_eq!(euler_transform(&connected, 7), 59);
    assert_eq!(euler_transform(&connected, 8), 182);
}

#[test]
fn every_labeled_graph_reaches_exactly_one_representative() {
    for n in 2..=5 {
        let reps: Vec<_> = lc_orbit_representatives(n, false)
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        let mut hit = vec![false; reps.len()];
        for g in Graph::all_labeled(n).unwrap() {
            let orbit: HashSet<_> = lc_orbit(&g).into_iter().map(|(f, _)| f).collect();
            let matches: Vec<usize> = (0..reps.len())
                .filter(|&i| orbit.contains(&reps[i]))
                .collect();
            assert_eq!(matches.len(), 1, "n={n} {g:?}");
            hit[matches[0]] = true;
        }
        assert!(hit.iter().all(|&h| h), "n={n}: unreachable representative");
    }
}

#[test]
fn random_six_vertex_graphs_reach_exactly_one_representative() {
    let reps: Vec<_> = lc_orbit_representatives(6, false)
        .unwrap()
        .iter()
        .map(canonical_form)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..300 {
        let g = Graph::random(6, &mut rng).unwrap();
        let orbit: HashSet<_> = lc_orbit(&g).into_iter().map(|(f, _)| f).collect();
        assert_eq!(
            reps.iter().filter(|r| orbit.contains(r)).count(),
            1,
            "{g:?}"
        );
    }
}

#[test]
fn orbit_cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = load_or_compute(6, false, Some(dir.path())).unwrap();
    assert!(dir.path().join("orbits_n6_all.g6").is_file());
    let cached = load_or_compute(6, false, Some(dir.path())).unwrap();
    assert_eq!(fresh, cached);
}
