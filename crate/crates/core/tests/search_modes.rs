use cws_core::search::{exhaustive_search, SearchOptions};
use cws_core::{verify_detection, ErrorSetKind, StabilizerGroup};

fn best(n: usize, kind: ErrorSetKind, strict: bool, connected_only: bool) -> usize {
    let opts = SearchOptions {
        strict_degeneracy: strict,
        connected_only,
        ..SearchOptions::default()
    };
    let out = exhaustive_search(n, kind, &opts).unwrap();
    assert!(out.row.exhaustive);
    let es = kind.build(n).unwrap();
    for code in &out.codes {
        assert!(verify_detection(code, &es, 1e-9).unwrap().ok);
        if strict {
            // every word operator commutes with every error acting as a stabilizer element
            let group = StabilizerGroup::new(code.stabilizer.clone()).unwrap();
            for e in es.members().iter().filter(|e| !e.is_identity()) {
                if group.element_matching(e).unwrap().is_some() {
                    assert!(code.word_operators.iter().all(|w| w.commutes(e).unwrap()));
                }
            }
        }
    }
    out.row.best_k.unwrap()
}

fn kinds(n: usize) -> Vec<ErrorSetKind> {
    let mut out = vec![ErrorSetKind::Ad1];
    out.extend((1..=n).map(|r| ErrorSetKind::Dephase { r }));
    out
}

#[test]
fn strict_and_pairwise_degeneracy_agree_on_small_tables() {
    for n in 5..=6 {
        for kind in kinds(n) {
            let pairwise = best(n, kind, false, false);
            let strict = best(n, kind, true, false);
            assert!(strict <= pairwise);
            assert_eq!(strict, pairwise, "n={n} {kind}");
        }
    }
    assert_eq!(best(7, ErrorSetKind::Ad1, true, false), 8);
}

#[test]
fn connected_graphs_suffice_for_small_tables() {
    for n in 5..=6 {
        for kind in kinds(n) {
            assert_eq!(
                best(n, kind, false, true),
                best(n, kind, false, false),
                "n={n} {kind}"
            );
        }
    }
}
