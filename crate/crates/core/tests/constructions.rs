mod common;

use planar_turan::canon;
use planar_turan::constructions::{self, ConstructionSpec, FamilyName};
use planar_turan::counting::Pattern;
use planar_turan::cycles::{self, ForbiddenFamily};
use planar_turan::graph::Graph;
use planar_turan::params;
use planar_turan::planarity;

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

#[test]
fn conjecture_family_specializes() {
    for m in 1..=3 {
        for k in 3..=9 {
            let a = constructions::conjecture_family_with_multiplicity(k, 1, m).unwrap();
            let b = constructions::cycle_blowup_with_multiplicity(k, m).unwrap();
            assert!(canon::are_isomorphic(&a.graph, &b.graph), "l=1 k={k} m={m}");
        }
        for k in (5..=11).filter(|&k| k != 4) {
            let a = constructions::conjecture_family_with_multiplicity(k, 2, m).unwrap();
            let b = constructions::ck_c4free_parallel_with_multiplicity(k, m).unwrap();
            assert!(canon::are_isomorphic(&a.graph, &b.graph), "l=2 k={k} m={m}");
        }
    }
}

#[test]
fn cycle_counts_match_oracle() {
    for m in 1..=3u64 {
        let k4 = constructions::cycle_blowup_with_multiplicity(4, m as usize).unwrap();
        assert_eq!(common::brute_cycles(&k4.graph, 4), choose2(2 * m));
        let k6 = constructions::ck_c4free_parallel_with_multiplicity(6, m as usize).unwrap();
        assert_eq!(common::brute_cycles(&k6.graph, 6), m * m + 2 * choose2(m));
        let k8 = constructions::conjecture_family_with_multiplicity(8, 3, m as usize).unwrap();
        assert_eq!(common::brute_cycles(&k8.graph, 8), m * m + 2 * choose2(m));
        let k9 = constructions::ck_c4free_parallel_with_multiplicity(9, m as usize).unwrap();
        assert_eq!(common::brute_cycles(&k9.graph, 9), m * m * m);
    }
}

#[test]
fn cycle_blowup_example_sizes() {
    let out = constructions::cycle_blowup(4, 8).unwrap();
    assert_eq!(out.graph.vertex_count(), 8);
    assert!(canon::are_isomorphic(&out.graph, &Graph::complete_bipartite(2, 6)));
    assert_eq!(common::brute_cycles(&out.graph, 4), 15);
}

#[test]
fn single_edge_blowup_count() {
    let out = constructions::tree_beta_blowup(&Graph::path(1), 10).unwrap();
    assert!(out.graph.vertex_count() <= 10);
    assert_eq!(out.certified.copies, common::brute_copies(&Graph::path(1), &out.graph));
    // adjacent endpoints give beta = 1, so this is the star K1,5
    assert!(canon::are_isomorphic(&out.graph, &Graph::star(5)));
    assert_eq!(out.certified.copies, 5);
}

#[test]
fn tree_families_certify_against_oracles() {
    let spider = Graph::spider(&[2, 2, 2]);
    for l in 1..=2 {
        let beta = params::beta(&spider, l).unwrap().value as u32;
        for m in 1..=2u64 {
            let out = constructions::even_tree_parallel_paths_with_multiplicity(&spider, l, m as usize).unwrap();
            assert!(planarity::planar(&out.graph));
            assert!(cycles::is_family_free(
                &out.graph,
                &ForbiddenFamily::even_cycles_up_to(l)
            ));
            assert!(out.certified.copies >= m.pow(beta));
            if out.graph.vertex_count() <= 12 {
                assert_eq!(out.certified.copies, common::brute_copies(&spider, &out.graph));
            }
        }
    }
}

#[test]
fn pentagon_labels_and_counts() {
    let out = constructions::pentagon_extremal(2, 2);
    assert_eq!(out.graph.vertex_count(), 15);
    assert_eq!(common::brute_cycles(&out.graph, 5), 11);
    assert_eq!(common::brute_cycles(&out.graph, 4), 0);
    for name in ["x1", "x5", "y3^1", "y5^2", "z1", "z4"] {
        assert!(out.vertex_named(name).is_some(), "{name}");
    }
}

#[test]
fn specs_from_text() {
    let spec = ConstructionSpec::new(FamilyName::ConjectureFamily)
        .parse_parameters("k=10,l=3,m=2")
        .unwrap();
    let out = spec.build().unwrap();
    assert!(out.certified.holds());
    assert_eq!(out.certified.copies, 4);
    let p = Pattern::new(Graph::cycle(10)).unwrap();
    assert_eq!(out.certified.pattern, p.graph().clone());
    assert!(ConstructionSpec::new(FamilyName::ConjectureFamily)
        .parse_parameters("k=6,l=3,m=2")
        .unwrap()
        .build()
        .is_err());
}
