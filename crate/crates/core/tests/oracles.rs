//! Library results against definition-level oracles, plus the documented
//! examples whose values were first computed by those oracles.

mod common;

use common::{chvatal_by_induced_subgraphs, set, Naive};
use qkernel::domination::{epons, non_epon_members};
use qkernel::fixtures::*;
use qkernel::generate::random_digraph;
use qkernel::{
    chvatal_quasi_kernel, enumerate_all, enumerate_kernels, find_kernel, generate,
    has_odd_directed_cycle, is_independent, is_inward_dominated, is_kernel, is_quasi_kernel,
    min_quasi_kernel, Digraph, GeneratorKind, SolveLimits, VertexSet,
};

fn all_graphs(max_n: usize) -> impl Iterator<Item = Digraph> {
    (0..=max_n).flat_map(|n| enumerate_all(n, 6).unwrap().map(|(_, g)| g))
}

#[test]
fn predicates_agree_with_definitions_up_to_n4() {
    for g in all_graphs(4) {
        let naive = Naive::of(&g);
        for s in naive.subsets() {
            let vs = set(g.n(), &s);
            assert_eq!(is_independent(&g, &vs).unwrap(), naive.independent(&s), "{g:?} {s:?}");
            assert_eq!(is_kernel(&g, &vs).unwrap(), naive.kernel(&s), "{g:?} {s:?}");
            assert_eq!(is_quasi_kernel(&g, &vs).unwrap(), naive.quasi_kernel(&s), "{g:?} {s:?}");
            assert_eq!(
                is_inward_dominated(&g, &vs).unwrap(),
                naive.inward_dominated(&s),
                "{g:?} {s:?}"
            );
            for &u in &s {
                assert_eq!(epons(&g, &vs, u).unwrap().to_vec(), naive.epons(&s, u));
            }
        }
        assert_eq!(g.is_source_free(), naive.source_free());
    }
}

#[test]
fn solvers_agree_with_definitions_up_to_n4() {
    let limits = SolveLimits::default();
    for g in all_graphs(4) {
        let naive = Naive::of(&g);
        let kernels: Vec<Vec<usize>> = enumerate_kernels(&g, &limits)
            .unwrap()
            .iter()
            .map(VertexSet::to_vec)
            .collect();
        assert_eq!(kernels, naive.kernels(), "{g:?}");
        assert_eq!(
            find_kernel(&g, &limits).unwrap().map(|k| k.to_vec()),
            naive.kernels().into_iter().next()
        );
        assert_eq!(min_quasi_kernel(&g, &limits).unwrap().to_vec(), naive.min_quasi_kernel());
    }
}

#[test]
fn odd_cycle_detection_matches_cycle_enumeration() {
    for g in all_graphs(4) {
        assert_eq!(has_odd_directed_cycle(&g), Naive::of(&g).has_odd_cycle(), "{g:?}");
    }
    for seed in 0..1000 {
        let g = random_digraph(6, seed, 0.25);
        assert_eq!(has_odd_directed_cycle(&g), Naive::of(&g).has_odd_cycle(), "{g:?}");
    }
}

#[test]
fn chvatal_matches_literal_recursion() {
    for g in all_graphs(4) {
        assert_eq!(chvatal_quasi_kernel(&g), chvatal_by_induced_subgraphs(&g), "{g:?}");
    }
    for seed in 0..300 {
        let g = generate(GeneratorKind::RandomSourceFree, 30, seed, 0.1).unwrap();
        let q = chvatal_quasi_kernel(&g);
        assert_eq!(q, chvatal_by_induced_subgraphs(&g));
        assert!(Naive::of(&g).quasi_kernel(&q.to_vec()));
    }
}

// Expected values below were produced by the `Naive` oracle and frozen.

#[test]
fn documented_examples() {
    let limits = SolveLimits::default();
    let n = Naive::of(&domc3());
    assert!(n.has_odd_cycle());
    assert!(has_odd_directed_cycle(&domc3()));
    assert!(n.kernel(&[3]));
    assert!(is_kernel(&domc3(), &set(4, &[3])).unwrap());
    assert_eq!(n.epons(&[3], 3), vec![0, 1, 2]);
    assert!(non_epon_members(&domc3(), &set(4, &[3])).unwrap().is_empty());
    assert_eq!(find_kernel(&domc3(), &limits).unwrap(), Some(set(4, &[3])));

    let s = Naive::of(&shared_sink());
    assert!(s.quasi_kernel(&[1]));
    assert!(is_quasi_kernel(&shared_sink(), &set(3, &[1])).unwrap());
    assert!(s.inward_dominated(&[0, 1]));
    assert_eq!(s.epons(&[0], 0), vec![2]);
    assert_eq!(s.kernels(), vec![vec![2], vec![0, 1]]);
    assert_eq!(find_kernel(&shared_sink(), &limits).unwrap(), Some(set(3, &[2])));
    assert_eq!(s.min_quasi_kernel(), vec![0]);

    let c = Naive::of(&c4());
    assert_eq!(c.kernels(), vec![vec![0, 2], vec![1, 3]]);
    assert_eq!(c.min_quasi_kernel(), vec![0, 2]);
    assert!(Naive::of(&c3()).kernels().is_empty());
}
