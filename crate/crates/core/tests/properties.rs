mod common;

use proptest::prelude::*;

use qkernel::digraph::labeled_count;
use qkernel::domination::non_epon_members;
use qkernel::{
    chvatal_quasi_kernel, enumerate_kernels, epons, generate, is_inward_dominated, is_kernel,
    is_quasi_kernel, parse_edge_list, serialize_edge_list, shrink_kernel, verify_certificate,
    Digraph, Direction, GeneratorKind, GraphEncoding, ShrinkCertificate, ShrinkOptions,
    SolveLimits, VertexSet,
};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs = (0..n * n)
                .filter(|&i| bits[i] && i / n != i % n)
                .map(|i| (i / n, i % n));
            Digraph::build(n, arcs).unwrap()
        })
    })
}

fn source_free_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n, any::<u64>(), 0.05f64..0.6)
        .prop_map(|(n, seed, p)| generate(GeneratorKind::RandomSourceFree, n, seed, p).unwrap())
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in digraph(9)) {
        prop_assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn encoding_is_a_bijection(n in 0usize..=5, raw in any::<u64>()) {
        let code = raw % labeled_count(n).unwrap();
        let g = Digraph::from_code_u64(n, code);
        prop_assert_eq!(g.encoding_u64(), Some(code));
        let enc = GraphEncoding::from_u64(n, code);
        prop_assert_eq!(enc.to_digraph().unwrap().encoding(), enc);
    }

    #[test]
    fn neighbor_sets_are_consistent(g in digraph(8)) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                let out = g.neighbors(u, Direction::Out).unwrap().contains(v);
                let inn = g.neighbors(v, Direction::In).unwrap().contains(u);
                prop_assert_eq!(out, inn);
            }
        }
    }

    #[test]
    fn generators_are_deterministic(kind_ix in 0usize..4, n in 2usize..14, seed: u64, p in 0.0f64..=1.0) {
        let kind = GeneratorKind::ALL[kind_ix];
        let a = serialize_edge_list(&generate(kind, n, seed, p).unwrap());
        let b = serialize_edge_list(&generate(kind, n, seed, p).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn epons_shrink_monotonically(g in digraph(8), t_mask: u64, s_mask: u64) {
        let n = g.n();
        let t = VertexSet::from_mask(n, t_mask);
        let s = VertexSet::from_mask(n, s_mask).intersection(&t);
        for u in &s {
            let wide = epons(&g, &t, u).unwrap();
            let narrow = epons(&g, &s, u).unwrap();
            prop_assert!(wide.is_subset(&narrow));
            prop_assert!(narrow.is_disjoint(&s));
        }
    }

    #[test]
    fn kernels_are_inward_dominated_quasi_kernels(g in digraph(7)) {
        for k in enumerate_kernels(&g, &SolveLimits::default()).unwrap() {
            prop_assert!(is_kernel(&g, &k).unwrap());
            prop_assert!(is_quasi_kernel(&g, &k).unwrap());
            prop_assert!(is_inward_dominated(&g, &k).unwrap());
        }
    }

    #[test]
    fn shrinking_any_kernel_is_certified(g in source_free_digraph(11)) {
        let kernels = enumerate_kernels(&g, &SolveLimits::default()).unwrap();
        for k in kernels {
            let cert = shrink_kernel(&g, &k, ShrinkOptions::verified()).unwrap();
            prop_assert!(cert.final_set.is_subset(&k));
            prop_assert!(2 * cert.final_set.len() <= g.n());
            prop_assert!(is_quasi_kernel(&g, &cert.final_set).unwrap());
            let mut removed = VertexSet::new(g.n());
            let mut last = usize::MAX;
            for r in &cert.removals {
                prop_assert!(removed.insert(r.vertex));
                prop_assert!(r.s_set.len() < last);
                last = r.s_set.len();
            }
            prop_assert_eq!(cert.final_set.union(&removed), k.clone());
            prop_assert!(non_epon_members(&g, &cert.final_set).unwrap().is_empty());
            prop_assert_eq!(verify_certificate(&g, &cert), Ok(()));
            let back = ShrinkCertificate::from_json(&cert.to_json()).unwrap();
            prop_assert_eq!(back, cert);
        }
    }

    #[test]
    fn constructed_quasi_kernels_are_valid(g in digraph(12)) {
        prop_assert!(is_quasi_kernel(&g, &chvatal_quasi_kernel(&g)).unwrap());
    }
}
