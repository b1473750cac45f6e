use chromaroot::chromatic::{chromatic_polynomial, smallest_nontrivial_root};
use chromaroot::classes::{
    all_switches, hamiltonian_path, in_K1, in_K1K2, in_K2, j_sequence_k1, j_sequence_k2,
    j_sequence_k2_embedded, to_ham_form, whitney_switch,
};
use chromaroot::gentri::{enumerate_gentri, fixed_graphs, is_generalised_triangle};
use chromaroot::graph::graph6_encode;
use chromaroot::poly::{compare_roots, rat};
use std::cmp::Ordering;

#[test]
fn fixed_graph_memberships() {
    let f = fixed_graphs();
    assert!(!in_K1(&f.h0).unwrap() && in_K2(&f.h0).unwrap());
    assert!(in_K1(&f.h1).unwrap() && !in_K2(&f.h1).unwrap());
    assert!(!in_K2(&f.h2).unwrap());
}

#[test]
fn whitney_switches_keep_polynomial() {
    let mut count = 0;
    for g in enumerate_gentri(15).unwrap() {
        let p = chromatic_polynomial(&g).poly;
        for step in all_switches(&g) {
            let h = whitney_switch(&g, step).unwrap();
            assert_eq!(h.edge_count(), g.edge_count());
            assert_eq!(chromatic_polynomial(&h).poly, p, "{} {:?}", graph6_encode(&g), step);
            count += 1;
        }
    }
    assert!(count >= 500, "{count}");
}

#[test]
fn ham_form_on_k1k2() {
    let all = enumerate_gentri(15).unwrap();
    let mut members = 0;
    for g in &all {
        let k = in_K1K2(g).unwrap();
        let path = hamiltonian_path(g).unwrap();
        if path.is_some() {
            assert!(k, "{}", graph6_encode(g));
        }
        if k {
            members += 1;
            let f = to_ham_form(g).unwrap();
            assert!(is_generalised_triangle(&f.graph));
            assert!(hamiltonian_path(&f.graph).unwrap().is_some());
            let mut seen = vec![false; g.vertex_count()];
            for w in f.path.windows(2) {
                assert!(f.graph.has_edge(w[0], w[1]));
            }
            for &v in &f.path {
                assert!(!seen[v]);
                seen[v] = true;
            }
            assert_eq!(f.path.len(), g.vertex_count());
            assert_eq!(chromatic_polynomial(&f.graph).poly, chromatic_polynomial(g).poly);
        } else {
            assert!(to_ham_form(g).is_err());
        }
    }
    assert!(members >= 14, "{members}");
}

#[test]
fn j_sequences_decrease_above_limits() {
    let q: chromaroot::poly::IntPoly = "t^4-4*t^3+4*t^2-4*t+4".parse().unwrap();
    let q = chromaroot::poly::isolate_roots(&q, &rat(1, 1), &rat(2, 1)).unwrap().remove(0);
    let k1: Vec<_> = (0..5).map(|i| smallest_nontrivial_root(&j_sequence_k1(i)).unwrap().unwrap()).collect();
    let k2: Vec<_> = (0..5).map(|i| smallest_nontrivial_root(&j_sequence_k2(i)).unwrap().unwrap()).collect();
    for i in 0..4 {
        assert_eq!(compare_roots(&k1[i + 1], &k1[i]), Ordering::Less);
        assert_eq!(compare_roots(&k2[i + 1], &k2[i]), Ordering::Less);
    }
    assert!(k1.iter().all(|r| r.cmp_rational(&rat(5, 4)) == Ordering::Greater));
    assert!(k2.iter().all(|r| compare_roots(r, &q) == Ordering::Greater));
    for i in 0..4 {
        let g1 = j_sequence_k1(i);
        assert!(in_K1(&g1).unwrap(), "J_{i} in K1");
        let g2 = j_sequence_k2_embedded(i);
        assert!(in_K2(&g2.graph).unwrap(), "J_{i} in K2");
        assert!(g2.every_cut_has_inner_trivial_bridge());
    }
}
