mod common;

use chromaroot::chromatic::{
    chromatic_polynomial, jackson_reduction_check, q_eval, ChromaticEngine,
};
use chromaroot::gentri::enumerate_gentri;
use chromaroot::graph::{atlas, bridges_of, graph6_encode, two_cuts, Graph};
use chromaroot::poly::{rat, IntPoly, Rational};
use common::{colourings, interpolated_chromatic, random_graph};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn colouring_oracle_sanity() {
    assert_eq!(colourings(&Graph::complete(4), 5), 120);
    assert_eq!(colourings(&Graph::cycle(5), 3), 30);
    assert_eq!(colourings(&Graph::empty(3).unwrap(), 4), 64);
    assert_eq!(colourings(&Graph::complete_bipartite(2, 3), 2), 2);
}

#[test]
fn atlas_matches_interpolation() {
    let engine = ChromaticEngine::new();
    for g in atlas::graphs_up_to(7) {
        assert_eq!(engine.polynomial(&g), interpolated_chromatic(&g), "{}", graph6_encode(&g));
    }
}

#[test]
fn unmemoised_engine_agrees() {
    let fresh = ChromaticEngine::unmemoised();
    for g in atlas::graphs_on(6) {
        assert_eq!(fresh.polynomial(&g), chromatic_polynomial(&g).poly);
    }
}

#[test]
fn generalised_triangles_match_interpolation() {
    for g in enumerate_gentri(11).unwrap() {
        assert_eq!(chromatic_polynomial(&g).poly, interpolated_chromatic(&g), "{}", graph6_encode(&g));
    }
}

fn random_rationals(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| rat(rng.gen_range(-300..=300), rng.gen_range(1..=97))).collect()
}

#[test]
fn deletion_contraction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut graphs = atlas::graphs_up_to(6);
    graphs.extend(enumerate_gentri(11).unwrap());
    for g in &graphs {
        let p = chromatic_polynomial(g).poly;
        for (u, v) in g.edges() {
            let del = chromatic_polynomial(&g.without_edge(u, v).unwrap()).poly;
            let con = chromatic_polynomial(&g.contract(u, v).unwrap()).poly;
            for t in random_rationals(&mut rng, 5) {
                assert_eq!(p.eval(&t), del.eval(&t) - con.eval(&t));
            }
        }
    }
}

#[test]
fn clique_gluing_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..150 {
        let (na, nb) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
        let mut a = random_graph(&mut rng, na, 0.5);
        let mut b = random_graph(&mut rng, nb, 0.5);
        let r = rng.gen_range(1..=2);
        if r == 2 {
            a.add_edge(0, 1).unwrap();
            b.add_edge(0, 1).unwrap();
        }
        // identify b's first r vertices with a's first r vertices
        let mut g = a.clone();
        let mut map: Vec<usize> = (0..r).collect();
        for _ in r..nb {
            map.push(g.add_vertex().unwrap());
        }
        for (x, y) in b.edges() {
            g.add_edge(map[x], map[y]).unwrap();
        }
        let pa = chromatic_polynomial(&a).poly;
        let pb = chromatic_polynomial(&b).poly;
        let glued = chromatic_polynomial(&g).poly;
        assert_eq!(&glued * &IntPoly::falling_factorial(r), &pa * &pb);
    }
}

#[test]
fn jackson_reduction_on_random_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let triangles: Vec<Graph> = enumerate_gentri(13).unwrap().into_iter().filter(|g| g.vertex_count() >= 5).collect();
    let mut checked = 0;
    while checked < 100 {
        let g = &triangles[rng.gen_range(0..triangles.len())];
        let cuts = two_cuts(g).unwrap();
        let cut = cuts[rng.gen_range(0..cuts.len())];
        let bridges = bridges_of(g, cut).unwrap();
        let k = rng.gen_range(0..bridges.len());
        let side1 = bridges[k].vertex_set();
        let side2 = bridges.iter().enumerate().filter(|&(i, _)| i != k).fold(0, |acc, (_, b)| acc | b.vertex_set());
        let t = rat(rng.gen_range(101..=199), 100);
        assert_eq!(jackson_reduction_check(g, side1, side2, cut.x, cut.y, &t), Ok(true), "{}", graph6_encode(g));
        checked += 1;
    }
    // a split along something that is not a 2-cut is refused
    let g = &triangles[0];
    let all = g.vertex_set();
    assert!(jackson_reduction_check(g, all, 0b11, 0, 1, &rat(3, 2)).is_err());
}

#[test]
fn q_positive_at_thirty_two_27() {
    let t = rat(32, 27);
    for g in enumerate_gentri(13).unwrap() {
        assert!(q_eval(&g, &t) > Rational::zero(), "{}", graph6_encode(&g));
    }
}
