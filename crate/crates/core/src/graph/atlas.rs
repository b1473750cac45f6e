//! Every simple graph on a small number of vertices, one per isomorphism class.

use std::collections::BTreeMap;

use super::{canonical_code, canonical_form, CanonicalCode, Graph};

/// All isomorphism classes of graphs on exactly `n` vertices, in canonical
/// form, ordered by canonical code. Built by adding one edge at a time and
/// deduplicating each edge-count level.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    let mut all: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    let start = Graph::empty(n).expect("atlas size");
    let mut level: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    level.insert(canonical_code(&start), start);
    while !level.is_empty() {
        let mut next: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
        for g in level.values() {
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let h = g.with_edge(u, v).unwrap();
                    let code = canonical_code(&h);
                    next.entry(code).or_insert_with(|| canonical_form(&h).0);
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all.into_values().collect()
}

/// All isomorphism classes on at most `n_max` vertices, ordered by size.
pub fn graphs_up_to(n_max: usize) -> Vec<Graph> {
    (0..=n_max).flat_map(graphs_on).collect()
}
