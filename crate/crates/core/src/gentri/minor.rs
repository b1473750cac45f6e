use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use super::{is_generalised_triangle, GentriError};
use crate::graph::{
    bit, bridges_of, canonical_code, is_connected, set_members, structure, two_cuts, CanonicalCode,
    CutPair, Graph, VertexId, VertexSet,
};

/// One undone double subdivision: the reduced graph, the restored edge in
/// the reduced graph's ids, the id map (reduced -> original) and the two
/// removed vertices (original ids).
pub(crate) type ReverseDetail = (Graph, CutPair, Vec<VertexId>, [VertexId; 2]);

pub(crate) fn reverse_step_detail(g: &Graph) -> Vec<ReverseDetail> {
    if g.vertex_count() <= 3 {
        return Vec::new();
    }
    let Ok(cuts) = two_cuts(g) else { return Vec::new() };
    let mut out = Vec::new();
    for cut in cuts {
        let trivial: Vec<VertexId> = bridges_of(g, cut)
            .expect("listed cut")
            .into_iter()
            .filter(|b| b.is_trivial())
            .map(|b| b.interior.trailing_zeros() as usize)
            .collect();
        if trivial.len() < 2 {
            continue;
        }
        let (mut h, ids) = g.remove_vertices(bit(trivial[0]) | bit(trivial[1]));
        let pos = |w: VertexId| ids.iter().position(|&o| o == w).unwrap();
        let (x, y) = (pos(cut.x), pos(cut.y));
        h.add_edge(x, y).unwrap();
        out.push((h, CutPair::new(x, y), ids, [trivial[0], trivial[1]]));
    }
    out
}

/// Every inverse double subdivision of `g`: for each 2-cut with at least two
/// trivial bridges, delete two of their middle vertices and join the cut.
/// The cut is given in `g`'s ids.
pub fn reverse_steps(g: &Graph) -> Vec<(Graph, CutPair)> {
    reverse_step_detail(g)
        .into_iter()
        .map(|(h, cut, ids, _)| (h, CutPair::new(ids[cut.x], ids[cut.y])))
        .collect()
}

type Downset = Arc<HashSet<CanonicalCode>>;

fn downsets() -> &'static DashMap<CanonicalCode, Downset> {
    static MEMO: OnceLock<DashMap<CanonicalCode, Downset>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Canonical codes of all generalised triangles `H <= g` in the
/// double-subdivision order, `g` included. Memoised for the process.
pub fn downset(g: &Graph) -> Downset {
    let code = canonical_code(g);
    if let Some(d) = downsets().get(&code) {
        return d.clone();
    }
    let mut set = HashSet::new();
    for (h, _) in reverse_steps(g) {
        let below = downset(&h);
        set.extend(below.iter().cloned());
    }
    set.insert(code.clone());
    let d = Arc::new(set);
    downsets().insert(code, d.clone());
    d
}

/// Whether `g` arises from `h` by double subdivisions, which for generalised
/// triangles is the minor order.
pub fn poset_minor(h: &Graph, g: &Graph) -> Result<bool, GentriError> {
    if !is_generalised_triangle(h) {
        return Err(GentriError::NotGentri("h"));
    }
    if !is_generalised_triangle(g) {
        return Err(GentriError::NotGentri("g"));
    }
    if h.vertex_count() > g.vertex_count() {
        return Ok(false);
    }
    Ok(downset(g).contains(&canonical_code(h)))
}

/// `graph` double-subdivided at `edge` is isomorphic to the next step's
/// graph (or to the host, for the last step).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub graph: Graph,
    pub edge: (VertexId, VertexId),
}

/// A subdivision sequence from a copy of `h` up to `g`, when `h <= g`.
pub fn poset_minor_witness(h: &Graph, g: &Graph) -> Result<Option<Vec<WitnessStep>>, GentriError> {
    if !poset_minor(h, g)? {
        return Ok(None);
    }
    let target = canonical_code(h);
    let mut chain = Vec::new();
    let mut cur = g.clone();
    while canonical_code(&cur) != target {
        let (reduced, cut, _, _) = reverse_step_detail(&cur)
            .into_iter()
            .find(|(r, ..)| downset(r).contains(&target))
            .expect("downset membership implies a reducing step");
        chain.push(WitnessStep { graph: reduced.clone(), edge: (cut.x, cut.y) });
        cur = reduced;
    }
    chain.reverse();
    Ok(Some(chain))
}

/// Host size limit for [`brute_minor`].
pub const ORACLE_LIMIT: usize = 13;

/// General minor test. For a connected host every model can be grown to
/// cover it, so `h` is a minor exactly when some spanning forest with
/// `|V(h)|` trees has a quotient containing `h` as a spanning subgraph.
/// Disconnected hosts fall back to a search over disjoint connected branch
/// sets.
pub fn brute_minor(h: &Graph, g: &Graph) -> Result<bool, GentriError> {
    let (nh, ng) = (h.vertex_count(), g.vertex_count());
    if ng > ORACLE_LIMIT {
        return Err(GentriError::OracleLimit(ng, ORACLE_LIMIT));
    }
    if nh == 0 {
        return Ok(true);
    }
    if nh > ng || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    if is_connected(g) {
        return Ok(ForestSearch::new(h, g).run());
    }
    let connected: Vec<VertexSet> =
        (1..(1u128 << ng)).filter(|&m| structure::is_connected_within(g, m)).collect();
    let mut order: Vec<VertexId> = h.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut search = BranchSearch { h, g, order, connected, branch: vec![0; nh] };
    Ok(search.place(0, 0))
}

struct ForestSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    edges: Vec<(VertexId, VertexId)>,
    h_degrees: Vec<usize>,
    /// h vertices, each after at least one neighbour where possible
    h_order: Vec<VertexId>,
    seen: HashSet<Vec<VertexSet>>,
}

impl<'a> ForestSearch<'a> {
    fn new(h: &'a Graph, g: &'a Graph) -> Self {
        let mut h_degrees = h.degree_sequence();
        h_degrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut h_order: Vec<VertexId> = Vec::with_capacity(h.vertex_count());
        let mut done: VertexSet = 0;
        while h_order.len() < h.vertex_count() {
            let frontier = h_order.iter().fold(0, |acc, &v| acc | h.neighbourhood(v)) & !done;
            let pool = if frontier != 0 { frontier } else { h.vertex_set() & !done };
            let v = set_members(pool).max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v))).unwrap();
            h_order.push(v);
            done |= bit(v);
        }
        ForestSearch { h, g, edges: g.edges(), h_degrees, h_order, seen: HashSet::new() }
    }

    fn run(&mut self) -> bool {
        let parts: Vec<VertexSet> = self.g.vertices().map(bit).collect();
        let k = self.g.vertex_count() - self.h.vertex_count();
        self.grow(0, k, parts)
    }

    fn grow(&mut self, from: usize, left: usize, parts: Vec<VertexSet>) -> bool {
        if left == 0 {
            return self.test_quotient(parts);
        }
        for i in from..self.edges.len() {
            if self.edges.len() - i < left {
                break;
            }
            let (a, b) = self.edges[i];
            let pa = parts.iter().position(|&p| p & bit(a) != 0).unwrap();
            let pb = parts.iter().position(|&p| p & bit(b) != 0).unwrap();
            if pa == pb {
                continue;
            }
            let mut next = parts.clone();
            next[pa] |= next[pb];
            next.swap_remove(pb);
            if self.grow(i + 1, left - 1, next) {
                return true;
            }
        }
        false
    }

    fn test_quotient(&mut self, mut parts: Vec<VertexSet>) -> bool {
        parts.sort_unstable();
        if !self.seen.insert(parts.clone()) {
            return false;
        }
        let reach: Vec<VertexSet> =
            parts.iter().map(|&p| set_members(p).fold(0, |acc, x| acc | self.g.neighbourhood(x)) & !p).collect();
        let q: Vec<VertexSet> = (0..parts.len())
            .map(|i| (0..parts.len()).filter(|&j| reach[i] & parts[j] != 0).fold(0, |acc, j| acc | bit(j)))
            .collect();
        let mut q_degrees: Vec<usize> = q.iter().map(|r| r.count_ones() as usize).collect();
        q_degrees.sort_unstable_by(|a, b| b.cmp(a));
        if self.h_degrees.iter().zip(&q_degrees).any(|(dh, dq)| dh > dq) {
            return false;
        }
        let mut image = vec![usize::MAX; self.h.vertex_count()];
        self.embed(&q, 0, 0, &mut image)
    }

    /// Bijection from h onto the quotient carrying edges to edges.
    fn embed(&self, q: &[VertexSet], depth: usize, used: VertexSet, image: &mut [usize]) -> bool {
        if depth == self.h_order.len() {
            return true;
        }
        let v = self.h_order[depth];
        let dv = self.h.degree(v);
        let mut need: VertexSet = !0;
        for w in self.h.neighbours(v) {
            if image[w] != usize::MAX {
                need &= q[image[w]];
            }
        }
        let free = ((1u128 << q.len()) - 1) & !used & need;
        for x in set_members(free) {
            if (q[x].count_ones() as usize) < dv {
                continue;
            }
            image[v] = x;
            if self.embed(q, depth + 1, used | bit(x), image) {
                return true;
            }
        }
        image[v] = usize::MAX;
        false
    }
}

struct BranchSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<VertexId>,
    connected: Vec<VertexSet>,
    branch: Vec<VertexSet>,
}

impl BranchSearch<'_> {
    fn place(&mut self, depth: usize, used: VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let hv = self.order[depth];
        let free = self.g.vertex_set() & !used;
        let left_after = (self.order.len() - depth - 1) as u32;
        let placed: Vec<VertexId> = self.order[..depth]
            .iter()
            .copied()
            .filter(|&w| self.h.has_edge(hv, w))
            .collect();
        let max_size = free.count_ones().saturating_sub(left_after);
        for i in 0..self.connected.len() {
            let s = self.connected[i];
            if s & used != 0 || s.count_ones() > max_size {
                continue;
            }
            if self.try_set(hv, s, &placed, depth, used) {
                return true;
            }
        }
        false
    }

    fn try_set(&mut self, hv: VertexId, s: VertexSet, placed: &[VertexId], depth: usize, used: VertexSet) -> bool {
        let reach = set_members(s).fold(0, |acc, x| acc | self.g.neighbourhood(x));
        if placed.iter().any(|&w| reach & self.branch[w] == 0) {
            return false;
        }
        self.branch[hv] = s;
        self.place(depth + 1, used | s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentri::{double_subdivide, fixed_graphs};

    #[test]
    fn reverse_step_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        let steps = reverse_steps(&k23);
        assert_eq!(steps.len(), 1);
        assert!(steps[0].0.is_complete() && steps[0].0.vertex_count() == 3);
        assert_eq!(steps[0].1, CutPair::new(0, 1));
        assert!(reverse_steps(&Graph::complete(3)).is_empty());
        let h0 = fixed_graphs().h0;
        let steps = reverse_steps(&h0);
        assert_eq!(steps.len(), 3);
        let codes: HashSet<_> = steps.iter().map(|(g, _)| canonical_code(g)).collect();
        assert_eq!(codes.len(), 1);
        assert!(steps.iter().all(|(g, _)| g.vertex_count() == 7 && is_generalised_triangle(g)));
    }

    #[test]
    fn poset_examples() {
        let f = fixed_graphs();
        assert_eq!(poset_minor(&Graph::complete(3), &f.h0), Ok(true));
        assert_eq!(poset_minor(&Graph::complete_bipartite(2, 3), &f.h1), Ok(true));
        assert_eq!(poset_minor(&f.h1, &f.h2), Ok(false));
        assert_eq!(poset_minor(&Graph::cycle(4), &f.h0), Err(GentriError::NotGentri("h")));
        let w = poset_minor_witness(&Graph::complete_bipartite(2, 3), &f.h1).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        let mut g = w[0].graph.clone();
        assert_eq!(canonical_code(&g), canonical_code(&Graph::complete_bipartite(2, 3)));
        for (i, step) in w.iter().enumerate() {
            assert_eq!(canonical_code(&g), canonical_code(&step.graph), "step {i}");
            g = double_subdivide(&step.graph, step.edge.0, step.edge.1).unwrap();
        }
        assert_eq!(canonical_code(&g), canonical_code(&f.h1));
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_minor(&Graph::complete(3), &Graph::complete(4)), Ok(true));
        assert_eq!(brute_minor(&Graph::complete(4), &Graph::complete_bipartite(2, 3)), Ok(false));
        assert_eq!(brute_minor(&Graph::complete(4), &Graph::complete_bipartite(3, 3)), Ok(true));
        assert_eq!(brute_minor(&Graph::cycle(5), &Graph::cycle(4)), Ok(false));
        assert_eq!(brute_minor(&Graph::cycle(4), &Graph::cycle(7)), Ok(true));
        // disconnected pattern: two disjoint edges inside a path on 4 vertices
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_minor(&two_edges, &Graph::path(4)), Ok(true));
        assert_eq!(brute_minor(&two_edges, &Graph::path(3)), Ok(false));
        assert_eq!(
            brute_minor(&Graph::complete(3), &Graph::cycle(14)),
            Err(GentriError::OracleLimit(14, 13))
        );
    }
}
