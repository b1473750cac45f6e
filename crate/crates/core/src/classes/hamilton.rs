use serde::{Deserialize, Serialize};

use super::{in_K1K2, whitney_switch, ClassError, SwitchStep};
use crate::graph::{bit, bridges_of, two_cuts, CutPair, Graph, VertexId, VertexSet};

/// Largest graph [`hamiltonian_path`] accepts.
pub const HAM_LIMIT: usize = 21;

/// Some Hamiltonian path, by dynamic programming over (vertex subset,
/// endpoint).
pub fn hamiltonian_path(g: &Graph) -> Result<Option<Vec<VertexId>>, ClassError> {
    let n = g.vertex_count();
    if n > HAM_LIMIT {
        return Err(ClassError::TooLarge(n, HAM_LIMIT));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbourhood(v) as u32).collect();
    let full = (1u32 << n) - 1;
    // ends[mask]: endpoints of paths visiting exactly `mask`
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        let mut reach = 0u32;
        let mut it = e;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            reach |= adj[v];
        }
        let mut next = reach & !mask;
        while next != 0 {
            let w = next.trailing_zeros();
            next &= next - 1;
            ends[(mask | 1 << w) as usize] |= 1 << w;
        }
    }
    if ends[full as usize] == 0 {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut v = ends[full as usize].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = mask & !(1 << v);
        if rest == 0 {
            break;
        }
        let cand = ends[rest as usize] & adj[v];
        v = cand.trailing_zeros() as usize;
        mask = rest;
    }
    path.reverse();
    Ok(Some(path))
}

/// The result of [`to_ham_form`]: the switched graph, the switches applied
/// in order, and a Hamiltonian path of the switched graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamForm {
    pub graph: Graph,
    pub steps: Vec<SwitchStep>,
    pub path: Vec<VertexId>,
}

/// Switches a member of K1 ∩ K2 into a graph with a Hamiltonian path: pick a
/// 2-cut `{x,y}` with trivial bridges through `u` and `v`, straighten the
/// third bridge `B` into a path `P_B` from `x`, and read off `u y v x P_B`.
pub fn to_ham_form(g: &Graph) -> Result<HamForm, ClassError> {
    if !in_K1K2(g)? {
        return Err(ClassError::NotK1K2);
    }
    if g.vertex_count() == 3 {
        return Ok(HamForm { graph: g.clone(), steps: Vec::new(), path: vec![0, 1, 2] });
    }
    let (cut, u, v, big) = two_cuts(g)?
        .into_iter()
        .find_map(|cut| {
            let bs = bridges_of(g, cut).ok()?;
            let trivial: Vec<VertexId> = bs
                .iter()
                .filter(|b| b.is_trivial())
                .map(|b| b.interior.trailing_zeros() as usize)
                .collect();
            if trivial.len() < 2 {
                return None;
            }
            let other = bs.iter().map(|b| b.interior).find(|&i| {
                i != bit(trivial[0]) && i != bit(trivial[1])
            })?;
            Some((cut, trivial[0], trivial[1], other | cut.set()))
        })
        .expect("every larger generalised triangle has such a cut");
    // name the cut so that y has degree 1 in B (P1 guarantees one of them)
    let (x, y) = if (g.neighbourhood(cut.y) & big).count_ones() == 1 {
        (cut.x, cut.y)
    } else {
        (cut.y, cut.x)
    };
    let mut state = Switcher { graph: g.clone(), steps: Vec::new() };
    let pb = state.straighten(x, y, big);
    let mut path = vec![u, y, v];
    path.extend(pb);
    debug_assert!(is_ham_path(&state.graph, &path));
    Ok(HamForm { graph: state.graph, steps: state.steps, path })
}

struct Switcher {
    graph: Graph,
    steps: Vec<SwitchStep>,
}

impl Switcher {
    /// The claim: `bridge` is an `{x,y}`-bridge (vertex set, cut included)
    /// in which `y` has degree 1. Returns a path from `x` through every
    /// vertex of the bridge except `y`.
    fn straighten(&mut self, x: VertexId, y: VertexId, bridge: VertexSet) -> Vec<VertexId> {
        let inner = bridge & !bit(x) & !bit(y);
        if inner.count_ones() == 1 {
            return vec![x, inner.trailing_zeros() as usize];
        }
        let z = (self.graph.neighbourhood(y) & bridge).trailing_zeros() as usize;
        let cut = CutPair::new(x, z);
        let inside: Vec<VertexSet> = bridges_of(&self.graph, cut)
            .expect("{x,z} is a 2-cut")
            .into_iter()
            .map(|b| b.interior)
            .filter(|&i| i & !inner == 0)
            .collect();
        debug_assert_eq!(inside.len(), 2);
        // B'' is a trivial one; B' the other
        let (w_set, b1_inner) = if inside[0].count_ones() == 1 {
            (inside[0], inside[1])
        } else {
            (inside[1], inside[0])
        };
        let w = w_set.trailing_zeros() as usize;
        if (self.graph.neighbourhood(x) & b1_inner).count_ones() != 1 {
            let step = SwitchStep { cut, component: b1_inner };
            self.graph = whitney_switch(&self.graph, step).expect("component of G - {x,z}");
            self.steps.push(step);
        }
        let rest = self.straighten(z, x, b1_inner | cut.set());
        let mut path = vec![x, w];
        path.extend(rest);
        path
    }
}

pub(crate) fn is_ham_path(g: &Graph, path: &[VertexId]) -> bool {
    let covered = path.iter().fold(0, |acc, &v| acc | bit(v));
    path.len() == g.vertex_count()
        && covered == g.vertex_set()
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_polynomial;
    use crate::gentri::fixed_graphs;

    #[test]
    fn path_examples() {
        let p = hamiltonian_path(&Graph::complete(3)).unwrap().unwrap();
        assert!(is_ham_path(&Graph::complete(3), &p));
        let k23 = Graph::complete_bipartite(2, 3);
        assert!(is_ham_path(&k23, &hamiltonian_path(&k23).unwrap().unwrap()));
        assert_eq!(hamiltonian_path(&fixed_graphs().h0), Ok(None));
        assert_eq!(hamiltonian_path(&Graph::complete_bipartite(2, 4)), Ok(None));
        assert!(matches!(hamiltonian_path(&Graph::cycle(22)), Err(ClassError::TooLarge(22, 21))));
    }

    #[test]
    fn ham_form_examples() {
        let k3 = to_ham_form(&Graph::complete(3)).unwrap();
        assert!(k3.steps.is_empty());
        let k23 = Graph::complete_bipartite(2, 3);
        let f = to_ham_form(&k23).unwrap();
        assert!(is_ham_path(&f.graph, &f.path));
        assert_eq!(chromatic_polynomial(&f.graph).poly, chromatic_polynomial(&k23).poly);
        assert_eq!(to_ham_form(&fixed_graphs().h0), Err(ClassError::NotK1K2));
    }
}
