//! 2-cut properties P1/P2, the classes K1 and K2, Whitney 2-switches, the
//! Hamiltonian-path normal form, and the two J-sequences.

mod hamilton;
mod sequences;

pub(crate) use hamilton::is_ham_path;
pub use hamilton::{hamiltonian_path, to_ham_form, HamForm, HAM_LIMIT};
pub use sequences::{j_sequence_k1, j_sequence_k2, j_sequence_k2_embedded, OuterCycleGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gentri::{is_generalised_triangle, GenEdge};
use crate::graph::{
    bridges_of, set_members, structure, two_cuts, CutPair, Graph, GraphError,
    VertexSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a generalised triangle")]
    NotGentri,
    #[error("graph has {0} vertices; the path search allows at most {1}")]
    TooLarge(usize, usize),
    #[error("graph is not in K1 ∩ K2")]
    NotK1K2,
    #[error("{0} is not a component of G minus the cut")]
    BadComponent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CutProperty {
    /// Every bridge has a cut vertex of degree 1 in it.
    P1,
    /// Some bridge is trivial.
    P2,
}

pub fn cut_satisfies(g: &Graph, cut: CutPair, p: CutProperty) -> Result<bool, ClassError> {
    let bridges = bridges_of(g, cut)?;
    Ok(match p {
        CutProperty::P1 => bridges
            .iter()
            .all(|b| b.graph.degree(b.x) == 1 || b.graph.degree(b.y) == 1),
        CutProperty::P2 => bridges.iter().any(|b| b.is_trivial()),
    })
}

fn all_cuts_satisfy(g: &Graph, props: &[CutProperty]) -> Result<bool, ClassError> {
    if !is_generalised_triangle(g) {
        return Err(ClassError::NotGentri);
    }
    if g.vertex_count() == 3 {
        return Ok(true);
    }
    for cut in two_cuts(g)? {
        for &p in props {
            if !cut_satisfies(g, cut, p)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[allow(non_snake_case)]
pub fn in_K1(g: &Graph) -> Result<bool, ClassError> {
    all_cuts_satisfy(g, &[CutProperty::P1])
}

#[allow(non_snake_case)]
pub fn in_K2(g: &Graph) -> Result<bool, ClassError> {
    all_cuts_satisfy(g, &[CutProperty::P2])
}

#[allow(non_snake_case)]
pub fn in_K1K2(g: &Graph) -> Result<bool, ClassError> {
    all_cuts_satisfy(g, &[CutProperty::P1, CutProperty::P2])
}

/// A generalised `uv`-edge has property `p` when every 2-cut lying inside one
/// of its two `{u,v}`-bridges has it. `K2` has every property.
pub fn gen_edge_has_property(e: &GenEdge, p: CutProperty) -> bool {
    let sides: Vec<VertexSet> = e.bridges().iter().map(|b| b.vertex_set()).collect();
    if sides.is_empty() {
        return true;
    }
    two_cuts(&e.graph)
        .expect("generalised edges are 2-connected")
        .into_iter()
        .filter(|c| sides.iter().any(|&s| c.set() & s == c.set()))
        .all(|c| cut_satisfies(&e.graph, c, p).expect("listed cut"))
}

/// Re-attach `component` (a component of `G - cut`) with the roles of the
/// two cut vertices exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchStep {
    pub cut: CutPair,
    pub component: VertexSet,
}

impl SwitchStep {
    pub fn component_vertices(&self) -> Vec<usize> {
        set_members(self.component).collect()
    }
}

pub fn whitney_switch(g: &Graph, step: SwitchStep) -> Result<Graph, ClassError> {
    let SwitchStep { cut, component } = step;
    let n = g.vertex_count();
    if cut.y >= n {
        return Err(GraphError::VertexOutOfRange(cut.y).into());
    }
    let rest = g.vertex_set() & !cut.set();
    let comps = structure::components_within(g, rest);
    if component == 0 || !comps.contains(&component) {
        return Err(ClassError::BadComponent(format!("{:?}", step.component_vertices())));
    }
    let mut h = g.clone();
    for z in set_members(component) {
        let (to_x, to_y) = (g.has_edge(z, cut.x), g.has_edge(z, cut.y));
        if to_x {
            h.remove_edge(z, cut.x)?;
        }
        if to_y {
            h.remove_edge(z, cut.y)?;
        }
        if to_x {
            h.add_edge(z, cut.y)?;
        }
        if to_y {
            h.add_edge(z, cut.x)?;
        }
    }
    Ok(h)
}

/// Every valid switch of `g`: one per (2-cut, component) pair.
pub fn all_switches(g: &Graph) -> Vec<SwitchStep> {
    let Ok(cuts) = two_cuts(g) else { return Vec::new() };
    cuts.into_iter()
        .flat_map(|cut| {
            let rest = g.vertex_set() & !cut.set();
            structure::components_within(g, rest)
                .into_iter()
                .map(move |component| SwitchStep { cut, component })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_polynomial;
    use crate::gentri::{fixed_graphs, is_generalised_edge};
    use crate::graph::{bit, canonical_code};

    #[test]
    fn cut_property_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        let cut = CutPair::new(0, 1);
        assert_eq!(cut_satisfies(&k23, cut, CutProperty::P1), Ok(true));
        assert_eq!(cut_satisfies(&k23, cut, CutProperty::P2), Ok(true));
        assert!(cut_satisfies(&k23, CutPair::new(0, 2), CutProperty::P1).is_err());
        // H0: the three original triangle vertices 0,1,2 each pair with two
        // new vertices; P1 fails at an original pair, P2 holds everywhere
        let h0 = fixed_graphs().h0;
        assert_eq!(cut_satisfies(&h0, CutPair::new(0, 1), CutProperty::P1), Ok(false));
        assert_eq!(cut_satisfies(&h0, CutPair::new(0, 1), CutProperty::P2), Ok(true));
    }

    #[test]
    fn membership_examples() {
        let k3 = Graph::complete(3);
        assert_eq!((in_K1(&k3), in_K2(&k3), in_K1K2(&k3)), (Ok(true), Ok(true), Ok(true)));
        let f = fixed_graphs();
        assert_eq!(in_K1(&f.h0), Ok(false));
        assert_eq!(in_K2(&f.h0), Ok(true));
        assert_eq!(in_K2(&f.h1), Ok(false));
        assert_eq!(in_K2(&f.h2), Ok(false));
        assert_eq!(in_K1(&Graph::cycle(4)), Err(ClassError::NotGentri));
    }

    #[test]
    fn switch_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        let step = SwitchStep { cut: CutPair::new(0, 1), component: bit(2) };
        let s = whitney_switch(&k23, step).unwrap();
        assert_eq!(s, k23);
        let h1 = fixed_graphs().h1;
        for step in all_switches(&h1) {
            let once = whitney_switch(&h1, step).unwrap();
            assert_eq!(whitney_switch(&once, step).unwrap(), h1);
            assert_eq!(chromatic_polynomial(&once).poly, chromatic_polynomial(&h1).poly);
            assert!(is_generalised_triangle(&once));
        }
        let bad = SwitchStep { cut: CutPair::new(0, 1), component: bit(2) | bit(3) };
        assert!(matches!(whitney_switch(&k23, bad), Err(ClassError::BadComponent(_))));
    }

    #[test]
    fn gen_edge_properties() {
        // C4 with a double-subdivided rim edge, terminals 0 and 2
        let g = crate::gentri::double_subdivide(&Graph::cycle(4), 0, 1).unwrap();
        assert!(is_generalised_edge(&g, 0, 2).unwrap());
        let e = GenEdge::new(g, 0, 2).unwrap();
        assert!(gen_edge_has_property(&e, CutProperty::P1));
        let k2 = GenEdge::new(Graph::complete(2), 0, 1).unwrap();
        assert!(gen_edge_has_property(&k2, CutProperty::P2));
        assert_ne!(canonical_code(&e.graph), canonical_code(&k2.graph));
    }
}
