use crate::gentri::double_subdivide;
use crate::graph::{bit, bridges_of, two_cuts, Graph, VertexId, VertexSet};

/// `J_0 = K3` with marked vertex 0; `J_i` double-subdivides every edge of
/// `J_(i-1)` at the marked vertex.
pub fn j_sequence_k1(i: usize) -> Graph {
    let mut g = Graph::complete(3);
    for _ in 0..i {
        let at_x: Vec<VertexId> = g.neighbours(0).collect();
        for w in at_x {
            g = double_subdivide(&g, 0, w).expect("edge at the marked vertex");
        }
    }
    g
}

/// A graph with an explicit outer cycle (cyclic vertex order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterCycleGraph {
    pub graph: Graph,
    pub outer: Vec<VertexId>,
}

impl OuterCycleGraph {
    pub fn outer_set(&self) -> VertexSet {
        self.outer.iter().fold(0, |acc, &v| acc | bit(v))
    }

    /// Every 2-cut has a trivial bridge whose middle vertex is off the outer
    /// cycle, i.e. inside it.
    pub fn every_cut_has_inner_trivial_bridge(&self) -> bool {
        let Ok(cuts) = two_cuts(&self.graph) else { return self.graph.vertex_count() == 3 };
        let outer = self.outer_set();
        cuts.into_iter().all(|cut| {
            bridges_of(&self.graph, cut)
                .expect("listed cut")
                .iter()
                .any(|b| b.is_trivial() && b.interior & outer == 0)
        })
    }
}

/// `J_0 = K3` with all edges outer; `J_i` double-subdivides every outer edge
/// `ab` of `J_(i-1)`. The first new vertex joins the outer cycle between `a`
/// and `b`; the second lies inside.
pub fn j_sequence_k2_embedded(i: usize) -> OuterCycleGraph {
    let mut g = Graph::complete(3);
    let mut outer = vec![0, 1, 2];
    for _ in 0..i {
        let mut next = Vec::with_capacity(outer.len() * 2);
        for k in 0..outer.len() {
            let (a, b) = (outer[k], outer[(k + 1) % outer.len()]);
            let p = g.vertex_count();
            g = double_subdivide(&g, a, b).expect("outer edge");
            next.push(a);
            next.push(p);
        }
        outer = next;
    }
    OuterCycleGraph { graph: g, outer }
}

pub fn j_sequence_k2(i: usize) -> Graph {
    j_sequence_k2_embedded(i).graph
}
