//! Generalised triangles and generalised edges: construction, recognition,
//! enumeration, and minor testing through the double-subdivision order.

mod enumerate;
mod minor;

pub use enumerate::{enumerate_gentri, enumerate_gentri_levels};
pub use minor::{
    brute_minor, downset, poset_minor, poset_minor_witness, reverse_steps, WitnessStep, ORACLE_LIMIT,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    bit, bridges_of, canonical_code_colored, connectivity_level, structure, two_cuts, CanonicalCode,
    Connectivity, CutPair, Graph, GraphError, VertexId,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GentriError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("n_max must be odd and at least 3, got {0}")]
    BadBound(usize),
    #[error("{0} is not a generalised triangle")]
    NotGentri(&'static str),
    #[error("oracle limit: host has {0} vertices, at most {1} allowed")]
    OracleLimit(usize, usize),
    #[error("terminals must be distinct")]
    SameTerminal,
    #[error("not a generalised edge with these terminals")]
    NotGenEdge,
}

/// Removes `uv` and adds two new vertices (ids `n` and `n+1`) joined to both
/// `u` and `v`.
pub fn double_subdivide(g: &Graph, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v));
    }
    let mut h = g.without_edge(u, v)?;
    for _ in 0..2 {
        let w = h.add_vertex()?;
        h.add_edge(w, u)?;
        h.add_edge(w, v)?;
    }
    Ok(h)
}

/// A construction of a generalised triangle from `K3`: replaying `steps`
/// gives a graph which `labels` maps onto the original (`labels[r]` is the
/// original id of replayed vertex `r`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentriTrace {
    pub steps: Vec<(VertexId, VertexId)>,
    pub labels: Vec<VertexId>,
}

impl GentriTrace {
    pub fn replay(&self) -> Result<Graph, GraphError> {
        self.steps
            .iter()
            .try_fold(Graph::complete(3), |g, &(u, v)| double_subdivide(&g, u, v))
    }

    /// Recovers a construction by repeatedly undoing double subdivisions.
    pub fn of(g: &Graph) -> Result<GentriTrace, GentriError> {
        if !is_generalised_triangle(g) {
            return Err(GentriError::NotGentri("input"));
        }
        // backward pass: (removed pair, cut in the reduced graph, id map)
        let mut undo = Vec::new();
        let mut cur = g.clone();
        while cur.vertex_count() > 3 {
            let (reduced, cut, ids, removed) =
                minor::reverse_step_detail(&cur).into_iter().next().expect("gentri reduces");
            undo.push((removed, cut, ids));
            cur = reduced;
        }
        let mut labels: Vec<VertexId> = (0..3).collect();
        let mut steps = Vec::with_capacity(undo.len());
        for (removed, cut, ids) in undo.into_iter().rev() {
            let pos = |x: VertexId| labels.iter().position(|&l| l == x).unwrap();
            steps.push((pos(cut.x), pos(cut.y)));
            labels = labels.iter().map(|&l| ids[l]).collect();
            labels.extend(removed);
        }
        Ok(GentriTrace { steps, labels })
    }
}

/// Structural test: `K3`, or 2-connected but not 3-connected with every
/// 2-cut non-adjacent and splitting into exactly three bridges, none of them
/// 2-connected.
pub fn is_generalised_triangle(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 3 {
        return g.is_complete();
    }
    if n < 5 || n % 2 == 0 || g.edge_count() != 3 + 3 * (n - 3) / 2 {
        return false;
    }
    if connectivity_level(g) != Ok(Connectivity::Two) {
        return false;
    }
    let cuts = two_cuts(g).expect("2-connected");
    cuts.into_iter().all(|cut| {
        if g.has_edge(cut.x, cut.y) {
            return false;
        }
        let bridges = bridges_of(g, cut).expect("cut from two_cuts");
        bridges.len() == 3 && bridges.iter().all(|b| !structure::is_two_connected(&b.graph))
    })
}

/// `H0`, `H1`, `H2`.
#[derive(Clone, Debug)]
pub struct FixedGraphs {
    pub h0: Graph,
    pub h1: Graph,
    pub h2: Graph,
}

/// `H0` double-subdivides every edge of `K3`. `H1` and `H2` start from
/// `K_{2,3}` with parts `{x,y}`, `{u,v,w}`: `H1` double-subdivides the three
/// edges at `x`, `H2` the edges `xu`, `xv` and `yw`.
pub fn fixed_graphs() -> FixedGraphs {
    let sub_all = |g: Graph, edges: &[(VertexId, VertexId)]| {
        edges.iter().fold(g, |acc, &(a, b)| double_subdivide(&acc, a, b).unwrap())
    };
    let h0 = sub_all(Graph::complete(3), &[(0, 1), (1, 2), (0, 2)]);
    // K_{2,3}: x = 0, y = 1, u = 2, v = 3, w = 4
    let k23 = Graph::complete_bipartite(2, 3);
    let h1 = sub_all(k23.clone(), &[(0, 2), (0, 3), (0, 4)]);
    let h2 = sub_all(k23, &[(0, 2), (0, 3), (1, 4)]);
    FixedGraphs { h0, h1, h2 }
}

/// A generalised `uv`-edge: `K2` on the terminals or a graph reachable from
/// it by double subdivisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenEdge {
    pub graph: Graph,
    pub u: VertexId,
    pub v: VertexId,
}

impl GenEdge {
    pub fn new(graph: Graph, u: VertexId, v: VertexId) -> Result<Self, GentriError> {
        if is_generalised_edge(&graph, u, v)? {
            Ok(GenEdge { graph, u, v })
        } else {
            Err(GentriError::NotGenEdge)
        }
    }

    pub fn is_single_edge(&self) -> bool {
        self.graph.vertex_count() == 2
    }

    /// The two `{u,v}`-bridges, or nothing for `K2`.
    pub fn bridges(&self) -> Vec<crate::graph::Bridge> {
        if self.is_single_edge() {
            return Vec::new();
        }
        bridges_of(&self.graph, CutPair::new(self.u, self.v)).expect("terminals form a 2-cut")
    }
}

fn terminal_code(g: &Graph, u: VertexId, v: VertexId) -> CanonicalCode {
    let colors: Vec<u32> = g.vertices().map(|w| (w == u || w == v) as u32).collect();
    canonical_code_colored(g, &colors)
}

/// Backward search to `K2`, undoing double subdivisions that avoid the
/// terminals.
pub fn is_generalised_edge(g: &Graph, u: VertexId, v: VertexId) -> Result<bool, GentriError> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(GraphError::VertexOutOfRange(u.max(v)).into());
    }
    if u == v {
        return Err(GentriError::SameTerminal);
    }
    let mut failed = HashSet::new();
    Ok(gen_edge_search(g, u, v, &mut failed))
}

fn gen_edge_search(g: &Graph, u: VertexId, v: VertexId, failed: &mut HashSet<CanonicalCode>) -> bool {
    let n = g.vertex_count();
    if n == 2 {
        return g.has_edge(u, v);
    }
    if n % 2 == 1 || g.edge_count() != 1 + 3 * (n - 2) / 2 || g.has_edge(u, v) {
        return false;
    }
    let code = terminal_code(g, u, v);
    if failed.contains(&code) {
        return false;
    }
    let terminals = bit(u) | bit(v);
    let twos: Vec<VertexId> =
        g.vertices().filter(|&x| bit(x) & terminals == 0 && g.degree(x) == 2).collect();
    let mut tried = HashSet::new();
    for (i, &x) in twos.iter().enumerate() {
        let nx = g.neighbourhood(x);
        if !tried.insert(nx) {
            continue;
        }
        let Some(&y) = twos[i + 1..].iter().find(|&&y| g.neighbourhood(y) == nx) else {
            continue;
        };
        let mut ends = crate::graph::set_members(nx);
        let (a, b) = (ends.next().unwrap(), ends.next().unwrap());
        if g.has_edge(a, b) {
            continue;
        }
        let (mut h, ids) = g.remove_vertices(bit(x) | bit(y));
        let pos = |w: VertexId| ids.iter().position(|&o| o == w).unwrap();
        h.add_edge(pos(a), pos(b)).unwrap();
        if gen_edge_search(&h, pos(u), pos(v), failed) {
            return true;
        }
    }
    failed.insert(code);
    false
}
