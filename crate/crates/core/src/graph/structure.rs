use serde::{Deserialize, Serialize};

use super::{bit, set_members, Graph, GraphError, VertexId, VertexSet};

/// Vertex connectivity capped at three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Disconnected = 0,
    One = 1,
    Two = 2,
    ThreePlus = 3,
}

impl Connectivity {
    fn from_level(k: usize) -> Self {
        match k {
            0 => Connectivity::Disconnected,
            1 => Connectivity::One,
            2 => Connectivity::Two,
            _ => Connectivity::ThreePlus,
        }
    }

    pub fn level(self) -> usize {
        self as usize
    }
}

/// An unordered pair of distinct vertices, stored with `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutPair {
    pub x: VertexId,
    pub y: VertexId,
}

impl CutPair {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "cut pair needs two distinct vertices");
        CutPair { x: a.min(b), y: a.max(b) }
    }

    pub fn set(self) -> VertexSet {
        bit(self.x) | bit(self.y)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.x == v || self.y == v
    }

    /// The member of the pair that is not `v`.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.x == v {
            self.y
        } else {
            self.x
        }
    }
}

/// An `{x,y}`-bridge: one component of `G - {x,y}` together with `x` and `y`.
///
/// The bridge graph is induced on `interior ∪ {x,y}` without the edge `xy`,
/// so the bridges of a cut partition the edges of `G - xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub host_cut: CutPair,
    pub graph: Graph,
    /// Local id -> host id.
    pub host_ids: Vec<VertexId>,
    /// Local ids of the cut vertices.
    pub x: VertexId,
    pub y: VertexId,
    /// Host ids of the component, as a set.
    pub interior: VertexSet,
}

impl Bridge {
    pub fn is_trivial(&self) -> bool {
        self.graph.vertex_count() == 3
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.interior | self.host_cut.set()
    }

    /// Degree of host vertex `v` inside the bridge.
    pub fn host_degree(&self, v: VertexId) -> usize {
        let local = self.host_ids.iter().position(|&h| h == v).expect("vertex not in bridge");
        self.graph.degree(local)
    }
}

/// Whether the subgraph induced on `mask` is connected. The empty set counts
/// as connected.
pub(crate) fn is_connected_within(g: &Graph, mask: VertexSet) -> bool {
    if mask == 0 {
        return true;
    }
    reach(g, mask, mask.trailing_zeros() as usize) == mask
}

/// Vertices of `mask` reachable from `start` inside `mask`.
pub(crate) fn reach(g: &Graph, mask: VertexSet, start: VertexId) -> VertexSet {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in set_members(frontier) {
            next |= g.neighbourhood(v);
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Components of the subgraph induced on `mask`, ordered by smallest member.
pub(crate) fn components_within(g: &Graph, mask: VertexSet) -> Vec<VertexSet> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let c = reach(g, rest, rest.trailing_zeros() as usize);
        out.push(c);
        rest &= !c;
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    is_connected_within(g, g.vertex_set())
}

/// Connected components as vertex sets, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, g.vertex_set())
}

/// Vertex connectivity capped at 3, by exhaustive deletion of vertex sets of
/// size one and two. Complete graphs report `min(n - 1, 3)`.
pub fn connectivity_level(g: &Graph) -> Result<Connectivity, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if !is_connected(g) {
        return Ok(Connectivity::Disconnected);
    }
    let all = g.vertex_set();
    if n >= 3 && g.vertices().any(|v| !is_connected_within(g, all & !bit(v))) {
        return Ok(Connectivity::One);
    }
    if n >= 4 && has_separating_pair(g) {
        return Ok(Connectivity::Two);
    }
    Ok(Connectivity::from_level((n - 1).min(3)))
}

fn has_separating_pair(g: &Graph) -> bool {
    let all = g.vertex_set();
    let n = g.vertex_count();
    (0..n).any(|x| (x + 1..n).any(|y| !is_connected_within(g, all & !bit(x) & !bit(y))))
}

pub(crate) fn is_two_connected(g: &Graph) -> bool {
    matches!(connectivity_level(g), Ok(Connectivity::Two | Connectivity::ThreePlus))
}

/// All 2-cuts of a 2-connected graph, lexicographically ordered.
pub fn two_cuts(g: &Graph) -> Result<Vec<CutPair>, GraphError> {
    if !is_two_connected(g) {
        return Err(GraphError::NotTwoConnected);
    }
    let all = g.vertex_set();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if !is_connected_within(g, all & !bit(x) & !bit(y)) {
                out.push(CutPair { x, y });
            }
        }
    }
    Ok(out)
}

/// Whether removing the pair disconnects `g`.
pub(crate) fn separates(g: &Graph, cut: CutPair) -> bool {
    cut.y < g.vertex_count()
        && cut.x != cut.y
        && !is_connected_within(g, g.vertex_set() & !cut.set())
}

/// The bridges of `cut`, one per component of `g - {x,y}`, ordered by the
/// smallest interior vertex.
pub fn bridges_of(g: &Graph, cut: CutPair) -> Result<Vec<Bridge>, GraphError> {
    if !separates(g, cut) {
        return Err(GraphError::NotATwoCut(cut.x, cut.y));
    }
    let rest = g.vertex_set() & !cut.set();
    Ok(components_within(g, rest).into_iter().map(|c| make_bridge(g, cut, c)).collect())
}

pub(crate) fn make_bridge(g: &Graph, cut: CutPair, interior: VertexSet) -> Bridge {
    let (mut graph, host_ids) = g.induced(interior | cut.set());
    let x = host_ids.iter().position(|&h| h == cut.x).unwrap();
    let y = host_ids.iter().position(|&h| h == cut.y).unwrap();
    if graph.has_edge(x, y) {
        graph.remove_edge(x, y).unwrap();
    }
    Bridge { host_cut: cut, graph, host_ids, x, y, interior }
}

/// Articulation vertices of a connected graph, ascending.
pub fn cut_vertices(g: &Graph) -> Result<Vec<VertexId>, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    if !is_connected(g) {
        return Err(GraphError::NotConnected);
    }
    let all = g.vertex_set();
    Ok(g.vertices().filter(|&v| !is_connected_within(g, all & !bit(v))).collect())
}
