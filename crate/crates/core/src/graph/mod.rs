//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as one `u128` row per vertex, so graphs are limited to
//! [`MAX_VERTICES`] vertices. Every operation that removes or merges vertices
//! re-packs the labels and, where the caller needs it, returns the mapping
//! back to the original ids.

mod canon;
mod graph6;
pub(crate) mod structure;

pub mod atlas;

pub use canon::{canonical_code, canonical_code_colored, canonical_form, CanonicalCode};
pub use graph6::{graph6_decode, graph6_encode, read_graph6_lines, Graph6Error};
pub use structure::{
    bridges_of, components, connectivity_level, cut_vertices, is_connected, two_cuts, Bridge,
    Connectivity, CutPair,
};

use std::fmt;

use thiserror::Error;

/// Vertex identifier. Always a dense index into the owning graph.
pub type VertexId = usize;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 128;

/// Bit set over vertex ids.
pub type VertexSet = u128;

#[inline]
pub(crate) fn bit(v: VertexId) -> VertexSet {
    1u128 << v
}

#[inline]
pub(crate) fn full_set(n: usize) -> VertexSet {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the members of a vertex set in increasing order.
pub fn set_members(mut set: VertexSet) -> impl Iterator<Item = VertexId> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("empty input")]
    Empty,
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("requires connected graph")]
    NotConnected,
    #[error("requires 2-connected graph")]
    NotTwoConnected,
    #[error("{{{0},{1}}} is not a 2-cut")]
    NotATwoCut(VertexId, VertexId),
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let full = full_set(n);
        Graph { adj: (0..n).map(|v| full & !bit(v)).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("cycle too large");
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).expect("cycle needs n >= 3");
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("path too large");
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b).expect("bipartite graph too large");
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.adj.len())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for v in set_members(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.adj.len() && v < self.adj.len() && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbourhood(&self, v: VertexId) -> VertexSet {
        self.adj[v]
    }

    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        set_members(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count_ones() as usize
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let fresh = self.adj[u] & bit(v) == 0;
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    /// Appends a new isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Result<VertexId, GraphError> {
        if self.adj.len() == MAX_VERTICES {
            return Err(GraphError::TooLarge(MAX_VERTICES + 1));
        }
        self.adj.push(0);
        Ok(self.adj.len() - 1)
    }

    /// Subgraph induced on `keep`, re-packed. The returned vector maps each new
    /// id to the id it had in `self`.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Vec<VertexId>) {
        let keep = keep & self.vertex_set();
        let old: Vec<VertexId> = set_members(keep).collect();
        let mut adj = Vec::with_capacity(old.len());
        for &u in &old {
            adj.push(pack_set(self.adj[u] & keep, keep));
        }
        (Graph { adj }, old)
    }

    pub fn remove_vertices(&self, drop: VertexSet) -> (Graph, Vec<VertexId>) {
        self.induced(self.vertex_set() & !drop)
    }

    /// Identifies `u` and `v` (which need not be adjacent), dropping loops and
    /// parallel edges. The merged vertex keeps the smaller id; labels above
    /// the removed one shift down by one.
    pub fn contract(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let mut g = self.clone();
        let merged = (g.adj[keep] | g.adj[gone]) & !bit(keep) & !bit(gone);
        for w in set_members(g.adj[gone]) {
            g.adj[w] &= !bit(gone);
        }
        g.adj[gone] = 0;
        g.adj[keep] = merged;
        for w in set_members(merged) {
            g.adj[w] |= bit(keep);
        }
        Ok(g.remove_vertices(bit(gone)).0)
    }

    /// Applies a relabelling: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Graph {
        let n = self.adj.len();
        let mut adj = vec![0; n];
        for u in 0..n {
            for w in set_members(self.adj[u]) {
                adj[perm[u]] |= bit(perm[w]);
            }
        }
        Graph { adj }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.vertex_count() + other.vertex_count();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << shift));
        Ok(Graph { adj })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.adj.len();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

/// Compresses the bits of `set` selected by `mask` into the low bits.
fn pack_set(set: VertexSet, mask: VertexSet) -> VertexSet {
    let mut out = 0;
    for (i, v) in set_members(mask).enumerate() {
        if set & bit(v) != 0 {
            out |= bit(i);
        }
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6_encode(self))
    }
}
