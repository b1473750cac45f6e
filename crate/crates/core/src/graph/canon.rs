//! Canonical labelling by equitable partition refinement and an
//! individualisation search tree.
//!
//! The canonical form is the relabelling whose adjacency rows are
//! lexicographically largest among the leaves of the search tree, after
//! comparing a per-node invariant trace. Automorphisms discovered at leaves
//! (plus transpositions of twin vertices, seeded up front) prune sibling
//! branches in the same orbit of the pointwise stabiliser of the current
//! prefix, and equivalent leaves trigger a jump back to the branching level.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::{bit, graph6_encode, set_members, Graph, VertexId, VertexSet};

/// Byte string identifying an isomorphism class (of coloured graphs when
/// built through [`canonical_code_colored`]).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalCode(bytes)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", String::from_utf8_lossy(&self.0))
    }
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let (form, _) = canonical_form(g);
    CanonicalCode(graph6_encode(&form).into_bytes())
}

/// Canonical code of a vertex-coloured graph. Isomorphisms must preserve each
/// colour; colours are compared by value, so relabelling the colour values
/// monotonically does not change the code.
pub fn canonical_code_colored(g: &Graph, colors: &[u32]) -> CanonicalCode {
    assert_eq!(colors.len(), g.vertex_count());
    let cells = color_cells(colors);
    let perm = Canoniser::new(g, &cells).run();
    let mut bytes = graph6_encode(&g.permuted(&perm)).into_bytes();
    bytes.push(b'|');
    for c in &cells {
        bytes.extend_from_slice(c.count_ones().to_string().as_bytes());
        bytes.push(b',');
    }
    CanonicalCode(bytes)
}

/// Canonically relabelled copy of `g` and the labelling used (`perm[v]` is the
/// new id of `v`).
pub fn canonical_form(g: &Graph) -> (Graph, Vec<VertexId>) {
    let cells = if g.vertex_count() == 0 { vec![] } else { vec![g.vertex_set()] };
    let perm = Canoniser::new(g, &cells).run();
    (g.permuted(&perm), perm)
}

fn color_cells(colors: &[u32]) -> Vec<VertexSet> {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct
        .iter()
        .map(|&c| {
            colors
                .iter()
                .enumerate()
                .filter(|(_, &k)| k == c)
                .fold(0, |acc, (v, _)| acc | bit(v))
        })
        .collect()
}

type Perm = Vec<VertexId>;

#[derive(Clone)]
struct Leaf {
    /// `lab[i]` is the vertex at position `i`.
    lab: Vec<VertexId>,
    rows: Vec<VertexSet>,
    trace: Vec<u64>,
    prefix: Vec<VertexId>,
}

struct Canoniser<'a> {
    g: &'a Graph,
    root: Vec<VertexSet>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
    trace: Vec<u64>,
}

impl<'a> Canoniser<'a> {
    fn new(g: &'a Graph, cells: &[VertexSet]) -> Self {
        let mut root = cells.to_vec();
        refine(g, &mut root);
        let generators = twin_transpositions(g, cells);
        Canoniser { g, root, first: None, best: None, generators, trace: Vec::new() }
    }

    fn run(mut self) -> Perm {
        let n = self.g.vertex_count();
        if n == 0 {
            return Vec::new();
        }
        let root = std::mem::take(&mut self.root);
        let mut prefix = Vec::new();
        self.search(root, &mut prefix, Ordering::Equal);
        let best = self.best.expect("search visits at least one leaf");
        let mut perm = vec![0; n];
        for (pos, &v) in best.lab.iter().enumerate() {
            perm[v] = pos;
        }
        perm
    }

    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn search(&mut self, cells: Vec<VertexSet>, prefix: &mut Vec<VertexId>, mut cmp: Ordering) -> Option<usize> {
        let depth = prefix.len();
        let inv = node_invariant(self.g, &cells);
        self.trace.truncate(depth);
        self.trace.push(inv);
        if cmp == Ordering::Equal {
            if let Some(best) = &self.best {
                cmp = match best.trace.get(depth) {
                    Some(b) => inv.cmp(b),
                    None => Ordering::Greater,
                };
                if cmp == Ordering::Less {
                    return None;
                }
            }
        }

        if cells.len() == self.g.vertex_count() {
            return self.leaf(&cells, prefix, cmp);
        }

        let target_idx = target_cell(&cells);
        let target = cells[target_idx];
        let mut tried: Vec<VertexId> = Vec::new();
        for v in set_members(target) {
            if !tried.is_empty() {
                let orbit_of = self.stabiliser_orbits(prefix);
                if tried.iter().any(|&u| orbit_of[u] == orbit_of[v]) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(bit(v));
            child.push(target & !bit(v));
            child.extend_from_slice(&cells[target_idx + 1..]);
            refine(self.g, &mut child);
            prefix.push(v);
            let jump = self.search(child, prefix, cmp);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[VertexSet], prefix: &[VertexId], mut cmp: Ordering) -> Option<usize> {
        if cmp == Ordering::Equal {
            if let Some(best) = &self.best {
                cmp = self.trace.len().cmp(&best.trace.len());
            }
        }
        let lab: Vec<VertexId> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = relabelled_rows(self.g, &lab);
        let leaf = Leaf { lab, rows, trace: self.trace.clone(), prefix: prefix.to_vec() };

        if self.first.is_none() {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        }

        if let Some(level) = self.try_automorphism(&leaf, true) {
            return Some(level);
        }

        let best = self.best.as_ref().unwrap();
        let better = match cmp {
            Ordering::Greater => true,
            Ordering::Equal => leaf.rows > best.rows,
            Ordering::Less => false,
        };
        if better {
            self.best = Some(leaf);
            return None;
        }
        if cmp == Ordering::Equal && leaf.rows == best.rows {
            return self.try_automorphism(&leaf, false);
        }
        None
    }

    /// Compares `leaf` with the first (or best) leaf. On an equal relabelled
    /// graph, records the automorphism; if it also maps the reference path
    /// onto the current path, returns the depth of their common ancestor.
    fn try_automorphism(&mut self, leaf: &Leaf, against_first: bool) -> Option<usize> {
        let reference = if against_first { self.first.as_ref()? } else { self.best.as_ref()? };
        if reference.rows != leaf.rows {
            return None;
        }
        let n = leaf.lab.len();
        let mut gamma = vec![0; n];
        for i in 0..n {
            gamma[reference.lab[i]] = leaf.lab[i];
        }
        let maps_path = reference.prefix.len() == leaf.prefix.len()
            && reference.prefix.iter().zip(&leaf.prefix).all(|(&a, &b)| gamma[a] == b);
        let common = reference.prefix.iter().zip(&leaf.prefix).take_while(|(a, b)| a == b).count();
        if gamma.iter().enumerate().any(|(i, &j)| i != j) {
            self.generators.push(gamma);
        }
        if maps_path && common < leaf.prefix.len() {
            Some(common)
        } else {
            None
        }
    }

    /// Orbit representative of each vertex under the group generated by the
    /// known automorphisms that fix `prefix` pointwise.
    fn stabiliser_orbits(&self, prefix: &[VertexId]) -> Vec<VertexId> {
        let n = self.g.vertex_count();
        let mut parent: Vec<VertexId> = (0..n).collect();
        fn find(p: &mut [VertexId], mut x: VertexId) -> VertexId {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.generators {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (v, &w) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

fn relabelled_rows(g: &Graph, lab: &[VertexId]) -> Vec<VertexSet> {
    let n = lab.len();
    let mut pos = vec![0; n];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    lab.iter()
        .map(|&v| set_members(g.neighbourhood(v)).fold(0, |acc, w| acc | bit(pos[w])))
        .collect()
}

/// First smallest non-singleton cell.
fn target_cell(cells: &[VertexSet]) -> usize {
    let mut best = usize::MAX;
    let mut idx = 0;
    for (i, c) in cells.iter().enumerate() {
        let k = c.count_ones() as usize;
        if k > 1 && k < best {
            best = k;
            idx = i;
        }
    }
    idx
}

/// Cell sizes and the quotient degree matrix of an equitable partition.
fn node_invariant(g: &Graph, cells: &[VertexSet]) -> u64 {
    let mut h = DefaultHasher::new();
    cells.len().hash(&mut h);
    for c in cells {
        c.count_ones().hash(&mut h);
        let rep = c.trailing_zeros() as usize;
        let row = g.neighbourhood(rep);
        for d in cells {
            (row & d).count_ones().hash(&mut h);
        }
    }
    h.finish()
}

/// Refines an ordered partition to the coarsest equitable refinement. Each
/// cell is split in place into fragments ordered by neighbour count into the
/// splitter; every new fragment is queued as a further splitter.
fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    let mut queue: Vec<VertexSet> = cells.iter().rev().copied().collect();
    let mut counts: Vec<(u32, VertexId)> = Vec::new();
    while let Some(splitter) = queue.pop() {
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            counts.clear();
            counts.extend(set_members(cell).map(|v| ((g.neighbourhood(v) & splitter).count_ones(), v)));
            let first = counts[0].0;
            if counts.iter().all(|&(c, _)| c == first) {
                i += 1;
                continue;
            }
            counts.sort_unstable();
            let mut frags: Vec<VertexSet> = Vec::new();
            let mut cur = 0;
            let mut cur_count = counts[0].0;
            for &(c, v) in counts.iter() {
                if c != cur_count {
                    frags.push(cur);
                    cur = 0;
                    cur_count = c;
                }
                cur |= bit(v);
            }
            frags.push(cur);
            let k = frags.len();
            for f in frags.iter().rev() {
                queue.push(*f);
            }
            cells.splice(i..=i, frags);
            i += k;
        }
    }
}

/// Transpositions swapping twin vertices of equal colour class.
fn twin_transpositions(g: &Graph, cells: &[VertexSet]) -> Vec<Perm> {
    let n = g.vertex_count();
    let cell_of = |v: VertexId| cells.iter().position(|c| c & bit(v) != 0);
    let mut out = Vec::new();
    let mut assigned: VertexSet = 0;
    for u in 0..n {
        if assigned & bit(u) != 0 {
            continue;
        }
        for v in u + 1..n {
            if assigned & bit(v) != 0 {
                continue;
            }
            let nu = g.neighbourhood(u) & !bit(v);
            let nv = g.neighbourhood(v) & !bit(u);
            if nu == nv && cell_of(u) == cell_of(v) {
                let mut p: Perm = (0..n).collect();
                p.swap(u, v);
                out.push(p);
                assigned |= bit(v);
            }
        }
    }
    out
}
