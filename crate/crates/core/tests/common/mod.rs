//! Independent oracles shared by the integration tests. None of them calls
//! into the engine code they are checking.
#![allow(dead_code)]

use std::collections::HashMap;

use chromaroot::graph::Graph;
use chromaroot::poly::{IntPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Isomorphism by trying every bijection (with degree pruning).
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (aa, bb) = (adj(a), adj(b));
    fn go(i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, aa: &[Vec<bool>], bb: &[Vec<bool>], a: &Graph, b: &Graph) -> bool {
        let n = aa.len();
        if i == n {
            return true;
        }
        for x in 0..n {
            if used[x] || a.degree(i) != b.degree(x) {
                continue;
            }
            if (0..i).all(|j| aa[i][j] == bb[x][map[j]]) {
                map.push(x);
                used[x] = true;
                if go(i + 1, map, used, aa, bb, a, b) {
                    return true;
                }
                used[x] = false;
                map.pop();
            }
        }
        false
    }
    go(0, &mut Vec::new(), &mut vec![false; n], &aa, &bb, a, b)
}

fn connected_without(g: &Graph, drop: &[usize]) -> bool {
    let n = g.vertex_count();
    let alive: Vec<usize> = (0..n).filter(|v| !drop.contains(v)).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && !drop.contains(&v) && g.has_edge(u, v) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

pub fn oracle_connected(g: &Graph) -> bool {
    connected_without(g, &[])
}

/// Vertex pairs whose deletion disconnects the graph, lexicographic.
pub fn oracle_two_cuts(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if !connected_without(g, &[x, y]) {
                out.push((x, y));
            }
        }
    }
    out
}

pub fn oracle_two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && oracle_connected(g) && (0..g.vertex_count()).all(|v| connected_without(g, &[v]))
}

/// Number of proper colourings with `t` colours, by sweeping the vertices
/// in breadth-first order and tracking only which still-active vertices
/// share a colour (colours are interchangeable).
pub fn colourings(g: &Graph, t: u64) -> u128 {
    let n = g.vertex_count();
    if n == 0 {
        return 1;
    }
    let order = bfs_order(g);
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    // last position among a vertex's neighbours (and itself)
    let last: Vec<usize> =
        (0..n).map(|v| g.neighbours(v).map(|w| pos[w]).chain([pos[v]]).max().unwrap()).collect();
    // state: (active vertices, class label of each) -> count
    let mut states: HashMap<(Vec<usize>, Vec<u8>), u128> = HashMap::new();
    states.insert((Vec::new(), Vec::new()), 1);
    for (i, &v) in order.iter().enumerate() {
        let mut next: HashMap<(Vec<usize>, Vec<u8>), u128> = HashMap::new();
        for ((active, labels), count) in states {
            let classes = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
            let mut options: Vec<(u8, u128)> = Vec::new();
            for c in 0..classes as u8 {
                let clash = active.iter().zip(&labels).any(|(&w, &l)| l == c && g.has_edge(v, w));
                if !clash {
                    options.push((c, 1));
                }
            }
            if (t as usize) > classes {
                options.push((classes as u8, (t as usize - classes) as u128));
            }
            for (c, ways) in options {
                let mut act = active.clone();
                let mut lab = labels.clone();
                act.push(v);
                lab.push(c);
                let keep: Vec<bool> = act.iter().map(|&w| last[w] > i).collect();
                let act: Vec<usize> = act.iter().zip(&keep).filter(|(_, k)| **k).map(|(w, _)| *w).collect();
                let lab: Vec<u8> = lab.iter().zip(&keep).filter(|(_, k)| **k).map(|(l, _)| *l).collect();
                let lab = relabel(&lab);
                *next.entry((act, lab)).or_insert(0) += count * ways;
            }
        }
        states = next;
    }
    states.values().sum()
}

fn relabel(labels: &[u8]) -> Vec<u8> {
    let mut map: HashMap<u8, u8> = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let k = map.len() as u8;
            *map.entry(*l).or_insert(k)
        })
        .collect()
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in g.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Coefficients (ascending) of the degree-`n` polynomial through
/// `(k, values[k])` for `k = 0..=n`.
pub fn lagrange(values: &[BigInt]) -> IntPoly {
    let n = values.len();
    let mut acc = vec![Rational::zero(); n];
    for (k, yk) in values.iter().enumerate() {
        // basis polynomial prod_{j != k} (t - j) / (k - j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * Rational::from_integer(BigInt::from(j));
            }
            basis = next;
            denom *= Rational::from_integer(BigInt::from(k as i64 - j as i64));
        }
        for (i, c) in basis.iter().enumerate() {
            acc[i] += c * Rational::from_integer(yk.clone()) / &denom;
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolant has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

/// Chromatic polynomial from colouring counts at `t = 0..=n`.
pub fn interpolated_chromatic(g: &Graph) -> IntPoly {
    let n = g.vertex_count();
    let values: Vec<BigInt> = (0..=n as u64).map(|t| BigInt::from(colourings(g, t))).collect();
    lagrange(&values)
}

/// Minor test by exhaustive deletion and contraction, for tiny graphs.
pub fn naive_minor(h: &Graph, g: &Graph) -> bool {
    let mut seen = std::collections::HashSet::new();
    naive_minor_rec(h, g, &mut seen)
}

fn naive_minor_rec(h: &Graph, g: &Graph, seen: &mut std::collections::HashSet<String>) -> bool {
    if g.vertex_count() < h.vertex_count() || g.edge_count() < h.edge_count() {
        return false;
    }
    if !seen.insert(chromaroot::graph::graph6_encode(g)) {
        return false;
    }
    if g.vertex_count() == h.vertex_count() && contains_spanning(h, g) {
        return true;
    }
    for (u, v) in g.edges() {
        if naive_minor_rec(h, &g.without_edge(u, v).unwrap(), seen)
            || naive_minor_rec(h, &g.contract(u, v).unwrap(), seen)
        {
            return true;
        }
    }
    for v in 0..g.vertex_count() {
        if naive_minor_rec(h, &g.remove_vertices(1u128 << v).0, seen) {
            return true;
        }
    }
    false
}

/// Some bijection maps every edge of `h` onto an edge of `g`.
fn contains_spanning(h: &Graph, g: &Graph) -> bool {
    let n = h.vertex_count();
    fn go(i: usize, map: &mut Vec<usize>, used: &mut [bool], h: &Graph, g: &Graph) -> bool {
        if i == h.vertex_count() {
            return true;
        }
        for x in 0..g.vertex_count() {
            if !used[x] && (0..i).all(|j| !h.has_edge(i, j) || g.has_edge(x, map[j])) {
                used[x] = true;
                map.push(x);
                if go(i + 1, map, used, h, g) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    go(0, &mut Vec::new(), &mut vec![false; n], h, g)
}
