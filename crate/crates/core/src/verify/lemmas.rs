use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use super::{Check, ConstantsTable, Report, TGrid, VerifyError, Witness};
use crate::chromatic::shared_engine;
use crate::classes::{gen_edge_has_property, in_K1, in_K2, CutProperty};
use crate::gentri::{enumerate_gentri, GenEdge};
use crate::graph::{bit, canonical_code_colored, graph6_encode, CanonicalCode, Graph, VertexId};
use crate::poly::{rat, IntPoly, Rational};

/// Generalised edges with property `p`, up to terminal-preserving
/// isomorphism: `K2` and every `G - v` for a generalised triangle `G` in
/// `triangles` and a degree-2 vertex `v` (terminals: the neighbours of `v`).
/// Given all triangles up to `n`, this is every generalised edge up to
/// `n - 1` vertices.
pub fn gen_edge_pool(triangles: &[Graph], p: CutProperty) -> Vec<GenEdge> {
    let k2 = GenEdge { graph: Graph::complete(2), u: 0, v: 1 };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    for e in std::iter::once(k2).chain(triangles.iter().flat_map(edges_of_triangle)) {
        let colors: Vec<u32> = e.graph.vertices().map(|w| (w == e.u || w == e.v) as u32).collect();
        if seen.insert(canonical_code_colored(&e.graph, &colors)) && gen_edge_has_property(&e, p) {
            out.push(e);
        }
    }
    out
}

fn edges_of_triangle(g: &Graph) -> Vec<GenEdge> {
    g.vertices()
        .filter(|&v| g.degree(v) == 2)
        .map(|v| {
            let mut nb = g.neighbours(v);
            let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
            let (h, ids) = g.remove_vertices(bit(v));
            let pos = |x: VertexId| ids.iter().position(|&y| y == x).unwrap();
            GenEdge { graph: h, u: pos(a), v: pos(b) }
        })
        .collect()
}

/// Identifies vertex `b_i` of `b` with `a_i` of `a` for each listed pair.
/// Returns the union and the new id of every vertex of `b`.
fn glue(a: &Graph, b: &Graph, pairs: &[(VertexId, VertexId)]) -> (Graph, Vec<VertexId>) {
    let mut next = a.vertex_count();
    let map: Vec<VertexId> = b
        .vertices()
        .map(|w| match pairs.iter().find(|&&(_, bw)| bw == w) {
            Some(&(aw, _)) => aw,
            None => {
                next += 1;
                next - 1
            }
        })
        .collect();
    let mut g = a.clone();
    for _ in a.vertex_count()..next {
        g.add_vertex().expect("glued graphs stay small");
    }
    for (x, y) in b.edges() {
        g.add_edge(map[x], map[y]).expect("ids in range");
    }
    (g, map)
}

/// Right-hand side multiplier of an inequality clause.
#[derive(Clone, Debug)]
enum Coef {
    Const(Rational),
    OverT(Rational),
}

impl Coef {
    fn at(&self, t: &Rational) -> Rational {
        match self {
            Coef::Const(c) => c.clone(),
            Coef::OverT(c) => c / t,
        }
    }
}

#[derive(Clone, Debug)]
enum Claim {
    /// `Q(lhs) >= coef * rhs`, where `rhs` is already a product of Q's.
    AtLeast { lhs: Graph, coef: Coef, rhs: Vec<Graph> },
    Positive(Graph),
}

struct Instance {
    clause: &'static str,
    label: String,
    claim: Claim,
}

fn q_poly(g: &Graph) -> IntPoly {
    shared_engine().chromatic(g).q_poly()
}

/// First grid sample violating the claim.
fn first_violation(claim: &Claim, grid: &TGrid) -> Option<Rational> {
    match claim {
        Claim::Positive(g) => {
            let q = q_poly(g);
            grid.samples.iter().find(|t| q.eval(t) <= Rational::zero()).cloned()
        }
        Claim::AtLeast { lhs, coef, rhs } => {
            let l = q_poly(lhs);
            let r = rhs.iter().fold(IntPoly::one(), |acc, g| &acc * &q_poly(g));
            grid.samples.iter().find(|t| l.eval(t) < coef.at(t) * r.eval(t)).cloned()
        }
    }
}

fn run_clauses(title: &str, clauses: &[(&'static str, &str)], instances: Vec<Instance>, grid: &TGrid) -> Vec<Check> {
    let outcomes: Vec<Option<Rational>> = instances.par_iter().map(|i| first_violation(&i.claim, grid)).collect();
    clauses
        .iter()
        .map(|&(clause, text)| {
            let mine: Vec<(&Instance, &Option<Rational>)> =
                instances.iter().zip(&outcomes).filter(|(i, _)| i.clause == clause).collect();
            let violations = mine.iter().filter(|(_, o)| o.is_some()).count();
            let witness = mine
                .iter()
                .find_map(|(i, o)| o.as_ref().map(|t| Witness::at(&i.label, &format!("({clause}) {text}"), t)));
            Check {
                name: format!("{title} ({clause})"),
                passed: violations == 0,
                instances: mine.len() as u64,
                detail: json!({
                    "claim": text,
                    "grid": grid.describe(),
                    "evaluations": mine.len() * grid.len(),
                    "violations": violations,
                }),
                witness,
                markers: Vec::new(),
            }
        })
        .collect()
}

fn label(g: &Graph, marks: &[(&str, VertexId)]) -> String {
    let mut s = graph6_encode(g);
    for (name, v) in marks {
        s.push_str(&format!(" {name}={v}"));
    }
    s
}

fn check_grid(grid: &TGrid, hi: &Rational) -> Result<(), VerifyError> {
    if grid.lo < Rational::one() || &grid.hi > hi {
        return Err(VerifyError::Grid(grid.describe()));
    }
    Ok(())
}

const K1_CLAUSES: [(&str, &str); 5] = [
    ("a", "Q(G) >= Q(G/uv)/2 for G in K1, deg v = 2"),
    ("b", "Q(G+uw) >= Q(G)/2 for generalised uw-edges with P1, |V| >= 4"),
    ("c", "Q(G/uv) > 0 for G in K1, deg v = 2"),
    ("d", "Q(G) > 0 for generalised edges with P1"),
    ("e", "Q(G) > 0 for G in K1"),
];

/// Every clause of the `K1` bounds at every sample of `grid`, over the
/// members of `K1` and the generalised edges with `P1` up to `n_max`
/// vertices.
#[allow(non_snake_case)]
pub fn verify_K1_lemma(n_max: usize, grid: &TGrid) -> Result<Report, VerifyError> {
    check_grid(grid, &rat(5, 4))?;
    let triangles = enumerate_gentri(n_max)?;
    let mut instances = Vec::new();
    let half = Coef::Const(rat(1, 2));
    for g in &triangles {
        if !in_K1(g)? {
            continue;
        }
        for v in g.vertices().filter(|&v| g.degree(v) == 2) {
            let u = g.neighbours(v).next().unwrap();
            let gc = g.contract(u, v).expect("edge");
            let l = label(g, &[("u", u), ("v", v)]);
            instances.push(Instance {
                clause: "a",
                label: l.clone(),
                claim: Claim::AtLeast { lhs: g.clone(), coef: half.clone(), rhs: vec![gc.clone()] },
            });
            instances.push(Instance { clause: "c", label: l, claim: Claim::Positive(gc) });
        }
        instances.push(Instance { clause: "e", label: graph6_encode(g), claim: Claim::Positive(g.clone()) });
    }
    for e in gen_edge_pool(&triangles, CutProperty::P1) {
        let l = label(&e.graph, &[("u", e.u), ("w", e.v)]);
        if e.graph.vertex_count() >= 4 {
            let plus = e.graph.with_edge(e.u, e.v).expect("terminals");
            instances.push(Instance {
                clause: "b",
                label: l.clone(),
                claim: Claim::AtLeast { lhs: plus, coef: half.clone(), rhs: vec![e.graph.clone()] },
            });
        }
        instances.push(Instance { clause: "d", label: l, claim: Claim::Positive(e.graph) });
    }
    let mut report = Report::new("verify-k1-lemma", json!({ "n_max": n_max, "grid": grid.describe() }));
    report.extend(run_clauses("K1 lemma", &K1_CLAUSES, instances, grid));
    Ok(report)
}

const K2_CLAUSES: [(&str, &str); 6] = [
    ("a", "Q(G1 u G2) >= alpha/t Q(G1) Q(G2) for generalised uv-edges with P2, |V| >= 4"),
    ("b", "Q(G1 u G2 + uv) >= beta Q(G/uv) for generalised uw- and vw-edges with P2"),
    ("c", "Q(G+uv) >= gamma Q(G) for generalised uv-edges with P2, |V| >= 4"),
    ("d", "Q(G1 u G2) > 0 for generalised uw-edges with P2"),
    ("e", "Q(G) > 0 for G in K2"),
    ("f", "Q(G) > 0 for generalised edges with P2"),
];

/// Every clause of the `K2` bounds at every sample of `grid`. Composite
/// clauses glue pairs of generalised edges with `P2` from the pool, keeping
/// glued graphs within `n_max` vertices.
#[allow(non_snake_case)]
pub fn verify_K2_lemma(n_max: usize, grid: &TGrid, table: &ConstantsTable) -> Result<Report, VerifyError> {
    check_grid(grid, &table.q_minus)?;
    let triangles = enumerate_gentri(n_max)?;
    let pool = gen_edge_pool(&triangles, CutProperty::P2);
    let mut instances = Vec::new();
    for g in &triangles {
        if in_K2(g)? {
            instances.push(Instance { clause: "e", label: graph6_encode(g), claim: Claim::Positive(g.clone()) });
        }
    }
    for e in &pool {
        let l = label(&e.graph, &[("u", e.u), ("v", e.v)]);
        if e.graph.vertex_count() >= 4 {
            let plus = e.graph.with_edge(e.u, e.v).expect("terminals");
            instances.push(Instance {
                clause: "c",
                label: l.clone(),
                claim: Claim::AtLeast { lhs: plus, coef: Coef::Const(table.gamma.clone()), rhs: vec![e.graph.clone()] },
            });
        }
        instances.push(Instance { clause: "f", label: l, claim: Claim::Positive(e.graph.clone()) });
    }
    for (i, e1) in pool.iter().enumerate() {
        for e2 in &pool[i..] {
            let (n1, n2) = (e1.graph.vertex_count(), e2.graph.vertex_count());
            // two terminals shared
            if n1 + n2 - 2 <= n_max {
                for (p, q) in [(e2.u, e2.v), (e2.v, e2.u)] {
                    let (g, _) = glue(&e1.graph, &e2.graph, &[(e1.u, p), (e1.v, q)]);
                    let l = format!("{} u={} v={}", graph6_encode(&g), e1.u, e1.v);
                    if n1 >= 4 && n2 >= 4 {
                        instances.push(Instance {
                            clause: "a",
                            label: l.clone(),
                            claim: Claim::AtLeast {
                                lhs: g.clone(),
                                coef: Coef::OverT(table.alpha.clone()),
                                rhs: vec![e1.graph.clone(), e2.graph.clone()],
                            },
                        });
                    }
                    instances.push(Instance { clause: "d", label: l, claim: Claim::Positive(g) });
                }
            }
            // one terminal shared, plus the edge between the other two
            if n1 + n2 - 1 <= n_max {
                for (w1, u) in [(e1.u, e1.v), (e1.v, e1.u)] {
                    for (w2, v2) in [(e2.u, e2.v), (e2.v, e2.u)] {
                        let (mut g, map) = glue(&e1.graph, &e2.graph, &[(w1, w2)]);
                        let v = map[v2];
                        g.add_edge(u, v).expect("ids in range");
                        let gc = g.contract(u, v).expect("edge");
                        instances.push(Instance {
                            clause: "b",
                            label: label(&g, &[("u", u), ("v", v), ("w", w1)]),
                            claim: Claim::AtLeast { lhs: g, coef: Coef::Const(table.beta.clone()), rhs: vec![gc] },
                        });
                    }
                }
            }
        }
    }
    let mut report = Report::new("verify-k2-lemma", json!({ "n_max": n_max, "grid": grid.describe() }));
    report.extend(run_clauses("K2 lemma", &K2_CLAUSES, instances, grid));
    Ok(report)
}
