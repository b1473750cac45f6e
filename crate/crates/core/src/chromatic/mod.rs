//! Chromatic polynomials by factoring and deletion–contraction, memoised by
//! canonical code, plus the sign-normalised `Q(G,t) = (-1)^n P(G,t)`.

mod memo;

pub use memo::MemoStore;

use std::path::Path;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    bit, canonical_code, components, set_members, structure, CutPair, Graph, VertexId, VertexSet,
};
use crate::poly::{isolate_roots, rat, smallest_root_in, IntPoly, Rational, RootInterval};

/// Environment variable naming a persistent memo file.
pub const CACHE_ENV: &str = "CHROMAROOT_CACHE";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error("chromatic polynomial not divisible by {0}")]
    InexactDivision(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromoResult {
    pub poly: IntPoly,
    pub n: usize,
}

impl ChromoResult {
    /// `(-1)^n P(G,t)`.
    pub fn q_poly(&self) -> IntPoly {
        q_sign(self.n, self.poly.clone())
    }

    pub fn q_eval(&self, t: &Rational) -> Rational {
        let v = self.poly.eval(t);
        if self.n % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

fn q_sign(n: usize, p: IntPoly) -> IntPoly {
    if n % 2 == 1 {
        -p
    } else {
        p
    }
}

#[derive(Debug, Default)]
pub struct ChromaticEngine {
    memo: MemoStore,
    memoise: bool,
}

impl ChromaticEngine {
    pub fn new() -> Self {
        ChromaticEngine { memo: MemoStore::new(), memoise: true }
    }

    /// An engine that never consults or fills its store.
    pub fn unmemoised() -> Self {
        ChromaticEngine { memo: MemoStore::new(), memoise: false }
    }

    pub fn with_store(memo: MemoStore) -> Self {
        ChromaticEngine { memo, memoise: true }
    }

    /// Loads the store named by `CHROMAROOT_CACHE` if the file exists.
    pub fn from_env() -> std::io::Result<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(path) if Path::new(&path).exists() => {
                Ok(ChromaticEngine::with_store(MemoStore::load(Path::new(&path))?))
            }
            _ => Ok(ChromaticEngine::new()),
        }
    }

    pub fn memo(&self) -> &MemoStore {
        &self.memo
    }

    pub fn chromatic(&self, g: &Graph) -> ChromoResult {
        ChromoResult { poly: self.polynomial(g), n: g.vertex_count() }
    }

    pub fn polynomial(&self, g: &Graph) -> IntPoly {
        let n = g.vertex_count();
        if n == 0 {
            return IntPoly::one();
        }
        if g.edge_count() == 0 {
            return t_power(n);
        }
        if g.is_complete() {
            return IntPoly::falling_factorial(n);
        }
        if !self.memoise {
            return self.reduce(g);
        }
        let code = canonical_code(g);
        if let Some(p) = self.memo.get(&code) {
            return p;
        }
        let p = self.reduce(g);
        self.memo.insert(code, p.clone());
        p
    }

    pub fn q_eval(&self, g: &Graph, t: &Rational) -> Rational {
        self.chromatic(g).q_eval(t)
    }

    fn reduce(&self, g: &Graph) -> IntPoly {
        let comps = components(g);
        if comps.len() > 1 {
            let p = comps
                .iter()
                .fold(IntPoly::one(), |acc, &c| &acc * &self.polynomial(&g.induced(c).0));
            return p;
        }
        let all = g.vertex_set();
        for v in g.vertices() {
            let rest = all & !bit(v);
            if !structure::is_connected_within(g, rest) {
                let c = structure::reach(g, rest, rest.trailing_zeros() as usize);
                return self.glue(g, c | bit(v), all & !c, 1);
            }
        }
        if let Some(cut) = first_two_cut(g) {
            let rest = all & !cut.set();
            let c = structure::reach(g, rest, rest.trailing_zeros() as usize);
            if g.has_edge(cut.x, cut.y) {
                return self.glue(g, c | cut.set(), all & !c, 2);
            }
            // P(G) = P(G+xy) + P(G/xy); both sides factor at the cut
            let plus = g.with_edge(cut.x, cut.y).unwrap();
            let glued = self.glue(&plus, c | cut.set(), all & !c, 2);
            let merged = self.polynomial(&g.contract(cut.x, cut.y).unwrap());
            return &glued + &merged;
        }
        let (u, v) = branching_edge(g);
        let deleted = self.polynomial(&g.without_edge(u, v).unwrap());
        let contracted = self.polynomial(&g.contract(u, v).unwrap());
        &deleted - &contracted
    }

    /// `P(G1) P(G2) / P(K_r)` for sides overlapping in a clique of size `r`.
    fn glue(&self, g: &Graph, side1: VertexSet, side2: VertexSet, r: usize) -> IntPoly {
        let p1 = self.polynomial(&g.induced(side1).0);
        let p2 = self.polynomial(&g.induced(side2).0);
        (&p1 * &p2)
            .div_exact(&IntPoly::falling_factorial(r))
            .expect("clique factor divides a chromatic polynomial")
    }

    /// Least non-trivial chromatic root in `(1, 2]`, or `None` (the class
    /// convention then counts the graph as contributing 2).
    pub fn smallest_nontrivial_root(&self, g: &Graph) -> Result<Option<RootInterval>, ChromaticError> {
        let p = self.polynomial(g);
        let reduced = reduce_trivial(&p)?;
        nontrivial_root_of(&reduced)
    }
}

fn t_power(n: usize) -> IntPoly {
    let mut coeffs = vec![num_bigint::BigInt::zero(); n + 1];
    coeffs[n] = num_bigint::BigInt::one();
    IntPoly::new(coeffs)
}

/// First 2-cut in lexicographic order of a 2-connected graph.
fn first_two_cut(g: &Graph) -> Option<CutPair> {
    let n = g.vertex_count();
    if n < 4 {
        return None;
    }
    let all = g.vertex_set();
    (0..n).find_map(|x| {
        (x + 1..n)
            .find(|&y| !structure::is_connected_within(g, all & !bit(x) & !bit(y)))
            .map(|y| CutPair::new(x, y))
    })
}

/// Lexicographically smallest edge among those of largest degree sum.
fn branching_edge(g: &Graph) -> (VertexId, VertexId) {
    let mut best: Option<((VertexId, VertexId), usize)> = None;
    for (u, v) in g.edges() {
        let s = g.degree(u) + g.degree(v);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some(((u, v), s));
        }
    }
    best.expect("graph has an edge").0
}

/// `P / (t (t-1))`, the part carrying the non-trivial roots.
pub fn reduce_trivial(p: &IntPoly) -> Result<IntPoly, ChromaticError> {
    p.div_exact(&IntPoly::t())
        .ok_or(ChromaticError::InexactDivision("t"))?
        .div_exact(&IntPoly::linear_root(1))
        .ok_or(ChromaticError::InexactDivision("t-1"))
}

/// Least root of `reduced` in `(1, 2]`.
pub fn nontrivial_root_of(reduced: &IntPoly) -> Result<Option<RootInterval>, ChromaticError> {
    let (one, two) = (rat(1, 1), rat(2, 1));
    if let Some(r) = smallest_root_in(reduced, &one, &two).expect("non-zero polynomial") {
        return Ok(Some(r));
    }
    if !reduced.sign_at(&two).is_eq() {
        return Ok(None);
    }
    // root exactly at 2: isolate it inside (1, 3)
    let roots = isolate_roots(reduced, &one, &rat(3, 1)).expect("non-zero polynomial");
    Ok(roots.into_iter().find(|r| r.is_exactly(&two)))
}

/// Whether a reported root is exactly 2 (kept apart from roots below 2).
pub fn root_is_two(r: &RootInterval) -> bool {
    r.is_exactly(&rat(2, 1))
}

static SHARED: OnceLock<ChromaticEngine> = OnceLock::new();

fn shared() -> &'static ChromaticEngine {
    SHARED.get_or_init(ChromaticEngine::new)
}

/// Makes `engine` the process-wide engine. Fails (returning it) once the
/// shared engine has been used or installed.
pub fn install_shared_engine(engine: ChromaticEngine) -> Result<(), ChromaticEngine> {
    SHARED.set(engine)
}

/// The process-wide engine used by the free functions.
pub fn shared_engine() -> &'static ChromaticEngine {
    shared()
}

pub fn chromatic_polynomial(g: &Graph) -> ChromoResult {
    shared().chromatic(g)
}

pub fn q_eval(g: &Graph, t: &Rational) -> Rational {
    shared().q_eval(g, t)
}

pub fn smallest_nontrivial_root(g: &Graph) -> Result<Option<RootInterval>, ChromaticError> {
    shared().smallest_nontrivial_root(g)
}

/// Evaluates both sides of the reduction identity
/// `t(t-1)Q(G) = tQ(G1+uv)Q(G2+uv) + (t-1)[Q(G1)Q(G2) - Q(G1+uv)Q(G2) - Q(G1)Q(G2+uv)]`
/// where `G1 = G[side1]`, `G2 = G[side2]`.
pub fn jackson_reduction_check(
    g: &Graph,
    side1: VertexSet,
    side2: VertexSet,
    u: VertexId,
    v: VertexId,
    t: &Rational,
) -> Result<bool, ChromaticError> {
    let fail = |m: &str| Err(ChromaticError::Precondition(m.to_string()));
    let n = g.vertex_count();
    if u >= n || v >= n || u == v {
        return fail("u and v must be distinct vertices of G");
    }
    if !structure::is_two_connected(g) {
        return fail("G must be 2-connected");
    }
    let pair = bit(u) | bit(v);
    if side1 & side2 != pair {
        return fail("V(G1) ∩ V(G2) must be exactly {u,v}");
    }
    if side1 | side2 != g.vertex_set() {
        return fail("G1 ∪ G2 must cover V(G)");
    }
    if g.has_edge(u, v) {
        return fail("uv must not be an edge of G");
    }
    if side1.count_ones() < 3 || side2.count_ones() < 3 {
        return fail("both sides need at least 3 vertices");
    }
    let inner1 = side1 & !pair;
    if set_members(inner1).any(|x| g.neighbourhood(x) & side2 & !pair != 0) {
        return fail("an edge joins the two sides, so G1 ∪ G2 ≠ G");
    }
    let engine = shared();
    let side = |mask: VertexSet| {
        let (h, ids) = g.induced(mask);
        let lu = ids.iter().position(|&x| x == u).unwrap();
        let lv = ids.iter().position(|&x| x == v).unwrap();
        let plus = h.with_edge(lu, lv).unwrap();
        (engine.q_eval(&h, t), engine.q_eval(&plus, t))
    };
    let (q1, q1p) = side(side1);
    let (q2, q2p) = side(side2);
    let one = Rational::one();
    let lhs = t * (t - &one) * engine.q_eval(g, t);
    let rhs = t * &q1p * &q2p + (t - &one) * (&q1 * &q2 - &q1p * &q2 - &q1 * &q2p);
    Ok(lhs == rhs)
}
