//! Sturm chains over `Z[t]` and certified isolating intervals.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, serde_str, to_f64, IntPoly, PolyError, Rational};

/// Primitive Sturm chain of a squarefree polynomial: `S0 = p`, `S1 = p'`,
/// `S(k+1) = -prem(S(k-1), S(k))` up to positive scaling.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `p`.
    pub fn new(p: &IntPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::Zero);
        }
        Ok(SturmChain::of_squarefree(p.squarefree_part()))
    }

    fn of_squarefree(p: IntPoly) -> Self {
        let mut polys = vec![p.clone()];
        let d = p.derivative().primitive_part();
        if d.is_zero() {
            return SturmChain { polys };
        }
        polys.push(d);
        loop {
            let k = polys.len();
            let (a, b) = (&polys[k - 2], &polys[k - 1]);
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem multiplies by lc(b)^(delta+1); undo its sign so the chain
            // stays a genuine negated-remainder sequence
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let flip = b.leading().unwrap().is_negative() && delta % 2 == 0;
            let r = r.primitive_part();
            polys.push(if flip { r } else { -r });
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// The squarefree polynomial the chain counts roots of.
    pub fn base(&self) -> &IntPoly {
        &self.polys[0]
    }

    /// Sign changes along the chain at `t`, zeros skipped.
    pub fn variations(&self, t: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.polys {
            let s = p.sign_at(t);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`; both endpoints must be non-roots.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize, PolyError> {
        if lo >= hi {
            return Err(PolyError::EmptyInterval);
        }
        if self.base().sign_at(lo).is_eq() || self.base().sign_at(hi).is_eq() {
            return Err(PolyError::EndpointRoot);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    if p.sign_at(lo).is_eq() || p.sign_at(hi).is_eq() {
        return Err(PolyError::EndpointRoot);
    }
    SturmChain::new(p)?.count(lo, hi)
}

/// An open interval `(lo, hi)` holding exactly one real root of `poly`,
/// which is squarefree, with opposite non-zero signs at the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    poly: IntPoly,
    #[serde(with = "serde_str")]
    lo: Rational,
    #[serde(with = "serde_str")]
    hi: Rational,
    /// Always true for a constructed value: the root is simple.
    simple: bool,
}

impl RootInterval {
    /// Validates the isolating-interval invariants. `poly` is replaced by its
    /// squarefree part.
    pub fn new(poly: &IntPoly, lo: Rational, hi: Rational) -> Result<Self, PolyError> {
        if poly.is_zero() {
            return Err(PolyError::Zero);
        }
        let poly = poly.squarefree_part();
        let chain = SturmChain::of_squarefree(poly.clone());
        if chain.count(&lo, &hi)? != 1 {
            return Err(PolyError::NotIsolating);
        }
        Ok(RootInterval { poly, lo, hi, simple: true })
    }

    /// Skips validation; callers guarantee the invariants.
    fn trusted(poly: IntPoly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        debug_assert_ne!(poly.sign_at(&lo), poly.sign_at(&hi));
        RootInterval { poly, lo, hi, simple: true }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        (to_f64(&self.lo) + to_f64(&self.hi)) / 2.0
    }

    /// Whether `x` lies strictly inside.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Whether the root is exactly `x` (`x` inside and a root).
    pub fn is_exactly(&self, x: &Rational) -> bool {
        self.contains(x) && self.poly.sign_at(x).is_eq()
    }

    /// Certified comparison of the root with a rational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let sx = self.poly.sign_at(x);
        if sx.is_eq() {
            return Ordering::Equal;
        }
        // same sign as at lo means the sign change is still ahead of x
        if sx == self.poly.sign_at(&self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Splits at the midpoint and keeps the half holding the root.
    fn bisect(&mut self, floor: &Rational) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let s = self.poly.sign_at(&mid);
        if s.is_eq() {
            // exact rational root: shrink symmetrically around it
            let delta = (&self.hi - &self.lo).min(floor.clone()) / Rational::from_integer(4.into());
            self.lo = &mid - &delta;
            self.hi = &mid + &delta;
        } else if s == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn summary(&self) -> String {
        format!("({}, {}) ~ {:.12}", format_rational(&self.lo), format_rational(&self.hi), self.midpoint_f64())
    }
}

/// Bisects until `hi - lo < width`.
pub fn refine(r: &RootInterval, width: &Rational) -> RootInterval {
    let mut out = r.clone();
    if !width.is_positive() {
        return out;
    }
    while &out.width() >= width {
        out.bisect(width);
    }
    out
}

/// Certified order of two roots. Equal only when both are the same root of
/// the common factor of the two polynomials.
pub fn compare_roots(a: &RootInterval, b: &RootInterval) -> Ordering {
    let g = a.poly.gcd(&b.poly);
    let shared = g.degree().unwrap_or(0) > 0;
    let chain = shared.then(|| SturmChain::of_squarefree(g.clone()));
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if let Some(chain) = &chain {
            // g divides both, so it is non-zero at every endpoint
            let in_a = chain.count(&a.lo, &a.hi) == Ok(1);
            let in_b = chain.count(&b.lo, &b.hi) == Ok(1);
            if in_a && in_b {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                if chain.count(&lo, &hi) == Ok(1) {
                    return Ordering::Equal;
                }
            }
        }
        let wa = a.width();
        a.bisect(&wa);
        let wb = b.width();
        b.bisect(&wb);
    }
}

/// Isolating intervals for every real root in the open interval `(lo, hi)`,
/// ascending. Repeated roots are reported once.
pub fn isolate_roots(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>, PolyError> {
    let mut out = Vec::new();
    isolate_with(p, lo, hi, &mut |r| {
        out.push(r);
        true
    })?;
    Ok(out)
}

/// The least real root in `(lo, hi)`, if any.
pub fn smallest_root_in(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<Option<RootInterval>, PolyError> {
    let mut first = None;
    isolate_with(p, lo, hi, &mut |r| {
        first = Some(r);
        false
    })?;
    Ok(first)
}

fn isolate_with(
    p: &IntPoly,
    lo: &Rational,
    hi: &Rational,
    emit: &mut dyn FnMut(RootInterval) -> bool,
) -> Result<(), PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    // roots sitting on the endpoints are outside the open interval
    let mut sq = p.squarefree_part();
    for end in [lo, hi] {
        if sq.sign_at(end).is_eq() {
            sq = sq.deflate(end).expect("rational root divides");
        }
    }
    if sq.degree() == Some(0) {
        return Ok(());
    }
    let chain = SturmChain::of_squarefree(sq);
    let (vlo, vhi) = (chain.variations(lo), chain.variations(hi));
    Isolator { chain: &chain, emit }.split(lo.clone(), hi.clone(), vlo, vhi);
    Ok(())
}

struct Isolator<'a, 'b> {
    chain: &'a SturmChain,
    emit: &'b mut dyn FnMut(RootInterval) -> bool,
}

impl Isolator<'_, '_> {
    /// Returns false once the consumer asks to stop.
    fn split(&mut self, a: Rational, b: Rational, va: usize, vb: usize) -> bool {
        match va - vb {
            0 => true,
            1 => (self.emit)(RootInterval::trusted(self.chain.base().clone(), a, b)),
            _ => {
                let two = Rational::from_integer(2.into());
                let mid = (&a + &b) / &two;
                let p = self.chain.base();
                if !p.sign_at(&mid).is_eq() {
                    let vm = self.chain.variations(&mid);
                    return self.split(a, mid.clone(), va, vm) && self.split(mid, b, vm, vb);
                }
                // exact root at the midpoint: carve out a small window around it
                let mut delta = (&b - &a) / Rational::from_integer(4.into());
                loop {
                    let (l, r) = (&mid - &delta, &mid + &delta);
                    if !p.sign_at(&l).is_eq() && !p.sign_at(&r).is_eq() {
                        let (vl, vr) = (self.chain.variations(&l), self.chain.variations(&r));
                        if vl - vr == 1 {
                            return self.split(a, l.clone(), va, vl)
                                && (self.emit)(RootInterval::trusted(p.clone(), l, r.clone()))
                                && self.split(r, b, vr, vb);
                        }
                    }
                    delta /= &two;
                    if delta.is_zero() {
                        unreachable!("finitely many roots");
                    }
                }
            }
        }
    }
}
