use std::cmp::Ordering;

use chromaroot::poly::{
    compare_roots, isolate_roots, rat, refine, sturm_count, to_f64, IntPoly, Rational, RootInterval,
};
use num_traits::Signed;
use proptest::prelude::*;

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-bound..=bound, 1..=max_deg + 1)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .prop_filter("non-zero", |p| !p.is_zero())
}

/// Product of linear factors with chosen rational roots, scaled to integers.
fn from_roots(roots: &[(i64, i64)]) -> IntPoly {
    roots.iter().fold(IntPoly::from_i64s(&[1]), |acc, &(a, b)| &acc * &IntPoly::from_i64s(&[-a, b]))
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-2000i64..=2000, 1i64..=500).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eval_distributes(p in poly_strategy(6, 20), q in poly_strategy(6, 20), t in rational_strategy()) {
        prop_assert_eq!((&p * &q).eval(&t), p.eval(&t) * q.eval(&t));
        prop_assert_eq!((&p + &q).eval(&t), p.eval(&t) + q.eval(&t));
    }

    #[test]
    fn derivative_matches_difference_quotient(p in poly_strategy(6, 20), t in rational_strategy()) {
        let h = rat(1, 1_000_000_000);
        let quotient = (p.eval(&(&t + &h)) - p.eval(&t)) / &h;
        let exact = p.derivative().eval(&t);
        let err = (quotient - &exact).abs();
        let scale = exact.abs().max(rat(1, 1));
        prop_assert!(err <= scale * rat(1, 1000));
    }

    #[test]
    fn isolated_roots_match_dense_sampling(p in poly_strategy(6, 9)) {
        let (lo, hi) = (rat(-10, 1), rat(10, 1));
        let roots = isolate_roots(&p, &lo, &hi).unwrap();
        // every isolating interval brackets a sign change of the squarefree part
        for r in &roots {
            let sf = r.poly();
            let a = sf.sign_at(r.lo());
            let b = sf.sign_at(r.hi());
            prop_assert!(a != b || r.lo() == r.hi());
        }
        // sign changes seen on a 10^4 grid are each inside some interval
        let sf = p.squarefree_part();
        let steps = 10_000;
        let mut prev: Option<(Rational, Ordering)> = None;
        let mut changes = 0;
        for k in 0..=steps {
            let x = &lo + (&hi - &lo) * rat(k, steps);
            let s = sf.sign_at(&x);
            if s == Ordering::Equal {
                prop_assert!(roots.iter().any(|r| r.is_exactly(&x) || r.contains(&x)) || x == lo || x == hi);
                continue;
            }
            if let Some((px, ps)) = &prev {
                if *ps != s {
                    changes += 1;
                    let mid = (px + &x) / rat(2, 1);
                    prop_assert!(roots.iter().any(|r| r.cmp_rational(px) != Ordering::Less && r.cmp_rational(&x) != Ordering::Greater), "no interval near {}", to_f64(&mid));
                }
            }
            prev = Some((x, s));
        }
        prop_assert!(changes <= roots.len());
    }

    #[test]
    fn refine_keeps_sturm_count(roots in proptest::collection::vec((-30i64..=30, 1i64..=7), 1..=5)) {
        let p = from_roots(&roots);
        for r in isolate_roots(&p, &rat(-40, 1), &rat(40, 1)).unwrap() {
            if r.lo() == r.hi() {
                continue;
            }
            let before = sturm_count(r.poly(), r.lo(), r.hi()).unwrap();
            let fine = refine(&r, &rat(1, 1 << 30));
            prop_assert!(fine.width() <= rat(1, 1 << 30));
            if fine.lo() != fine.hi() {
                prop_assert_eq!(sturm_count(fine.poly(), fine.lo(), fine.hi()).unwrap(), before);
            }
            prop_assert_eq!(compare_roots(&r, &fine), Ordering::Equal);
        }
    }

    #[test]
    fn rational_roots_are_found(roots in proptest::collection::vec((-30i64..=30, 1i64..=7), 1..=5)) {
        let p = from_roots(&roots);
        let found = isolate_roots(&p, &rat(-40, 1), &rat(40, 1)).unwrap();
        let mut distinct: Vec<Rational> = roots.iter().map(|&(a, b)| rat(a, b)).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(found.len(), distinct.len());
        for (r, x) in found.iter().zip(&distinct) {
            prop_assert!(r.is_exactly(x) || r.contains(x));
        }
    }

    #[test]
    fn gcd_divides_both(p in poly_strategy(5, 12), q in poly_strategy(5, 12), c in poly_strategy(2, 5)) {
        let (a, b) = (&p * &c, &q * &c);
        let g = a.gcd(&b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.degree() >= c.degree() || c.degree() == Some(0));
    }

    #[test]
    fn display_parse_round_trip(p in poly_strategy(8, 1000)) {
        let back: IntPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn compare_roots_orders_nearby_constants() {
    let t0: IntPoly = "t^3-2*t^2+4*t-4".parse().unwrap();
    let t1: IntPoly = "t^6-8*t^5+27*t^4-56*t^3+82*t^2-76*t+31".parse().unwrap();
    let r0 = isolate_roots(&t0, &rat(1, 1), &rat(2, 1)).unwrap().remove(0);
    let r1 = isolate_roots(&t1, &rat(1, 1), &rat(2, 1)).unwrap().remove(0);
    assert_eq!(compare_roots(&r1, &r0), Ordering::Less);
    // the same root through two different polynomials
    let doubled = &t0 * &IntPoly::from_i64s(&[-7, 1]);
    let rd = isolate_roots(&doubled, &rat(1, 1), &rat(2, 1)).unwrap().remove(0);
    assert_eq!(compare_roots(&rd, &r0), Ordering::Equal);
    assert!(RootInterval::new(&t0, rat(1, 1), rat(2, 1)).is_ok());
    assert!(RootInterval::new(&t0, rat(0, 1), rat(1, 1)).is_err());
}
