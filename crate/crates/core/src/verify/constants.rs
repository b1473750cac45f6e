use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Check, TGrid, Witness};
use crate::poly::{
    compare_roots, format_rational, isolate_roots, rat, refine, serde_str, to_f64, IntPoly, Rational,
    RootInterval,
};

pub const T0_POLY: &str = "t^3-2*t^2+4*t-4";
pub const Q_POLY: &str = "t^4-4*t^3+4*t^2-4*t+4";
pub const T1_POLY: &str = "t^6-8*t^5+27*t^4-56*t^3+82*t^2-76*t+31";
pub const K23_POLY: &str = "t^3-5*t^2+10*t-7";

/// Certified reference constants. Root intervals are narrower than
/// `10^-12`; `gamma`, `alpha`, `beta` are exact at `q_minus`, the left end of
/// the refined `q` interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantsTable {
    #[serde(with = "serde_str")]
    pub thirty_two_27: Rational,
    #[serde(with = "serde_str")]
    pub five_quarters: Rational,
    pub q: RootInterval,
    pub t0: RootInterval,
    pub t1: RootInterval,
    pub k23_root: RootInterval,
    #[serde(with = "serde_str")]
    pub q_minus: Rational,
    #[serde(with = "serde_str")]
    pub gamma: Rational,
    #[serde(with = "serde_str")]
    pub alpha: Rational,
    #[serde(with = "serde_str")]
    pub beta: Rational,
}

/// Width bound for certified constants.
pub fn certificate_width() -> Rational {
    rat(1, 1_000_000_000_000)
}

fn smallest_root(poly: &str) -> RootInterval {
    let p: IntPoly = poly.parse().expect("reference polynomial");
    let roots = isolate_roots(&p, &rat(1, 1), &rat(2, 1)).expect("non-zero");
    refine(&roots[0], &certificate_width())
}

/// `gamma = (q-2)(q^2-2q-2)/4`, `alpha = (1-gamma)(2-q)/(2-q-gamma)`,
/// `beta = 1 - 1/alpha`, all at the given rational `q`.
pub fn lemma_constants(q: &Rational) -> (Rational, Rational, Rational) {
    let one = Rational::one();
    let two = rat(2, 1);
    let gamma = (q - &two) * (q * q - &two * q - &two) / rat(4, 1);
    let alpha = (&one - &gamma) * (&two - q) / (&two - q - &gamma);
    let beta = &one - &one / &alpha;
    (gamma, alpha, beta)
}

pub fn certify_constants() -> ConstantsTable {
    let q = smallest_root(Q_POLY);
    let q_minus = q.lo().clone();
    let (gamma, alpha, beta) = lemma_constants(&q_minus);
    ConstantsTable {
        thirty_two_27: rat(32, 27),
        five_quarters: rat(5, 4),
        t0: smallest_root(T0_POLY),
        t1: smallest_root(T1_POLY),
        k23_root: smallest_root(K23_POLY),
        q,
        q_minus,
        gamma,
        alpha,
        beta,
    }
}

fn within(x: &Rational, target: &Rational, tol: &Rational) -> bool {
    (x - target).abs() <= *tol
}

/// Both ends of the interval within `tol` of `target`.
fn interval_within(r: &RootInterval, target: &Rational, tol: &Rational) -> bool {
    within(r.lo(), target, tol) && within(r.hi(), target, tol)
}

impl ConstantsTable {
    /// The printed approximations, each checked exactly, and the ordering
    /// `32/27 < q < 5/4 < t1 < t0 < root(K_{2,3})`.
    pub fn checks(&self) -> Vec<Check> {
        let half_milli = rat(5, 10_000);
        let mut out = Vec::new();
        let roots = [
            ("t0 ~ 1.296", &self.t0, rat(1296, 1000), half_milli.clone()),
            ("q ~ 1.225", &self.q, rat(1225, 1000), half_milli.clone()),
            ("t1 ~ 1.290", &self.t1, rat(1290, 1000), half_milli.clone()),
            ("K_{2,3} root ~ 1.430", &self.k23_root, rat(1430, 1000), rat(5, 1000)),
        ];
        for (name, r, target, tol) in roots {
            let ok = interval_within(r, &target, &tol) && r.width() < certificate_width();
            out.push(Check::single(
                &format!("constant {name}"),
                ok,
                json!({
                    "poly": r.poly().to_string(),
                    "lo": format_rational(r.lo()),
                    "hi": format_rational(r.hi()),
                    "approx": format!("{:.12}", r.midpoint_f64()),
                    "target": format_rational(&target),
                    "tolerance": format_rational(&tol),
                }),
                (!ok).then(|| Witness::note(format!("interval {}", r.summary()))),
            ));
        }
        for (name, x, target) in [
            ("gamma ~ 0.571", &self.gamma, rat(571, 1000)),
            ("alpha ~ 1.632", &self.alpha, rat(1632, 1000)),
            ("beta ~ 0.387", &self.beta, rat(387, 1000)),
        ] {
            let ok = within(x, &target, &half_milli);
            out.push(Check::single(
                &format!("constant {name}"),
                ok,
                json!({ "value": format!("{:.12}", to_f64(x)), "at": "q_minus" }),
                (!ok).then(|| Witness::note(format!("value {:.12}", to_f64(x)))),
            ));
        }
        let order_ok = self.q.cmp_rational(&self.thirty_two_27) == Ordering::Greater
            && self.q.cmp_rational(&self.five_quarters) == Ordering::Less
            && self.t1.cmp_rational(&self.five_quarters) == Ordering::Greater
            && compare_roots(&self.t1, &self.t0) == Ordering::Less
            && compare_roots(&self.t0, &self.k23_root) == Ordering::Less;
        out.push(Check::single(
            "constant ordering 32/27 < q < 5/4 < t1 < t0 < K_{2,3} root",
            order_ok,
            json!({
                "values": [
                    format!("{:.12}", to_f64(&self.thirty_two_27)),
                    format!("{:.12}", self.q.midpoint_f64()),
                    "1.25",
                    format!("{:.12}", self.t1.midpoint_f64()),
                    format!("{:.12}", self.t0.midpoint_f64()),
                    format!("{:.12}", self.k23_root.midpoint_f64()),
                ]
            }),
            (!order_ok).then(|| Witness::note("certified intervals out of order".into())),
        ));
        out
    }
}

/// Left sides of the three constants inequalities at `t`.
pub fn constants_lhs(t: &Rational, gamma: &Rational, beta: &Rational) -> [Rational; 3] {
    let one = Rational::one();
    let two = rat(2, 1);
    [
        t / (t - &one) * gamma * gamma - &two * gamma + &one,
        (&one - t) / gamma + &one,
        (&one - gamma) * (&two - t) * beta - (t - &one) * gamma,
    ]
}

/// Error when the grid leaves `(1, q_minus]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("grid must lie inside (1, q_minus]")]
pub struct GridOutOfRange;

/// The three inequalities at every sample, plus strict decrease of each
/// left side along the grid.
pub fn check_constants_inequalities(table: &ConstantsTable, grid: &TGrid) -> Result<Vec<Check>, GridOutOfRange> {
    if grid.lo < Rational::one() || grid.hi > table.q_minus {
        return Err(GridOutOfRange);
    }
    let rhs = [table.alpha.clone(), table.beta.clone(), Rational::from_integer(0.into())];
    let names = ["(i) t/(t-1) g^2 - 2g + 1 >= alpha", "(ii) (1-t)/g + 1 >= beta", "(iii) (1-g)(2-t)b - (t-1)g >= 0"];
    let values: Vec<[Rational; 3]> =
        grid.samples.iter().map(|t| constants_lhs(t, &table.gamma, &table.beta)).collect();
    let mut out = Vec::new();
    for k in 0..3 {
        let bad = grid.samples.iter().zip(&values).find(|(_, v)| v[k] < rhs[k]);
        let slack_end = &values.last().unwrap()[k] - &rhs[k];
        out.push(Check {
            name: format!("constants inequality {}", names[k]),
            passed: bad.is_none(),
            instances: grid.len() as u64,
            detail: json!({
                "grid": grid.describe(),
                "slack_at_right_end": format!("{:.3e}", to_f64(&slack_end)),
            }),
            witness: bad.map(|(t, _)| Witness::at("constants", names[k], t)),
            markers: Vec::new(),
        });
        let rising = grid
            .samples
            .windows(2)
            .zip(values.windows(2))
            .find(|(_, v)| v[1][k] >= v[0][k]);
        out.push(Check {
            name: format!("constants inequality {} decreasing", &names[k][..names[k].find(')').unwrap() + 1]),
            passed: rising.is_none(),
            instances: grid.len() as u64 - 1,
            detail: json!({ "grid": grid.describe() }),
            witness: rising.map(|(ts, _)| Witness::at("constants", "monotonicity", &ts[1])),
            markers: Vec::new(),
        });
    }
    Ok(out)
}
