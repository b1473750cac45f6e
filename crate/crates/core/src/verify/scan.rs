use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{certificate_width, Check, ConstantsTable, Marker, VerifyError, Witness};
use crate::chromatic::{root_is_two, shared_engine};
use crate::classes::{
    all_switches, hamiltonian_path, is_ham_path, in_K1, in_K1K2, in_K2, j_sequence_k1, j_sequence_k2, to_ham_form,
    whitney_switch,
};
use crate::gentri::{brute_minor, enumerate_gentri, fixed_graphs, poset_minor, reverse_steps, ORACLE_LIMIT};
use crate::graph::{canonical_form, graph6_encode, Graph};
use crate::poly::{compare_roots, format_rational, refine, to_f64, Rational, RootInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFilter {
    AllK,
    K1,
    K2,
    K1K2,
    HamPath,
}

impl ClassFilter {
    pub const ALL: [ClassFilter; 5] =
        [ClassFilter::AllK, ClassFilter::K1, ClassFilter::K2, ClassFilter::K1K2, ClassFilter::HamPath];

    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::AllK => "all_K",
            ClassFilter::K1 => "K1",
            ClassFilter::K2 => "K2",
            ClassFilter::K1K2 => "K1K2",
            ClassFilter::HamPath => "ham_path",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ClassFilter::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn admits(self, g: &Graph) -> Result<bool, VerifyError> {
        Ok(match self {
            ClassFilter::AllK => true,
            ClassFilter::K1 => in_K1(g)?,
            ClassFilter::K2 => in_K2(g)?,
            ClassFilter::K1K2 => in_K1K2(g)?,
            ClassFilter::HamPath => hamiltonian_path(g)?.is_some(),
        })
    }
}

/// Lower limit the class minimum must stay strictly above.
enum Limit<'a> {
    Exact(&'static str, Rational),
    Root(&'static str, &'a RootInterval),
}

impl Limit<'_> {
    fn name(&self) -> &'static str {
        match self {
            Limit::Exact(n, _) | Limit::Root(n, _) => n,
        }
    }

    fn value(&self) -> f64 {
        match self {
            Limit::Exact(_, x) => to_f64(x),
            Limit::Root(_, r) => r.midpoint_f64(),
        }
    }

    /// Certified `r > limit`.
    fn below(&self, r: &RootInterval) -> bool {
        match self {
            Limit::Exact(_, x) => r.cmp_rational(x) == Ordering::Greater,
            Limit::Root(_, l) => compare_roots(r, l) == Ordering::Greater,
        }
    }
}

fn limit_of(filter: ClassFilter, table: &ConstantsTable) -> Limit<'_> {
    match filter {
        ClassFilter::AllK => Limit::Exact("32/27", table.thirty_two_27.clone()),
        ClassFilter::K1 => Limit::Exact("5/4", table.five_quarters.clone()),
        ClassFilter::K2 => Limit::Root("q", &table.q),
        ClassFilter::K1K2 | ClassFilter::HamPath => Limit::Root("t0", &table.t0),
    }
}

#[derive(Clone, Debug)]
pub struct OmegaResult {
    pub members: usize,
    /// Minimiser and its certified root; `None` when no member has a root in `(1, 2]`.
    pub minimum: Option<(Graph, RootInterval)>,
    pub check: Check,
}

/// Least non-trivial root over the members of a class up to `n_max`
/// vertices, certified strictly above the class limit. Ties keep the first
/// member in enumeration order.
pub fn omega_scan(filter: ClassFilter, n_max: usize, table: &ConstantsTable) -> Result<OmegaResult, VerifyError> {
    let all = enumerate_gentri(n_max)?;
    let admitted: Vec<bool> = all.par_iter().map(|g| filter.admits(g)).collect::<Result<_, _>>()?;
    let members: Vec<&Graph> = all.iter().zip(admitted).filter(|(_, a)| *a).map(|(g, _)| g).collect();
    let roots: Vec<Option<RootInterval>> = members
        .par_iter()
        .map(|g| shared_engine().smallest_nontrivial_root(g).expect("chromatic polynomials divide"))
        .collect();
    let mut best: Option<(usize, &RootInterval)> = None;
    for (i, r) in roots.iter().enumerate() {
        if let Some(r) = r {
            if best.is_none_or(|(_, b)| compare_roots(r, b) == Ordering::Less) {
                best = Some((i, r));
            }
        }
    }
    let limit = limit_of(filter, table);
    let name = format!("omega scan {} (n <= {n_max})", filter.name());
    let Some((i, r)) = best else {
        let check = Check::single(
            &name,
            false,
            json!({ "members": members.len() }),
            Some(Witness::note(if members.is_empty() { "no members" } else { "no roots in (1, 2]" }.into())),
        );
        return Ok(OmegaResult { members: members.len(), minimum: None, check });
    };
    let root = refine(r, &certificate_width());
    let g = members[i].clone();
    let passed = limit.below(&root);
    let mut detail = json!({
        "members": members.len(),
        "minimiser": graph6_encode(&g),
        "minimiser_vertices": g.vertex_count(),
        "root_lo": format_rational(root.lo()),
        "root_hi": format_rational(root.hi()),
        "root_approx": format!("{:.12}", root.midpoint_f64()),
        "root_is_two": root_is_two(&root),
        "limit": limit.name(),
        "gap": format!("{:.12}", root.midpoint_f64() - limit.value()),
    });
    if filter == ClassFilter::K2 {
        detail["above_q_minus"] = json!(root.cmp_rational(&table.q_minus) == Ordering::Greater);
    }
    let check = Check {
        name,
        passed,
        instances: members.len() as u64,
        detail,
        witness: (!passed).then(|| Witness::graph(graph6_encode(&g), format!("root not above {}", limit.name()))),
        markers: vec![
            Marker { label: format!("min {}", filter.name()), value: root.midpoint_f64() },
            Marker { label: limit.name().into(), value: limit.value() },
        ],
    };
    Ok(OmegaResult { members: members.len(), minimum: Some((g, root)), check })
}

/// Roots of `J_0 .. J_4` in both sequences strictly decrease and stay above
/// the class limit.
pub fn j_sequence_checks(table: &ConstantsTable) -> Vec<Check> {
    let seqs: [(&str, fn(usize) -> Graph, Limit); 2] = [
        ("K1", j_sequence_k1, Limit::Exact("5/4", table.five_quarters.clone())),
        ("K2", j_sequence_k2, Limit::Root("q", &table.q)),
    ];
    seqs.into_iter()
        .map(|(name, build, limit)| {
            let graphs: Vec<Graph> = (0..5).map(build).collect();
            let roots: Vec<RootInterval> = graphs
                .par_iter()
                .map(|g| {
                    let r = shared_engine().smallest_nontrivial_root(g).expect("divides");
                    refine(&r.expect("every J_i has a root in (1, 2]"), &certificate_width())
                })
                .collect();
            let drop = (0..4).find(|&i| compare_roots(&roots[i + 1], &roots[i]) != Ordering::Less);
            let low = (0..5).find(|&i| !limit.below(&roots[i]));
            let passed = drop.is_none() && low.is_none();
            let witness = drop.or(low).map(|i| {
                Witness::graph(graph6_encode(&graphs[i]), format!("J_{i} breaks monotone decrease above the limit"))
            });
            Check {
                name: format!("J-sequence {name} roots decrease, i = 0..4"),
                passed,
                instances: 5,
                detail: json!({
                    "vertices": graphs.iter().map(Graph::vertex_count).collect::<Vec<_>>(),
                    "roots": roots.iter().map(|r| format!("{:.12}", r.midpoint_f64())).collect::<Vec<_>>(),
                    "root_0_is_two": root_is_two(&roots[0]),
                    "limit": limit.name(),
                }),
                witness,
                markers: roots
                    .iter()
                    .enumerate()
                    .map(|(i, r)| Marker { label: format!("{name} J_{i}"), value: r.midpoint_f64() })
                    .collect(),
            }
        })
        .collect()
}

/// The double-subdivision order against the general minor oracle on every
/// ordered pair with host up to `n_max` vertices, one check per direction.
pub fn crosscheck_minor_orders(n_max: usize) -> Result<Vec<Check>, VerifyError> {
    let all = enumerate_gentri(n_max)?;
    let pairs: Vec<(&Graph, &Graph)> = all.iter().flat_map(|g| all.iter().map(move |h| (h, g))).collect();
    let verdicts: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(h, g)| Ok((poset_minor(h, g)?, brute_minor(h, g)?)))
        .collect::<Result<_, VerifyError>>()?;
    let related = verdicts.iter().filter(|(a, _)| *a).count();
    let minors = verdicts.iter().filter(|(_, b)| *b).count();
    let directions: [(&str, fn(bool, bool) -> bool); 2] = [
        ("double-subdivision order implies minor", |poset, minor| !poset || minor),
        ("minor implies double-subdivision order", |poset, minor| poset || !minor),
    ];
    Ok(directions
        .into_iter()
        .map(|(label, holds)| {
            let bad: Vec<(&(&Graph, &Graph), &(bool, bool))> =
                pairs.iter().zip(&verdicts).filter(|(_, (a, b))| !holds(*a, *b)).collect();
            Check {
                name: format!("minor order: {label} (host n <= {n_max})"),
                passed: bad.is_empty(),
                instances: pairs.len() as u64,
                detail: json!({
                    "pairs": pairs.len(),
                    "poset_related": related,
                    "minor_related": minors,
                    "mismatches": bad.len(),
                    "mismatched_pairs": bad
                        .iter()
                        .map(|((h, g), _)| format!("{} <= {}", graph6_encode(h), graph6_encode(g)))
                        .collect::<Vec<_>>(),
                }),
                witness: bad.first().map(|((h, g), (a, b))| {
                    Witness::graph(
                        graph6_encode(g),
                        format!("pattern {}: double-subdivision order {a}, minor {b}", graph6_encode(h)),
                    )
                }),
                markers: Vec::new(),
            }
        })
        .collect())
}

/// Both forbidden-minor characterisations over all triangles up to `n_max`,
/// and the minimal non-members recovered exactly.
pub fn crosscheck_forbidden_minors(n_max: usize) -> Result<Vec<Check>, VerifyError> {
    let all = enumerate_gentri(n_max)?;
    let f = fixed_graphs();
    struct Row {
        k1: bool,
        k2: bool,
        /// (H0 below, H1 or H2 below)
        poset: (bool, bool),
        minor: (bool, bool),
    }
    let rows: Vec<Row> = all
        .par_iter()
        .map(|g| {
            let k1 = in_K1(g)?;
            let k2 = in_K2(g)?;
            let poset = (poset_minor(&f.h0, g)?, poset_minor(&f.h1, g)? || poset_minor(&f.h2, g)?);
            let minor = if g.vertex_count() <= ORACLE_LIMIT {
                (brute_minor(&f.h0, g)?, brute_minor(&f.h1, g)? || brute_minor(&f.h2, g)?)
            } else {
                poset
            };
            Ok(Row { k1, k2, poset, minor })
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut out = Vec::new();
    let sides: [(&str, fn(&Row) -> bool); 4] = [
        ("K1 = H0-free in the double-subdivision order", |r| r.k1 != r.poset.0),
        ("K2 = {H1,H2}-free in the double-subdivision order", |r| r.k2 != r.poset.1),
        ("K1 = H0-minor-free", |r| r.k1 != r.minor.0),
        ("K2 = {H1,H2}-minor-free", |r| r.k2 != r.minor.1),
    ];
    for (label, agrees) in sides {
        let bad = all.iter().zip(&rows).find(|(_, r)| !agrees(r));
        out.push(Check {
            name: format!("forbidden minors: {label} (n <= {n_max})"),
            passed: bad.is_none(),
            instances: all.len() as u64,
            detail: json!({ "graphs": all.len(), "mismatches": rows.iter().filter(|r| !agrees(r)).count() }),
            witness: bad.map(|(g, r)| {
                Witness::graph(
                    graph6_encode(g),
                    format!("K1 {} K2 {} order {:?} minor {:?}", r.k1, r.k2, r.poset, r.minor),
                )
            }),
            markers: Vec::new(),
        });
    }
    type Member = fn(&Graph) -> bool;
    let minimal: [(&str, Member, Vec<&Graph>); 2] = [
        ("K1", |g| in_K1(g).expect("triangle"), vec![&f.h0]),
        ("K2", |g| in_K2(g).expect("triangle"), vec![&f.h1, &f.h2]),
    ];
    for (class, member, obstructions) in minimal {
        let found: BTreeSet<String> = all
            .par_iter()
            .filter(|g| !member(g) && reverse_steps(g).iter().all(|(h, _)| member(h)))
            .map(|g| graph6_encode(&canonical_form_of(g)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let expected: BTreeSet<String> = obstructions
            .iter()
            .filter(|h| h.vertex_count() <= n_max)
            .map(|h| graph6_encode(&canonical_form_of(h)))
            .collect();
        let passed = found == expected;
        let extra = found.symmetric_difference(&expected).next().cloned();
        out.push(Check {
            name: format!("minimal non-{class} members (n <= {n_max})"),
            passed,
            instances: all.len() as u64,
            detail: json!({ "found": found, "expected": expected }),
            witness: extra.map(|g6| Witness::graph(g6, "minimal obstruction set differs".into())),
            markers: Vec::new(),
        });
    }
    Ok(out)
}

fn canonical_form_of(g: &Graph) -> Graph {
    canonical_form(g).0
}

/// Whitney switches keep the polynomial (triangles up to `whitney_n`);
/// `to_ham_form` succeeds with the same polynomial on every member of
/// `K1 ∩ K2`; every triangle with a Hamiltonian path lies in `K1 ∩ K2`
/// (both up to `n_max`).
pub fn structural_checks(n_max: usize, whitney_n: usize) -> Result<Vec<Check>, VerifyError> {
    let engine = shared_engine();
    let mut out = Vec::new();

    let hosts = enumerate_gentri(whitney_n)?;
    let switched: Vec<(Graph, usize, Option<Graph>)> = hosts
        .par_iter()
        .map(|g| {
            let p = engine.polynomial(g);
            let steps = all_switches(g);
            let mut bad = None;
            for s in &steps {
                let h = whitney_switch(g, *s)?;
                if engine.polynomial(&h) != p && bad.is_none() {
                    bad = Some(h);
                }
            }
            Ok((g.clone(), steps.len(), bad))
        })
        .collect::<Result<_, VerifyError>>()?;
    let total: usize = switched.iter().map(|s| s.1).sum();
    let bad = switched.iter().find(|s| s.2.is_some());
    out.push(Check {
        name: format!("Whitney switches keep the chromatic polynomial (n <= {whitney_n})"),
        passed: bad.is_none(),
        instances: total as u64,
        detail: json!({ "graphs": hosts.len(), "switches": total }),
        witness: bad.map(|(g, _, h)| {
            Witness::graph(graph6_encode(g), format!("switched to {}", graph6_encode(h.as_ref().unwrap())))
        }),
        markers: Vec::new(),
    });

    let all = enumerate_gentri(n_max)?;
    let rows: Vec<(bool, bool, bool)> = all
        .par_iter()
        .map(|g| {
            let k = in_K1K2(g)?;
            let ham = hamiltonian_path(g)?.is_some();
            let form_ok = if k {
                let f = to_ham_form(g)?;
                is_ham_path(&f.graph, &f.path) && engine.polynomial(&f.graph) == engine.polynomial(g)
            } else {
                true
            };
            Ok((k, ham, form_ok))
        })
        .collect::<Result<_, VerifyError>>()?;
    let members = rows.iter().filter(|r| r.0).count();
    let bad = all.iter().zip(&rows).find(|(_, r)| !r.2);
    out.push(Check {
        name: format!("to_ham_form gives a Hamiltonian path and the same polynomial (n <= {n_max})"),
        passed: bad.is_none(),
        instances: members as u64,
        detail: json!({ "members": members }),
        witness: bad.map(|(g, _)| Witness::graph(graph6_encode(g), "switched form invalid".into())),
        markers: Vec::new(),
    });
    let with_path = rows.iter().filter(|r| r.1).count();
    let bad = all.iter().zip(&rows).find(|(_, r)| r.1 && !r.0);
    out.push(Check {
        name: format!("Hamiltonian path implies K1 and K2 (n <= {n_max})"),
        passed: bad.is_none(),
        instances: all.len() as u64,
        detail: json!({ "graphs": all.len(), "with_path": with_path, "in_K1K2": members }),
        witness: bad.map(|(g, _)| Witness::graph(graph6_encode(g), "Hamiltonian but outside K1 and K2".into())),
        markers: Vec::new(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::certify_constants;

    #[test]
    fn small_scans() {
        let table = certify_constants();
        for f in ClassFilter::ALL {
            let r = omega_scan(f, 9, &table).unwrap();
            assert!(r.check.passed, "{:?}", r.check);
        }
        assert_eq!(ClassFilter::parse("k1k2"), Some(ClassFilter::K1K2));
    }

    #[test]
    fn minimal_obstructions_small() {
        let checks = crosscheck_forbidden_minors(9).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert_eq!(checks[4].detail["found"].as_array().unwrap().len(), 1);
        let checks = crosscheck_forbidden_minors(7).unwrap();
        assert!(checks[4].detail["found"].as_array().unwrap().is_empty());
        assert!(checks[5].detail["found"].as_array().unwrap().is_empty());
    }

    #[test]
    fn minor_orders_disagree_at_eleven() {
        let at9 = crosscheck_minor_orders(9).unwrap();
        assert!(at9.iter().all(|c| c.passed));
        let at11 = crosscheck_minor_orders(11).unwrap();
        assert!(at11[0].passed);
        assert!(!at11[1].passed);
        assert_eq!(at11[1].detail["mismatched_pairs"], json!(["H??HmJw <= J??@e?NLEO_"]));
    }

    #[test]
    fn structural_small() {
        let checks = structural_checks(9, 9).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
