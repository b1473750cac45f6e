//! Numerical verification harness: constants, lemma sweeps, omega scans,
//! minor cross-checks and the structural suite, all reported through
//! [`Report`].

mod constants;
mod grid;
mod lemmas;
mod report;
mod scan;

pub use constants::{
    certificate_width, certify_constants, check_constants_inequalities, constants_lhs, lemma_constants,
    ConstantsTable, GridOutOfRange, K23_POLY, Q_POLY, T0_POLY, T1_POLY,
};
pub use grid::{TGrid, MIN_SAMPLES};
pub use lemmas::{gen_edge_pool, verify_K1_lemma, verify_K2_lemma};
pub use report::{Check, Marker, Report, Witness};
pub use scan::{
    crosscheck_forbidden_minors, crosscheck_minor_orders, j_sequence_checks, omega_scan, structural_checks,
    ClassFilter, OmegaResult,
};

use serde_json::json;
use thiserror::Error;

use crate::classes::ClassError;
use crate::gentri::GentriError;
use crate::poly::rat;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Gentri(#[from] GentriError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("grid {0} is outside the lemma's range")]
    Grid(String),
}

/// Parameters of the full suite.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Bound for lemma sweeps, omega scans and the structural suite.
    pub sweep_n: usize,
    /// Bound for the minor-order and forbidden-minor cross-checks.
    pub minor_n: usize,
    /// Bound for the Whitney switch sweep, which needs more instances.
    pub whitney_n: usize,
    pub min_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { sweep_n: 13, minor_n: 11, whitney_n: 15, min_samples: MIN_SAMPLES }
    }
}

/// The default grids: `(1, 5/4]` and `(1, q_minus]`.
pub fn default_grids(table: &ConstantsTable, min_samples: usize) -> (TGrid, TGrid) {
    (
        TGrid::dyadic(rat(1, 1), rat(5, 4), min_samples),
        TGrid::dyadic(rat(1, 1), table.q_minus.clone(), min_samples),
    )
}

/// Every check, in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "verify",
        json!({
            "sweep_n": opts.sweep_n,
            "minor_n": opts.minor_n,
            "whitney_n": opts.whitney_n,
            "min_samples": opts.min_samples,
        }),
    );
    let table = certify_constants();
    let (g1, g2) = default_grids(&table, opts.min_samples);
    report.extend(table.checks());
    report.extend(check_constants_inequalities(&table, &g2).map_err(|_| VerifyError::Grid(g2.describe()))?);
    report.extend(verify_K1_lemma(opts.sweep_n, &g1)?.checks);
    report.extend(verify_K2_lemma(opts.sweep_n, &g2, &table)?.checks);
    for filter in ClassFilter::ALL {
        report.push(omega_scan(filter, opts.sweep_n, &table)?.check);
    }
    report.extend(j_sequence_checks(&table));
    report.extend(crosscheck_minor_orders(opts.minor_n)?);
    report.extend(crosscheck_forbidden_minors(opts.minor_n)?);
    report.extend(structural_checks(opts.sweep_n, opts.whitney_n)?);
    Ok(report)
}
