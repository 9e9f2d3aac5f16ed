//! Reproduction of the published error tables, the tail-agreement and
//! decay-rate checks, and report emission.

mod checks;
mod report;
mod tables;

pub use checks::{check_suite, decay_rate_fit, tail_agreement_check, TailAgreement, DECAY_GRID};
pub use report::{emit_report, render_report, ReportFormat, CSV_HEADER};
pub use tables::{
    reproduce_table, reproduce_table1, reproduce_table2, reproduce_table3, resolve_table2, table1_spec,
    table2_spec, table3_spec, CellKind, Convention, Table2Resolution, TableCell, TableSpec,
};

use crate::evaluators::Sign;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Environment variable capping harness parallelism; 0 runs serially.
pub const THREADS_ENV: &str = "MXSUM_THREADS";

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub table: String,
    pub row_id: String,
    pub sign: Sign,
    pub mu: f64,
    pub lambda: f64,
    pub a_re: f64,
    pub a_im: f64,
    pub k: Option<usize>,
    pub computed: f64,
    pub reference: Option<f64>,
    pub rel_error: Option<f64>,
    pub pass: bool,
    /// Acceptance tolerance applied to `rel_error` (or to `computed` for
    /// threshold checks); not part of the emitted columns.
    #[serde(skip)]
    pub tolerance_used: f64,
}

impl ReportRow {
    /// Row compared against a reference value: passes when the relative
    /// difference is within `tolerance`.
    pub(crate) fn compared(base: RowBase, computed: f64, reference: f64, tolerance: f64) -> Self {
        let rel = (computed - reference).abs() / reference.abs();
        Self {
            table: base.table,
            row_id: base.row_id,
            sign: base.sign,
            mu: base.mu,
            lambda: base.lambda,
            a_re: base.a_re,
            a_im: base.a_im,
            k: base.k,
            computed,
            reference: Some(reference),
            rel_error: Some(rel),
            pass: rel <= tolerance,
            tolerance_used: tolerance,
        }
    }

    /// Row that passes when `computed` does not exceed `threshold`.
    pub(crate) fn bounded(base: RowBase, computed: f64, threshold: f64) -> Self {
        Self {
            table: base.table,
            row_id: base.row_id,
            sign: base.sign,
            mu: base.mu,
            lambda: base.lambda,
            a_re: base.a_re,
            a_im: base.a_im,
            k: base.k,
            computed,
            reference: None,
            rel_error: None,
            pass: computed <= threshold,
            tolerance_used: threshold,
        }
    }
}

/// Identifying columns shared by every row constructor.
#[derive(Debug, Clone)]
pub(crate) struct RowBase {
    pub table: String,
    pub row_id: String,
    pub sign: Sign,
    pub mu: f64,
    pub lambda: f64,
    pub a_re: f64,
    pub a_im: f64,
    pub k: Option<usize>,
}

fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok()
}

/// Maps `f` over `items`, in parallel unless [`THREADS_ENV`] is 0, keeping
/// input order.
pub(crate) fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match thread_limit() {
        Some(0) => items.iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
        None => items.par_iter().map(f).collect(),
    }
}
