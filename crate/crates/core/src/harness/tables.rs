use super::{ordered_map, ReportRow, RowBase};
use crate::error::{Error, Result};
use crate::evaluators::{algebraic_minus, algebraic_plus, direct_sum, SeriesParams, Sign};
use crate::kernel::rel_diff;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Oracle tolerance for the "truth" column of every table.
const TRUTH_TOL: f64 = 1e-15;
/// Budget for four printed significant figures.
const ERROR_CELL_TOL: f64 = 0.02;
/// Budget for six printed significant figures.
const VALUE_CELL_TOL: f64 = 1e-5;
/// Complex-a cells of Table 2 away from the real axis.
const ROTATED_CELL_TOL: f64 = 0.05;

const TABLE1_A: [f64; 3] = [6.0, 8.0, 10.0];
const TABLE1_K: [usize; 6] = [0, 1, 2, 4, 6, 8];
const TABLE1_ERRORS: [[f64; 3]; 6] = [
    [1.775e-3, 4.859e-4, 6.275e-4],
    [5.148e-5, 1.593e-5, 6.455e-6],
    [2.681e-6, 4.738e-7, 1.233e-7],
    [5.156e-8, 1.959e-9, 1.713e-10],
    [1.278e-8, 2.411e-10, 1.000e-11],
    [3.294e-9, 3.834e-12, 7.940e-14],
];
const TABLE1_VALUES: [f64; 3] = [1.22060e-1, 9.14725e-2, 7.31518e-2];

const TABLE2_PHI: [f64; 5] = [0.0, 0.10, 0.20, 0.30, 0.40];
const TABLE2_COLUMNS: [(f64, f64); 3] = [(0.25, 0.5), (0.75, 1.5), (1.0 / 3.0, 0.2)];
const TABLE2_K: usize = 8;
const TABLE2_ERRORS: [[f64; 3]; 5] = [
    [4.497e-9, 4.157e-10, 1.006e-8],
    [8.383e-9, 2.293e-9, 2.798e-8],
    [6.178e-8, 1.005e-8, 3.321e-7],
    [2.088e-6, 1.098e-7, 1.667e-5],
    [2.615e-4, 5.917e-6, 2.698e-3],
];

const TABLE3_A: [f64; 3] = [10.0, 15.0, 20.0];
const TABLE3_ERRORS: [[f64; 3]; 6] = [
    [2.959e-3, 1.358e-3, 7.736e-4],
    [1.991e-4, 4.293e-5, 1.408e-5],
    [3.864e-5, 3.962e-6, 7.525e-7],
    [1.485e-5, 7.268e-7, 8.054e-8],
    [9.491e-6, 2.214e-7, 1.433e-8],
    [9.129e-6, 1.010e-7, 3.817e-9],
];
const TABLE3_VALUES: [f64; 3] = [4.98789e-1, 4.07911e-1, 3.53467e-1];

/// What a cell holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// Relative error of the algebraic expansion truncated at k.
    ErrorAt(usize),
    /// The series value itself.
    Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub row_id: String,
    pub params: SeriesParams,
    pub kind: CellKind,
    pub reference: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub table_id: u8,
    pub cells: Vec<TableCell>,
}

/// Reading of the angle in Table 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// a = 6e^{iπφ}
    PiPhi,
    /// a = 6e^{iφ}
    Phi,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::PiPhi, Convention::Phi];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::PiPhi => "pi_phi",
            Convention::Phi => "phi",
        }
    }

    fn angle(self, phi: f64) -> f64 {
        match self {
            Convention::PiPhi => PI * phi,
            Convention::Phi => phi,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi_phi" => Ok(Convention::PiPhi),
            "phi" => Ok(Convention::Phi),
            other => Err(Error::domain(format!("unknown convention '{other}' (expected pi_phi or phi)"))),
        }
    }
}

fn real_params(sign: Sign, mu: f64, lambda: f64, a: f64) -> SeriesParams {
    SeriesParams { mu, lambda, a: Complex64::new(a, 0.0), sign }
}

fn square_table(
    table_id: u8,
    sign: Sign,
    mu: f64,
    a_values: &[f64; 3],
    ks: &[usize],
    errors: &[[f64; 3]],
    values: &[f64; 3],
) -> TableSpec {
    let mut cells = Vec::new();
    for (i, &k) in ks.iter().enumerate() {
        for (j, &a) in a_values.iter().enumerate() {
            cells.push(TableCell {
                row_id: format!("a={a}/k={k}"),
                params: real_params(sign, mu, 1.0, a),
                kind: CellKind::ErrorAt(k),
                reference: errors[i][j],
                tolerance: ERROR_CELL_TOL,
            });
        }
    }
    for (j, &a) in a_values.iter().enumerate() {
        cells.push(TableCell {
            row_id: format!("a={a}/S"),
            params: real_params(sign, mu, 1.0, a),
            kind: CellKind::Value,
            reference: values[j],
            tolerance: VALUE_CELL_TOL,
        });
    }
    TableSpec { table_id, cells }
}

/// λ = 1, μ = ½, alternating series.
pub fn table1_spec() -> TableSpec {
    square_table(1, Sign::Minus, 0.5, &TABLE1_A, &TABLE1_K, &TABLE1_ERRORS, &TABLE1_VALUES)
}

/// λ = 1, μ = ¼, non-alternating series, common truncation k = 0…5.
pub fn table3_spec() -> TableSpec {
    let ks: Vec<usize> = (0..6).collect();
    square_table(3, Sign::Plus, 0.25, &TABLE3_A, &ks, &TABLE3_ERRORS, &TABLE3_VALUES)
}

/// |a| = 6 on the rays of the chosen convention, k = 8, alternating series.
pub fn table2_spec(convention: Convention) -> TableSpec {
    let mut cells = Vec::new();
    for (i, &phi) in TABLE2_PHI.iter().enumerate() {
        for (j, &(mu, lambda)) in TABLE2_COLUMNS.iter().enumerate() {
            let a = Complex64::from_polar(6.0, convention.angle(phi));
            cells.push(TableCell {
                row_id: format!("{convention}/phi={phi:.2}/mu={mu:.4}/lambda={lambda}"),
                params: SeriesParams { mu, lambda, a, sign: Sign::Minus },
                kind: CellKind::ErrorAt(TABLE2_K),
                reference: TABLE2_ERRORS[i][j],
                tolerance: if phi == 0.0 { ERROR_CELL_TOL } else { ROTATED_CELL_TOL },
            });
        }
    }
    TableSpec { table_id: 2, cells }
}

fn cell_value(cell: &TableCell) -> Result<f64> {
    let p = &cell.params;
    let truth = direct_sum(p, TRUTH_TOL)?.value;
    match cell.kind {
        CellKind::Value => Ok(truth.re),
        CellKind::ErrorAt(k) => {
            let approx = match p.sign {
                Sign::Minus => algebraic_minus(p, k)?,
                Sign::Plus => algebraic_plus(p, k)?,
            };
            Ok(rel_diff(approx.value, truth))
        }
    }
}

fn evaluate_cell(table_id: u8, cell: &TableCell) -> ReportRow {
    let p = &cell.params;
    let base = RowBase {
        table: table_id.to_string(),
        row_id: cell.row_id.clone(),
        sign: p.sign,
        mu: p.mu,
        lambda: p.lambda,
        a_re: p.a.re,
        a_im: p.a.im,
        k: match cell.kind {
            CellKind::ErrorAt(k) => Some(k),
            CellKind::Value => None,
        },
    };
    let computed = cell_value(cell).unwrap_or(f64::NAN);
    ReportRow::compared(base, computed, cell.reference, cell.tolerance)
}

/// Evaluates every cell of `spec`, in spec order.
pub fn reproduce_table(spec: &TableSpec) -> Vec<ReportRow> {
    ordered_map(&spec.cells, |c| evaluate_cell(spec.table_id, c))
}

pub fn reproduce_table1() -> Vec<ReportRow> {
    reproduce_table(&table1_spec())
}

pub fn reproduce_table2(convention: Convention) -> Vec<ReportRow> {
    reproduce_table(&table2_spec(convention))
}

pub fn reproduce_table3() -> Vec<ReportRow> {
    reproduce_table(&table3_spec())
}

/// Both readings of Table 2 side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Resolution {
    /// Cells for every convention followed by one summary row per
    /// convention (`computed` = cells within tolerance, `reference` = cell
    /// count).
    pub rows: Vec<ReportRow>,
    /// The convention under which every cell matches, when exactly one does.
    pub matching: Option<Convention>,
}

pub fn resolve_table2() -> Table2Resolution {
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    let mut full_matches = Vec::new();
    for convention in Convention::ALL {
        let cells = reproduce_table2(convention);
        let passed = cells.iter().filter(|r| r.pass).count();
        if passed == cells.len() {
            full_matches.push(convention);
        }
        let base = RowBase {
            table: "2".into(),
            row_id: format!("convention={convention}"),
            sign: Sign::Minus,
            mu: 0.0,
            lambda: 0.0,
            a_re: 6.0,
            a_im: 0.0,
            k: Some(TABLE2_K),
        };
        summaries.push(ReportRow::compared(base, passed as f64, cells.len() as f64, 0.0));
        rows.extend(cells);
    }
    rows.extend(summaries);
    let matching = if full_matches.len() == 1 { Some(full_matches[0]) } else { None };
    Table2Resolution { rows, matching }
}
