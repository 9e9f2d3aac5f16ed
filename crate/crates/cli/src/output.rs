use clap::ValueEnum;
use mxsum::coefficients::CoefficientTable;
use mxsum::evaluators::{Evaluation, Route, SeriesParams};
use mxsum::harness::{render_report, ReportFormat, ReportRow};
use mxsum::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

pub struct Destination(Option<PathBuf>);

impl From<Option<PathBuf>> for Destination {
    fn from(p: Option<PathBuf>) -> Self {
        Self(p)
    }
}

impl Destination {
    pub fn write(&self, text: &str) -> Result<()> {
        match &self.0 {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() }),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
            }
        }
    }
}

/// Shortest round-trip form, switching to scientific notation for very small
/// or very large magnitudes.
fn num(v: f64) -> String {
    if v != 0.0 && v.is_finite() && !(1e-4..1e16).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn buffer_error(e: impl std::fmt::Display) -> Error {
    Error::Io { path: "<buffer>".into(), message: e.to_string() }
}

fn to_csv<T: Serialize>(records: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(buffer_error)?;
    }
    let bytes = w.into_inner().map_err(buffer_error)?;
    String::from_utf8(bytes).map_err(buffer_error)
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(buffer_error)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    sign: &'a str,
    mu: f64,
    lambda: f64,
    a_re: f64,
    a_im: f64,
    route: &'a str,
    method: &'a str,
    value_re: f64,
    value_im: f64,
    error_estimate: f64,
    truncation_index: usize,
    tail_terms_used: usize,
    notes: &'a str,
}

pub fn render_evaluation(p: &SeriesParams, route: Route, e: &Evaluation, format: Format) -> Result<String> {
    let record = EvalRecord {
        sign: p.sign.as_str(),
        mu: p.mu,
        lambda: p.lambda,
        a_re: p.a.re,
        a_im: p.a.im,
        route: route.as_str(),
        method: e.method.as_str(),
        value_re: e.value.re,
        value_im: e.value.im,
        error_estimate: e.error_estimate,
        truncation_index: e.truncation_index,
        tail_terms_used: e.tail_terms_used,
        notes: &e.notes,
    };
    match format {
        Format::Csv => to_csv(&[record]),
        Format::Json => to_json(&record),
        Format::Text => {
            let mut s = String::new();
            if p.a.im == 0.0 && e.value.im == 0.0 {
                writeln!(s, "value            {}", num(e.value.re)).ok();
            } else {
                let sign = if e.value.im.is_sign_negative() { '-' } else { '+' };
                writeln!(s, "value            {} {sign} {}i", num(e.value.re), num(e.value.im.abs())).ok();
            }
            writeln!(s, "method           {}", e.method).ok();
            writeln!(s, "error_estimate   {}", num(e.error_estimate)).ok();
            writeln!(s, "truncation_index {}", e.truncation_index).ok();
            writeln!(s, "tail_terms_used  {}", e.tail_terms_used).ok();
            if !e.notes.is_empty() {
                writeln!(s, "notes            {}", e.notes).ok();
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct CoefficientRecord<'a> {
    kind: &'a str,
    k: usize,
    lambda: f64,
    value: f64,
}

pub fn render_coefficients(t: &CoefficientTable, format: Format) -> Result<String> {
    let kind = t.kind.to_string();
    let records: Vec<CoefficientRecord> = t
        .values
        .iter()
        .enumerate()
        .map(|(k, &value)| CoefficientRecord { kind: &kind, k, lambda: t.lambda, value })
        .collect();
    match format {
        Format::Json => to_json(&records),
        Format::Csv | Format::Text => to_csv(&records),
    }
}

pub fn render_rows(rows: &[ReportRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => render_report(rows, ReportFormat::Csv),
        Format::Json => render_report(rows, ReportFormat::Json),
        Format::Text => {
            let mut s = String::new();
            for r in rows {
                let reference = r.reference.map(num).unwrap_or_else(|| "-".into());
                let rel = r.rel_error.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into());
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                writeln!(s, "{verdict} {:<6} {:<40} {:<24} {:<12} {rel}", r.table, r.row_id, num(r.computed), reference)
                    .ok();
            }
            Ok(s)
        }
    }
}
