use super::ReportRow;
use crate::error::{Error, Result};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

pub const CSV_HEADER: [&str; 12] =
    ["table", "row_id", "sign", "mu", "lambda", "a_re", "a_im", "k", "computed", "reference", "rel_error", "pass"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::domain(format!("unknown report format '{other}'"))),
        }
    }
}

fn io_error(path: &str, e: impl fmt::Display) -> Error {
    Error::Io { path: path.to_string(), message: e.to_string() }
}

/// The report as text. CSV always starts with [`CSV_HEADER`], even for no rows.
pub fn render_report(rows: &[ReportRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(|e| io_error("<buffer>", e))?;
            for row in rows {
                w.serialize(row).map_err(|e| io_error("<buffer>", e))?;
            }
            let bytes = w.into_inner().map_err(|e| io_error("<buffer>", e))?;
            String::from_utf8(bytes).map_err(|e| io_error("<buffer>", e))
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| io_error("<buffer>", e))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Writes the report to `destination`, or to standard output when `None`.
pub fn emit_report(rows: &[ReportRow], format: ReportFormat, destination: Option<&Path>) -> Result<()> {
    let text = render_report(rows, format)?;
    match destination {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(&path.display().to_string(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| io_error("<stdout>", e))?;
            out.flush().map_err(|e| io_error("<stdout>", e))
        }
    }
}
