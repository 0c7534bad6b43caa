//! Text, CSV and JSON renderings of verification cells and bound tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::BoundRow;
use crate::error::{Error, Result};
use crate::verify::{Summary, VerificationCell};

/// Output format for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// Rendering switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: Format,
    /// When false the millis column is written as 0 so that repeated runs
    /// produce identical bytes.
    pub timing: bool,
    /// Append mismatch diagnostics after the text table.
    pub diagnostics: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            format: Format::Text,
            timing: true,
            diagnostics: true,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    op: &'a str,
    status: &'a str,
    m: String,
    n: usize,
    expected: String,
    measured: String,
    verdict: &'a str,
    millis: u64,
}

fn opt<T: ToString>(v: Option<T>, none: &str) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| none.to_string())
}

fn millis(cell: &VerificationCell, timing: bool) -> u64 {
    if timing {
        cell.millis
    } else {
        0
    }
}

/// Renders cells in the requested format.
pub fn render_cells(cells: &[VerificationCell], opts: RenderOptions) -> Result<String> {
    match opts.format {
        Format::Text => Ok(render_text(cells, opts)),
        Format::Csv => render_csv(cells, opts.timing),
        Format::Json => render_json(cells, opts.timing),
    }
}

fn render_text(cells: &[VerificationCell], opts: RenderOptions) -> String {
    let rows: Vec<[String; 8]> = cells
        .iter()
        .map(|c| {
            [
                c.op.slug().to_string(),
                c.status.to_string(),
                opt(c.m, "-"),
                c.n.to_string(),
                opt(c.expected, "open"),
                opt(c.measured, "-"),
                c.verdict.to_string(),
                c.witnesses.clone(),
            ]
        })
        .collect();
    let header = ["op", "status", "m", "n", "expected", "measured", "verdict", "witnesses"];
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, v) in widths.iter_mut().zip(r) {
            *w = (*w).max(v.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cols: &[&str], ms: &str| {
        for (i, (v, w)) in cols.iter().zip(widths).enumerate() {
            if i == cols.len() - 1 {
                out.push_str(v);
            } else {
                let _ = write!(out, "{v:<w$}  ");
            }
        }
        if opts.timing {
            let _ = write!(out, "  {ms}");
        }
        out.push('\n');
    };
    line(&header, "ms");
    for (r, c) in rows.iter().zip(cells) {
        let cols: Vec<&str> = r.iter().map(String::as_str).collect();
        line(&cols, &c.millis.to_string());
    }
    let _ = writeln!(out, "{}", Summary::of(cells));
    if opts.diagnostics {
        for c in cells {
            if let Some(note) = &c.note {
                let _ = writeln!(out, "note {} m={} n={}: {note}", c.op.slug(), opt(c.m, "-"), c.n);
            }
            if let Some(d) = &c.diagnostics {
                let _ = writeln!(
                    out,
                    "\n== {} {} m={} n={} {}",
                    c.verdict,
                    c.op.slug(),
                    opt(c.m, "-"),
                    c.n,
                    c.witnesses
                );
                out.push_str(d);
            }
        }
    }
    out
}

fn render_csv(cells: &[VerificationCell], timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in cells {
        w.serialize(CsvRow {
            op: c.op.slug(),
            status: c.status.as_str(),
            m: opt(c.m, ""),
            n: c.n,
            expected: opt(c.expected, "open"),
            measured: opt(c.measured, ""),
            verdict: c.verdict.as_str(),
            millis: millis(c, timing),
        })
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_json(cells: &[VerificationCell], timing: bool) -> Result<String> {
    let cells: Vec<VerificationCell> = cells
        .iter()
        .map(|c| VerificationCell {
            millis: millis(c, timing),
            ..c.clone()
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&cells).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// The bound table as CSV with columns `op,status,formula,m,n,value`.
pub fn render_bound_table(rows: &[BoundRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    finish_csv(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{bound_table, OperationId};
    use crate::determinize::DEFAULT_SUBSET_CAP;
    use crate::verify::verify_cell;

    fn cells() -> Vec<VerificationCell> {
        vec![
            verify_cell(OperationId::Star, 4, 4, DEFAULT_SUBSET_CAP).unwrap(),
            verify_cell(OperationId::ConcatStarRight, 4, 5, DEFAULT_SUBSET_CAP).unwrap(),
            verify_cell(OperationId::StarOfSymDiff, 3, 3, DEFAULT_SUBSET_CAP).unwrap(),
        ]
    }

    #[test]
    fn csv_columns() {
        let opts = RenderOptions { format: Format::Csv, timing: false, diagnostics: false };
        let out = render_cells(&cells(), opts).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("op,status,m,n,expected,measured,verdict,millis"));
        assert_eq!(lines.next(), Some("star,theorem,,4,12,12,match,0"));
        assert_eq!(lines.next(), Some("k-lstar,theorem,4,5,88,88,match,0"));
        assert!(lines.next().unwrap().starts_with("symdiff-star,open,3,3,open,"));
    }

    #[test]
    fn json_mirrors_cells() {
        let opts = RenderOptions { format: Format::Json, timing: false, diagnostics: false };
        let out = render_cells(&cells(), opts).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[1]["op"], "k-lstar");
        assert_eq!(v[1]["measured"], 88);
        assert_eq!(v[1]["verdict"], "match");
        assert_eq!(v[0]["m"], serde_json::Value::Null);
        assert_eq!(v[2]["expected"], serde_json::Value::Null);
        assert_eq!(v[2]["millis"], 0);
    }

    #[test]
    fn text_without_timing_is_stable() {
        let opts = RenderOptions { format: Format::Text, timing: false, diagnostics: true };
        let a = render_cells(&cells(), opts).unwrap();
        assert_eq!(a, render_cells(&cells(), opts).unwrap());
        assert!(a.starts_with("op "));
        assert!(a.contains("open-measured"));
        assert!(a.contains("match=2"));
    }

    #[test]
    fn bound_table_csv() {
        let rows = bound_table(&[OperationId::ConcatStarBoth], 4..=4, 5..=5);
        let out = render_bound_table(&rows).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("op,status,formula,m,n,value"));
        assert!(lines.next().unwrap().ends_with(",4,5,226"));
    }
}
