//! Matrix import/export and report emitters.

use std::fmt::Write as _;
use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curvature::SymmetricOperator;
use crate::error::{Error, Result};
use crate::lie::pair_count;
use crate::shi::TableCell;
use crate::spectral::SpectralReport;

pub const SCHEMA: &str = "curvlab-report/1";
pub const BASIS: &str = "lex-wedge";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Argument(format!("unknown format {s:?}, expected json, markdown or csv"))),
        }
    }
}

/// Operator dimension n with n(n−1)/2 = size.
pub fn dim_for_size(size: usize) -> Result<usize> {
    (2..=64)
        .find(|&n| pair_count(n) == size)
        .ok_or_else(|| Error::Argument(format!("{size} is not of the form n(n-1)/2")))
}

/// Row-major CSV, one matrix row per line.
pub fn write_matrix_csv<W: Write>(m: &DMatrix<f64>, out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for row in m.row_iter() {
        writer.write_record(row.iter().map(|x| format!("{x:e}")))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_matrix_csv<R: Read>(input: R) -> Result<DMatrix<f64>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(input);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Argument(format!("bad matrix entry {s:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let size = rows.len();
    if rows.iter().any(|r| r.len() != size) {
        return Err(Error::Argument("matrix CSV must be square".into()));
    }
    Ok(DMatrix::from_fn(size, size, |i, j| rows[i][j]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEnvelope {
    pub dim: usize,
    pub basis: String,
    pub mat: Vec<Vec<f64>>,
}

impl MatrixEnvelope {
    pub fn from_operator(op: &SymmetricOperator) -> Self {
        MatrixEnvelope {
            dim: op.dim,
            basis: BASIS.to_string(),
            mat: op.mat.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    pub fn into_operator(self) -> Result<SymmetricOperator> {
        if self.basis != BASIS {
            return Err(Error::Argument(format!("unsupported basis {:?}, expected {BASIS:?}", self.basis)));
        }
        let size = pair_count(self.dim);
        if self.mat.len() != size || self.mat.iter().any(|r| r.len() != size) {
            return Err(Error::Argument(format!("matrix for dim {} must be {size}x{size}", self.dim)));
        }
        let m = DMatrix::from_fn(size, size, |i, j| self.mat[i][j]);
        SymmetricOperator::new(self.dim, m)
    }
}

pub fn write_operator_json<W: Write>(op: &SymmetricOperator, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, &MatrixEnvelope::from_operator(op))?;
    Ok(())
}

pub fn read_operator_json<R: Read>(input: R) -> Result<SymmetricOperator> {
    let env: MatrixEnvelope = serde_json::from_reader(input)?;
    env.into_operator()
}

/// Versioned JSON wrapper around any report payload.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: &'static str,
    pub kind: &'a str,
    pub data: &'a T,
}

pub fn to_json<T: Serialize>(kind: &str, data: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, kind, data })?;
    s.push('\n');
    Ok(s)
}

fn fmt_num(x: f64) -> String {
    if x == 0.0 || (1e-3..1e7).contains(&x.abs()) {
        format!("{x:.10}").trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.6e}")
    }
}

/// Shi constants laid out as rows n = 11, 10, 9, 8 and columns C1, C2, C3.
pub fn shi_table_markdown(cells: &[TableCell]) -> String {
    let mut out = String::from("| n | C1(n) | C2(n) | C3(n) |\n|---|---|---|---|\n");
    let mut dims: Vec<usize> = cells.iter().map(|c| c.n).collect();
    dims.dedup();
    for n in dims {
        let row: Vec<String> = (1..=3u8)
            .map(|k| {
                cells
                    .iter()
                    .find(|c| c.n == n && c.order == k)
                    .map(|c| format!("{} ({})", fmt_num(c.published), fmt_num(c.formula)))
                    .unwrap_or_default()
            })
            .collect();
        let _ = writeln!(out, "| {n} | {} |", row.join(" | "));
    }
    out
}

pub fn shi_table_csv(cells: &[TableCell]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "order", "published", "formula", "dominated"])?;
    for c in cells {
        w.write_record([
            c.n.to_string(),
            c.order.to_string(),
            fmt_num(c.published),
            format!("{:.6}", c.formula),
            c.dominated().to_string(),
        ])?;
    }
    finish_csv(w)
}

pub fn clusters_csv(report: &SpectralReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eigenvalue", "multiplicity", "spread"])?;
    for c in &report.clusters {
        w.write_record([format!("{:.15e}", c.value), c.multiplicity.to_string(), format!("{:.3e}", c.spread)])?;
    }
    finish_csv(w)
}

pub fn clusters_markdown(report: &SpectralReport) -> String {
    let mut out = String::from("| eigenvalue | eigenvalue / sqrt(3/2) | multiplicity |\n|---|---|---|\n");
    for c in &report.clusters {
        let _ = writeln!(
            out,
            "| {:.12} | {:.12} | {} |",
            c.value,
            c.value / crate::models::LAMBDA_CRIT,
            c.multiplicity
        );
    }
    out
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Argument(e.to_string()))
}

/// Writes `contents` to `path`, or to stdout when `path` is `None` or "-".
pub fn write_output(path: Option<&std::path::Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::write(p, contents)?,
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
