//! Deterministic file formats: tabular CSV/JSON with metadata headers and
//! the wavefunction JSON interchange format.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// 17 significant digits: round-trips every f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Float(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    pub fn from_name(name: &str) -> Result<Self, CliError> {
        match name {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(CliError::Config(format!(
                "output.format must be csv or json, got {other}"
            ))),
        }
    }
}

/// A metadata-carrying table, written as CSV with `#` header lines or as a
/// single JSON document depending on the configured output format.
pub struct TableWriter {
    command: String,
    metadata: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    format: TableFormat,
}

impl TableWriter {
    pub fn new(command: &str, metadata: &[(&str, String)], format: TableFormat) -> Self {
        Self {
            command: command.to_string(),
            metadata: metadata
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            columns: vec![],
            rows: vec![],
            format,
        }
    }

    pub fn header(&mut self, columns: &[String]) {
        self.columns = columns.to_vec();
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        self.rows.push(cells);
    }

    /// Writes `<stem>.csv` or `<stem>.json` and returns the path.
    pub fn write(self, directory: &Path, stem: &str) -> Result<PathBuf, CliError> {
        let (path, text) = match self.format {
            TableFormat::Csv => {
                let mut buf = String::new();
                let _ = writeln!(buf, "# format_version = {FORMAT_VERSION}");
                let _ = writeln!(buf, "# command = {}", self.command);
                for (key, value) in &self.metadata {
                    let _ = writeln!(buf, "# {key} = {value}");
                }
                let _ = writeln!(buf, "{}", self.columns.join(","));
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(Cell::csv).collect();
                    let _ = writeln!(buf, "{}", fields.join(","));
                }
                (directory.join(format!("{stem}.csv")), buf)
            }
            TableFormat::Json => {
                let metadata: serde_json::Map<String, serde_json::Value> = self
                    .metadata
                    .iter()
                    .map(|(k, v)| (k.clone(), json!(v)))
                    .collect();
                let doc = json!({
                    "format_version": FORMAT_VERSION,
                    "command": self.command,
                    "metadata": metadata,
                    "columns": self.columns,
                    "rows": self.rows.iter()
                        .map(|r| r.iter().map(Cell::json).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
                let mut text = serde_json::to_string_pretty(&doc)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                text.push('\n');
                (directory.join(format!("{stem}.json")), text)
            }
        };
        std::fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WavefunctionGrid {
    pub n: usize,
    pub theta0: f64,
    pub dtheta: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WavefunctionFile {
    pub version: u32,
    pub grid: WavefunctionGrid,
    pub amplitudes: Vec<[f64; 2]>,
}

pub fn write_wavefunction(
    path: &Path,
    psi: &gauge_ring::RingWavefunction,
) -> Result<(), CliError> {
    let file = WavefunctionFile {
        version: FORMAT_VERSION,
        grid: WavefunctionGrid {
            n: psi.len(),
            theta0: psi.theta(0),
            dtheta: psi.dtheta(),
        },
        amplitudes: psi.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
    };
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_wavefunction(path: &Path) -> Result<gauge_ring::RingWavefunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::MissingInput(format!("{}: {e}", path.display())))?;
    let file: WavefunctionFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if file.version != FORMAT_VERSION {
        return Err(CliError::VersionMismatch {
            found: file.version,
            expected: FORMAT_VERSION,
        });
    }
    if file.amplitudes.len() != file.grid.n {
        return Err(CliError::Config(format!(
            "{}: grid.n = {} but {} amplitudes",
            path.display(),
            file.grid.n,
            file.amplitudes.len()
        )));
    }
    let amplitudes: Vec<Complex64> = file
        .amplitudes
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    gauge_ring::RingWavefunction::new(amplitudes)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
