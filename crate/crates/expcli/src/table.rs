//! Rectangular result tables with a typed column schema, written as CSV plus
//! a JSON metadata sidecar.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{ExpError, Result};

/// Bumped whenever a column is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Integer,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    /// Empty for dimensionless quantities.
    pub unit: String,
    pub kind: Kind,
}

impl Column {
    pub fn real(name: &str, unit: &str) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            kind: Kind::Real,
        }
    }

    pub fn integer(name: &str) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            kind: Kind::Integer,
        }
    }

    pub fn text(name: &str) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            kind: Kind::Text,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Integer(i64),
    Text(String),
}

impl Cell {
    fn kind(&self) -> Kind {
        match self {
            Cell::Real(_) => Kind::Real,
            Cell::Integer(_) => Kind::Integer,
            Cell::Text(_) => Kind::Text,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Real(x) => Some(x),
            Cell::Integer(i) => Some(i as f64),
            Cell::Text(_) => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Shortest representation that parses back to the same value.
    fn render(&self) -> String {
        match self {
            Cell::Real(x) => format!("{x:?}"),
            Cell::Integer(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn parse(kind: Kind, field: &str) -> Option<Self> {
        match kind {
            Kind::Real => field.parse().ok().map(Cell::Real),
            Kind::Integer => field.parse().ok().map(Cell::Integer),
            Kind::Text => Some(Cell::Text(field.to_owned())),
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cell::Real(a), Cell::Real(b)) => a.total_cmp(b),
            (Cell::Integer(a), Cell::Integer(b)) => a.cmp(b),
            (Cell::Text(a), Cell::Text(b)) => a.cmp(b),
            _ => (self.kind() as u8).cmp(&(other.kind() as u8)),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Integer(i as i64)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Integer(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    /// File stem, e.g. `sphere-scan-summary`.
    pub name: String,
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(name: &str, columns: Vec<Column>) -> Self {
        Self {
            name: name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends a row, checking its length and cell kinds against the schema.
    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(ExpError::Schema(format!(
                "{}: row has {} cells, schema has {} columns",
                self.name,
                row.len(),
                self.columns.len()
            )));
        }
        for (cell, col) in row.iter().zip(&self.columns) {
            if cell.kind() != col.kind {
                return Err(ExpError::Schema(format!(
                    "{}: column {} expects {:?}, got {:?}",
                    self.name,
                    col.name,
                    col.kind,
                    cell.kind()
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<Cell>>) -> Result<()> {
        rows.into_iter().try_for_each(|r| self.push(r))
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Numeric values of a column; panics on unknown or text columns, which
    /// is a programming error in the caller.
    pub fn numbers(&self, name: &str) -> Vec<f64> {
        let idx = self.column_index(name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows
            .iter()
            .map(|r| r[idx].as_f64().unwrap_or_else(|| panic!("column {name} is not numeric")))
            .collect()
    }

    pub fn texts(&self, name: &str) -> Vec<&str> {
        let idx = self.column_index(name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows
            .iter()
            .map(|r| r[idx].as_str().unwrap_or_else(|| panic!("column {name} is not text")))
            .collect()
    }

    /// Rows for which `pred` holds, as a new table with the same schema.
    pub fn filter(&self, pred: impl Fn(&[Cell]) -> bool) -> Self {
        Self {
            name: self.name.clone(),
            columns: self.columns.clone(),
            rows: self.rows.iter().filter(|r| pred(r)).cloned().collect(),
        }
    }

    /// Lexicographic order over all cells, so that row order does not depend
    /// on how the rows were produced.
    pub fn sort_canonical(&mut self) {
        self.rows.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        });
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| c.name.as_str()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| ExpError::Schema(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Parses CSV text against a known schema; the header must match it.
    pub fn from_csv_str(name: &str, columns: Vec<Column>, text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
        let expected: Vec<&str> = columns.iter().map(|c| c.name.as_str()).collect();
        if header != expected {
            return Err(ExpError::Schema(format!("{name}: header {header:?}, expected {expected:?}")));
        }
        let mut table = Self::new(name, columns);
        for (line, record) in r.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .zip(&table.columns)
                .map(|(field, col)| {
                    Cell::parse(col.kind, field).ok_or_else(|| {
                        ExpError::Schema(format!("{name}: row {}: bad {} value {field:?}", line + 1, col.name))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row)?;
        }
        Ok(table)
    }
}

/// Sidecar describing one CSV file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub schema_version: u32,
    pub experiment: String,
    pub table: String,
    pub columns: Vec<Column>,
    pub rows: usize,
    pub code_version: String,
    /// RFC 3339 creation time. The only wall-clock value in the output.
    pub created: String,
    pub config: serde_json::Value,
}

/// Writes `<name>.csv` and `<name>.json` into `dir` and returns both paths.
pub fn write_table(
    dir: &Path,
    experiment: &str,
    table: &ResultTable,
    config: serde_json::Value,
) -> Result<(PathBuf, PathBuf)> {
    let csv_path = dir.join(format!("{}.csv", table.name));
    let json_path = dir.join(format!("{}.json", table.name));
    let meta = TableMetadata {
        schema_version: SCHEMA_VERSION,
        experiment: experiment.into(),
        table: table.name.clone(),
        columns: table.columns.clone(),
        rows: table.len(),
        code_version: env!("CARGO_PKG_VERSION").into(),
        created: chrono::Utc::now().to_rfc3339(),
        config,
    };
    fs::write(&csv_path, table.to_csv_string()?).map_err(|e| ExpError::io(&csv_path, e))?;
    let json = serde_json::to_string_pretty(&meta)?;
    fs::write(&json_path, json + "\n").map_err(|e| ExpError::io(&json_path, e))?;
    Ok((csv_path, json_path))
}

/// Reads a table back using the schema stored in its sidecar.
pub fn read_table(csv_path: &Path) -> Result<(ResultTable, TableMetadata)> {
    let json_path = csv_path.with_extension("json");
    let meta_text = fs::read_to_string(&json_path).map_err(|e| ExpError::io(&json_path, e))?;
    let meta: TableMetadata = serde_json::from_str(&meta_text)?;
    let text = fs::read_to_string(csv_path).map_err(|e| ExpError::io(csv_path, e))?;
    let table = ResultTable::from_csv_str(&meta.table, meta.columns.clone(), &text)?;
    if table.len() != meta.rows {
        return Err(ExpError::Schema(format!(
            "{}: {} rows, metadata says {}",
            meta.table,
            table.len(),
            meta.rows
        )));
    }
    Ok((table, meta))
}
