//! CSV ingestion of tabulated correlation data.
//!
//! `g2` files carry the header `r,g2`; `t3` files carry `r1,r2,t3` with
//! signed displacement axes. Lines starting with `#` are comments.

use std::path::Path;

use corrinv_core::models::{GridTable, RadialTable};

use crate::error::{CliError, Result};

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let table_err = |message: String| CliError::Table { path: path.to_path_buf(), message };
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_path(path).map_err(csv_err)?;
    let found: Vec<String> = reader.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(table_err(format!("expected header {}, found {}", header.join(","), found.join(","))));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = record
            .iter()
            .map(|field| field.parse::<f64>().map_err(|e| table_err(format!("row {}: {field:?}: {e}", i + 1))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(table_err("no data rows".into()));
    }
    Ok(rows)
}

/// Reads a radial `g2` table.
pub fn load_g2(path: &Path) -> Result<RadialTable> {
    let rows = read_rows(path, &["r", "g2"])?;
    let (r, g): (Vec<f64>, Vec<f64>) = rows.iter().map(|row| (row[0], row[1])).unzip();
    RadialTable::new(r, g).map_err(|e| CliError::Table { path: path.to_path_buf(), message: e.to_string() })
}

/// Reads a `t3` grid; every `(r1, r2)` node of the product grid must appear once.
pub fn load_t3(path: &Path) -> Result<GridTable> {
    let rows = read_rows(path, &["r1", "r2", "t3"])?;
    let triples: Vec<(f64, f64, f64)> = rows.iter().map(|row| (row[0], row[1], row[2])).collect();
    GridTable::from_rows(&triples).map_err(|e| CliError::Table { path: path.to_path_buf(), message: e.to_string() })
}
