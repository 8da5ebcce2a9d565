//! CSV and JSON writers. Reals are written with 17 significant digits so
//! that a read-back reproduces them bit for bit; lines end in LF.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub enum Cell {
    Real(f64),
    Int(i64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Real(v) if v.is_nan() => "NaN".to_string(),
            Cell::Real(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

pub fn reals<const N: usize>(values: [f64; N]) -> Vec<Cell> {
    values.into_iter().map(Cell::Real).collect()
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Writes `header` and `rows`; an empty table yields a header-only file.
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> CliResult<PathBuf>
where
    I: IntoIterator<Item = Vec<Cell>>,
{
    let wrap = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(wrap)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(CliError::Usage(format!(
                "{}: row has {} fields, header has {}",
                path.display(),
                row.len(),
                header.len()
            )));
        }
        w.write_record(row.iter().map(Cell::render)).map_err(wrap)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(path.to_path_buf())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(path.to_path_buf())
}
