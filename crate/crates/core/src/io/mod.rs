//! Data ingestion, configuration and artifact emission.

mod config;
mod matrix;
pub mod svg;

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

pub use config::{BiclusterSection, ExperimentConfig, GrowthConfig, NetworkConfig, NoveltySection, Pipeline, TaskKind};
pub use matrix::{load_matrix, normalize_columns, write_matrix_csv, ColumnNorm, MatrixFormat};

use crate::error::{Error, Result};

/// Full-precision float formatting used by every CSV artifact.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a header row followed by `rows`; every row must match the header width.
pub fn write_csv<I>(path: &Path, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new().from_writer(BufWriter::new(File::create(path)?));
    w.write_record(header)?;
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::InvalidInput(format!(
                "row {i} of {} has {} fields, header has {}",
                path.display(),
                row.len(),
                header.len()
            )));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
