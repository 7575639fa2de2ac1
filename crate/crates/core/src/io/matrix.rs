use std::fs;
use std::path::Path;

use ndarray::{Array2, ArrayView2, Axis};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    /// One matrix row per line, comma separated.
    DenseCsv,
    /// `row col value` lines; missing entries are zero.
    Triplet { rows: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnNorm {
    L2,
    L1,
}

pub fn load_matrix(path: &Path, format: MatrixFormat) -> Result<Array2<f64>> {
    let text = fs::read_to_string(path)?;
    let err = |line: usize, msg: String| Error::Parse { path: path.to_path_buf(), line, msg };
    match format {
        MatrixFormat::DenseCsv => {
            let mut rdr = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(text.as_bytes());
            let mut data = Vec::new();
            let mut width = None;
            let mut rows = 0;
            for rec in rdr.records() {
                let rec = rec?;
                let line = rec.position().map_or(0, |p| p.line() as usize);
                if rec.iter().all(|f| f.is_empty()) {
                    continue;
                }
                match width {
                    None => width = Some(rec.len()),
                    Some(w) if w != rec.len() => {
                        return Err(err(line, format!("expected {w} fields, found {}", rec.len())));
                    }
                    _ => {}
                }
                for field in rec.iter() {
                    let v: f64 = field.parse().map_err(|_| err(line, format!("not a number: `{field}`")))?;
                    if !v.is_finite() {
                        return Err(err(line, format!("non-finite value `{field}`")));
                    }
                    data.push(v);
                }
                rows += 1;
            }
            let Some(cols) = width else {
                return Err(err(1, "empty matrix file".into()));
            };
            Ok(Array2::from_shape_vec((rows, cols), data).expect("consistent widths"))
        }
        MatrixFormat::Triplet { rows, cols } => {
            let mut out = Array2::zeros((rows, cols));
            let mut entries = 0;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                    continue;
                }
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(err(i + 1, format!("expected `row col value`, found {} fields", toks.len())));
                }
                let r: usize = toks[0].parse().map_err(|_| err(i + 1, format!("bad row `{}`", toks[0])))?;
                let c: usize = toks[1].parse().map_err(|_| err(i + 1, format!("bad column `{}`", toks[1])))?;
                let v: f64 = toks[2].parse().map_err(|_| err(i + 1, format!("bad value `{}`", toks[2])))?;
                if !v.is_finite() {
                    return Err(err(i + 1, "non-finite value".into()));
                }
                if r >= rows || c >= cols {
                    return Err(err(i + 1, format!("entry ({r}, {c}) outside {rows}x{cols}")));
                }
                out[[r, c]] = v;
                entries += 1;
            }
            if entries == 0 {
                return Err(err(1, "no entries".into()));
            }
            Ok(out)
        }
    }
}

/// Scales every nonzero column to unit norm; zero columns stay zero.
pub fn normalize_columns(x: ArrayView2<'_, f64>, norm: ColumnNorm) -> Array2<f64> {
    let mut out = x.to_owned();
    for mut col in out.axis_iter_mut(Axis(1)) {
        let n = match norm {
            ColumnNorm::L2 => col.iter().map(|v| v * v).sum::<f64>().sqrt(),
            ColumnNorm::L1 => col.iter().map(|v| v.abs()).sum(),
        };
        if n > 0.0 {
            col.mapv_inplace(|v| v / n);
        }
    }
    out
}

/// Dense CSV with a `c0,c1,…` header row.
pub fn write_matrix_csv(path: &Path, x: ArrayView2<'_, f64>) -> Result<()> {
    let header: Vec<String> = (0..x.ncols()).map(|c| format!("c{c}")).collect();
    let rows = x.rows().into_iter().map(|r| r.iter().map(|&v| super::fmt_f64(v)).collect());
    super::write_csv(path, &header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn file(content: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.txt");
        fs::write(&p, content).unwrap();
        (dir, p)
    }

    #[test]
    fn dense_csv() {
        let (_d, p) = file("1,2\n3,4\n");
        assert_eq!(load_matrix(&p, MatrixFormat::DenseCsv).unwrap(), array![[1.0, 2.0], [3.0, 4.0]]);
    }

    #[test]
    fn triplets() {
        let (_d, p) = file("0 0 5\n");
        let m = load_matrix(&p, MatrixFormat::Triplet { rows: 2, cols: 2 }).unwrap();
        assert_eq!(m, array![[5.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let (_d, p) = file("");
        assert!(matches!(load_matrix(&p, MatrixFormat::DenseCsv), Err(Error::Parse { .. })));
        let (_d, p) = file("1,2\n3\n");
        assert!(matches!(load_matrix(&p, MatrixFormat::DenseCsv), Err(Error::Parse { line: 2, .. })));
        let (_d, p) = file("1,2\n3,inf\n");
        assert!(matches!(load_matrix(&p, MatrixFormat::DenseCsv), Err(Error::Parse { line: 2, .. })));
        let (_d, p) = file("1,x\n");
        assert!(matches!(load_matrix(&p, MatrixFormat::DenseCsv), Err(Error::Parse { line: 1, .. })));
        let (_d, p) = file("0 0 1\n5 0 1\n");
        let fmt = MatrixFormat::Triplet { rows: 2, cols: 2 };
        assert!(matches!(load_matrix(&p, fmt), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn column_normalization() {
        let x = array![[3.0, 1.0, 0.0], [4.0, 1.0, 0.0]];
        let l2 = normalize_columns(x.view(), ColumnNorm::L2);
        assert_eq!(l2.column(0), array![0.6, 0.8]);
        let l1 = normalize_columns(x.view(), ColumnNorm::L1);
        assert_eq!(l1.column(1), array![0.5, 0.5]);
        assert_eq!(l1.column(2), array![0.0, 0.0]);
    }
}
