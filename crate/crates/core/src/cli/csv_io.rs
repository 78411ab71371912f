//! Strict CSV reading and writing for numeric datasets.
//!
//! Comma separated, mandatory header, no quoting, every cell a finite
//! decimal number. Row numbers in errors are 1-based file lines, so the
//! header is line 1.

use std::path::Path;

use crate::cli::format::fmt_num;
use crate::dataset::Dataset;
use crate::error::{Error, Result};

pub fn load_csv(path: &Path) -> Result<Dataset> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_csv(&text)
}

pub fn parse_csv(text: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| parse_err(1, e))?,
        None => {
            return Err(Error::Parse {
                row: 1,
                column: 1,
                message: "missing header".into(),
            })
        }
    };
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    for (j, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Parse {
                row: 1,
                column: j + 1,
                message: "empty column name".into(),
            });
        }
        if names[..j].contains(name) {
            return Err(Error::DuplicateHeader(name.clone()));
        }
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for rec in records {
        let rec = rec.map_err(|e| parse_err(0, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != names.len() {
            return Err(Error::RaggedRow {
                row: line,
                expected: names.len(),
                found: rec.len(),
            });
        }
        for (j, cell) in rec.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::MissingValue {
                    row: line,
                    column: names[j].clone(),
                });
            }
            let value = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::NonNumericCell {
                    row: line,
                    column: names[j].clone(),
                    value: cell.to_string(),
                })?;
            columns[j].push(value);
        }
    }
    if columns.first().map_or(0, Vec::len) < 2 {
        return Err(Error::TooFewRows {
            needed: 2,
            have: columns.first().map_or(0, Vec::len),
        });
    }
    Dataset::new(names.into_iter().zip(columns).collect())
}

fn parse_err(row: usize, e: csv::Error) -> Error {
    let row = e.position().map_or(row, |p| p.line() as usize);
    Error::Parse {
        row,
        column: 0,
        message: e.to_string(),
    }
}

/// Dataset as CSV text with 12 significant digits per value.
pub fn write_csv(ds: &Dataset) -> String {
    let mut out = ds.names().join(",");
    out.push('\n');
    let cols: Vec<&[f64]> = ds.iter().map(|(_, c)| c).collect();
    for i in 0..ds.n() {
        let row: Vec<String> = cols.iter().map(|c| fmt_num(c[i])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const D1: &str = "X1,X2,Y\n1,1,2\n2,3,4\n3,2,5\n4,5,7\n5,4,8\n6,6,11\n";

    #[test]
    fn loads_well_formed_file() {
        let ds = parse_csv(D1).unwrap();
        assert_eq!(ds.n(), 6);
        assert_eq!(ds.names(), &["X1", "X2", "Y"]);
        assert_eq!(ds.column("Y").unwrap()[5], 11.0);
    }

    #[test]
    fn rejects_empty_cell() {
        let err = parse_csv("a,b\n1,2\n3,\n4,5\n").unwrap_err();
        assert_eq!(
            err,
            Error::MissingValue {
                row: 3,
                column: "b".into()
            }
        );
    }

    #[test]
    fn rejects_header_only() {
        assert!(matches!(
            parse_csv("a,b\n"),
            Err(Error::TooFewRows { have: 0, .. })
        ));
        assert!(matches!(parse_csv(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(matches!(
            parse_csv("a,b\n1,2\n3\n"),
            Err(Error::RaggedRow {
                row: 3,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_csv("a,b\n1,2\n3,x\n"),
            Err(Error::NonNumericCell { row: 3, .. })
        ));
        assert!(matches!(
            parse_csv("a,b\n1,2\n3,NaN\n"),
            Err(Error::NonNumericCell { .. })
        ));
        assert_eq!(
            parse_csv("a,a\n1,2\n3,4\n"),
            Err(Error::DuplicateHeader("a".into()))
        );
    }

    #[test]
    fn load_missing_file_is_io_error() {
        assert!(matches!(
            load_csv(Path::new("/nonexistent/definitely/missing.csv")),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn write_then_parse() {
        let ds = parse_csv(D1).unwrap();
        assert_eq!(parse_csv(&write_csv(&ds)).unwrap(), ds);
    }
}
