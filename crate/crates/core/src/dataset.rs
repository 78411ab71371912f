//! Named, equal-length numeric columns.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Complete rectangular data: every column has the same number of finite
/// observations, at least two of them, and names are unique and non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    n: usize,
}

impl Dataset {
    pub fn new<S: Into<String>>(columns: Vec<(S, Vec<f64>)>) -> Result<Self> {
        let mut ds = Dataset {
            names: Vec::with_capacity(columns.len()),
            columns: Vec::with_capacity(columns.len()),
            n: 0,
        };
        let mut first = true;
        for (name, values) in columns {
            if first {
                if values.len() < 2 {
                    return Err(Error::TooFewRows {
                        needed: 2,
                        have: values.len(),
                    });
                }
                ds.n = values.len();
                first = false;
            }
            ds.push_column(name.into(), values)?;
        }
        if ds.names.is_empty() {
            return Err(Error::InvalidDataset("no columns".into()));
        }
        Ok(ds)
    }

    fn push_column(&mut self, name: String, values: Vec<f64>) -> Result<()> {
        if name.is_empty() {
            return Err(Error::InvalidDataset("empty column name".into()));
        }
        if self.names.contains(&name) {
            return Err(Error::DuplicateColumn(name));
        }
        if values.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value in column `{name}` at row {}",
                i + 1
            )));
        }
        self.names.push(name);
        self.columns.push(values);
        Ok(())
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn columns(&self, names: &[&str]) -> Result<Vec<&[f64]>> {
        names.iter().map(|n| self.column(n)).collect()
    }

    /// Returns a copy with an extra column. Names must not collide.
    pub fn with_column(&self, name: impl Into<String>, values: Vec<f64>) -> Result<Dataset> {
        let mut out = self.clone();
        out.push_column(name.into(), values)?;
        Ok(out)
    }

    /// Returns a copy with `name` overwritten in place.
    pub fn replace_column(&self, name: &str, values: Vec<f64>) -> Result<Dataset> {
        let idx = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))?;
        if values.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value in column `{name}`"
            )));
        }
        let mut out = self.clone();
        out.columns[idx] = values;
        Ok(out)
    }

    /// Row `i` (0-based) as a name → value map.
    pub fn row(&self, i: usize) -> Option<HashMap<String, f64>> {
        (i < self.n).then(|| {
            self.names
                .iter()
                .cloned()
                .zip(self.columns.iter().map(|c| c[i]))
                .collect()
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.columns.iter().map(Vec::as_slice))
    }
}
