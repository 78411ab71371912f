//! Ordinary least squares with an intercept.
//!
//! Predictors are mean-centered and scaled to unit norm before solving, the
//! intercept is recovered afterwards as `ȳ − Σ bⱼ x̄ⱼ`. The scaled centered
//! matrix is solved by Householder QR; its singular-value ratio is the
//! condition estimate used to gate collinear designs.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::stats::{cov, is_constant, mean, var};

/// Designs whose condition estimate exceeds this are rejected as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Intercept followed by slopes, in predictor order.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub intercept: f64,
    pub slopes: Vec<f64>,
}

impl Coefficients {
    pub fn new(intercept: f64, slopes: Vec<f64>) -> Self {
        Coefficients { intercept, slopes }
    }

    /// `(b₀, b₁, …, b_k)` as one vector.
    pub fn to_vec(&self) -> Vec<f64> {
        std::iter::once(self.intercept)
            .chain(self.slopes.iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    pub response: String,
    pub predictors: Vec<String>,
    pub intercept: f64,
    pub slopes: Vec<f64>,
    /// Ratio of extreme singular values of the centered, column-scaled
    /// predictor matrix. Always at least 1.
    pub condition_estimate: f64,
    /// Residual sum of squares.
    pub rss: f64,
}

impl RegressionFit {
    pub fn coefficients(&self) -> Coefficients {
        Coefficients::new(self.intercept, self.slopes.clone())
    }

    /// Slope of the named predictor.
    pub fn slope(&self, predictor: &str) -> Option<f64> {
        self.predictors
            .iter()
            .position(|p| p == predictor)
            .map(|i| self.slopes[i])
    }

    pub fn predict(&self, row: &HashMap<String, f64>) -> Result<f64> {
        let mut y = self.intercept;
        for (name, b) in self.predictors.iter().zip(&self.slopes) {
            let x = row
                .get(name)
                .ok_or_else(|| Error::MissingPredictorValue(name.clone()))?;
            y += b * x;
        }
        Ok(y)
    }

    /// `yᵢ − ŷᵢ` for every row of `ds`.
    pub fn residuals(&self, ds: &Dataset) -> Result<Vec<f64>> {
        let y = ds.column(&self.response)?;
        let xs: Vec<&[f64]> = self
            .predictors
            .iter()
            .map(|p| ds.column(p))
            .collect::<Result<_>>()?;
        Ok(residuals_of(y, &xs, self.intercept, &self.slopes))
    }
}

fn residuals_of(y: &[f64], xs: &[&[f64]], intercept: f64, slopes: &[f64]) -> Vec<f64> {
    (0..y.len())
        .map(|i| {
            let fitted = xs
                .iter()
                .zip(slopes)
                .fold(intercept, |acc, (x, b)| acc + b * x[i]);
            y[i] - fitted
        })
        .collect()
}

/// Raw least-squares solution on slices.
#[derive(Debug, Clone)]
pub(crate) struct LsSolution {
    pub intercept: f64,
    pub slopes: Vec<f64>,
    pub condition: f64,
}

pub(crate) fn solve_ls(y: &[f64], xs: &[&[f64]]) -> Result<LsSolution> {
    let n = y.len();
    let k = xs.len();
    if n < k + 1 {
        return Err(Error::TooFewRows {
            needed: k + 1,
            have: n,
        });
    }
    let y_mean = mean(y);
    if k == 0 {
        return Ok(LsSolution {
            intercept: y_mean,
            slopes: Vec::new(),
            condition: 1.0,
        });
    }

    let means: Vec<f64> = xs.iter().map(|x| mean(x)).collect();
    let mut design = DMatrix::from_fn(n, k, |i, j| xs[j][i] - means[j]);
    let mut norms = vec![0.0; k];
    for (j, norm) in norms.iter_mut().enumerate() {
        let mut col = design.column_mut(j);
        *norm = col.norm();
        if *norm > 0.0 {
            col /= *norm;
        }
    }
    if norms.contains(&0.0) {
        return Err(Error::SingularDesign {
            condition: f64::INFINITY,
        });
    }

    let sv = design.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if condition.is_nan() || condition > MAX_CONDITION {
        return Err(Error::SingularDesign { condition });
    }

    let rhs = DVector::from_fn(n, |i, _| y[i] - y_mean);
    let qr = design.qr();
    let qty = qr.q().transpose() * rhs;
    let scaled = qr
        .r()
        .solve_upper_triangular(&qty)
        .ok_or(Error::SingularDesign { condition })?;

    let slopes: Vec<f64> = scaled.iter().zip(&norms).map(|(b, s)| b / s).collect();
    let intercept = y_mean - slopes.iter().zip(&means).map(|(b, m)| b * m).sum::<f64>();
    Ok(LsSolution {
        intercept,
        slopes,
        condition,
    })
}

pub fn fit(ds: &Dataset, response: &str, predictors: &[&str]) -> Result<RegressionFit> {
    let y = ds.column(response)?;
    let xs = ds.columns(predictors)?;
    let sol = solve_ls(y, &xs)?;
    let rss = residuals_of(y, &xs, sol.intercept, &sol.slopes)
        .iter()
        .map(|e| e * e)
        .sum();
    Ok(RegressionFit {
        response: response.to_string(),
        predictors: predictors.iter().map(|s| s.to_string()).collect(),
        intercept: sol.intercept,
        slopes: sol.slopes,
        condition_estimate: sol.condition,
        rss,
    })
}

/// Simple slope `cov(x, y) / var(x)` on slices.
pub(crate) fn simple_slope(y: &[f64], x: &[f64], x_name: &str) -> Result<f64> {
    if is_constant(x) {
        return Err(Error::ZeroVariance(x_name.to_string()));
    }
    Ok(cov(x, y) / var(x))
}

/// Single-predictor fit in closed form.
pub fn fit_simple(ds: &Dataset, response: &str, predictor: &str) -> Result<RegressionFit> {
    let y = ds.column(response)?;
    let x = ds.column(predictor)?;
    let slope = simple_slope(y, x, predictor)?;
    let intercept = mean(y) - slope * mean(x);
    let rss = residuals_of(y, &[x], intercept, &[slope])
        .iter()
        .map(|e| e * e)
        .sum();
    Ok(RegressionFit {
        response: response.to_string(),
        predictors: vec![predictor.to_string()],
        intercept,
        slopes: vec![slope],
        condition_estimate: 1.0,
        rss,
    })
}

pub fn predict(fit: &RegressionFit, row: &HashMap<String, f64>) -> Result<f64> {
    fit.predict(row)
}

pub fn residuals(fit: &RegressionFit, ds: &Dataset) -> Result<Vec<f64>> {
    fit.residuals(ds)
}
