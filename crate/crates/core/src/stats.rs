//! Descriptive statistics over dataset columns.
//!
//! Variances and covariances use the population convention (divide by `n`),
//! so `cov(a, b) = mean(a·b) − mean(a)·mean(b)`. Sums are accumulated in
//! centered two-pass form.

use nalgebra::DMatrix;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Overshoot beyond a legal range that is silently clamped as rounding.
pub const CLAMP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub variance: f64,
    pub sd: f64,
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Population covariance of two equal-length slices.
pub fn cov(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let (ma, mb) = (mean(a), mean(b));
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - ma) * (y - mb))
        .sum::<f64>()
        / a.len() as f64
}

pub fn var(x: &[f64]) -> f64 {
    cov(x, x)
}

/// Clamps `value` into `[lo, hi]` if it overshoots by at most [`CLAMP_SLACK`].
pub fn clamp_checked(value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value < lo - CLAMP_SLACK || value > hi + CLAMP_SLACK || value.is_nan() {
        return Err(Error::OutOfRange { value, lo, hi });
    }
    Ok(value.clamp(lo, hi))
}

/// Relative spread below which a column counts as constant.
pub const CONSTANT_TOL: f64 = 1e-12;

/// Whether a column is constant relative to its own magnitude.
pub(crate) fn is_constant(x: &[f64]) -> bool {
    let v = var(x);
    let magnitude = x.iter().map(|xi| xi.abs()).fold(0.0, f64::max);
    v == 0.0 || v.sqrt() <= CONSTANT_TOL * magnitude
}

pub fn column_stats(ds: &Dataset, var_name: &str) -> Result<SummaryStats> {
    let x = ds.column(var_name)?;
    let variance = var(x);
    Ok(SummaryStats {
        mean: mean(x),
        variance,
        sd: variance.sqrt(),
    })
}

pub fn covariance(ds: &Dataset, a: &str, b: &str) -> Result<f64> {
    Ok(cov(ds.column(a)?, ds.column(b)?))
}

/// Pearson correlation of two slices; `names` label the zero-variance error.
pub(crate) fn pearson_slices(a: &[f64], b: &[f64], names: (&str, &str)) -> Result<f64> {
    if is_constant(a) {
        return Err(Error::ZeroVariance(names.0.to_string()));
    }
    if is_constant(b) {
        return Err(Error::ZeroVariance(names.1.to_string()));
    }
    let r = cov(a, b) / (var(a).sqrt() * var(b).sqrt());
    clamp_checked(r, -1.0, 1.0)
}

pub fn pearson_r(ds: &Dataset, a: &str, b: &str) -> Result<f64> {
    pearson_slices(ds.column(a)?, ds.column(b)?, (a, b))
}

pub fn correlation_matrix(ds: &Dataset, vars: &[&str]) -> Result<DMatrix<f64>> {
    let cols = ds.columns(vars)?;
    correlation_of(&cols, vars)
}

fn correlation_of(cols: &[&[f64]], names: &[&str]) -> Result<DMatrix<f64>> {
    let k = cols.len();
    let mut m = DMatrix::identity(k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            let r = pearson_slices(cols[i], cols[j], (names[i], names[j]))?;
            m[(i, j)] = r;
            m[(j, i)] = r;
        }
    }
    if k == 1 {
        // still reject a constant singleton
        pearson_slices(cols[0], cols[0], (names[0], names[0]))?;
    }
    Ok(m)
}

/// Multiple correlation of `target` on `predictors`.
///
/// With `Corr` the correlation matrix of `[target, predictors…]` and `C11`
/// the cofactor of its (1,1) entry, `ρ² = 1 − |Corr| / C11`. The ratio
/// `|Corr| / C11` is the Schur complement `1 − r_yᵀ R⁻¹ r_y`, so `ρ²` is
/// evaluated as `r_yᵀ R⁻¹ r_y` directly; this keeps `ρ` accurate near zero,
/// where the subtraction from one would leave `√ε` of noise.
pub fn multiple_correlation(ds: &Dataset, target: &str, predictors: &[&str]) -> Result<f64> {
    let y = ds.column(target)?;
    let xs = ds.columns(predictors)?;
    multiple_correlation_slices(y, &xs, target, predictors)
}

pub(crate) fn multiple_correlation_slices(
    y: &[f64],
    xs: &[&[f64]],
    target: &str,
    predictors: &[&str],
) -> Result<f64> {
    if predictors.is_empty() {
        return Err(Error::ShapeMismatch("no predictors".into()));
    }
    if is_constant(y) {
        return Err(Error::ZeroVariance(target.to_string()));
    }
    let rxx = correlation_of(xs, predictors)?;
    let k = predictors.len();
    let cofactor = rxx.determinant();
    if cofactor.abs() <= 1e-12 {
        return Err(Error::DegenerateCofactor);
    }
    let mut ry = nalgebra::DVector::zeros(k);
    for (j, x) in xs.iter().enumerate() {
        ry[j] = pearson_slices(y, x, (target, predictors[j]))?;
    }
    let lu = rxx.lu();
    let w = lu.solve(&ry).ok_or(Error::DegenerateCofactor)?;
    let rho2 = clamp_checked(ry.dot(&w), 0.0, 1.0)?;
    Ok(rho2.sqrt())
}
