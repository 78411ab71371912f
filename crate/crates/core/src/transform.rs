//! Linear transforms of the predictor set and the induced coefficient map.
//!
//! Orientation: observations form the rows of the design `X = [1 | X₁ … X_k]`
//! and the transformed design is `X* = X·C` with `C = [[1, 0], [0, Γ]]`.
//! Column `j` of `Γ` therefore holds the weights of new predictor `j`:
//! `X*_j = Σᵢ Γᵢⱼ Xᵢ`. Since `X·B = X*·B*`, the coefficients of the refit are
//! `B* = C⁻¹·B`, and the intercept is untouched.

use nalgebra::{DMatrix, DVector};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::ols::{solve_ls, Coefficients};

/// `|det Γ|` below this fraction of `max|Γᵢⱼ|ᵏ` is treated as singular.
pub const SINGULAR_DET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PredictorTransform {
    gamma: DMatrix<f64>,
    gamma_inv: DMatrix<f64>,
}

impl PredictorTransform {
    pub fn new(gamma: DMatrix<f64>) -> Result<Self> {
        if !gamma.is_square() || gamma.nrows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "transform block must be square and non-empty, got {}x{}",
                gamma.nrows(),
                gamma.ncols()
            )));
        }
        if gamma.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularTransform);
        }
        let k = gamma.nrows() as i32;
        let scale = gamma.amax();
        let det = gamma.determinant();
        if scale == 0.0 || det.abs() <= SINGULAR_DET_TOL * scale.powi(k) {
            return Err(Error::SingularTransform);
        }
        let gamma_inv = invert(&gamma).ok_or(Error::SingularTransform)?;
        Ok(PredictorTransform { gamma, gamma_inv })
    }

    pub fn identity(k: usize) -> Self {
        PredictorTransform {
            gamma: DMatrix::identity(k, k),
            gamma_inv: DMatrix::identity(k, k),
        }
    }

    /// Number of predictors.
    pub fn k(&self) -> usize {
        self.gamma.nrows()
    }

    pub fn gamma(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    pub fn gamma_inverse(&self) -> &DMatrix<f64> {
        &self.gamma_inv
    }

    /// The `(k+1)×(k+1)` block matrix `C`.
    pub fn full_matrix(&self) -> DMatrix<f64> {
        block(&self.gamma)
    }

    /// The block matrix `C⁻¹ = [[1, 0], [0, Γ⁻¹]]`.
    pub fn full_inverse(&self) -> DMatrix<f64> {
        block(&self.gamma_inv)
    }
}

fn block(m: &DMatrix<f64>) -> DMatrix<f64> {
    let k = m.nrows();
    let mut c = DMatrix::zeros(k + 1, k + 1);
    c[(0, 0)] = 1.0;
    c.view_mut((1, 1), (k, k)).copy_from(m);
    c
}

/// LU inverse polished by one Newton–Schulz step.
fn invert(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let inv = m.clone().lu().try_inverse()?;
    let k = m.nrows();
    let two_i = DMatrix::<f64>::identity(k, k) * 2.0;
    let refined = &inv * (two_i - m * &inv);
    refined.iter().all(|v| v.is_finite()).then_some(refined)
}

/// A derived column `target − Σ coeffsⱼ·controlⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualizedVariable {
    pub name: String,
    pub target: String,
    pub controls: Vec<String>,
    pub control_coeffs: Vec<f64>,
    pub values: Vec<f64>,
}

impl ResidualizedVariable {
    /// `ds` plus this variable as a new column.
    pub fn attach(&self, ds: &Dataset) -> Result<Dataset> {
        ds.with_column(self.name.clone(), self.values.clone())
    }
}

/// Name of the residualized version of `target`.
pub fn starred(target: &str) -> String {
    format!("{target}*")
}

/// Removes from `target` its linear dependence on `controls`.
///
/// The coefficients are the slopes of the regression of `target` on
/// `controls`; the fitted intercept is not subtracted.
pub fn residualize(ds: &Dataset, target: &str, controls: &[&str]) -> Result<ResidualizedVariable> {
    if controls.is_empty() {
        return Err(Error::ShapeMismatch(
            "residualization needs at least one control".into(),
        ));
    }
    let y = ds.column(target)?;
    let xs = ds.columns(controls)?;
    let sol = solve_ls(y, &xs)?;
    residualize_with(ds, target, controls, &sol.slopes)
}

/// `target − Σ coeffsⱼ·controlⱼ` with caller-chosen coefficients.
pub fn residualize_with(
    ds: &Dataset,
    target: &str,
    controls: &[&str],
    coeffs: &[f64],
) -> Result<ResidualizedVariable> {
    if coeffs.len() != controls.len() {
        return Err(Error::LengthMismatch {
            expected: controls.len(),
            found: coeffs.len(),
        });
    }
    let y = ds.column(target)?;
    let xs = ds.columns(controls)?;
    let values = (0..ds.n())
        .map(|i| {
            xs.iter()
                .zip(coeffs)
                .fold(y[i], |acc, (x, c)| acc - c * x[i])
        })
        .collect();
    Ok(ResidualizedVariable {
        name: starred(target),
        target: target.to_string(),
        controls: controls.iter().map(|s| s.to_string()).collect(),
        control_coeffs: coeffs.to_vec(),
        values,
    })
}

/// Unit-determinant transform replacing predictor `target_index` (1-based)
/// by `X_t − Σⱼ coeffsⱼ Xⱼ` and leaving the others fixed. `coeffs` lists the
/// other predictors in their original order.
pub fn build_transform(
    k: usize,
    target_index: usize,
    coeffs: &[f64],
) -> Result<PredictorTransform> {
    if target_index == 0 || target_index > k {
        return Err(Error::IndexOutOfRange {
            index: target_index,
            max: k,
        });
    }
    if coeffs.len() + 1 != k {
        return Err(Error::LengthMismatch {
            expected: k - 1,
            found: coeffs.len(),
        });
    }
    let t = target_index - 1;
    let mut gamma = DMatrix::identity(k, k);
    let mut inverse = DMatrix::identity(k, k);
    let others = (0..k).filter(|&i| i != t);
    for (row, &c) in others.zip(coeffs) {
        gamma[(row, t)] = -c;
        inverse[(row, t)] = c;
    }
    Ok(PredictorTransform {
        gamma,
        gamma_inv: inverse,
    })
}

/// Replaces the named predictor columns by the columns of `X·C`. Other
/// columns pass through.
pub fn apply_transform(
    ds: &Dataset,
    predictor_names: &[&str],
    transform: &PredictorTransform,
) -> Result<Dataset> {
    let k = transform.k();
    if predictor_names.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            found: predictor_names.len(),
        });
    }
    let n = ds.n();
    let xs = ds.columns(predictor_names)?;
    let mut design = DMatrix::from_element(n, k + 1, 1.0);
    for (j, x) in xs.iter().enumerate() {
        design.column_mut(j + 1).copy_from_slice(x);
    }
    let transformed = design * transform.full_matrix();

    let mut out = ds.clone();
    for (j, name) in predictor_names.iter().enumerate() {
        let col: Vec<f64> = transformed.column(j + 1).iter().copied().collect();
        out = out.replace_column(name, col)?;
    }
    Ok(out)
}

/// Coefficients of the regression on the transformed predictors, `C⁻¹·B`.
pub fn map_coefficients(b: &Coefficients, transform: &PredictorTransform) -> Result<Coefficients> {
    if b.slopes.len() != transform.k() {
        return Err(Error::LengthMismatch {
            expected: transform.k(),
            found: b.slopes.len(),
        });
    }
    let slopes = transform.gamma_inverse() * DVector::from_column_slice(&b.slopes);
    Ok(Coefficients::new(
        b.intercept,
        slopes.iter().copied().collect(),
    ))
}
