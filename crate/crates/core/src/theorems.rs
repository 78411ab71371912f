//! Coefficient identities between multiple and simple regressions.
//!
//! The central object is the slope `a₁*(γ)` of the simple regression of the
//! response on `X₁ − γX₂` (or `X₁ − γ₂X₂ − γ₃X₃`). At the residualizing
//! coefficients it equals the multiple-regression slope `b₁`; with two
//! predictors the equation `a₁*(γ) = b₁` has exactly the roots `c₁₂` and
//! `−b₂/b₁`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::ols::{fit, simple_slope, solve_ls};
use crate::stats::{cov, multiple_correlation_slices, pearson_slices, var};
use crate::transform::{apply_transform, build_transform, map_coefficients, residualize};

/// Default tolerance for identity checks, scaled by `max(1, |reference|)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Relative size below which `var(X₁ − γX₂)` counts as vanished.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Roots closer than this are reported once.
pub const ROOT_DEDUP_TOL: f64 = 1e-10;

/// `a₁*(γ)` with its moments precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFunction {
    pub var1: f64,
    pub var2: f64,
    pub cov12: f64,
    pub cov1y: f64,
    pub cov2y: f64,
}

impl SlopeFunction {
    pub fn from_slices(y: &[f64], x1: &[f64], x2: &[f64]) -> Self {
        SlopeFunction {
            var1: var(x1),
            var2: var(x2),
            cov12: cov(x1, x2),
            cov1y: cov(x1, y),
            cov2y: cov(x2, y),
        }
    }

    pub fn new(ds: &Dataset, y: &str, x1: &str, x2: &str) -> Result<Self> {
        Ok(Self::from_slices(
            ds.column(y)?,
            ds.column(x1)?,
            ds.column(x2)?,
        ))
    }

    /// `var(X₁ − γX₂)`.
    pub fn denominator(&self, gamma: f64) -> f64 {
        self.var1 - 2.0 * gamma * self.cov12 + gamma * gamma * self.var2
    }

    pub fn numerator(&self, gamma: f64) -> f64 {
        self.cov1y - gamma * self.cov2y
    }

    pub fn eval(&self, gamma: f64) -> Result<f64> {
        let den = self.denominator(gamma);
        let scale = self.var1 + gamma * gamma * self.var2;
        if den.is_nan() || den <= DEGENERATE_TOL * scale {
            return Err(Error::DegenerateDirection { gamma: vec![gamma] });
        }
        Ok(self.numerator(gamma) / den)
    }
}

/// Simple slope of `y` on `x1 − γ·x2`.
pub fn slope_on_gamma(ds: &Dataset, y: &str, x1: &str, x2: &str, gamma: f64) -> Result<f64> {
    SlopeFunction::new(ds, y, x1, x2)?.eval(gamma)
}

/// Solutions of `a₁*(γ) = b₁`: `c₁₂` and `−b₂/b₁`, ascending, merged when
/// they coincide.
pub fn gamma_roots(ds: &Dataset, y: &str, x1: &str, x2: &str) -> Result<Vec<f64>> {
    let full = fit(ds, y, &[x1, x2])?;
    let (b1, b2) = (full.slopes[0], full.slopes[1]);
    let x1c = ds.column(x1)?;
    let slope_scale = (var(ds.column(y)?) / var(x1c)).sqrt();
    if b1.abs() <= 1e-12 * slope_scale {
        return Err(Error::ZeroLeadSlope);
    }
    let c12 = fit(ds, x1, &[x2])?.slopes[0];
    let mut roots = vec![c12, -b2 / b1];
    roots.sort_by(f64::total_cmp);
    if (roots[1] - roots[0]).abs() <= ROOT_DEDUP_TOL {
        roots.truncate(1);
    }
    Ok(roots)
}

/// Evenly spaced parameter values `min, min+step, …` up to `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GammaRange {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::Usage(format!(
                "gamma step must be positive, got {step}"
            )));
        }
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::Usage(format!(
                "gamma range needs min <= max, got {min}..{max}"
            )));
        }
        Ok(GammaRange { min, max, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.min + i as f64 * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaAxis {
    pub name: String,
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub gamma: Vec<f64>,
    pub a1_star: f64,
}

/// Samples of `a₁*` over a one- or two-parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSweep {
    pub axes: Vec<GammaAxis>,
    /// Defined grid points in row-major order (last axis fastest).
    pub values: Vec<SweepPoint>,
    /// Slope of `x1` in the multiple regression on all predictors.
    pub reference_b1: f64,
    pub roots: Vec<Vec<f64>>,
    pub undefined_points: Vec<Vec<f64>>,
}

/// `a₁*(γ)` over `grid`, annotated with `b₁` and the roots.
pub fn gamma_sweep(ds: &Dataset, y: &str, x1: &str, x2: &str, grid: &[f64]) -> Result<GammaSweep> {
    if grid.is_empty() {
        return Err(Error::Usage("gamma grid is empty".into()));
    }
    let f = SlopeFunction::new(ds, y, x1, x2)?;
    let reference_b1 = fit(ds, y, &[x1, x2])?.slopes[0];
    let roots = match gamma_roots(ds, y, x1, x2) {
        Ok(r) => r,
        // b₁ = 0 leaves only the residualizing root
        Err(Error::ZeroLeadSlope) => vec![fit(ds, x1, &[x2])?.slopes[0]],
        Err(e) => return Err(e),
    };
    let mut values = Vec::with_capacity(grid.len());
    let mut undefined_points = Vec::new();
    for &g in grid {
        match f.eval(g) {
            Ok(a) => values.push(SweepPoint {
                gamma: vec![g],
                a1_star: a,
            }),
            Err(Error::DegenerateDirection { gamma }) => undefined_points.push(gamma),
            Err(e) => return Err(e),
        }
    }
    Ok(GammaSweep {
        axes: vec![GammaAxis {
            name: "gamma".into(),
            grid: grid.to_vec(),
        }],
        values,
        reference_b1,
        roots: roots.into_iter().map(|r| vec![r]).collect(),
        undefined_points,
    })
}

/// `a₁*(γ₂, γ₃)`: simple slope of `y` on `x1 − γ₂x₂ − γ₃x₃` over a grid.
pub fn gamma_surface(
    ds: &Dataset,
    y: &str,
    x1: &str,
    controls: &[&str],
    grid2: &[f64],
    grid3: &[f64],
) -> Result<GammaSweep> {
    let [c2, c3] = controls else {
        return Err(Error::ShapeMismatch(format!(
            "surface needs exactly two controls, got {}",
            controls.len()
        )));
    };
    if grid2.is_empty() || grid3.is_empty() {
        return Err(Error::Usage("gamma grid is empty".into()));
    }
    let yv = ds.column(y)?;
    let x1v = ds.column(x1)?;
    let x2v = ds.column(c2)?;
    let x3v = ds.column(c3)?;
    let reference_b1 = fit(ds, y, &[x1, c2, c3])?.slopes[0];
    let (v1, v2, v3) = (var(x1v), var(x2v), var(x3v));

    let mut values = Vec::with_capacity(grid2.len() * grid3.len());
    let mut undefined_points = Vec::new();
    let mut z = vec![0.0; ds.n()];
    for &g2 in grid2 {
        for &g3 in grid3 {
            for (i, zi) in z.iter_mut().enumerate() {
                *zi = x1v[i] - g2 * x2v[i] - g3 * x3v[i];
            }
            let den = var(&z);
            let scale = v1 + g2 * g2 * v2 + g3 * g3 * v3;
            if den > DEGENERATE_TOL * scale {
                values.push(SweepPoint {
                    gamma: vec![g2, g3],
                    a1_star: cov(&z, yv) / den,
                });
            } else {
                undefined_points.push(vec![g2, g3]);
            }
        }
    }
    Ok(GammaSweep {
        axes: vec![
            GammaAxis {
                name: "gamma2".into(),
                grid: grid2.to_vec(),
            },
            GammaAxis {
                name: "gamma3".into(),
                grid: grid3.to_vec(),
            },
        ],
        values,
        reference_b1,
        roots: Vec::new(),
        undefined_points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `b₁ = a₁*` with one control.
    Theorem1,
    /// `b₁ = a₁*` with two controls.
    Theorem3,
    /// `b₁ = a₁*` with three or more controls.
    GeneralK,
    /// `X₁*` has zero multiple correlation with the controls.
    Lemma1,
    /// `X₁*` has zero (standardized) slope in the regression of each control
    /// on `X₁*` and the remaining controls.
    Lemma3,
    /// Coefficients after a predictor transform equal `C⁻¹B`.
    Prop1,
    /// Subset-regression slopes equal the full slopes contracted with the
    /// predictor-on-subset coefficients.
    Appendix4,
    /// Two-predictor relations between simple, cross and multiple slopes.
    #[serde(rename = "appB_relations")]
    AppBRelations,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Theorem1 => "theorem1",
            Claim::Theorem3 => "theorem3",
            Claim::GeneralK => "general_k",
            Claim::Lemma1 => "lemma1",
            Claim::Lemma3 => "lemma3",
            Claim::Prop1 => "prop1",
            Claim::Appendix4 => "appendix4",
            Claim::AppBRelations => "appB_relations",
        }
    }

    fn for_controls(m: usize) -> Claim {
        match m {
            1 => Claim::Theorem1,
            2 => Claim::Theorem3,
            _ => Claim::GeneralK,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// Largest elementwise `|lhs − rhs|`.
    pub abs_diff: f64,
    /// Effective threshold: the requested tolerance times `max(1, max|rhs|)`.
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn compare(claim: Claim, lhs: Vec<f64>, rhs: Vec<f64>, tol: f64) -> Self {
        debug_assert_eq!(lhs.len(), rhs.len());
        let abs_diff = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(
                0.0,
                |m: f64, d| if d.is_nan() { f64::NAN } else { m.max(d) },
            );
        let scale = rhs.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let tolerance = tol * scale;
        VerificationReport {
            claim,
            lhs,
            rhs,
            abs_diff,
            tolerance,
            passed: abs_diff <= tolerance,
        }
    }
}

/// Checks that the slope of `x1` in the regression of `y` on `x1` and
/// `controls` equals the simple slope of `y` on the residualized `x1`.
pub fn verify_b1_equals_a1star(
    ds: &Dataset,
    y: &str,
    x1: &str,
    controls: &[&str],
    tol: f64,
) -> Result<VerificationReport> {
    let claim = Claim::for_controls(controls.len());
    let inner = || -> Result<VerificationReport> {
        let mut predictors = vec![x1];
        predictors.extend_from_slice(controls);
        let b1 = fit(ds, y, &predictors)?.slopes[0];
        let x1_star = residualize(ds, x1, controls)?;
        let a1_star = simple_slope(ds.column(y)?, &x1_star.values, &x1_star.name)?;
        Ok(VerificationReport::compare(
            claim,
            vec![b1],
            vec![a1_star],
            tol,
        ))
    };
    inner().map_err(|e| e.in_claim(claim.as_str()))
}

/// Slopes of the regression on a predictor subset from the full-set slopes.
///
/// `cross` has one row per full-set predictor and one column per subset
/// predictor; row `i` holds the coefficients of predictor `i` regressed on
/// the subset. Rows of subset members (`subset[j]` is the full-set index of
/// subset predictor `j`) must be the unit rows `e_j`. Returns `full·cross`.
pub fn aggregate_coefficients(
    full_slopes: &[f64],
    subset: &[usize],
    cross: &DMatrix<f64>,
) -> Result<Vec<f64>> {
    let k = full_slopes.len();
    let m = subset.len();
    if cross.nrows() != k || cross.ncols() != m {
        return Err(Error::ShapeMismatch(format!(
            "cross matrix is {}x{}, expected {k}x{m}",
            cross.nrows(),
            cross.ncols()
        )));
    }
    for (j, &row) in subset.iter().enumerate() {
        if row >= k {
            return Err(Error::ShapeMismatch(format!(
                "subset index {row} outside 0..{k}"
            )));
        }
        let canonical = (0..m).all(|c| cross[(row, c)] == if c == j { 1.0 } else { 0.0 });
        if !canonical {
            return Err(Error::NonCanonicalSubsetRows { row });
        }
    }
    let b = DVector::from_column_slice(full_slopes);
    Ok((cross.transpose() * b).iter().copied().collect())
}

/// Cross matrix for [`aggregate_coefficients`], fitted from data.
pub fn aggregation_matrix(
    ds: &Dataset,
    full: &[&str],
    subset: &[&str],
) -> Result<(Vec<usize>, DMatrix<f64>)> {
    let idx: Vec<usize> = subset
        .iter()
        .map(|s| {
            full.iter().position(|f| f == s).ok_or_else(|| {
                Error::ShapeMismatch(format!("`{s}` is not in the full predictor set"))
            })
        })
        .collect::<Result<_>>()?;
    let sub_cols = ds.columns(subset)?;
    let mut cross = DMatrix::zeros(full.len(), subset.len());
    for (i, name) in full.iter().enumerate() {
        if let Some(j) = idx.iter().position(|&r| r == i) {
            cross[(i, j)] = 1.0;
        } else {
            let sol = solve_ls(ds.column(name)?, &sub_cols)?;
            for (j, s) in sol.slopes.iter().enumerate() {
                cross[(i, j)] = *s;
            }
        }
    }
    Ok((idx, cross))
}

/// Multiple slopes `(b₁, b₂)` from simple slopes `a₁, a₂` and cross slopes
/// `c₁₂` (x1 on x2), `c₂₁` (x2 on x1).
pub fn decompose_coefficients(a1: f64, a2: f64, c12: f64, c21: f64) -> Result<(f64, f64)> {
    let det = 1.0 - c12 * c21;
    if det.abs() <= 1e-12 {
        return Err(Error::CollinearPredictors("x1".into(), "x2".into()));
    }
    Ok(((a1 - a2 * c21) / det, (a2 - a1 * c12) / det))
}

fn check_not_proportional(ds: &Dataset, names: &[&str]) -> Result<()> {
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            let r = pearson_slices(
                ds.column(names[i])?,
                ds.column(names[j])?,
                (names[i], names[j]),
            )?;
            if 1.0 - r * r <= 1e-12 {
                return Err(Error::CollinearPredictors(names[i].into(), names[j].into()));
            }
        }
    }
    Ok(())
}

/// Runs every applicable identity check for `y` on `x1` adjusted for
/// `controls`. Two-predictor relations are only checked with one control;
/// the zero-slope check against another control only with two or more.
pub fn run_verification_suite(
    ds: &Dataset,
    y: &str,
    x1: &str,
    controls: &[&str],
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    if controls.is_empty() {
        return Err(Error::Usage(
            "verification needs at least one control".into(),
        ));
    }
    let mut predictors = vec![x1];
    predictors.extend_from_slice(controls);
    check_not_proportional(ds, &predictors)?;

    let mut reports = vec![verify_b1_equals_a1star(ds, y, x1, controls, tol)?];

    let x1_star = residualize(ds, x1, controls).map_err(|e| e.in_claim("lemma1"))?;
    let star = x1_star.name.as_str();
    let aug = x1_star.attach(ds)?;

    // transform law
    reports.push(
        (|| {
            let b = fit(ds, y, &predictors)?.coefficients();
            let t = build_transform(predictors.len(), 1, &x1_star.control_coeffs)?;
            let mapped = map_coefficients(&b, &t)?;
            let refit = fit(&apply_transform(ds, &predictors, &t)?, y, &predictors)?;
            Ok(VerificationReport::compare(
                Claim::Prop1,
                mapped.to_vec(),
                refit.coefficients().to_vec(),
                tol,
            ))
        })()
        .map_err(|e: Error| e.in_claim("prop1"))?,
    );

    reports.push(
        (|| {
            let xs = aug.columns(controls)?;
            let rho = multiple_correlation_slices(&x1_star.values, &xs, star, controls)?;
            Ok(VerificationReport::compare(
                Claim::Lemma1,
                vec![rho],
                vec![0.0],
                tol,
            ))
        })()
        .map_err(|e: Error| e.in_claim("lemma1"))?,
    );

    if controls.len() >= 2 {
        reports.push(
            (|| {
                let sd_star = var(&x1_star.values).sqrt();
                let mut lhs = Vec::with_capacity(controls.len());
                for (j, c) in controls.iter().enumerate() {
                    let mut regressors = vec![star];
                    regressors.extend(
                        controls
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != j)
                            .map(|(_, n)| *n),
                    );
                    let f = fit(&aug, c, &regressors)?;
                    let sd_c = var(aug.column(c)?).sqrt();
                    lhs.push(f.slopes[0] * sd_star / sd_c);
                }
                let zeros = vec![0.0; lhs.len()];
                Ok(VerificationReport::compare(Claim::Lemma3, lhs, zeros, tol))
            })()
            .map_err(|e: Error| e.in_claim("lemma3"))?,
        );
    }

    reports.push(
        (|| {
            let mut full = vec![star];
            full.extend_from_slice(controls);
            let subset = &full[..full.len() - 1];
            let b_star = fit(&aug, y, &full)?.slopes;
            let (idx, cross) = aggregation_matrix(&aug, &full, subset)?;
            let aggregated = aggregate_coefficients(&b_star, &idx, &cross)?;
            let direct = fit(&aug, y, subset)?.slopes;
            Ok(VerificationReport::compare(
                Claim::Appendix4,
                aggregated,
                direct,
                tol,
            ))
        })()
        .map_err(|e: Error| e.in_claim("appendix4"))?,
    );

    if let [x2] = controls {
        reports.push(
            (|| {
                let yv = ds.column(y)?;
                let (x1v, x2v) = (ds.column(x1)?, ds.column(x2)?);
                let a1 = simple_slope(yv, x1v, x1)?;
                let a2 = simple_slope(yv, x2v, x2)?;
                let c12 = simple_slope(x1v, x2v, x2)?;
                let c21 = simple_slope(x2v, x1v, x1)?;
                let (b1d, b2d) = decompose_coefficients(a1, a2, c12, c21)
                    .map_err(|_| Error::CollinearPredictors(x1.into(), (*x2).into()))?;
                let b = fit(ds, y, &predictors)?.slopes;
                let r = pearson_slices(x1v, x2v, (x1, x2))?;
                Ok(VerificationReport::compare(
                    Claim::AppBRelations,
                    vec![b1d, b2d, c12 * c21, b[0] * c12, b[1] * c21],
                    vec![b[0], b[1], r * r, a2 - b[1], a1 - b[0]],
                    tol,
                ))
            })()
            .map_err(|e: Error| e.in_claim("appB_relations"))?,
        );
    }

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthogonal() -> Dataset {
        // 2³ factorial columns: mutually orthogonal and centered
        let a = vec![-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0];
        let b = vec![-1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0];
        let c = vec![-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0];
        let y: Vec<f64> = (0..8)
            .map(|i| {
                1.0 + 0.5 * a[i] - 2.0 * b[i]
                    + 0.25 * c[i]
                    + [0.1, -0.2, 0.05, 0.0, 0.3, -0.1, 0.02, -0.17][i]
            })
            .collect();
        Dataset::new(vec![("A", a), ("B", b), ("C", c), ("Y", y)]).unwrap()
    }

    #[test]
    fn slope_at_zero_is_simple_slope() {
        let ds = orthogonal();
        let s = slope_on_gamma(&ds, "Y", "A", "B", 0.0).unwrap();
        let simple = crate::ols::fit_simple(&ds, "Y", "A").unwrap().slopes[0];
        assert!((s - simple).abs() < 1e-14);
    }

    #[test]
    fn degenerate_direction() {
        let ds = Dataset::new(vec![
            ("x1", vec![2.0, 4.0, 6.0, 8.0]),
            ("x2", vec![1.0, 2.0, 3.0, 4.0]),
            ("y", vec![1.0, 3.0, 2.0, 5.0]),
        ])
        .unwrap();
        assert!(matches!(
            slope_on_gamma(&ds, "y", "x1", "x2", 2.0),
            Err(Error::DegenerateDirection { .. })
        ));
        let sweep = SlopeFunction::new(&ds, "y", "x1", "x2").unwrap();
        assert!(sweep.eval(1.0).is_ok());
    }

    #[test]
    fn gamma_range_points() {
        let r = GammaRange::new(-2.0, 2.0, 0.01).unwrap();
        let p = r.points();
        assert_eq!(p.len(), 401);
        assert_eq!(p[0], -2.0);
        assert!((p[400] - 2.0).abs() < 1e-12);
        assert_eq!(GammaRange::new(0.0, 0.0, 1.0).unwrap().points(), vec![0.0]);
        assert!(GammaRange::new(1.0, 0.0, 0.1).is_err());
        assert!(GammaRange::new(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn roots_for_orthogonal_predictors() {
        let ds = orthogonal();
        let roots = gamma_roots(&ds, "Y", "A", "B").unwrap();
        let f = fit(&ds, "Y", &["A", "B"]).unwrap();
        let expected = -f.slopes[1] / f.slopes[0];
        assert_eq!(roots.len(), 2);
        assert!(roots[0].abs() < 1e-14 || (roots[0] - expected).abs() < 1e-12);
        assert!(roots.iter().any(|r| r.abs() < 1e-14));
        assert!(roots.iter().any(|r| (r - expected).abs() < 1e-12));
    }

    #[test]
    fn roots_when_second_slope_vanishes() {
        let x1 = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let x2 = vec![1.0, 3.0, 2.0, 5.0, 4.0, 6.0];
        let y: Vec<f64> = x1.iter().map(|v| 2.0 + 3.0 * v).collect();
        let ds = Dataset::new(vec![("x1", x1), ("x2", x2), ("y", y)]).unwrap();
        let roots = gamma_roots(&ds, "y", "x1", "x2").unwrap();
        let c12 = fit(&ds, "x1", &["x2"]).unwrap().slopes[0];
        assert_eq!(roots.len(), 2);
        assert!(roots[0].abs() < 1e-12);
        assert!((roots[1] - c12).abs() < 1e-12);
    }

    #[test]
    fn zero_lead_slope() {
        // y depends on x2 only and x1 ⟂ x2
        let ds = orthogonal();
        let y = ds.column("B").unwrap().iter().map(|b| 1.0 + b).collect();
        let ds = ds.with_column("Z", y).unwrap();
        assert_eq!(gamma_roots(&ds, "Z", "A", "B"), Err(Error::ZeroLeadSlope));
        let sweep = gamma_sweep(&ds, "Z", "A", "B", &[0.0, 1.0]).unwrap();
        assert_eq!(sweep.roots.len(), 1);
    }

    #[test]
    fn aggregate_identity_and_shape_errors() {
        let b = [1.5, -2.0, 0.25];
        let id = DMatrix::identity(3, 3);
        assert_eq!(
            aggregate_coefficients(&b, &[0, 1, 2], &id).unwrap(),
            b.to_vec()
        );
        assert!(matches!(
            aggregate_coefficients(&b, &[0, 1], &id),
            Err(Error::ShapeMismatch(_))
        ));
        let mut bad = DMatrix::from_row_slice(3, 1, &[0.5, 1.0, 0.2]);
        assert_eq!(
            aggregate_coefficients(&b, &[0], &bad),
            Err(Error::NonCanonicalSubsetRows { row: 0 })
        );
        bad[(0, 0)] = 1.0;
        let a = aggregate_coefficients(&b, &[0], &bad).unwrap();
        assert!((a[0] - (1.5 - 2.0 + 0.05)).abs() < 1e-15);
    }

    #[test]
    fn two_predictor_aggregation_relation() {
        // a₂ = b₁c₁₂ + b₂
        let cross = DMatrix::from_row_slice(2, 1, &[0.3, 1.0]);
        let a = aggregate_coefficients(&[2.0, -1.0], &[1], &cross).unwrap();
        assert!((a[0] - (2.0 * 0.3 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn decompose_edge_cases() {
        assert_eq!(
            decompose_coefficients(1.5, -0.5, 0.0, 0.0).unwrap(),
            (1.5, -0.5)
        );
        assert_eq!(
            decompose_coefficients(0.0, 0.0, 0.4, 0.9).unwrap(),
            (0.0, 0.0)
        );
        assert!(matches!(
            decompose_coefficients(1.0, 1.0, 2.0, 0.5),
            Err(Error::CollinearPredictors(..))
        ));
    }

    #[test]
    fn suite_on_orthogonal_design() {
        let ds = orthogonal();
        for controls in [vec!["B"], vec!["B", "C"]] {
            let reports =
                run_verification_suite(&ds, "Y", "A", &controls, DEFAULT_TOLERANCE).unwrap();
            assert!(reports.iter().all(|r| r.passed), "{reports:#?}");
        }
        let f = fit(&ds, "Y", &["A", "B", "C"]).unwrap();
        for (j, p) in ["A", "B", "C"].iter().enumerate() {
            let a = crate::ols::fit_simple(&ds, "Y", p).unwrap().slopes[0];
            assert!((a - f.slopes[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn suite_rejects_proportional_predictors() {
        let ds = Dataset::new(vec![
            ("x1", vec![1.0, 2.0, 3.0, 4.0, 5.0]),
            ("x2", vec![2.0, 4.0, 6.0, 8.0, 10.0]),
            ("y", vec![1.0, 3.0, 2.0, 5.0, 4.0]),
        ])
        .unwrap();
        assert!(matches!(
            run_verification_suite(&ds, "y", "x1", &["x2"], DEFAULT_TOLERANCE),
            Err(Error::CollinearPredictors(..))
        ));
    }

    #[test]
    fn report_passes_iff_within_tolerance() {
        let r = VerificationReport::compare(Claim::Lemma1, vec![1e-9], vec![0.0], 1e-8);
        assert!(r.passed);
        let r = VerificationReport::compare(Claim::Lemma1, vec![2e-8], vec![0.0], 1e-8);
        assert!(!r.passed);
        let r =
            VerificationReport::compare(Claim::Theorem1, vec![1000.0 + 5e-6], vec![1000.0], 1e-8);
        assert!(r.passed);
        assert_eq!(r.tolerance, 1e-5);
    }
}
