//! Ordinary least squares with tools for reading multiple-regression
//! coefficients through simple regressions.
//!
//! The slope of `X₁` in a regression on `X₁, X₂, …, X_k` equals the simple
//! slope on `X₁* = X₁ − Σ cⱼXⱼ`, where `cⱼ` are the slopes of `X₁` regressed
//! on the other predictors. More generally, transforming the predictors by a
//! nonsingular block matrix `C` maps the coefficient vector to `C⁻¹B`.
//!
//! Modules:
//! - [`stats`]: means, population (co)variances, correlations.
//! - [`ols`]: least-squares fits, prediction, residuals.
//! - [`transform`]: predictor transforms, residualization, `B* = C⁻¹B`.
//! - [`theorems`]: slope-on-γ function, its roots, surfaces, identity checks.
//! - [`cli`]: CSV ingestion and the command-line surface.

pub mod cli;
pub mod dataset;
pub mod error;
pub mod ols;
pub mod stats;
pub mod theorems;
pub mod transform;

pub use dataset::Dataset;
pub use error::{Error, Result};
pub use ols::{fit, fit_simple, predict, residuals, Coefficients, RegressionFit};
pub use stats::{
    column_stats, correlation_matrix, covariance, multiple_correlation, pearson_r, SummaryStats,
};
pub use theorems::{
    aggregate_coefficients, decompose_coefficients, gamma_roots, gamma_surface, gamma_sweep,
    run_verification_suite, slope_on_gamma, verify_b1_equals_a1star, Claim, GammaSweep,
    VerificationReport,
};
pub use transform::{
    apply_transform, build_transform, map_coefficients, residualize, residualize_with,
    PredictorTransform, ResidualizedVariable,
};
