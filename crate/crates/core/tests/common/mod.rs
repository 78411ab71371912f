//! Test-only oracles and fixtures.
//!
//! The rational routines below solve everything in exact arithmetic from
//! the raw observations (every finite `f64` is an exact rational), without
//! touching the library's floating-point paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use regcoef::Dataset;

pub type Q = BigRational;

pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite")
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn f(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

pub fn exact_col(x: &[f64]) -> Vec<Q> {
    x.iter().map(|&v| q(v)).collect()
}

pub fn exact_mean(x: &[Q]) -> Q {
    x.iter().fold(Q::zero(), |a, b| a + b) / qi(x.len() as i64)
}

/// Population covariance `mean(ab) − mean(a)mean(b)`.
pub fn exact_cov(a: &[Q], b: &[Q]) -> Q {
    let ab: Vec<Q> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    exact_mean(&ab) - exact_mean(a) * exact_mean(b)
}

/// Gauss–Jordan elimination over the rationals. `None` if singular.
pub fn exact_solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let m = b.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (dst, src) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *dst -= &factor * src;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..m).map(|i| &b[i] / &a[i][i]).collect())
}

/// Normal equations `XᵀX B = XᵀY` with a leading ones column, solved
/// exactly. Returns `(b₀, b₁, …, b_k)`.
pub fn exact_fit(y: &[Q], xs: &[Vec<Q>]) -> Option<Vec<Q>> {
    let n = y.len();
    let ones = vec![qi(1); n];
    let cols: Vec<&[Q]> = std::iter::once(ones.as_slice())
        .chain(xs.iter().map(Vec::as_slice))
        .collect();
    let dot = |a: &[Q], b: &[Q]| a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y);
    let a: Vec<Vec<Q>> = cols
        .iter()
        .map(|ci| cols.iter().map(|cj| dot(ci, cj)).collect())
        .collect();
    let b: Vec<Q> = cols.iter().map(|c| dot(c, y)).collect();
    exact_solve(a, b)
}

pub fn exact_fit_ds(ds: &Dataset, y: &str, xs: &[&str]) -> Option<Vec<Q>> {
    let yq = exact_col(ds.column(y).unwrap());
    let xq: Vec<Vec<Q>> = xs
        .iter()
        .map(|x| exact_col(ds.column(x).unwrap()))
        .collect();
    exact_fit(&yq, &xq)
}

pub const D1_X1: [f64; 6] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
pub const D1_X2: [f64; 6] = [1.0, 3.0, 2.0, 5.0, 4.0, 6.0];
pub const D1_Y: [f64; 6] = [2.0, 4.0, 5.0, 7.0, 8.0, 11.0];
pub const D1_X3: [f64; 6] = [2.0, 1.0, 4.0, 3.0, 6.0, 5.0];

pub fn d1() -> Dataset {
    Dataset::new(vec![
        ("X1", D1_X1.to_vec()),
        ("X2", D1_X2.to_vec()),
        ("Y", D1_Y.to_vec()),
    ])
    .unwrap()
}

pub fn d1_x3() -> Dataset {
    d1().with_column("X3", D1_X3.to_vec()).unwrap()
}

pub const D1_CSV: &str = "X1,X2,Y\n1,1,2\n2,3,4\n3,2,5\n4,5,7\n5,4,8\n6,6,11\n";

pub fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Correlated Gaussian predictors `X1..Xk` and a response `Y` that is a
/// random linear combination plus noise.
pub fn random_dataset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dataset {
    let mut normal = || -> f64 { StandardNormal.sample(&mut *rng) };
    let latent: Vec<Vec<f64>> = (0..k).map(|_| (0..n).map(|_| normal()).collect()).collect();
    let mix: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..k).map(|_| normal() * 0.7).collect())
        .collect();
    let shift: Vec<f64> = (0..k).map(|_| normal() * 3.0).collect();
    let mut cols: Vec<(String, Vec<f64>)> = Vec::new();
    for j in 0..k {
        let col: Vec<f64> = (0..n)
            .map(|i| {
                shift[j]
                    + latent[j][i]
                    + (0..k)
                        .filter(|&l| l != j)
                        .map(|l| mix[j][l] * latent[l][i])
                        .sum::<f64>()
            })
            .collect();
        cols.push((format!("X{}", j + 1), col));
    }
    let beta: Vec<f64> = (0..k).map(|_| normal() * 2.0).collect();
    let intercept = normal() * 5.0;
    let y: Vec<f64> = (0..n)
        .map(|i| intercept + (0..k).map(|j| beta[j] * cols[j].1[i]).sum::<f64>() + 0.5 * normal())
        .collect();
    cols.push(("Y".into(), y));
    Dataset::new(cols).unwrap()
}

/// Small-integer dataset, suitable for exact comparisons.
pub fn random_integer_dataset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dataset {
    let mut cols: Vec<(String, Vec<f64>)> = (1..=k)
        .map(|j| {
            (
                format!("X{j}"),
                (0..n).map(|_| rng.random_range(-20..=20) as f64).collect(),
            )
        })
        .collect();
    cols.push((
        "Y".into(),
        (0..n)
            .map(|_| rng.random_range(-100..=100) as f64)
            .collect(),
    ));
    Dataset::new(cols).unwrap()
}

/// Relative closeness `|a − b| ≤ tol·max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
