//! Floating-point oracle for the exact integrals.
//!
//! Evaluates `f(θ)·|δ(θ)|²` on a uniform `N^r` grid over `[0, 2π)^r` and
//! averages. `|δ|²` is computed directly from the root product
//! `∏ 4 sin²(α(θ)/2)`, not from the expanded polynomial, so the only shared
//! input with the exact path is `f` itself. The rectangle rule on a periodic
//! grid is the discrete Fourier projection onto the zero mode, so it is exact
//! (up to rounding) once `N` exceeds the largest exponent.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::integration::{integrate_class_function, IntegrationError};
use crate::linalg;
use crate::root_system::RootSystem;
use crate::torus_poly::TorusPolynomial;
use crate::Rational;

pub const DEFAULT_GRID: usize = 128;
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadratureError {
    #[error("grid {grid} is below the band limit; need at least {required}")]
    GridTooSmall { grid: usize, required: usize },
    #[error("integrand has half-integral exponents")]
    NonIntegral,
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureCheck {
    pub grid: usize,
    pub float_value: Complex64,
    pub exact_value: Rational,
    pub abs_error: f64,
    pub pass: bool,
}

/// Torus images of the positive roots, in true units.
fn root_frequencies(rs: &RootSystem) -> Vec<Vec<f64>> {
    rs.positive_roots()
        .iter()
        .map(|a| {
            linalg::mat_vec(rs.torus_basis(), a.coords())
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

/// Per-coordinate bound on the exponents of `δδ̄`: `Σ_{α>0} |α_k|`.
fn jacobian_band_limit(rs: &RootSystem) -> i64 {
    let freqs = root_frequencies(rs);
    (0..rs.rank())
        .map(|k| freqs.iter().map(|a| a[k].abs()).sum::<f64>().ceil() as i64)
        .max()
        .unwrap_or(0)
}

fn root_product(freqs: &[Vec<f64>], theta: &[f64]) -> f64 {
    freqs
        .iter()
        .map(|a| {
            let phase: f64 = a.iter().zip(theta).map(|(x, t)| x * t).sum();
            4.0 * (0.5 * phase).sin().powi(2)
        })
        .product()
}

/// `|δ(θ)|² = ∏_{α>0} 4 sin²(α(θ)/2)`.
pub fn jacobian_at(rs: &RootSystem, theta: &[f64]) -> f64 {
    root_product(&root_frequencies(rs), theta)
}

/// Smallest grid accepted for `f` on `rs`.
pub fn required_grid(rs: &RootSystem, f: &TorusPolynomial) -> usize {
    (2 * (f.band_limit() + jacobian_band_limit(rs)) + 2) as usize
}

/// `(1/|W|)·mean_{grid}(f·|δ|²)`.
pub fn quadrature_value(rs: &RootSystem, f: &TorusPolynomial, grid: usize) -> Result<Complex64, QuadratureError> {
    let required = required_grid(rs, f);
    if grid < required {
        return Err(QuadratureError::GridTooSmall { grid, required });
    }
    if !f.is_integral() {
        return Err(QuadratureError::NonIntegral);
    }
    let r = rs.rank();
    let freqs = root_frequencies(rs);
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let points = grid.pow(r as u32);
    let mut acc = Complex64::zero();
    let mut theta = vec![0.0; r];
    for idx in 0..points {
        let mut rem = idx;
        for t in theta.iter_mut() {
            *t = (rem % grid) as f64 * step;
            rem /= grid;
        }
        acc += f.eval_float(&theta) * root_product(&freqs, &theta);
    }
    Ok(acc / (points as f64 * rs.weyl_order() as f64))
}

/// Compares the quadrature oracle against [`integrate_class_function`].
pub fn verify_quadrature(rs: &RootSystem, f: &TorusPolynomial, grid: usize) -> Result<QuadratureCheck, QuadratureError> {
    let float_value = quadrature_value(rs, f, grid)?;
    let exact_value = integrate_class_function(rs, f)?.unit_haar_value;
    let exact_f = exact_value.to_f64().unwrap_or(f64::NAN);
    let abs_error = (float_value - Complex64::new(exact_f, 0.0)).norm();
    Ok(QuadratureCheck { grid, float_value, exact_value, abs_error, pass: abs_error <= TOLERANCE })
}
