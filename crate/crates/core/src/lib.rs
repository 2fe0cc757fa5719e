//! Exact computational Lie theory for bi-invariant metrics on compact simple
//! Lie groups.
//!
//! The crate builds root systems and Weyl groups from preset data, computes
//! Laplacian eigenvalues through Freudenthal's formula, constructs irreducible
//! characters as finite Fourier polynomials on a maximal torus, and integrates
//! class functions with the Weyl integration formula. On top of that sits
//! Kröncke's dynamical-instability test for Einstein metrics, which for `G2`
//! reduces to the exact torus integral of `χ³·δδ̄`.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! integrals are constant-term extractions. The [`quadrature`] module provides
//! an independent floating-point oracle for cross-checking.

pub mod characters;
pub mod integration;
pub mod json;
pub mod linalg;
pub mod quadrature;
pub mod root_system;
pub mod spectra;
pub mod stability;
pub mod torus_poly;

pub use characters::{alternating_sum, schur_character_g2, weyl_character, Character, CharacterError};
pub use integration::{integrate_class_function, jacobian, weyl_denominator, HaarIntegral, IntegrationError};
pub use quadrature::{verify_quadrature, QuadratureCheck, QuadratureError};
pub use root_system::{RootSystem, RootSystemError, Weight, WeylElement, WeylGroup};
pub use spectra::{freudenthal_eigenvalue, smallest_nonzero_eigenvalue, Eigenvalue, ScaleConvention, SpectraError};
pub use stability::{
    analyze, find_neutral_directions, kroencke_test, StabilityError, StabilityReport, Verdict,
};
pub use torus_poly::{Exponent, PolyError, TorusPolynomial};

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a small rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
