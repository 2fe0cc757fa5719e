//! Weyl integration formula as exact constant-term extraction.
//!
//! For a class function `f` restricted to the maximal torus,
//!
//! ```text
//! ∫_G f dg = (1/|W|) ∫_T f · δ·δ̄ dt,     δ = ∏_{α>0} (e^{α/2} − e^{−α/2}),
//! ```
//!
//! with both Haar measures of total mass 1. With unit torus measure the
//! right-hand integral is the constant term of `f·δδ̄`; over the coordinate
//! box `[0, 2π]^r` it is `(2π)^r` times that.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{alternating_sum, CharacterError};
use crate::root_system::{RootSystem, RootSystemError};
use crate::torus_poly::{PolyError, TorusPolynomial};
use crate::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrationError {
    #[error("integrand is not Weyl invariant, so it is not the restriction of a class function")]
    NotWeylInvariant,
    #[error("integrand has half-integral exponents")]
    NonIntegral,
    #[error("Weyl denominator is not integral")]
    NonIntegralDenominator,
    #[error("Weyl denominator does not match the alternating sum A_ρ")]
    DenominatorMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Lattice(#[from] RootSystemError),
}

/// Exact value of `∫_G f dg`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarIntegral {
    /// With `vol(G) = 1`.
    #[serde(with = "crate::json::rational")]
    pub unit_haar_value: Rational,
    /// `c` in `∫_{[0,2π]^r} f·δδ̄ dθ = c·π^r`.
    #[serde(with = "crate::json::rational")]
    pub raw_torus_coefficient: Rational,
    pub pi_power: u32,
}

impl HaarIntegral {
    pub fn is_zero(&self) -> bool {
        self.unit_haar_value.is_zero()
    }

    /// `48*pi^2`, `2*pi`, `0`.
    pub fn raw_display(&self) -> String {
        if self.raw_torus_coefficient.is_zero() {
            return "0".to_string();
        }
        let pi = match self.pi_power {
            0 => String::new(),
            1 => "*pi".to_string(),
            p => format!("*pi^{p}"),
        };
        format!("{}{pi}", self.raw_torus_coefficient)
    }
}

impl fmt::Display for HaarIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (torus: {})", self.unit_haar_value, self.raw_display())
    }
}

/// `δ = ∏_{α>0} (e^{α/2} − e^{−α/2})`, expanded.
///
/// Checks that the expansion is integral and equals `±A_ρ`.
pub fn weyl_denominator(rs: &RootSystem) -> Result<TorusPolynomial, IntegrationError> {
    let r = rs.rank();
    let mut delta = TorusPolynomial::one(r);
    for alpha in rs.positive_roots() {
        let half = rs.to_exponent(&alpha.scale(&rat(1, 2)))?;
        let factor = TorusPolynomial::from_terms(r, [(-&half, -Rational::one()), (half, Rational::one())])?;
        delta = &delta * &factor;
    }
    if !delta.is_integral() {
        return Err(IntegrationError::NonIntegralDenominator);
    }
    let a_rho = alternating_sum(rs, &rs.rho())?;
    if delta != a_rho && delta != -&a_rho {
        return Err(IntegrationError::DenominatorMismatch);
    }
    Ok(delta)
}

/// `δ·δ̄`, the Jacobian of the Weyl integration formula.
pub fn jacobian(rs: &RootSystem) -> Result<TorusPolynomial, IntegrationError> {
    let delta = weyl_denominator(rs)?;
    Ok(&delta * &delta.conj())
}

/// `∫_G f dg` for the class function whose torus restriction is `f`.
pub fn integrate_class_function(rs: &RootSystem, f: &TorusPolynomial) -> Result<HaarIntegral, IntegrationError> {
    if f.rank() != rs.rank() {
        return Err(PolyError::RankMismatch { left: rs.rank(), right: f.rank() }.into());
    }
    if !f.is_integral() {
        return Err(IntegrationError::NonIntegral);
    }
    if !rs.is_weyl_invariant(f) {
        return Err(IntegrationError::NotWeylInvariant);
    }
    let ct = f.checked_mul(&jacobian(rs)?)?.constant_term();
    let order = int(rs.weyl_order() as i64);
    let rank = rs.rank() as u32;
    Ok(HaarIntegral {
        unit_haar_value: &ct / order,
        raw_torus_coefficient: ct * int(1 << rank),
        pi_power: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_from_label, weyl_character};
    use crate::torus_poly::Exponent;

    #[test]
    fn g2_denominator_matches_display() {
        let g2 = RootSystem::g2();
        let delta = weyl_denominator(&g2).unwrap();
        let display = "2cos(θ1+3θ2) - 2cos(3θ1+θ2) + 2cos(2θ1-θ2) - 2cos(θ1-2θ2) \
                       + 2cos(3θ1+2θ2) - 2cos(2θ1+3θ2)";
        assert_eq!(delta, TorusPolynomial::parse_cosine(display, 2).unwrap());
        assert_eq!(delta, alternating_sum(&g2, &g2.rho()).unwrap());
        assert_eq!(delta.conj(), delta);
    }

    #[test]
    fn jacobian_constant_terms() {
        let g2 = RootSystem::g2();
        let j = jacobian(&g2).unwrap();
        assert_eq!(j.constant_term(), int(12));
        let delta = weyl_denominator(&g2).unwrap();
        assert_eq!(j, &delta * &delta);

        let a1 = RootSystem::a1();
        let j1 = jacobian(&a1).unwrap();
        let expected = TorusPolynomial::from_terms(
            1,
            [
                (Exponent::zero(1), int(2)),
                (Exponent::integral(&[2]), int(-1)),
                (Exponent::integral(&[-2]), int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(j1, expected);
    }

    #[test]
    fn a2_denominator_is_imaginary() {
        let a2 = RootSystem::a2();
        let delta = weyl_denominator(&a2).unwrap();
        assert_eq!(delta.conj(), -&delta);
        assert_eq!(jacobian(&a2).unwrap().constant_term(), int(6));
    }

    #[test]
    fn jacobian_weyl_invariant_and_denominator_alternating() {
        for rs in [RootSystem::a1(), RootSystem::a2(), RootSystem::g2()] {
            let delta = weyl_denominator(&rs).unwrap();
            let j = jacobian(&rs).unwrap();
            for w in rs.weyl_group().iter() {
                assert_eq!(w.apply_polynomial(&delta), delta.scale(&int(w.sign)));
                assert_eq!(w.apply_polynomial(&j), j);
            }
            // nonnegative as a function
            for k in 0..50 {
                let t = [0.37 * k as f64, 1.3 - 0.11 * k as f64];
                let v = j.eval_float(&t[..rs.rank()]);
                assert!(v.re > -1e-9 && v.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn basic_integrals() {
        let g2 = RootSystem::g2();
        let one = integrate_class_function(&g2, &TorusPolynomial::one(2)).unwrap();
        assert_eq!(one.unit_haar_value, int(1));
        assert_eq!(one.raw_display(), "48*pi^2");
        let chi = weyl_character(&g2, &g2.fundamental_weights()[0]).unwrap().into_poly();
        assert!(integrate_class_function(&g2, &chi).unwrap().is_zero());
        let sq = integrate_class_function(&g2, &(&chi * &chi.conj())).unwrap();
        assert_eq!(sq.unit_haar_value, int(1));
        let cube = integrate_class_function(&g2, &chi.pow(3)).unwrap();
        assert_eq!(cube.unit_haar_value, int(1));
        assert_eq!(cube.raw_torus_coefficient, int(48));
        assert_eq!(cube.raw_torus_coefficient, &cube.unit_haar_value * int(4 * 12));
    }

    #[test]
    fn volume_normalization() {
        for rs in [RootSystem::a1(), RootSystem::a2(), RootSystem::g2()] {
            let v = integrate_class_function(&rs, &TorusPolynomial::one(rs.rank())).unwrap();
            assert_eq!(v.unit_haar_value, int(1));
        }
        let a1 = RootSystem::a1();
        assert_eq!(integrate_class_function(&a1, &TorusPolynomial::one(1)).unwrap().raw_display(), "4*pi");
    }

    #[test]
    fn orthonormality() {
        let g2 = RootSystem::g2();
        let labels = [[0, 0], [1, 0], [0, 1], [2, 0]];
        let chars: Vec<_> = labels.iter().map(|l| character_from_label(&g2, l).unwrap().into_poly()).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let v = integrate_class_function(&g2, &(a * &b.conj())).unwrap();
                assert_eq!(v.unit_haar_value, int(i64::from(i == j)));
            }
        }
        let a1 = RootSystem::a1();
        let chars: Vec<_> = (0..5).map(|n| character_from_label(&a1, &[n]).unwrap().into_poly()).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let v = integrate_class_function(&a1, &(a * &b.conj())).unwrap();
                assert_eq!(v.unit_haar_value, int(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn rejects_bad_integrands() {
        let g2 = RootSystem::g2();
        let not_invariant = TorusPolynomial::monomial(Exponent::integral(&[1, 0]), int(1));
        assert_eq!(integrate_class_function(&g2, &not_invariant), Err(IntegrationError::NotWeylInvariant));
        let half = TorusPolynomial::monomial(Exponent::from_doubled(vec![1, 0]), int(1));
        assert_eq!(integrate_class_function(&g2, &half), Err(IntegrationError::NonIntegral));
        assert!(matches!(
            integrate_class_function(&g2, &TorusPolynomial::one(1)),
            Err(IntegrationError::Poly(PolyError::RankMismatch { .. }))
        ));
    }
}
