//! Irreducible characters as torus polynomials.
//!
//! Two independent constructions:
//!
//! * [`weyl_character`]: the quotient `A_{λ+ρ} / A_ρ` of alternating sums
//!   over the Weyl group.
//! * [`schur_character_g2`]: the `G2` formula
//!   `χ_{a,b} = (S_{(a+2b+1, a+b+1)} − S_{(a+2b+1, b)}) / (S_{(1,1)} − S_{(1)})`
//!   in three Schur variables with `x₁x₂x₃ = 1`, `x₁ = e^{iθ₁}`, `x₂ = e^{iθ₂}`.
//!
//! Both divide with [`TorusPolynomial::div_exact`], which certifies the
//! quotient by multiplying back.

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::root_system::{RootSystem, RootSystemError, Weight};
use crate::torus_poly::{rational_to_integer, Exponent, PolyError, TorusPolynomial};
use crate::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight lies on a Weyl chamber wall; its alternating sum vanishes")]
    OnWall,
    #[error("character division failed: {0}")]
    Division(#[from] PolyError),
    #[error(transparent)]
    Lattice(#[from] RootSystemError),
    #[error("coefficient sum {0} is not a positive integer")]
    BadDimension(Rational),
}

/// Character of an irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    poly: TorusPolynomial,
    highest_weight: Weight,
    dimension: u64,
}

impl Character {
    fn new(poly: TorusPolynomial, highest_weight: Weight) -> Result<Self, CharacterError> {
        let dimension = dimension_of(&poly)?;
        Ok(Character { poly, highest_weight, dimension })
    }

    pub fn poly(&self) -> &TorusPolynomial {
        &self.poly
    }

    pub fn into_poly(self) -> TorusPolynomial {
        self.poly
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    /// Self-dual representations have real characters.
    pub fn is_real(&self) -> bool {
        self.poly.is_real()
    }
}

/// Value at the identity: the sum of all coefficients.
pub fn dimension_of(poly: &TorusPolynomial) -> Result<u64, CharacterError> {
    let sum = poly.coefficient_sum();
    rational_to_integer(&sum)
        .filter(|n| n.is_positive())
        .and_then(|n| n.to_u64())
        .ok_or(CharacterError::BadDimension(sum))
}

/// `A_μ = Σ_{w∈W} sgn(w) e^{w(μ)}`.
pub fn alternating_sum(rs: &RootSystem, mu: &Weight) -> Result<TorusPolynomial, CharacterError> {
    let mut terms = Vec::with_capacity(rs.weyl_order());
    for w in rs.weyl_group().iter() {
        let image = w.apply(mu);
        if !w.is_identity() && image == *mu {
            return Err(CharacterError::OnWall);
        }
        terms.push((rs.to_exponent(&image)?, int(w.sign)));
    }
    Ok(TorusPolynomial::from_terms(rs.rank(), terms)?)
}

/// `χ_λ = A_{λ+ρ} / A_ρ`.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<Character, CharacterError> {
    if !rs.is_dominant(lambda) {
        return Err(CharacterError::NotDominant);
    }
    let rho = rs.rho();
    let numerator = alternating_sum(rs, &lambda.add(&rho))?;
    let denominator = alternating_sum(rs, &rho)?;
    let poly = numerator.div_exact(&denominator)?;
    Character::new(poly, lambda.clone())
}

/// Character for the dominant weight with fundamental coordinates `coords`.
pub fn character_from_label(rs: &RootSystem, coords: &[i64]) -> Result<Character, CharacterError> {
    weyl_character(rs, &rs.weight_from_fundamental(coords))
}

/// `x₁^a x₂^b x₃^c` with `x₃ = (x₁x₂)⁻¹` becomes `e^{i((a−c)θ₁ + (b−c)θ₂)}`.
fn restrict_monomial(x: [i64; 3]) -> Exponent {
    Exponent::integral(&[x[0] - x[2], x[1] - x[2]])
}

/// `det(x_i^{l_j})` over the three Schur variables, restricted to the torus.
fn alternant(l: [i64; 3]) -> TorusPolynomial {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    let terms = PERMS
        .iter()
        .map(|(p, s)| (restrict_monomial([l[p[0]], l[p[1]], l[p[2]]]), int(*s)));
    TorusPolynomial::from_terms(2, terms).expect("rank 2")
}

/// Schur polynomial `S_{(p₁,p₂,p₃)}(x₁,x₂,x₃)` by the bialternant formula,
/// restricted to `x₁x₂x₃ = 1`.
pub fn schur_polynomial(partition: [u32; 3]) -> Result<TorusPolynomial, PolyError> {
    let [p1, p2, p3] = partition.map(i64::from);
    alternant([p1 + 2, p2 + 1, p3]).div_exact(&alternant([2, 1, 0]))
}

/// The `G2` character `χ_{a,b}` built from Schur polynomials.
pub fn schur_character_g2(a: u32, b: u32) -> Result<Character, CharacterError> {
    let s = |p: [u32; 3]| schur_polynomial(p);
    let numerator = &s([a + 2 * b + 1, a + b + 1, 0])? - &s([a + 2 * b + 1, b, 0])?;
    let denominator = &s([1, 1, 0])? - &s([1, 0, 0])?;
    let poly = numerator.div_exact(&denominator)?;
    let g2 = RootSystem::g2();
    Character::new(poly, g2.weight_from_fundamental(&[i64::from(a), i64::from(b)]))
}
