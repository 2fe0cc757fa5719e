//! Kröncke's instability test for the bi-invariant Einstein metric.
//!
//! If `φ` solves `Δφ = −2Λφ` and `∫ φ³ ≠ 0`, the Einstein metric is
//! dynamically unstable under the Ricci flow. The test is one-directional: a
//! vanishing integral proves nothing, so it is reported as inconclusive.
//!
//! Candidates for `φ` are the real irreducible characters whose Freudenthal
//! eigenvalue equals `−2Λ`. With the Killing metric `Λ = 1/4`.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{weyl_character, CharacterError};
use crate::integration::{integrate_class_function, HaarIntegral, IntegrationError};
use crate::root_system::{RootSystem, Weight};
use crate::spectra::{self, freudenthal_eigenvalue, Eigenvalue, SpectraError};
use crate::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("Einstein constant must be positive")]
    NonPositiveEinsteinConstant,
    #[error("no dominant weight with |λ+ρ|² ≤ {0}")]
    EmptySearchSpace(Rational),
    #[error("weight is not a neutral direction: eigenvalue {eigenvalue} ≠ −2Λ = {target}")]
    NotNeutral { eigenvalue: Rational, target: Rational },
    #[error("character is not real, so it is not a real eigenfunction; the criterion does not apply")]
    NonRealCharacter,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    DynamicallyUnstable,
    InconclusiveIntegralVanishes,
    NoNeutralDirection,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DynamicallyUnstable => "DYNAMICALLY UNSTABLE",
            Verdict::InconclusiveIntegralVanishes => "INCONCLUSIVE (cube integral vanishes)",
            Verdict::NoNeutralDirection => "NO NEUTRAL DIRECTION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub group: String,
    /// `Λ` for the Killing metric.
    #[serde(with = "crate::json::rational")]
    pub einstein_constant: Rational,
    /// Neutral directions with their Killing-scale eigenvalues.
    pub neutral_weights: Vec<Eigenvalue>,
    pub cube_integrals: Vec<(Weight, HaarIntegral)>,
    pub verdict: Verdict,
}

impl StabilityReport {
    fn from_parts(
        rs: &RootSystem,
        lambda: Rational,
        neutral: Vec<Eigenvalue>,
        cubes: Vec<(Weight, HaarIntegral)>,
    ) -> Self {
        let verdict = if neutral.is_empty() {
            Verdict::NoNeutralDirection
        } else if cubes.iter().any(|(_, i)| !i.is_zero()) {
            Verdict::DynamicallyUnstable
        } else {
            Verdict::InconclusiveIntegralVanishes
        };
        StabilityReport {
            group: rs.name().to_string(),
            einstein_constant: lambda,
            neutral_weights: neutral,
            cube_integrals: cubes,
            verdict,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        Self::deserialize(v)
    }
}

/// `|λ+ρ|²` at which the eigenvalue reaches `−2Λ`; scanning up to here finds
/// every neutral direction.
pub fn neutral_search_bound(rs: &RootSystem, lambda_einstein: &Rational) -> Rational {
    rs.norm_sq(&rs.rho()) + int(2) * lambda_einstein * spectra::killing_factor(rs)
}

fn is_neutral(e: &Eigenvalue, rs: &RootSystem, lambda_einstein: &Rational) -> bool {
    let k = e.to_killing();
    *k.value() == -(int(2) * lambda_einstein) && {
        // the same predicate must hold in the unit-short-root normalization
        let fh = spectra::einstein_constant_in(rs, lambda_einstein, &spectra::ScaleConvention::FhUnitShortRoot);
        *e.to_fh().value() == -(int(2) * fh)
    }
}

/// Dominant weights with `|λ+ρ|² ≤ search_bound` whose Killing-scale
/// eigenvalue is exactly `−2Λ`.
pub fn find_neutral_directions(
    rs: &RootSystem,
    lambda_einstein: &Rational,
    search_bound: &Rational,
) -> Result<Vec<Eigenvalue>, StabilityError> {
    if !lambda_einstein.is_positive() {
        return Err(StabilityError::NonPositiveEinsteinConstant);
    }
    let weights = rs.dominant_weights_below(search_bound);
    if weights.is_empty() {
        return Err(StabilityError::EmptySearchSpace(search_bound.clone()));
    }
    let mut out = Vec::new();
    for w in weights {
        let e = freudenthal_eigenvalue(rs, &w)?;
        if is_neutral(&e, rs, lambda_einstein) {
            out.push(e.to_killing());
        }
    }
    Ok(out)
}

/// `∫ χ_λ³ dg` for a neutral `λ`.
fn cube_integral(
    rs: &RootSystem,
    lambda: &Weight,
    lambda_einstein: &Rational,
) -> Result<(Eigenvalue, HaarIntegral), StabilityError> {
    let e = freudenthal_eigenvalue(rs, lambda)?;
    if !is_neutral(&e, rs, lambda_einstein) {
        return Err(StabilityError::NotNeutral {
            eigenvalue: e.to_killing().value().clone(),
            target: -(int(2) * lambda_einstein),
        });
    }
    let chi = weyl_character(rs, lambda)?;
    if !chi.is_real() {
        return Err(StabilityError::NonRealCharacter);
    }
    let integral = integrate_class_function(rs, &chi.poly().pow(3))?;
    Ok((e.to_killing(), integral))
}

/// Kröncke test on a single neutral weight with `Λ = 1/4`.
pub fn kroencke_test(rs: &RootSystem, lambda: &Weight) -> Result<StabilityReport, StabilityError> {
    kroencke_test_with(rs, lambda, &spectra::killing_einstein_constant())
}

pub fn kroencke_test_with(
    rs: &RootSystem,
    lambda: &Weight,
    lambda_einstein: &Rational,
) -> Result<StabilityReport, StabilityError> {
    if !lambda_einstein.is_positive() {
        return Err(StabilityError::NonPositiveEinsteinConstant);
    }
    let (e, integral) = cube_integral(rs, lambda, lambda_einstein)?;
    Ok(StabilityReport::from_parts(rs, lambda_einstein.clone(), vec![e], vec![(lambda.clone(), integral)]))
}

/// Full pipeline: scan for neutral directions, integrate each cube.
///
/// `search_bound` defaults to [`neutral_search_bound`].
pub fn analyze(
    rs: &RootSystem,
    lambda_einstein: &Rational,
    search_bound: Option<&Rational>,
) -> Result<StabilityReport, StabilityError> {
    let bound = search_bound.cloned().unwrap_or_else(|| neutral_search_bound(rs, lambda_einstein));
    let neutral = find_neutral_directions(rs, lambda_einstein, &bound)?;
    let cubes = neutral
        .iter()
        .map(|e| {
            let (_, integral) = cube_integral(rs, e.highest_weight(), lambda_einstein)?;
            Ok((e.highest_weight().clone(), integral))
        })
        .collect::<Result<Vec<_>, StabilityError>>()?;
    Ok(StabilityReport::from_parts(rs, lambda_einstein.clone(), neutral, cubes))
}
