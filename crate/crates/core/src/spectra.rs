//! Laplacian eigenvalues of bi-invariant metrics.
//!
//! For the irreducible representation with highest weight `λ` the Laplacian
//! has eigenvalue `|ρ|² − |λ+ρ|²` (Freudenthal), computed here in the
//! preset normalization (`|short root|² = 1`). The Killing-form metric is the
//! preset metric scaled by `⟨ψ, ψ+2ρ⟩` for the highest root `ψ`, which is 12
//! on `G2`.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::root_system::{RootSystem, Weight};
use crate::{int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("weight is not dominant")]
    NotDominant,
    #[error("metric scale factor must be positive")]
    NonPositiveScale,
    #[error("no nontrivial dominant weight with |λ+ρ|² ≤ {0}")]
    EmptySearchSpace(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScaleConvention {
    /// Dual metric with shortest root of squared length 1.
    FhUnitShortRoot,
    /// Metric induced by minus the Killing form.
    Killing,
    /// Any other multiple of the unit-short-root metric.
    Rescaled(#[serde(with = "crate::json::rational")] Rational),
}

impl fmt::Display for ScaleConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleConvention::FhUnitShortRoot => f.write_str("FH"),
            ScaleConvention::Killing => f.write_str("Killing"),
            ScaleConvention::Rescaled(k) => write!(f, "{k}·FH"),
        }
    }
}

/// The metric factor `k` with `g_Killing = k · g_unit`.
pub fn killing_factor(rs: &RootSystem) -> Rational {
    let psi = rs.highest_root();
    rs.inner(psi, &psi.add(&rs.rho().scale(&int(2))))
}

/// Einstein constant of the Killing metric on any compact simple group.
pub fn killing_einstein_constant() -> Rational {
    rat(1, 4)
}

/// Einstein constant `Λ` (Killing scale) transported to `convention`.
pub fn einstein_constant_in(rs: &RootSystem, killing_lambda: &Rational, convention: &ScaleConvention) -> Rational {
    // Λ scales like an eigenvalue: g → k·g sends Λ → Λ/k
    let kf = killing_factor(rs);
    match convention {
        ScaleConvention::Killing => killing_lambda.clone(),
        ScaleConvention::FhUnitShortRoot => killing_lambda * kf,
        ScaleConvention::Rescaled(k) => killing_lambda * kf / k,
    }
}

/// Exact Laplacian eigenvalue, tagged with the metric it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    #[serde(with = "crate::json::rational")]
    value: Rational,
    /// Metric factor relative to the unit-short-root metric.
    #[serde(with = "crate::json::rational")]
    metric_scale: Rational,
    #[serde(with = "crate::json::rational")]
    killing_factor: Rational,
    highest_weight: Weight,
}

impl Eigenvalue {
    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn metric_scale(&self) -> &Rational {
        &self.metric_scale
    }

    pub fn scale_convention(&self) -> ScaleConvention {
        if self.metric_scale.is_one() {
            ScaleConvention::FhUnitShortRoot
        } else if self.metric_scale == self.killing_factor {
            ScaleConvention::Killing
        } else {
            ScaleConvention::Rescaled(self.metric_scale.clone())
        }
    }

    /// Metric `g → k·g`; eigenvalues scale by `1/k`.
    pub fn rescale(&self, k: &Rational) -> Result<Eigenvalue, SpectraError> {
        if !k.is_positive() {
            return Err(SpectraError::NonPositiveScale);
        }
        Ok(Eigenvalue {
            value: &self.value / k,
            metric_scale: &self.metric_scale * k,
            killing_factor: self.killing_factor.clone(),
            highest_weight: self.highest_weight.clone(),
        })
    }

    pub fn in_convention(&self, convention: &ScaleConvention) -> Eigenvalue {
        let target = match convention {
            ScaleConvention::FhUnitShortRoot => Rational::one(),
            ScaleConvention::Killing => self.killing_factor.clone(),
            ScaleConvention::Rescaled(k) => k.clone(),
        };
        self.rescale(&(target / &self.metric_scale)).expect("metric scales are positive")
    }

    pub fn to_killing(&self) -> Eigenvalue {
        self.in_convention(&ScaleConvention::Killing)
    }

    pub fn to_fh(&self) -> Eigenvalue {
        self.in_convention(&ScaleConvention::FhUnitShortRoot)
    }
}

/// `μ_λ = |ρ|² − |λ+ρ|²` in the unit-short-root normalization.
pub fn freudenthal_eigenvalue(rs: &RootSystem, lambda: &Weight) -> Result<Eigenvalue, SpectraError> {
    if !rs.is_dominant(lambda) {
        return Err(SpectraError::NotDominant);
    }
    let rho = rs.rho();
    let value = rs.norm_sq(&rho) - rs.norm_sq(&lambda.add(&rho));
    Ok(Eigenvalue {
        value,
        metric_scale: Rational::one(),
        killing_factor: killing_factor(rs),
        highest_weight: lambda.clone(),
    })
}

/// Laplacian eigenvalue of largest value below zero, over dominant weights
/// with `|λ+ρ|² ≤ search_bound`. Ties are all returned.
pub fn smallest_nonzero_eigenvalue(rs: &RootSystem, search_bound: &Rational) -> Result<Vec<Eigenvalue>, SpectraError> {
    let candidates: Vec<Eigenvalue> = rs
        .dominant_weights_below(search_bound)
        .into_iter()
        .filter(|l| !l.is_zero())
        .map(|l| freudenthal_eigenvalue(rs, &l))
        .collect::<Result<_, _>>()?;
    let Some(best) = candidates.iter().map(|e| e.value.clone()).max() else {
        return Err(SpectraError::EmptySearchSpace(search_bound.clone()));
    };
    Ok(candidates.into_iter().filter(|e| e.value == best).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn is_nonpositive(e: &Eigenvalue) -> bool {
        !e.value.is_positive() && (e.value.is_zero() == e.highest_weight.is_zero())
    }

    #[test]
    fn g2_eigenvalues() {
        let g2 = RootSystem::g2();
        let om = g2.fundamental_weights().to_vec();
        let e10 = freudenthal_eigenvalue(&g2, &om[0]).unwrap();
        assert_eq!(e10.value(), &int(-6));
        assert_eq!(e10.scale_convention(), ScaleConvention::FhUnitShortRoot);
        assert_eq!(freudenthal_eigenvalue(&g2, &Weight::zero(2)).unwrap().value(), &int(0));
        // |(8,5)|² = 64 + 75 − 120 = 19
        assert_eq!(freudenthal_eigenvalue(&g2, &om[1]).unwrap().value(), &int(-12));
        // |(9,5)|² = 81 + 75 − 135 = 21
        let two_om1 = g2.weight_from_fundamental(&[2, 0]);
        assert_eq!(freudenthal_eigenvalue(&g2, &two_om1).unwrap().value(), &int(-14));
    }

    #[test]
    fn killing_factor_is_adjoint_casimir() {
        let g2 = RootSystem::g2();
        assert_eq!(killing_factor(&g2), int(12));
        let adj = freudenthal_eigenvalue(&g2, &g2.fundamental_weights()[1]).unwrap();
        assert_eq!(adj.to_killing().value(), &int(-1));
        assert_eq!(killing_factor(&RootSystem::a1()), int(2));
        assert_eq!(killing_factor(&RootSystem::a2()), int(3));
    }

    #[test]
    fn rescaling() {
        let g2 = RootSystem::g2();
        let e = freudenthal_eigenvalue(&g2, &g2.fundamental_weights()[0]).unwrap();
        let k = e.rescale(&int(12)).unwrap();
        assert_eq!(k.value(), &rat(-1, 2));
        assert_eq!(k.scale_convention(), ScaleConvention::Killing);
        assert_eq!(e.rescale(&int(1)).unwrap(), e);
        assert_eq!(k.rescale(&rat(1, 12)).unwrap(), e);
        assert_eq!(e.rescale(&int(3)).unwrap().scale_convention(), ScaleConvention::Rescaled(int(3)));
        assert_eq!(e.rescale(&int(0)), Err(SpectraError::NonPositiveScale));
        assert_eq!(e.rescale(&int(-2)), Err(SpectraError::NonPositiveScale));
        assert_eq!(k.to_fh(), e);
    }

    #[test]
    fn einstein_constant_rescales_to_three() {
        let g2 = RootSystem::g2();
        let lam = killing_einstein_constant();
        assert_eq!(einstein_constant_in(&g2, &lam, &ScaleConvention::FhUnitShortRoot), int(3));
        assert_eq!(einstein_constant_in(&g2, &lam, &ScaleConvention::Killing), rat(1, 4));
    }

    #[test]
    fn non_dominant_rejected() {
        let g2 = RootSystem::g2();
        assert_eq!(
            freudenthal_eigenvalue(&g2, &Weight::from_ints(&[1, 0])).unwrap_err(),
            SpectraError::NotDominant
        );
    }

    #[test]
    fn smallest_nonzero() {
        let g2 = RootSystem::g2();
        let best = smallest_nonzero_eigenvalue(&g2, &int(40)).unwrap();
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].highest_weight(), &g2.fundamental_weights()[0]);
        assert_eq!(best[0].value(), &int(-6));

        let a1 = RootSystem::a1();
        let best = smallest_nonzero_eigenvalue(&a1, &int(10)).unwrap();
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].highest_weight(), &a1.fundamental_weights()[0]);

        assert_eq!(
            smallest_nonzero_eigenvalue(&g2, &int(7)).unwrap_err(),
            SpectraError::EmptySearchSpace(int(7))
        );
    }

    #[test]
    fn sign_and_casimir_identity_over_scan() {
        for rs in [RootSystem::a1(), RootSystem::a2(), RootSystem::g2()] {
            let rho = rs.rho();
            let weights = rs.dominant_weights_below(&int(60));
            for l in &weights {
                let e = freudenthal_eigenvalue(&rs, l).unwrap();
                assert!(is_nonpositive(&e));
                let casimir = rs.inner(l, &l.add(&rho.scale(&int(2))));
                assert_eq!(-e.value().clone(), casimir);
            }
            // strict decrease along dominance: λ' = λ + α for a positive root α
            for l in &weights {
                for a in rs.positive_roots() {
                    let l2 = l.add(a);
                    if rs.is_dominant(&l2) {
                        let e1 = freudenthal_eigenvalue(&rs, l).unwrap();
                        let e2 = freudenthal_eigenvalue(&rs, &l2).unwrap();
                        assert!(e2.value() < e1.value());
                    }
                }
            }
        }
    }
}
