//! Root systems, Weyl groups and weights in simple-root coordinates.
//!
//! A [`RootSystem`] is built from two pieces of data: the Gram matrix of the
//! simple roots and a *torus basis* `D` mapping simple-root coordinates to
//! exponents on the maximal torus (`exponent = D · coords`). Everything else
//! (Cartan matrix, Weyl group, positive roots, fundamental weights) is
//! derived.
//!
//! The presets use the normalization in which the shortest root has squared
//! length 1.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, RatMatrix};
use crate::torus_poly::{Exponent, TorusPolynomial};
use crate::{int, rat, Rational};

/// Upper bound on the size of a generated Weyl group.
pub const WEYL_GROUP_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("Gram matrix must be square, symmetric and positive definite")]
    BadGram,
    #[error("Cartan integers are not all integral")]
    NotCrystallographic,
    #[error("torus basis must be an invertible {0}x{0} matrix")]
    BadTorusBasis(usize),
    #[error("Weyl group exceeded {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("Weyl group does not act integrally on the torus exponent lattice")]
    NonIntegralTorusAction,
    #[error("weight {0:?} has wrong length for rank {1}")]
    RankMismatch(Vec<Rational>, usize),
    #[error("weight does not map to the half-exponent lattice")]
    OffLattice,
    #[error("unknown root system preset {0:?}")]
    UnknownPreset(String),
}

/// A weight `Σ cᵢαᵢ`, stored by its simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(with = "crate::json::rational_vec")]
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| int(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![Rational::zero(); rank] }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Weight {
        Weight { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> Weight {
        self.scale(&-Rational::one())
    }
}

/// Integer matrix acting on column vectors.
pub type IntMatrix = Vec<Vec<i64>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .try_fold(0i64, |acc, (x, brow)| acc.checked_add(x.checked_mul(brow[j])?))
                })
                .collect()
        })
        .collect()
}

fn int_to_rat(m: &IntMatrix) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect()
}

fn rat_to_int(m: &RatMatrix) -> Option<IntMatrix> {
    m.iter()
        .map(|row| row.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on simple-root coordinates.
    pub matrix: IntMatrix,
    /// Determinant, `±1`.
    pub sign: i64,
    /// Word length in the simple reflections.
    pub length: usize,
    /// Action on (doubled) torus exponents.
    pub torus_matrix: IntMatrix,
}

impl WeylElement {
    pub fn apply(&self, w: &Weight) -> Weight {
        Weight::new(linalg::mat_vec(&int_to_rat(&self.matrix), w.coords()))
    }

    pub fn apply_exponent(&self, e: &Exponent) -> Exponent {
        Exponent::from_doubled(
            self.torus_matrix
                .iter()
                .map(|row| row.iter().zip(e.doubled()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `(w·p)(t) = p(w⁻¹t)`; as a set action on exponents it is `m ↦ w(m)`.
    pub fn apply_polynomial(&self, p: &TorusPolynomial) -> TorusPolynomial {
        p.map_exponents(|e| self.apply_exponent(e))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == int_identity(self.matrix.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Closes `generators` under multiplication, breadth first from the
    /// identity. Elements come out ordered by word length.
    pub fn generate(generators: &[IntMatrix], cap: usize) -> Result<Vec<(IntMatrix, usize)>, RootSystemError> {
        let n = generators.first().map_or(0, Vec::len);
        let id = int_identity(n);
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
        let mut out = vec![(id.clone(), 0)];
        let mut queue = VecDeque::from([(id, 0usize)]);
        while let Some((g, len)) = queue.pop_front() {
            for s in generators {
                let h = int_mat_mul(s, &g).ok_or(RootSystemError::WeylGroupTooLarge(cap))?;
                if seen.insert(h.clone()) {
                    if out.len() >= cap {
                        return Err(RootSystemError::WeylGroupTooLarge(cap));
                    }
                    out.push((h.clone(), len + 1));
                    queue.push_back((h, len + 1));
                }
            }
        }
        Ok(out)
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, WeylElement> {
        self.elements.iter()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    name: String,
    gram: RatMatrix,
    torus_basis: RatMatrix,
    cartan: IntMatrix,
    positive_roots: Vec<Weight>,
    fundamental_weights: Vec<Weight>,
    weyl: WeylGroup,
}

impl RootSystem {
    pub fn new(name: &str, gram: RatMatrix, torus_basis: RatMatrix) -> Result<Self, RootSystemError> {
        let rank = gram.len();
        if rank == 0 || !linalg::is_positive_definite(&gram) {
            return Err(RootSystemError::BadGram);
        }
        if torus_basis.len() != rank || !linalg::is_square(&torus_basis) || linalg::determinant(&torus_basis).is_zero() {
            return Err(RootSystemError::BadTorusBasis(rank));
        }

        // cartan[i][j] = ⟨αᵢ, αⱼ∨⟩
        let cartan_rat: RatMatrix = (0..rank)
            .map(|i| (0..rank).map(|j| int(2) * &gram[i][j] / &gram[j][j]).collect())
            .collect();
        let cartan = rat_to_int(&cartan_rat).ok_or(RootSystemError::NotCrystallographic)?;

        // sᵢ(v) = v − ⟨v, αᵢ∨⟩ αᵢ, with ⟨v, αᵢ∨⟩ = Σₖ vₖ cartan[k][i]
        let reflections: Vec<IntMatrix> = (0..rank)
            .map(|i| {
                let mut s = int_identity(rank);
                for k in 0..rank {
                    s[i][k] -= cartan[k][i];
                }
                s
            })
            .collect();

        let generated = WeylGroup::generate(&reflections, WEYL_GROUP_CAP)?;
        let d_inv = linalg::inverse(&torus_basis).ok_or(RootSystemError::BadTorusBasis(rank))?;
        let elements = generated
            .into_iter()
            .map(|(matrix, length)| {
                let m = int_to_rat(&matrix);
                let torus = linalg::mat_mul(&linalg::mat_mul(&torus_basis, &m), &d_inv);
                let torus_matrix = rat_to_int(&torus).ok_or(RootSystemError::NonIntegralTorusAction)?;
                let sign = linalg::determinant(&m).to_integer().to_i64().unwrap_or(0);
                Ok(WeylElement { matrix, sign, length, torus_matrix })
            })
            .collect::<Result<Vec<_>, RootSystemError>>()?;
        let weyl = WeylGroup { elements };

        let simple: Vec<Weight> = (0..rank)
            .map(|i| Weight::new((0..rank).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()))
            .collect();
        let mut roots: HashSet<Weight> = HashSet::new();
        for w in weyl.iter() {
            for a in &simple {
                roots.insert(w.apply(a));
            }
        }
        let mut positive_roots: Vec<Weight> =
            roots.into_iter().filter(|r| r.coords().iter().all(|c| !c.is_negative())).collect();
        positive_roots.sort_by(|a, b| {
            let ha: Rational = a.coords().iter().sum();
            let hb: Rational = b.coords().iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        // ωᵢ = Σₖ M[i][k] αₖ with M = cartan⁻¹
        let m = linalg::inverse(&cartan_rat).ok_or(RootSystemError::BadGram)?;
        let fundamental_weights = m.into_iter().map(Weight::new).collect();

        Ok(RootSystem {
            name: name.to_string(),
            gram,
            torus_basis,
            cartan,
            positive_roots,
            fundamental_weights,
            weyl,
        })
    }

    /// `G2` with short simple root `α₁` (`|α₁|² = 1`) and long root `α₂`.
    ///
    /// Torus coordinates: `α₁+α₂ ↦ θ₁`, `α₁ ↦ θ₂`, so the short roots are
    /// `±θ₁, ±θ₂, ±(θ₁+θ₂)`.
    pub fn g2() -> Self {
        Self::new(
            "G2",
            vec![vec![rat(1, 1), rat(-3, 2)], vec![rat(-3, 2), rat(3, 1)]],
            vec![vec![int(0), int(1)], vec![int(1), int(-1)]],
        )
        .expect("G2 preset is valid")
    }

    /// `SU(2)`: `|α|² = 1`, torus angle `θ` with `α ↦ 2θ`.
    pub fn a1() -> Self {
        Self::new("A1", vec![vec![int(1)]], vec![vec![int(2)]]).expect("A1 preset is valid")
    }

    /// `SU(3)`: `|α|² = 1`, torus coordinates dual to the fundamental weights.
    pub fn a2() -> Self {
        Self::new(
            "A2",
            vec![vec![rat(1, 1), rat(-1, 2)], vec![rat(-1, 2), rat(1, 1)]],
            vec![vec![int(2), int(-1)], vec![int(-1), int(2)]],
        )
        .expect("A2 preset is valid")
    }

    /// Looks up a preset by name (case-insensitive): `G2`, `A1`, `A2`.
    pub fn preset(name: &str) -> Result<Self, RootSystemError> {
        match name.to_ascii_uppercase().as_str() {
            "G2" => Ok(Self::g2()),
            "A1" => Ok(Self::a1()),
            "A2" => Ok(Self::a2()),
            _ => Err(RootSystemError::UnknownPreset(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn torus_basis(&self) -> &RatMatrix {
        &self.torus_basis
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank());
        w.coords[i] = Rational::one();
        w
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| self.simple_root(i)).collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.order()
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational {
        let gb = linalg::mat_vec(&self.gram, b.coords());
        a.coords().iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    pub fn norm_sq(&self, a: &Weight) -> Rational {
        self.inner(a, a)
    }

    /// `⟨v, αᵢ∨⟩ = 2⟨v, αᵢ⟩ / ⟨αᵢ, αᵢ⟩`.
    pub fn coroot_pairing(&self, v: &Weight, i: usize) -> Rational {
        let a = self.simple_root(i);
        int(2) * self.inner(v, &a) / self.norm_sq(&a)
    }

    /// Coordinates in the fundamental-weight basis.
    pub fn fundamental_coords(&self, v: &Weight) -> Vec<Rational> {
        (0..self.rank()).map(|i| self.coroot_pairing(v, i)).collect()
    }

    pub fn weight_from_fundamental(&self, coords: &[i64]) -> Weight {
        coords
            .iter()
            .zip(&self.fundamental_weights)
            .fold(Weight::zero(self.rank()), |acc, (&c, w)| acc.add(&w.scale(&int(c))))
    }

    /// Nonnegative integral fundamental coordinates.
    pub fn is_dominant(&self, v: &Weight) -> bool {
        v.rank() == self.rank() && self.fundamental_coords(v).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn rho(&self) -> Weight {
        let total = self.positive_roots.iter().fold(Weight::zero(self.rank()), |acc, r| acc.add(r));
        total.scale(&rat(1, 2))
    }

    /// The positive root of greatest height (highest weight of the adjoint
    /// representation).
    pub fn highest_root(&self) -> &Weight {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// Doubled torus exponent `2·D·v`. Fails unless it is integral.
    pub fn to_exponent(&self, v: &Weight) -> Result<Exponent, RootSystemError> {
        if v.rank() != self.rank() {
            return Err(RootSystemError::RankMismatch(v.coords().to_vec(), self.rank()));
        }
        linalg::mat_vec(&self.torus_basis, v.coords())
            .into_iter()
            .map(|c| {
                let d = c * int(2);
                if d.is_integer() {
                    d.to_integer().to_i64().ok_or(RootSystemError::OffLattice)
                } else {
                    Err(RootSystemError::OffLattice)
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Exponent::from_doubled)
    }

    /// `true` if `w·p = p` for every Weyl element.
    pub fn is_weyl_invariant(&self, p: &TorusPolynomial) -> bool {
        self.weyl.iter().all(|w| w.apply_polynomial(p) == *p)
    }

    /// Dominant weights `λ` with `|λ+ρ|² ≤ bound`, sorted by `|λ+ρ|²` and
    /// then by fundamental coordinates.
    ///
    /// Adding a fundamental weight to a dominant `λ` strictly increases
    /// `|λ+ρ|²`, so a search that stops at the first weight over the bound
    /// is complete.
    pub fn dominant_weights_below(&self, bound: &Rational) -> Vec<Weight> {
        let rho = self.rho();
        let r = self.rank();
        let mut found: HashMap<Vec<i64>, Rational> = HashMap::new();
        let mut queue = VecDeque::from([vec![0i64; r]]);
        let mut visited: HashSet<Vec<i64>> = HashSet::from([vec![0i64; r]]);
        while let Some(fc) = queue.pop_front() {
            let lambda = self.weight_from_fundamental(&fc);
            let n = self.norm_sq(&lambda.add(&rho));
            if &n > bound {
                continue;
            }
            found.insert(fc.clone(), n);
            for i in 0..r {
                let mut next = fc.clone();
                next[i] += 1;
                if visited.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<(Rational, Vec<i64>)> = found.into_iter().map(|(k, v)| (v, k)).collect();
        out.sort();
        out.into_iter().map(|(_, fc)| self.weight_from_fundamental(&fc)).collect()
    }

    /// Fundamental coordinates of a dominant weight as integers.
    pub fn dominant_label(&self, v: &Weight) -> Option<Vec<i64>> {
        self.fundamental_coords(v)
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }
}
