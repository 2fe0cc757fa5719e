//! Small dense rational matrices. Sizes here never exceed the rank of a root
//! system, so everything is plain Gaussian elimination on `Vec<Vec<_>>`.

use num_traits::{One, Zero};

use crate::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_vec(m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &RatMatrix) -> RatMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn is_square(m: &RatMatrix) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

pub fn is_symmetric(m: &RatMatrix) -> bool {
    is_square(m) && (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Sylvester's criterion on the leading principal minors.
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    is_symmetric(m)
        && (1..=m.len()).all(|k| {
            let minor: RatMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&minor) > Rational::zero()
        })
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    if !is_square(m) {
        return None;
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let da = &factor * &a[col][c];
                a[r][c] -= da;
                let di = &factor * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}
