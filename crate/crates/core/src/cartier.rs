//! Hasse-Witt matrices of hyperelliptic curves, p-ranks, and the
//! ordinary/superspecial classifier.

use std::fmt;

use thiserror::Error;

use crate::curve::{count_points, CurveError, CurveKind, PointCount, PointStatus, SuperellipticCurve};
use crate::matrix::FieldMatrix;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartierError {
    /// In characteristic 2 the model `y^2 = f(x)` is inseparable and
    /// Frobenius sends every class `y/x^i` to zero.
    #[error("characteristic 2: Frobenius kills every y/x^i class, so the curve is superspecial-or-supersingular; no Hasse-Witt matrix is built")]
    CharacteristicTwo,
    #[error("Hasse-Witt matrices are only built for hyperelliptic curves, got kind {0}")]
    NotHyperelliptic(CurveKind),
    #[error("genus 0 curve has no Hasse-Witt matrix")]
    GenusZero,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Matrix of Frobenius on `H^1(X, O_X)` in the basis `y/x^i`, `i = 1..g`.
/// Row `i` holds the image of `y/x^i`:
/// `F(y/x^i) = sum_j A[i][j] y/x^j` with `A[i][j] = [x^{p i - j}] f^{(p-1)/2}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HasseWittMatrix {
    pub matrix: FieldMatrix,
    pub genus: usize,
    pub basis_labels: Vec<String>,
}

impl fmt::Debug for HasseWittMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HasseWitt(g = {}) {:?}", self.genus, self.matrix)
    }
}

/// p-rank classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PRankVerdict {
    Ordinary,
    Superspecial,
    Intermediate,
}

impl PRankVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PRankVerdict::Ordinary => "ordinary",
            PRankVerdict::Superspecial => "superspecial",
            PRankVerdict::Intermediate => "intermediate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PRankClass {
    pub stable_rank: usize,
    pub verdict: PRankVerdict,
}

/// Hasse-Witt matrix of a hyperelliptic curve in odd characteristic.
pub fn hasse_witt(curve: &SuperellipticCurve) -> Result<HasseWittMatrix, CartierError> {
    if curve.kind() != CurveKind::Hyperelliptic {
        return Err(CartierError::NotHyperelliptic(curve.kind()));
    }
    hasse_witt_poly(curve.f())
}

/// Hasse-Witt matrix of `y^2 = f(x)` straight from `f`, without building a
/// curve. Reports characteristic 2 as [`CartierError::CharacteristicTwo`].
pub fn hasse_witt_poly(f: &Poly) -> Result<HasseWittMatrix, CartierError> {
    let field = f.field();
    let p = field.p();
    if p == 2 {
        return Err(CartierError::CharacteristicTwo);
    }
    let deg = f.degree().unwrap_or(0);
    let g = deg.saturating_sub(1) / 2;
    if g == 0 {
        return Err(CartierError::GenusZero);
    }
    let h = f.pow((p - 1) / 2);
    let p = p as usize;
    let mut m = FieldMatrix::zero(field, g, g);
    for i in 1..=g {
        for j in (1..=g).filter(|&j| j <= p * i) {
            m.set(i - 1, j - 1, &h.coeff(p * i - j));
        }
    }
    Ok(HasseWittMatrix {
        matrix: m,
        genus: g,
        basis_labels: (1..=g).map(|i| format!("y/x^{i}")).collect(),
    })
}

/// Rank of the `g`-th iterate of the semilinear Frobenius map, i.e. of
/// `A^{(p^{g-1})} ... A^{(p)} A` in the row convention above.
pub fn stable_rank(a: &FieldMatrix) -> usize {
    let g = a.rows();
    if g == 0 {
        return 0;
    }
    let mut twist = a.clone();
    let mut prod = a.clone();
    for _ in 1..g {
        twist = twist.frobenius_twist();
        prod = twist.mul(&prod);
    }
    prod.rank()
}

pub fn classify_p_rank(hw: &HasseWittMatrix) -> PRankClass {
    classify_matrix(&hw.matrix)
}

/// Classification of a square Frobenius matrix.
pub fn classify_matrix(a: &FieldMatrix) -> PRankClass {
    let stable_rank = stable_rank(a);
    let verdict = if a.is_zero() {
        PRankVerdict::Superspecial
    } else if stable_rank == a.rows() {
        PRankVerdict::Ordinary
    } else {
        PRankVerdict::Intermediate
    };
    PRankClass { stable_rank, verdict }
}

/// p-rank verdict set against the curve's own `F_{p^2}` point count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub class: PRankClass,
    pub count: PointCount,
    /// Superspecial implies maximal or minimal.
    pub superspecial_is_extremal: bool,
    /// Maximal or minimal implies superspecial.
    pub extremal_is_superspecial: bool,
    /// Ordinary implies neither maximal nor minimal.
    pub ordinary_is_neither: bool,
}

impl CrosscheckReport {
    pub fn consistent(&self) -> bool {
        self.superspecial_is_extremal && self.extremal_is_superspecial && self.ordinary_is_neither
    }
}

/// Compares the Hasse-Witt verdict with the `F_{p^2}` point count.
pub fn crosscheck_superspecial(curve: &SuperellipticCurve) -> Result<CrosscheckReport, CartierError> {
    let class = classify_p_rank(&hasse_witt(curve)?);
    let count = count_points(curve, 2)?;
    let extremal = matches!(count.status, Some(PointStatus::Maximal | PointStatus::Minimal));
    let superspecial = class.verdict == PRankVerdict::Superspecial;
    Ok(CrosscheckReport {
        class,
        superspecial_is_extremal: !superspecial || extremal,
        extremal_is_superspecial: !extremal || superspecial,
        ordinary_is_neither: class.verdict != PRankVerdict::Ordinary || !extremal,
        count,
    })
}
