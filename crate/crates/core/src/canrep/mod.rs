//! The action of automorphisms of `y^m = x^p - x` (`m | p + 1`) on the
//! space of holomorphic differentials, and the decision whether that
//! representation is irreducible.
//!
//! Basis: `x^i dx / y^j` with `1 <= j <= m - 1` and `0 <= i <= m' j - 2`,
//! where `m' = (p + 1) / m`, ordered by `(j, i)`. Matrices act on column
//! vectors by pullback: column `c` of `M(sigma)` holds the coordinates of
//! `sigma^*(e_c)`. Pullback reverses composition, so for Möbius tuples
//! `M(A B) = M(B) M(A)`.

mod meataxe;

use std::fmt;

use thiserror::Error;

use crate::curve::CurveAutomorphism;
use crate::ff::{is_prime, make_field, Field, FieldElement, FieldError};
use crate::matrix::FieldMatrix;

pub use meataxe::{
    commutant_dimension, decide_irreducibility, decide_irreducibility_with_budget, is_invariant,
    spin, IrreducibilityVerdict, Verdict, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanrepError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("m = {m} must be at least 2 and divide p + 1 = {}", .p + 1)]
    BadExponent { p: u64, m: u64 },
    #[error("the coordinate subspace is only defined for 2 < m < p + 1 (got m = {m}, p = {p})")]
    NotApplicable { p: u64, m: u64 },
    #[error("invalid generator: {0}")]
    BadGenerator(String),
    #[error("no certificate after {0} random algebra elements")]
    Inconclusive(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The basis `x^i dx / y^j` of holomorphic differentials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferentialBasis {
    pub p: u64,
    pub m: u64,
    pub m_prime: u64,
    /// `(i, j)` pairs, sorted by `j` then `i`.
    pub entries: Vec<(u64, u64)>,
}

pub fn build_basis(p: u64, m: u64) -> Result<DifferentialBasis, CanrepError> {
    if !is_prime(p) {
        return Err(CanrepError::NotPrime(p));
    }
    if m < 2 || (p + 1) % m != 0 {
        return Err(CanrepError::BadExponent { p, m });
    }
    let m_prime = (p + 1) / m;
    let entries = (1..m)
        .flat_map(|j| (0..(m_prime * j).saturating_sub(1)).map(move |i| (i, j)))
        .collect();
    Ok(DifferentialBasis { p, m, m_prime, entries })
}

impl DifferentialBasis {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> u64 {
        (self.p - 1) * (self.m - 1) / 2
    }

    /// Position of `x^i dx / y^j`.
    pub fn index(&self, i: u64, j: u64) -> Option<usize> {
        if j == 0 || j >= self.m || i + 2 > self.m_prime * j {
            return None;
        }
        let offset: u64 = (1..j).map(|jj| self.m_prime * jj - 1).sum();
        Some((offset + i) as usize)
    }

    pub fn label(&self, idx: usize) -> String {
        let (i, j) = self.entries[idx];
        let num = match i {
            0 => "dx".to_string(),
            1 => "x dx".to_string(),
            _ => format!("x^{i} dx"),
        };
        if j == 1 {
            format!("{num}/y")
        } else {
            format!("{num}/y^{j}")
        }
    }

    /// Field over which [`build_module`] realizes the representation:
    /// `F_{p^2}`, or `F_{p^4}` when `m = p + 1`.
    pub fn natural_field(&self) -> Result<Field, CanrepError> {
        let k = if self.m == self.p + 1 { 4 } else { 2 };
        Ok(make_field(self.p, k)?)
    }
}

/// Matrix of `sigma^*` in `basis`, with entries in `field`.
pub fn generator_matrix(
    basis: &DifferentialBasis,
    sigma: &CurveAutomorphism,
    field: &Field,
) -> Result<FieldMatrix, CanrepError> {
    if field.p() != basis.p {
        return Err(CanrepError::BadGenerator(format!(
            "field {} has the wrong characteristic",
            field.name()
        )));
    }
    let n = basis.dim();
    let mut out = FieldMatrix::zero(field, n, n);
    match sigma {
        CurveAutomorphism::RootOfUnity(z) => {
            if z.field() != field {
                return Err(CanrepError::BadGenerator(format!(
                    "root of unity lives in {}, not {}",
                    z.field().name(),
                    field.name()
                )));
            }
            if !z.pow(basis.m).is_one() {
                return Err(CanrepError::BadGenerator(format!("zeta^{} != 1", basis.m)));
            }
            let zinv = z.inv()?;
            for (idx, &(_, j)) in basis.entries.iter().enumerate() {
                out.set(idx, idx, &zinv.pow(j));
            }
        }
        CurveAutomorphism::Mobius { a, b, c, d } => {
            let p = basis.p as i128;
            let det = (*a as i128 * *d as i128 - *b as i128 * *c as i128).rem_euclid(p);
            if det != 1 {
                return Err(CanrepError::BadGenerator(format!(
                    "({a}, {b}, {c}, {d}) has determinant {det} mod {p}, not 1"
                )));
            }
            let lin = |u: i64, v: i64| vec![field.from_int(v), field.from_int(u)];
            let num = lin(*a, *b);
            let den = lin(*c, *d);
            for (col, &(i, j)) in basis.entries.iter().enumerate() {
                // (a x + b)^i (c x + d)^{m' j - 2 - i}
                let top = basis.m_prime * j - 2;
                let mut poly = vec![field.one()];
                for _ in 0..i {
                    poly = mul_dense(&poly, &num);
                }
                for _ in 0..top - i {
                    poly = mul_dense(&poly, &den);
                }
                for (k, coeff) in poly.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let row = basis
                        .index(k as u64, j)
                        .expect("pullback stays inside its y-block");
                    out.set(row, col, coeff);
                }
            }
        }
    }
    Ok(out)
}

fn mul_dense(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let f = a[0].field();
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] = &out[i + k] + &(x * y);
        }
    }
    out
}

/// Affine automorphism `(x, y) -> (x + beta y + c, y + mu)` of the curve
/// `y^{p+1} = x^p - x`, defined over `F_{p^4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianShear {
    pub beta: FieldElement,
    pub c: FieldElement,
    pub mu: FieldElement,
}

impl HermitianShear {
    /// The shear attached to `mu = g^{(p^2+1)/2}` for the primitive element
    /// `g` of `F_{p^4}`; then `mu^{p^2-1} = -1`, `beta = -mu^p` and
    /// `c = -mu^{p+1}/2`.
    pub fn standard(p: u64) -> Result<Self, CanrepError> {
        if p == 2 {
            return Err(CanrepError::BadGenerator("the shear needs p odd".into()));
        }
        let k = make_field(p, 4)?;
        let mu = k.primitive_element().pow((p * p + 1) / 2);
        let nu = mu.pow(p + 1);
        let beta = -mu.pow(p);
        let c = -(&nu * &k.from_int(2).inv()?);
        Ok(HermitianShear { beta, c, mu })
    }

    pub fn apply(&self, x: &FieldElement, y: &FieldElement) -> (FieldElement, FieldElement) {
        (&(x + &(&self.beta * y)) + &self.c, y + &self.mu)
    }
}

/// Matrix of the shear's pullback for `m = p + 1`. Uses that
/// `x^i dx / y^j = -x^i y^{p-j} dy` on this curve, so the basis is the set of
/// monomials `x^a y^b dy` with `a + b <= p - 2`.
pub fn shear_matrix(basis: &DifferentialBasis, shear: &HermitianShear) -> Result<FieldMatrix, CanrepError> {
    if basis.m != basis.p + 1 {
        return Err(CanrepError::NotApplicable { p: basis.p, m: basis.m });
    }
    let field = shear.mu.field().clone();
    let p = basis.p as usize;
    let n = basis.dim();
    let mut out = FieldMatrix::zero(&field, n, n);
    // powers[a][b] of the shifted coordinates, as dense bivariate arrays
    let lin_x = bivariate_linear(&field, &field.one(), &shear.beta, &shear.c);
    let lin_y = bivariate_linear(&field, &field.zero(), &field.one(), &shear.mu);
    for (col, &(i, j)) in basis.entries.iter().enumerate() {
        let (a, b) = (i as usize, p - j as usize);
        let mut poly = bivariate_one(&field, p);
        for _ in 0..a {
            poly = bivariate_mul(&poly, &lin_x, p);
        }
        for _ in 0..b {
            poly = bivariate_mul(&poly, &lin_y, p);
        }
        for (aa, row_b) in poly.iter().enumerate() {
            for (bb, coeff) in row_b.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let row = basis
                    .index(aa as u64, (p - bb) as u64)
                    .expect("shear preserves total degree");
                out.set(row, col, coeff);
            }
        }
    }
    Ok(out)
}

type Bivariate = Vec<Vec<FieldElement>>;

fn bivariate_one(field: &Field, size: usize) -> Bivariate {
    let mut out = vec![vec![field.zero(); size]; size];
    out[0][0] = field.one();
    out
}

/// `cx * x + cy * y + c0`.
fn bivariate_linear(field: &Field, cx: &FieldElement, cy: &FieldElement, c0: &FieldElement) -> Bivariate {
    let mut out = vec![vec![field.zero(); 2]; 2];
    out[0][0] = c0.clone();
    out[1][0] = cx.clone();
    out[0][1] = cy.clone();
    out
}

fn bivariate_mul(a: &Bivariate, b: &Bivariate, size: usize) -> Bivariate {
    let field = a[0][0].field();
    let mut out = vec![vec![field.zero(); size]; size];
    for (i1, r1) in a.iter().enumerate() {
        for (j1, c1) in r1.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (i2, r2) in b.iter().enumerate() {
                for (j2, c2) in r2.iter().enumerate() {
                    if c2.is_zero() {
                        continue;
                    }
                    let (i, j) = (i1 + i2, j1 + j2);
                    assert!(i < size && j < size, "degree overflow in shear expansion");
                    out[i][j] = &out[i][j] + &(c1 * c2);
                }
            }
        }
    }
    out
}

/// The representation together with its generating matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct RepresentationModule {
    pub dim: usize,
    pub field: Field,
    pub generators: Vec<FieldMatrix>,
    pub labels: Vec<String>,
}

impl fmt::Debug for RepresentationModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepresentationModule(dim {}, over {}, gens {:?})", self.dim, self.field, self.labels)
    }
}

/// Generators `zeta_m`, `x -> x + 1` and `x -> -1/x`; for `m = p + 1` also the
/// shear, which is needed to mix the `y`-blocks.
pub fn build_module(basis: &DifferentialBasis) -> Result<RepresentationModule, CanrepError> {
    let field = basis.natural_field()?;
    let zeta = field
        .root_of_unity(basis.m)
        .expect("m divides p + 1, which divides |F^*|");
    let mut generators = vec![
        generator_matrix(basis, &CurveAutomorphism::RootOfUnity(zeta), &field)?,
        generator_matrix(basis, &CurveAutomorphism::translation(), &field)?,
        generator_matrix(basis, &CurveAutomorphism::inversion(), &field)?,
    ];
    let mut labels = vec![
        format!("zeta_{}", basis.m),
        "(1, 1, 0, 1)".to_string(),
        "(0, 1, -1, 0)".to_string(),
    ];
    if basis.m == basis.p + 1 && basis.p > 2 {
        generators.push(shear_matrix(basis, &HermitianShear::standard(basis.p)?)?);
        labels.push("shear".to_string());
    }
    Ok(RepresentationModule {
        dim: basis.dim(),
        field,
        generators,
        labels,
    })
}

/// Coordinate inclusion of the `j = 1` block `x^i dx / y`, `0 <= i <= m' - 2`,
/// an invariant subspace whenever `2 < m < p + 1`.
pub fn explicit_invariant_subspace(basis: &DifferentialBasis, field: &Field) -> Result<FieldMatrix, CanrepError> {
    if basis.m <= 2 || basis.m >= basis.p + 1 {
        return Err(CanrepError::NotApplicable { p: basis.p, m: basis.m });
    }
    let k = (basis.m_prime - 1) as usize;
    let mut w = FieldMatrix::zero(field, basis.dim(), k);
    for c in 0..k {
        w.set(c, c, &field.one());
    }
    Ok(w)
}

/// A divisor written as integer multiples of labelled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub terms: Vec<(String, i64)>,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, n)| n).sum()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(pt, n)| format!("{n}*{pt}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Divisors of `x`, `y`, `dx` and the canonical degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    pub p: u64,
    pub m: u64,
    pub genus: u64,
    pub div_x: Divisor,
    pub div_y: Divisor,
    pub div_dx: Divisor,
    pub canonical_degree: i64,
    /// `canonical_degree == 2g - 2`.
    pub degree_matches_genus: bool,
    /// Genus below 2.
    pub small_genus: bool,
}

pub fn divisor_table(p: u64, m: u64) -> Result<DivisorTable, CanrepError> {
    let basis = build_basis(p, m)?;
    let (pi, mi) = (p as i64, m as i64);
    let zeros: Vec<String> = (0..p).map(|a| format!("({a},0)")).collect();
    let inf = "inf".to_string();
    let div_x = Divisor {
        terms: vec![("(0,0)".to_string(), mi), (inf.clone(), -mi)],
    };
    let mut div_y = Divisor {
        terms: zeros.iter().map(|z| (z.clone(), 1)).collect(),
    };
    div_y.terms.push((inf.clone(), -pi));
    let mut div_dx = Divisor {
        terms: zeros.iter().map(|z| (z.clone(), mi - 1)).collect(),
    };
    div_dx.terms.push((inf, -(mi + 1)));
    let canonical_degree = div_dx.degree();
    let genus = basis.genus();
    Ok(DivisorTable {
        p,
        m,
        genus,
        canonical_degree,
        degree_matches_genus: canonical_degree == 2 * genus as i64 - 2,
        small_genus: genus < 2,
        div_x,
        div_y,
        div_dx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{rational_points, Point, SuperellipticCurve};

    #[test]
    fn basis_examples() {
        let b = build_basis(5, 3).unwrap();
        assert_eq!(b.entries, vec![(0, 1), (0, 2), (1, 2), (2, 2)]);
        assert_eq!(build_basis(5, 6).unwrap().dim(), 10);
        assert_eq!(build_basis(5, 5), Err(CanrepError::BadExponent { p: 5, m: 5 }));
        assert_eq!(b.label(0), "dx/y");
        assert_eq!(b.label(3), "x^2 dx/y^2");
    }

    #[test]
    fn zeta_is_diagonal() {
        let b = build_basis(5, 3).unwrap();
        let k = make_field(5, 2).unwrap();
        let z = k.root_of_unity(3).unwrap();
        let m = generator_matrix(&b, &CurveAutomorphism::RootOfUnity(z.clone()), &k).unwrap();
        let zi = z.inv().unwrap();
        let want = [zi.clone(), zi.pow(2), zi.pow(2), zi.pow(2)];
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { want[r].clone() } else { k.zero() };
                assert_eq!(m.get(r, c), expect);
            }
        }
    }

    #[test]
    fn translation_blocks_are_binomial() {
        let b = build_basis(5, 3).unwrap();
        let k = make_field(5, 2).unwrap();
        let m = generator_matrix(&b, &CurveAutomorphism::translation(), &k).unwrap();
        let want = FieldMatrix::from_ints(
            &k,
            &[vec![1, 0, 0, 0], vec![0, 1, 1, 1], vec![0, 0, 1, 2], vec![0, 0, 0, 1]],
        );
        assert_eq!(m, want);
        let id = generator_matrix(&b, &CurveAutomorphism::mobius(1, 0, 0, 1), &k).unwrap();
        assert_eq!(id, FieldMatrix::identity(&k, 4));
    }

    #[test]
    fn bad_generators_are_rejected() {
        let b = build_basis(5, 3).unwrap();
        let k = make_field(5, 2).unwrap();
        assert!(generator_matrix(&b, &CurveAutomorphism::mobius(2, 0, 0, 2), &k).is_err());
        let not_root = CurveAutomorphism::RootOfUnity(k.from_int(2));
        assert!(generator_matrix(&b, &not_root, &k).is_err());
    }

    #[test]
    fn shear_preserves_hermitian_points() {
        for p in [3u64, 5] {
            let curve = SuperellipticCurve::artin_schreier_quotient(p, p + 1).unwrap();
            let shear = HermitianShear::standard(p).unwrap();
            let k = shear.mu.field().clone();
            let f = curve.f();
            for pt in rational_points(&curve, 2).unwrap() {
                if let Point::Affine { x, y } = pt {
                    let emb = x.field().embedding_into(&k).unwrap();
                    let (x2, y2) = shear.apply(&emb.map(&x), &emb.map(&y));
                    assert_eq!(y2.pow(p + 1), f.lift_prime(&k).eval(&x2));
                }
            }
        }
    }

    #[test]
    fn shear_matrix_is_invertible() {
        let b = build_basis(5, 6).unwrap();
        let m = shear_matrix(&b, &HermitianShear::standard(5).unwrap()).unwrap();
        assert!(m.inverse().is_some());
        let other = build_basis(5, 3).unwrap();
        assert!(shear_matrix(&other, &HermitianShear::standard(5).unwrap()).is_err());
    }

    #[test]
    fn module_dimension_is_genus() {
        for (p, m) in [(3u64, 2u64), (3, 4), (5, 2), (5, 3), (5, 6), (7, 4), (7, 8)] {
            let b = build_basis(p, m).unwrap();
            let r = build_module(&b).unwrap();
            assert_eq!(r.dim as u64, b.genus());
            assert!(r.generators.iter().all(|g| g.inverse().is_some()));
        }
    }

    #[test]
    fn explicit_subspace_examples() {
        let k = make_field(5, 2).unwrap();
        let w = explicit_invariant_subspace(&build_basis(5, 3).unwrap(), &k).unwrap();
        assert_eq!((w.rows(), w.cols()), (4, 1));
        assert!(w.get(0, 0).is_one());
        let k7 = make_field(7, 2).unwrap();
        let w = explicit_invariant_subspace(&build_basis(7, 4).unwrap(), &k7).unwrap();
        assert_eq!((w.rows(), w.cols()), (9, 1));
        assert!(explicit_invariant_subspace(&build_basis(5, 6).unwrap(), &k).is_err());
    }

    #[test]
    fn divisor_examples() {
        let t = divisor_table(5, 6).unwrap();
        assert_eq!(t.canonical_degree, 18);
        assert!(t.degree_matches_genus && !t.small_genus);
        assert_eq!(t.div_x.degree(), 0);
        assert_eq!(t.div_y.degree(), 0);
        assert_eq!(divisor_table(5, 2).unwrap().canonical_degree, 2);
        let t = divisor_table(3, 2).unwrap();
        assert_eq!((t.canonical_degree, t.genus), (0, 1));
        assert!(t.small_genus);
    }
}
