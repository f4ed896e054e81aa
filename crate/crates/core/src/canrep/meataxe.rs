//! Randomized irreducibility test for matrix algebras (Holt-Rees variant of
//! the MeatAxe, with Norton's dual check), plus the endomorphism dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CanrepError, RepresentationModule};
use crate::ff::Field;
use crate::matrix::FieldMatrix;

/// Number of random algebra elements tried before giving up.
pub const DEFAULT_BUDGET: usize = 200;

/// Characteristic-polynomial factors above this degree are not used.
const MAX_FACTOR_DEGREE: usize = 12;

/// Words kept for building random algebra elements.
const POOL_SIZE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    AbsolutelyIrreducible,
    /// Irreducible over the field of definition, but the endomorphism ring is
    /// a proper extension field, so it splits over a larger field.
    IrreducibleNotAbsolute,
    Reducible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AbsolutelyIrreducible => "absolutely-irreducible",
            Verdict::IrreducibleNotAbsolute => "irreducible-not-absolute",
            Verdict::Reducible => "reducible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub verdict: Verdict,
    /// Columns span a proper nonzero invariant subspace (reducible only).
    pub witness: Option<FieldMatrix>,
    /// Dimension of the commutant (irreducible only).
    pub endo_dim: Option<usize>,
    /// Random algebra elements consumed.
    pub samples: usize,
}

pub fn decide_irreducibility(module: &RepresentationModule, seed: u64) -> Result<IrreducibilityVerdict, CanrepError> {
    decide_irreducibility_with_budget(&module.generators, seed, DEFAULT_BUDGET)
}

/// Decides irreducibility of the algebra generated by `gens`.
pub fn decide_irreducibility_with_budget(
    gens: &[FieldMatrix],
    seed: u64,
    budget: usize,
) -> Result<IrreducibilityVerdict, CanrepError> {
    let first = gens
        .first()
        .ok_or_else(|| CanrepError::BadGenerator("empty generator list".into()))?;
    let field = first.field().clone();
    let n = first.rows();
    if gens.iter().any(|g| g.rows() != n || g.cols() != n || g.field() != &field) {
        return Err(CanrepError::BadGenerator("generators differ in shape or field".into()));
    }
    if n == 1 {
        return Ok(IrreducibilityVerdict {
            verdict: Verdict::AbsolutelyIrreducible,
            witness: None,
            endo_dim: Some(1),
            samples: 0,
        });
    }
    let transposed: Vec<FieldMatrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<FieldMatrix> = gens.to_vec();

    for sample in 1..=budget {
        let theta = random_element(&mut pool, &field, &mut rng);
        let chi = theta.charpoly();
        let factors = chi.factor(MAX_FACTOR_DEGREE, &mut rng);
        for (phi, _) in &factors.factors {
            let d = phi.degree().unwrap();
            if d > MAX_FACTOR_DEGREE {
                continue;
            }
            let null = theta.eval_poly(phi).nullspace();
            if null.cols() == 0 {
                continue;
            }
            let v = null.column_codes(0);
            let span = spin(gens, &v);
            if span.basis.len() < n {
                return Ok(reducible(gens, span.matrix(&field, n), sample));
            }
            if null.cols() != d {
                continue;
            }
            let null_t = theta.transpose().eval_poly(phi).nullspace();
            let w = null_t.column_codes(0);
            let dual = spin(&transposed, &w);
            if dual.basis.len() < n {
                let annihilator = dual.matrix(&field, n).transpose().nullspace();
                return Ok(reducible(gens, annihilator, sample));
            }
            let endo_dim = endomorphism_dimension(gens, &span, &null, &field);
            let verdict = if endo_dim == 1 {
                Verdict::AbsolutelyIrreducible
            } else {
                Verdict::IrreducibleNotAbsolute
            };
            return Ok(IrreducibilityVerdict {
                verdict,
                witness: None,
                endo_dim: Some(endo_dim),
                samples: sample,
            });
        }
    }
    Err(CanrepError::Inconclusive(budget))
}

fn reducible(gens: &[FieldMatrix], witness: FieldMatrix, samples: usize) -> IrreducibilityVerdict {
    assert!(is_invariant(gens, &witness), "MeatAxe produced a non-invariant subspace");
    IrreducibilityVerdict {
        verdict: Verdict::Reducible,
        witness: Some(witness),
        endo_dim: None,
        samples,
    }
}

/// Grows the word pool by one product and returns a random linear
/// combination of the pool.
fn random_element(pool: &mut Vec<FieldMatrix>, field: &Field, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let a = rng.gen_range(0..pool.len());
    let b = rng.gen_range(0..pool.len());
    let product = pool[a].mul(&pool[b]);
    if pool.len() < POOL_SIZE {
        pool.push(product);
    } else {
        let slot = rng.gen_range(0..pool.len());
        pool[slot] = product;
    }
    let q = field.order();
    let n = pool[0].rows();
    let mut theta = FieldMatrix::zero(field, n, n);
    for w in pool.iter() {
        let c = field.element(rng.gen_range(0..q));
        if !c.is_zero() {
            theta = theta.add(&w.scale(&c));
        }
    }
    theta
}

/// Whether the column span of `w` is mapped into itself by every generator.
pub fn is_invariant(gens: &[FieldMatrix], w: &FieldMatrix) -> bool {
    let r = w.rank();
    r > 0 && r < w.rows() && gens.iter().all(|g| w.hstack(&g.mul(w)).rank() == r)
}

/// Result of spinning a vector: an echelonized spanning set of the smallest
/// invariant subspace containing it, with the word that produced each vector.
pub struct Spin {
    /// Basis vectors in discovery order.
    pub basis: Vec<Vec<u64>>,
    /// `(parent, generator)` for each basis vector after the first.
    words: Vec<(usize, usize)>,
}

impl Spin {
    /// Basis vectors as columns.
    pub fn matrix(&self, field: &Field, n: usize) -> FieldMatrix {
        FieldMatrix::from_code_columns(field, n, &self.basis)
    }

    /// Applies the recorded words to another start vector.
    fn replay(&self, gens: &[FieldMatrix], start: &[u64]) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = vec![start.to_vec()];
        for &(parent, g) in &self.words {
            let v = gens[g].mul_vec_codes(&out[parent]);
            out.push(v);
        }
        out
    }
}

/// Smallest subspace containing `v` and stable under `gens`.
pub fn spin(gens: &[FieldMatrix], v: &[u64]) -> Spin {
    let field = gens[0].field().clone();
    let mut ech = Echelon::new(field);
    let mut basis = Vec::new();
    let mut words = Vec::new();
    if ech.insert(v) {
        basis.push(v.to_vec());
    }
    let mut next = 0;
    while next < basis.len() {
        for (gi, g) in gens.iter().enumerate() {
            let img = g.mul_vec_codes(&basis[next]);
            if ech.insert(&img) {
                basis.push(img);
                words.push((next, gi));
            }
        }
        next += 1;
    }
    Spin { basis, words }
}

/// Incrementally maintained row-echelon basis for membership tests.
struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, v: &[u64]) -> bool {
        let f = &self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Dimension of `End(V)` for an irreducible module, given a spin of a vector
/// `v` in `null = ker phi(theta)` that reached the whole space. Every
/// endomorphism is determined by the image of `v`, which must lie in `null`;
/// the candidate map sending `v` to `w` is `C_w = W B^{-1}` with `B` the spin
/// basis and `W` the same words applied to `w`.
fn endomorphism_dimension(gens: &[FieldMatrix], span: &Spin, null: &FieldMatrix, field: &Field) -> usize {
    let n = span.basis.len();
    let b_inv = span.matrix(field, n).inverse().expect("spin basis is a basis");
    let d = null.cols();
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(d);
    for t in 0..d {
        let w = null.column_codes(t);
        let images = span.replay(gens, &w);
        let c = FieldMatrix::from_code_columns(field, n, &images).mul(&b_inv);
        let mut stacked = Vec::with_capacity(n * n * gens.len());
        for g in gens {
            stacked.extend_from_slice(c.mul(g).sub(&g.mul(&c)).raw());
        }
        columns.push(stacked);
    }
    let rows = columns[0].len();
    d - FieldMatrix::from_code_columns(field, rows, &columns).rank()
}

/// Commutant dimension by solving `M C = C M` for all generators directly:
/// `n^2` unknowns, so only suitable for small `n`.
pub fn commutant_dimension(gens: &[FieldMatrix]) -> usize {
    let field = gens[0].field().clone();
    let n = gens[0].rows();
    let mut sys = FieldMatrix::zero(&field, n * n * gens.len(), n * n);
    for (gi, g) in gens.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                // (g C - C g)[r][c] = sum_k g[r][k] C[k][c] - C[r][k] g[k][c]
                let row = gi * n * n + r * n + c;
                for k in 0..n {
                    let a = g.code(r, k);
                    if a != 0 {
                        let idx = k * n + c;
                        sys.set_code(row, idx, field.add(sys.code(row, idx), a));
                    }
                    let b = g.code(k, c);
                    if b != 0 {
                        let idx = r * n + k;
                        sys.set_code(row, idx, field.sub(sys.code(row, idx), b));
                    }
                }
            }
        }
    }
    n * n - sys.rank()
}
