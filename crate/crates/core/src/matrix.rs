//! Dense matrices over a finite field.

use std::fmt;

use crate::ff::{Embedding, Field, FieldElement};
use crate::poly::Poly;

/// Row-major dense matrix with entries in `field`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElement>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.field(), field);
                m.data[i * c + j] = x.code();
            }
        }
        m
    }

    /// Integer entries reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.int_code(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = x.code();
            }
        }
        m
    }

    pub(crate) fn from_code_columns(field: &Field, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.wrap(self.data[i * self.cols + j])
    }

    pub(crate) fn code(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FieldElement) {
        assert_eq!(v.field(), &self.field);
        self.data[i * self.cols + j] = v.code();
    }

    pub(crate) fn set_code(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub(crate) fn column_codes(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.code(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.field, other.field, "field mismatch in product");
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn mul_vec_codes(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    if a == 0 || b == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let codes: Vec<u64> = v.iter().map(|x| x.code()).collect();
        self.mul_vec_codes(&codes)
            .into_iter()
            .map(|c| self.field.wrap(c))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c.code())).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Self::zero(&self.field, self.rows, cols);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols]
                .copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            out.data[i * cols + self.cols..(i + 1) * cols]
                .copy_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Applies a map to every entry code (Frobenius twists, embeddings).
    pub fn map_entries(&self, target: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let data = self
            .data
            .iter()
            .map(|&c| {
                let y = f(&self.field.wrap(c));
                assert_eq!(y.field(), target);
                y.code()
            })
            .collect();
        FieldMatrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Raises every entry to the `p`-th power.
    pub fn frobenius_twist(&self) -> Self {
        let f = &self.field;
        let p = f.p();
        let data = self.data.iter().map(|&c| f.pow(c, p)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn embed(&self, emb: &Embedding) -> Self {
        let data = self.data.iter().map(|&c| emb.map_code(c)).collect();
        FieldMatrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.data[i * m.cols + c] != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.data[r * m.cols + c]).unwrap();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * m.cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.data[r * m.cols + j];
                    if v != 0 {
                        let idx = i * m.cols + j;
                        m.data[idx] = f.sub(m.data[idx], f.mul(factor, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, as columns of the result.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc * free.len() + k] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.data[row * r.cols + fc];
                out.data[pc * free.len() + k] = f.neg(v);
            }
        }
        out
    }

    /// Column-space basis: the pivot columns of `self`.
    pub fn column_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<u64>> = pivots.iter().map(|&j| self.column_codes(j)).collect();
        Self::from_code_columns(&self.field, self.rows, &cols)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zero(&self.field, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&r.data[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(out)
    }

    pub fn determinant(&self) -> FieldElement {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.data[i * n + c] != 0) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.data[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.data[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let idx = i * n + j;
                    m.data[idx] = f.sub(m.data[idx], f.mul(factor, m.data[c * n + j]));
                }
            }
        }
        f.wrap(det)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(x I - M)`, via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        let at = |i: usize, j: usize| i * n + j;
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h.data[at(i, c)] != 0) else {
                continue;
            };
            if pr != c + 1 {
                h.swap_rows(pr, c + 1);
                for i in 0..n {
                    h.data.swap(at(i, pr), at(i, c + 1));
                }
            }
            let inv = f.inv(h.data[at(c + 1, c)]).unwrap();
            for i in c + 2..n {
                let factor = f.mul(h.data[at(i, c)], inv);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = h.data[at(c + 1, j)];
                    h.data[at(i, j)] = f.sub(h.data[at(i, j)], f.mul(factor, v));
                }
                for i2 in 0..n {
                    let v = h.data[at(i2, i)];
                    h.data[at(i2, c + 1)] = f.add(h.data[at(i2, c + 1)], f.mul(factor, v));
                }
            }
        }
        // p_k = charpoly of leading k x k block
        let x = Poly::x(f);
        let mut ps: Vec<Poly> = vec![Poly::one(f)];
        for k in 1..=n {
            let hkk = f.wrap(h.data[at(k - 1, k - 1)]);
            let mut pk = x.sub(&Poly::constant(&hkk)).mul(&ps[k - 1]);
            let mut prod = 1u64;
            for i in (1..k).rev() {
                prod = f.mul(prod, h.data[at(i, i - 1)]);
                if prod == 0 {
                    break;
                }
                let coef = f.mul(prod, h.data[at(i - 1, k - 1)]);
                if coef != 0 {
                    pk = pk.sub(&ps[i - 1].scale(&f.wrap(coef)));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_poly(&self, g: &Poly) -> Self {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut acc = Self::zero(f, n, n);
        for c in g.coefficients().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = f.add(acc.data[idx], c.code());
            }
        }
        acc
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.data
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field.name())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
