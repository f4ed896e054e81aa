//! Dense univariate polynomials over a finite field, with factorization.

use std::fmt;

use rand::Rng;

use crate::ff::{Field, FieldElement, FieldError};

/// Largest field searched exhaustively by [`Poly::roots_in_field`].
pub const ROOT_SEARCH_LIMIT: u64 = 1 << 24;

/// A polynomial with coefficients in `field`, stored low degree first with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(&field.one())
    }

    pub fn x(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_codes(c.field(), vec![c.code()])
    }

    /// `c * x^n`.
    pub fn monomial(c: &FieldElement, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.code();
        Self::from_codes(c.field(), coeffs)
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Self {
        Self::from_codes(field, coeffs.iter().map(|c| c.code()).collect())
    }

    /// Coefficients given as integers, reduced into the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_codes(field, coeffs.iter().map(|&c| field.int_code(c)).collect())
    }

    pub(crate) fn from_codes(field: &Field, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn codes(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.wrap(c)).collect()
    }

    pub fn leading(&self) -> FieldElement {
        self.field.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(*self.coeffs.last().unwrap()).unwrap();
        self.scale_code(inv)
    }

    /// Same coefficients viewed in a larger field of the same characteristic.
    /// Only valid when all coefficients lie in the prime field.
    pub fn lift_prime(&self, target: &Field) -> Self {
        debug_assert!(self.coeffs.iter().all(|&c| c < self.field.p()));
        Poly {
            field: target.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn has_prime_coefficients(&self) -> bool {
        self.coeffs.iter().all(|&c| c < self.field.p())
    }

    fn scale_code(&self, c: u64) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.scale_code(c.code())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_codes(f, out)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::from_codes(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_codes(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
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

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let lead_inv = f.inv(d.coeffs[dd]).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c == 0 {
                continue;
            }
            q[top - dd] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        (Self::from_codes(f, q), Self::from_codes(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.int_code(i as i64)))
            .collect();
        Self::from_codes(f, out)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = x.field();
        let code = self.eval_code(f, x.code());
        f.wrap(code)
    }

    /// Horner evaluation at a code of `target`. Coefficients must live in
    /// `target` (same field, or prime-field coefficients).
    pub(crate) fn eval_code(&self, target: &Field, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| target.add(target.mul(acc, x), c))
    }

    /// All roots in `target` by evaluating at every element, in code order.
    /// The coefficients must lie in `target` (or in its prime field).
    pub fn roots_in_field(&self, target: &Field) -> Result<Vec<FieldElement>, FieldError> {
        if target.order() > ROOT_SEARCH_LIMIT {
            return Err(FieldError::TooLargeToEnumerate(target.order()));
        }
        if self.field != *target && !(self.has_prime_coefficients() && self.field.embeds_into(target)) {
            return Err(FieldError::NoEmbedding {
                from: self.field.name(),
                into: target.name(),
            });
        }
        Ok((0..target.order())
            .filter(|&x| self.eval_code(target, x) == 0)
            .map(|x| target.wrap(x))
            .collect())
    }

    /// `gcd(f, f') == 1`. Polynomials of degree 0 count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Substitute `x -> x^n`.
    pub fn inflate(&self, n: usize) -> Self {
        let mut out = vec![0u64; (self.coeffs.len().max(1) - 1) * n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * n] = c;
        }
        Self::from_codes(&self.field, out)
    }

    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// coefficients. Degrees above `max_degree` are not split further and are
    /// reported as a single (possibly reducible) factor with `complete =
    /// false`.
    pub fn factor<R: Rng>(&self, max_degree: usize, rng: &mut R) -> Factorization {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut factors = Vec::new();
        let mut complete = true;
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (g, d) in sqf.distinct_degree() {
                if d > max_degree {
                    complete = false;
                    factors.push((g, mult));
                    continue;
                }
                for h in g.equal_degree(d, rng) {
                    factors.push((h, mult));
                }
            }
        }
        factors.sort_by(|a, b| (a.0.coeffs.len(), &a.0.coeffs).cmp(&(b.0.coeffs.len(), &b.0.coeffs)));
        Factorization { factors, complete }
    }

    /// Squarefree parts `(g_i, i)` with `self = prod g_i^i` (monic input).
    fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let p = f.p() as usize;
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree() != Some(0) {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree() != Some(0) {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// For `self = g(x^p)` over a perfect field, returns `g^{1/p}` evaluated
    /// coefficientwise, i.e. the p-th root of `self`.
    fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.p() as usize;
        // a^(1/p) = a^(q/p)
        let e = f.order() / f.p();
        let out = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, e))
            .collect();
        Self::from_codes(f, out)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let q = f.order() as u128;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Self::x(f);
        let mut h = x.rem(&rest);
        let mut d = 0;
        while let Some(deg) = rest.degree() {
            if deg == 0 {
                break;
            }
            d += 1;
            if 2 * d > deg {
                out.push((rest.clone(), deg));
                break;
            }
            h = h.powmod(q, &rest);
            let g = h.sub(&x).gcd(&rest);
            if g.degree() != Some(0) {
                out.push((g.clone(), d));
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
            }
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles.
    fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Poly> {
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.clone()];
        }
        let f = &self.field;
        let q = f.order();
        loop {
            let a = Self::from_codes(f, (0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.degree().map_or(true, |k| k == 0) {
                continue;
            }
            let b = if q % 2 == 1 {
                // norm-like element a * a^q * ... * a^{q^{d-1}}, raised to (q-1)/2
                let mut acc = a.rem(self);
                let mut cur = acc.clone();
                for _ in 1..d {
                    cur = cur.powmod(q as u128, self);
                    acc = acc.mul(&cur).rem(self);
                }
                acc.powmod(((q - 1) / 2) as u128, self).sub(&Self::one(f))
            } else {
                // absolute trace to F_2 of a over F_{q^d}
                let k = f.degree() as usize * d;
                let mut acc = a.rem(self);
                let mut cur = acc.clone();
                for _ in 1..k {
                    cur = cur.mul(&cur).rem(self);
                    acc = acc.add(&cur);
                }
                acc
            };
            let g = b.gcd(self);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let mut out = g.equal_degree(d, rng);
                out.extend(self.divrem(&g).0.equal_degree(d, rng));
                return out;
            }
        }
    }
}

/// Result of [`Poly::factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Poly, usize)>,
    /// False when some factor above the degree cap was left unsplit.
    pub complete: bool,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field.name())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = self.field.wrap(c).to_string();
            let cs = if self.field.is_prime_field() { cs } else { format!("({cs})") };
            match (i, c) {
                (0, _) => write!(f, "{cs}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{cs}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}
