//! Prime fields `F_p` and extension fields `F_{p^k}`.
//!
//! Elements are stored as a single `u64` code: the coefficient vector
//! `(c_0, .., c_{k-1})` of the polynomial basis packed as `sum c_i p^i`.
//! Prime-field elements therefore have the same code in every extension of
//! their field, which makes the inclusion `F_p -> F_{p^k}` free.
//!
//! Extension-field multiplication goes through discrete log tables when the
//! field is small enough, and falls back to schoolbook multiplication modulo
//! the defining polynomial otherwise.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;
use thiserror::Error;

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 62;

/// Extension fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 22;

type Digits = SmallVec<[u64; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {p}^{k} is larger than the supported 2^62")]
    TooLarge { p: u64, k: u32 },
    #[error("operands live in different fields ({left} and {right})")]
    Mismatch { left: String, right: String },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{from} does not embed into {into}")]
    NoEmbedding { from: String, into: String },
    #[error("field of order {0} is too large to enumerate")]
    TooLargeToEnumerate(u64),
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, low degree first, length `k + 1`. Empty for prime fields.
    modulus: Vec<u64>,
    tables: OnceLock<Option<LogTables>>,
    primitive: OnceLock<u64>,
}

/// A finite field `F_{p^k}` together with its defining polynomial.
///
/// Cloning is cheap. Two handles compare equal when they describe the same
/// `(p, k, modulus)`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

/// Builds `F_{p^k}`, choosing the lexicographically smallest monic
/// irreducible modulus (coefficients compared constant term first).
///
/// Fields are cached, so repeated calls return the same handle.
pub fn make_field(p: u64, k: u32) -> Result<Field, FieldError> {
    if k < 1 {
        return Err(FieldError::BadDegree(k));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let order = checked_order(p, k).ok_or(FieldError::TooLarge { p, k })?;

    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(field) = cache.lock().unwrap().get(&(p, k)) {
        return Ok(field.clone());
    }

    let modulus = if k == 1 {
        Vec::new()
    } else {
        smallest_irreducible(p, k as usize)
    };
    let field = Field(Arc::new(FieldInner {
        p,
        k,
        order,
        modulus,
        tables: OnceLock::new(),
        primitive: OnceLock::new(),
    }));
    Ok(cache
        .lock()
        .unwrap()
        .entry((p, k))
        .or_insert(field)
        .clone())
}

fn checked_order(p: u64, k: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.checked_mul(p)?;
        if q > MAX_FIELD_ORDER {
            return None;
        }
    }
    Some(q)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Polynomials over F_p on plain residue vectors (low degree first). Only used
// to construct the modulus and for slow-path extension arithmetic.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = invmod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = mulmod(r[top], lead_inv, p);
        if factor != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - mulmod(factor, c, p)) % p;
            }
        }
        r.pop();
        fp_trim(&mut r);
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_powmod_x(e_exp: u32, m: &[u64], p: u64) -> Vec<u64> {
    // x^(p^e_exp) mod m, by repeated p-th powering
    let mut cur = fp_rem(&[0, 1], m, p);
    for _ in 0..e_exp {
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_rem(&fp_mul(&acc, &base, p), m, p);
            }
            base = fp_rem(&fp_mul(&base, &base, p), m, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Irreducibility of a monic polynomial over `F_p`: a root search for degree
/// at most 3, Rabin's gcd test with `x^{p^i} - x` otherwise.
fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    if deg <= 3 {
        return (0..p).all(|a| {
            let mut v = 0u64;
            for &c in m.iter().rev() {
                v = (mulmod(v, a, p) + c) % p;
            }
            v != 0
        });
    }
    for i in 1..=(deg / 2) as u32 {
        let mut h = fp_powmod_x(i, m, p);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        fp_trim(&mut h);
        let g = fp_gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    // (c_0, .., c_{k-1}) in lexicographic order, c_0 most significant
    let mut coeffs = vec![0u64; k];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if m[0] != 0 && is_irreducible_fp(&m, p) {
            return m;
        }
        let mut idx = k;
        loop {
            if idx == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            idx -= 1;
            coeffs[idx] += 1;
            if coeffs[idx] < p {
                break;
            }
            coeffs[idx] = 0;
        }
    }
}

// ---------------------------------------------------------------------------

impl Field {
    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `k` over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Defining polynomial (monic, low degree first); `None` for `F_p`.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn name(&self) -> String {
        if self.0.k == 1 {
            format!("F_{}", self.0.p)
        } else {
            format!("F_{}^{}", self.0.p, self.0.k)
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(self.int_code(n))
    }

    /// Element with the given polynomial-basis coefficients, reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.0.p;
        let mut code = 0u64;
        for &c in coeffs.iter().take(self.0.k as usize).rev() {
            code = code * p + c % p;
        }
        self.wrap(code)
    }

    /// The class of `t`, the root of the modulus. `None` for prime fields.
    pub fn generator(&self) -> Option<FieldElement> {
        if self.0.k == 1 {
            None
        } else {
            Some(self.wrap(self.0.p))
        }
    }

    /// Element from a raw code; panics when `code >= order`.
    pub fn element(&self, code: u64) -> FieldElement {
        assert!(code < self.0.order, "code {code} out of range for {}", self.name());
        self.wrap(code)
    }

    /// All elements in code order. Refuses fields above `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<impl Iterator<Item = FieldElement> + '_, FieldError> {
        if self.0.order > limit {
            return Err(FieldError::TooLargeToEnumerate(self.0.order));
        }
        Ok((0..self.0.order).map(move |c| self.wrap(c)))
    }

    /// A generator of the multiplicative group: the smallest code whose
    /// order is `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        let code = *self.0.primitive.get_or_init(|| self.find_primitive());
        self.wrap(code)
    }

    fn find_primitive(&self) -> u64 {
        let q = self.0.order;
        if q == 2 {
            return 1;
        }
        let factors = prime_factors(q - 1);
        (2..q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, (q - 1) / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    /// A primitive `n`-th root of unity, when `n | q - 1`.
    pub fn root_of_unity(&self, n: u64) -> Option<FieldElement> {
        let q = self.0.order;
        if n == 0 || (q - 1) % n != 0 {
            return None;
        }
        Some(self.primitive_element().pow((q - 1) / n))
    }

    pub(crate) fn wrap(&self, code: u64) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code,
        }
    }

    pub(crate) fn int_code(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }

    fn digits(&self, mut code: u64) -> Digits {
        let p = self.0.p;
        let mut d: Digits = SmallVec::with_capacity(self.0.k as usize);
        for _ in 0..self.0.k {
            d.push(code % p);
            code /= p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u64 {
        let p = self.0.p;
        d.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    /// Coefficient vector of length `k`.
    pub(crate) fn coeffs_of(&self, code: u64) -> Vec<u64> {
        self.digits(code).to_vec()
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.k {
            let s = (a % p + b % p) % p;
            out += s * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let d: Digits = self.digits(a).iter().map(|&c| (p - c) % p).collect();
        self.pack(&d)
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.k == 1 {
            return mulmod(a, b, self.0.p);
        }
        if let Some(t) = self.tables() {
            let n = (self.0.order - 1) as usize;
            let s = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[if s >= n { s - n } else { s }] as u64;
        }
        self.slow_mul(a, b)
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.0.k == 1 {
            return invmod(a, self.0.p);
        }
        if let Some(t) = self.tables() {
            let n = (self.0.order - 1) as usize;
            let l = t.log[a as usize] as usize;
            return Some(t.exp[(n - l) % n] as u64);
        }
        Some(self.slow_pow(a, self.0.order - 2))
    }

    pub(crate) fn pow(&self, a: u64, mut e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.0.k > 1 {
            if let Some(t) = self.tables() {
                let n = self.0.order - 1;
                let l = t.log[a as usize] as u64;
                let idx = ((l as u128 * (e % n) as u128) % n as u128) as usize;
                return t.exp[idx] as u64;
            }
        }
        let mut base = a;
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = fp_mul(&da, &db, p);
        let r = fp_rem(&prod, &self.0.modulus, p);
        let mut d: Digits = SmallVec::from_slice(&r);
        d.resize(self.0.k as usize, 0);
        self.pack(&d)
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = if self.0.k == 1 { mulmod(r, base, self.0.p) } else { self.slow_mul(r, base) };
            }
            base = if self.0.k == 1 { mulmod(base, base, self.0.p) } else { self.slow_mul(base, base) };
            e >>= 1;
        }
        r
    }

    fn tables(&self) -> Option<&LogTables> {
        self.0
            .tables
            .get_or_init(|| {
                if self.0.k == 1 || self.0.order > TABLE_LIMIT {
                    return None;
                }
                let q = self.0.order as usize;
                let g = self.find_primitive();
                let mut exp = vec![0u32; q - 1];
                let mut log = vec![0u32; q];
                let mut cur = 1u64;
                for (i, slot) in exp.iter_mut().enumerate() {
                    *slot = cur as u32;
                    log[cur as usize] = i as u32;
                    cur = self.slow_mul(cur, g);
                }
                Some(LogTables { exp, log })
            })
            .as_ref()
    }

    /// Whether `self` is a subfield of `other` (same characteristic, degree divides).
    pub fn embeds_into(&self, other: &Field) -> bool {
        self.0.p == other.0.p && other.0.k % self.0.k == 0
    }

    /// The map sending `t` (root of this field's modulus) to the smallest
    /// root of that modulus in `target`. Prime-field codes map to themselves.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding, FieldError> {
        if !self.embeds_into(target) {
            return Err(FieldError::NoEmbedding {
                from: self.name(),
                into: target.name(),
            });
        }
        if self == target || self.0.k == 1 {
            return Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                image_of_t: None,
            });
        }
        if target.order() > 1 << 24 {
            return Err(FieldError::TooLargeToEnumerate(target.order()));
        }
        let m = &self.0.modulus;
        let root = (0..target.order())
            .find(|&x| {
                let mut v = 0u64;
                for &c in m.iter().rev() {
                    v = target.add(target.mul(v, x), c);
                }
                v == 0
            })
            .ok_or_else(|| FieldError::NoEmbedding {
                from: self.name(),
                into: target.name(),
            })?;
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            image_of_t: Some(root),
        })
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[t]/({:?})", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A field homomorphism `F_{p^a} -> F_{p^b}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    image_of_t: Option<u64>,
}

impl Embedding {
    pub fn target(&self) -> &Field {
        &self.target
    }

    pub(crate) fn map_code(&self, code: u64) -> u64 {
        match self.image_of_t {
            None => code,
            Some(t) => {
                let d = self.source.digits(code);
                let tf = &self.target;
                d.iter().rev().fold(0u64, |acc, &c| tf.add(tf.mul(acc, t), c))
            }
        }
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        assert_eq!(a.field, self.source, "element outside the embedding's source");
        self.target.wrap(self.map_code(a.code))
    }
}

// ---------------------------------------------------------------------------

/// An element of a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    code: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Packed coefficient code, `sum c_i p^i`.
    pub fn code(&self) -> u64 {
        self.code
    }

    /// Polynomial-basis coefficients, length `k`, each in `[0, p)`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs_of(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch {
                left: self.field.name(),
                right: other.field.name(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.add(self.code, other.code)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.sub(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.mul(self.code, other.code)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.field.wrap(self.field.mul(self.code, inv.code)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.field
            .inv(self.code)
            .map(|c| self.field.wrap(c))
            .ok_or(FieldError::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.wrap(self.field.pow(self.code, e))
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p())
    }

    /// Whether `self` is an `n`-th power in the field.
    pub fn is_nth_power(&self, n: u64) -> bool {
        if self.is_zero() {
            return true;
        }
        let q1 = self.field.order() - 1;
        let d = num_integer::gcd(n, q1);
        self.pow(q1 / d).is_one()
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.p(), self.field.degree(), self.code).cmp(&(
            other.field.p(),
            other.field.degree(),
            other.code,
        ))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.name())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            return write!(f, "{}", self.code);
        }
        let coeffs = self.coeffs();
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch in arithmetic")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch in arithmetic")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("field mismatch in arithmetic")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg(self.code))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
