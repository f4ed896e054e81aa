//! Independent reference implementations used by the integration tests.
//! Everything here works with plain `i64` residues and shares no arithmetic
//! with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn md(a: i64, p: i64) -> i64 {
    a.rem_euclid(p)
}

pub fn pow_mod(mut b: i64, mut e: u64, p: i64) -> i64 {
    let mut r = 1 % p;
    b = md(b, p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: i64, p: i64) -> i64 {
    pow_mod(a, (p - 2) as u64, p)
}

pub fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Schoolbook product of low-first coefficient vectors.
pub fn poly_mul(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a monic `m`.
pub fn poly_rem_monic(a: &[i64], m: &[i64], p: i64) -> Vec<i64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = md(r[shift + i] - lead * c, p);
        }
        r = trim(r);
    }
    trim(r)
}

/// Monic polynomials of degree `k` in the order that compares the constant
/// term first, then `c_1`, and so on.
pub fn monic_polys(p: i64, k: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = (p as u64).pow(k as u32);
    (0..total).map(move |mut n| {
        let mut v = Vec::with_capacity(k + 1);
        let mut digits = vec![0i64; k];
        for slot in (0..k).rev() {
            digits[slot] = (n % p as u64) as i64;
            n /= p as u64;
        }
        v.extend(digits);
        v.push(1);
        v
    })
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most `k / 2`.
pub fn is_irreducible_brute(f: &[i64], p: i64) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for g in monic_polys(p, d) {
            if poly_rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of degree `k` in the order above.
pub fn expected_modulus(p: i64, k: usize) -> Vec<i64> {
    monic_polys(p, k).find(|f| is_irreducible_brute(f, p)).unwrap()
}

/// `F_{p^2}` as `a + b s` with `s^2 = r`, `r` the least non-residue.
#[derive(Clone, Copy, Debug)]
pub struct Fp2 {
    pub p: i64,
    pub r: i64,
}

impl Fp2 {
    pub fn new(p: i64) -> Self {
        let r = if p == 2 {
            // x^2 + x + 1 over F_2 handled separately in mul
            1
        } else {
            (2..p).find(|&r| pow_mod(r, ((p - 1) / 2) as u64, p) == p - 1).unwrap()
        };
        Fp2 { p, r }
    }

    pub fn elements(&self) -> Vec<(i64, i64)> {
        (0..self.p).flat_map(|a| (0..self.p).map(move |b| (a, b))).collect()
    }

    pub fn mul(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let p = self.p;
        if p == 2 {
            // s^2 = s + 1
            let a = x.0 * y.0 + x.1 * y.1;
            let b = x.0 * y.1 + x.1 * y.0 + x.1 * y.1;
            return (a % 2, b % 2);
        }
        (md(x.0 * y.0 + self.r * x.1 * y.1, p), md(x.0 * y.1 + x.1 * y.0, p))
    }

    pub fn add(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        (md(x.0 + y.0, self.p), md(x.1 + y.1, self.p))
    }

    pub fn pow(&self, mut b: (i64, i64), mut e: u64) -> (i64, i64) {
        let mut r = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Horner evaluation of an `F_p` polynomial.
    pub fn eval(&self, f: &[i64], x: (i64, i64)) -> (i64, i64) {
        f.iter().rev().fold((0, 0), |acc, &c| self.add(self.mul(acc, x), (md(c, self.p), 0)))
    }
}

/// Points of `y^m = f(x)` over `F_{p^2}` by looping over every pair
/// `(x, y)`, plus the points above infinity: one when `gcd(m, deg f) = 1`;
/// for `m = 2` and even degree, the number of square roots of the leading
/// coefficient in `F_{p^2}`.
pub fn count_fp2_pairs(m: u64, f: &[i64], p: i64) -> u64 {
    let k = Fp2::new(p);
    let elems = k.elements();
    let powers: Vec<((i64, i64), (i64, i64))> = elems.iter().map(|&y| (y, k.pow(y, m))).collect();
    let mut affine = 0u64;
    for &x in &elems {
        let v = k.eval(f, x);
        affine += powers.iter().filter(|(_, ym)| *ym == v).count() as u64;
    }
    let deg = (f.len() - 1) as u64;
    let infinity = if gcd(m, deg) == 1 {
        1
    } else {
        assert_eq!(m, 2, "oracle only resolves infinity for m = 2 or gcd(m, deg f) = 1");
        let lc = (md(*f.last().unwrap(), p), 0);
        powers.iter().filter(|(_, y2)| *y2 == lc).count() as u64
    };
    affine + infinity
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Frobenius on `H^1(X, O_X)` for `y^2 = f(x)` computed from the Čech
/// cocycles `y / x^i` on the two standard affines: `(y/x^i)^p` is expanded as
/// the Laurent polynomial `y * f^{(p-1)/2} * x^{-p i}`; monomials `y x^n`
/// with `n >= 0` are regular on the finite chart and those with `n <= -(g+1)`
/// on the chart at infinity, so only `-g <= n <= -1` survive.
/// Row `i - 1` holds the image of `y/x^i`.
pub fn hasse_witt_cech(f: &[i64], p: i64) -> Vec<Vec<i64>> {
    let deg = f.len() - 1;
    let g = (deg - 1) / 2;
    let mut h = vec![1i64];
    for _ in 0..(p - 1) / 2 {
        h = poly_mul(&h, f, p);
    }
    let mut rows = Vec::with_capacity(g);
    for i in 1..=g as i64 {
        let mut laurent: BTreeMap<i64, i64> = BTreeMap::new();
        for (k, &c) in h.iter().enumerate() {
            if c != 0 {
                *laurent.entry(k as i64 - p * i).or_insert(0) += c;
            }
        }
        let row = (1..=g as i64)
            .map(|j| md(laurent.get(&-j).copied().unwrap_or(0), p))
            .collect();
        rows.push(row);
    }
    rows
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
            }
        }
    }
    out
}

pub fn rank_mod(mut a: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in 0..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = md(a[i][j] - f * a[r][j], p);
                }
            }
        }
        r += 1;
    }
    r
}

/// p-rank of a prime-field curve by iterating `v -> v A` on the row space
/// until the dimension stops dropping.
pub fn p_rank_iterated(a: &[Vec<i64>], p: i64) -> usize {
    let g = a.len();
    let mut space: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| (i == j) as i64).collect()).collect();
    let mut dim = g;
    loop {
        space = mat_mul(&space, a, p);
        let next = rank_mod(space.clone(), p);
        if next == dim {
            return dim;
        }
        dim = next;
    }
}

/// Random squarefree polynomial of the given degree over `F_p`, nonzero
/// leading coefficient, low-first. Squarefreeness is checked by brute-force
/// search for a repeated monic factor of degree at most `deg / 2`.
pub fn random_squarefree(rng: &mut ChaCha8Rng, p: i64, deg: usize) -> Vec<i64> {
    loop {
        let mut f: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        f.push(rng.gen_range(1..p));
        if is_squarefree_brute(&f, p) {
            return f;
        }
    }
}

pub fn is_squarefree_brute(f: &[i64], p: i64) -> bool {
    let lead = *f.last().unwrap();
    let inv = inv_mod(lead, p);
    let monic: Vec<i64> = f.iter().map(|&c| c * inv % p).collect();
    let k = monic.len() - 1;
    for d in 1..=k / 2 {
        for g in monic_polys(p, d) {
            let g2 = poly_mul(&g, &g, p);
            if poly_rem_monic(&monic, &g2, p).is_empty() {
                return false;
            }
        }
    }
    true
}
