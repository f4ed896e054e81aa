//! Superelliptic curves `y^m = f(x)` over `F_p`: genus, point counts over
//! extensions, and the action of explicit automorphisms on rational points.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::ff::{make_field, Field, FieldElement, FieldError};
use crate::poly::Poly;

/// Largest `p^e` accepted by [`count_points`].
pub const COUNT_LIMIT: u64 = 1 << 24;

/// Largest `p^e` accepted by [`rational_points`] and [`orbit_partition`].
pub const ORBIT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("invalid curve: {0}")]
    Invalid(String),
    #[error("operation not supported for curves of general kind")]
    UnsupportedModel,
    #[error("field F_{p}^{e} is too large to enumerate (limit {limit})")]
    TooLarge { p: u64, e: u32, limit: u64 },
    #[error("automorphism is not defined on this curve: {0}")]
    BadAutomorphism(String),
    #[error("point count {count} over F_{p}^{e} violates the Weil bound for genus {genus}")]
    WeilViolation { p: u64, e: u32, count: u64, genus: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which smooth model the tool knows how to handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    /// `m = 2` and `f` squarefree.
    Hyperelliptic,
    /// `f = x^p - x` and `m | p + 1`.
    ArtinSchreierQuotient,
    General,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Hyperelliptic => "hyperelliptic",
            CurveKind::ArtinSchreierQuotient => "artin-schreier-quotient",
            CurveKind::General => "general",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The curve `y^m = f(x)` with `f` over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperellipticCurve {
    p: u64,
    m: u64,
    f: Poly,
    kind: CurveKind,
}

impl SuperellipticCurve {
    /// Validates the data and infers the kind: hyperelliptic takes priority,
    /// then the `y^m = x^p - x` family, otherwise general.
    pub fn new(m: u64, f: Poly) -> Result<Self, CurveError> {
        let field = f.field();
        if !field.is_prime_field() {
            return Err(CurveError::Invalid(format!(
                "coefficients must lie in a prime field, got {}",
                field.name()
            )));
        }
        let p = field.p();
        if m < 2 {
            return Err(CurveError::Invalid(format!("exponent m = {m} must be at least 2")));
        }
        if m.gcd(&p) != 1 {
            return Err(CurveError::Invalid(format!("gcd(m, p) = gcd({m}, {p}) must be 1")));
        }
        if f.degree().map_or(true, |d| d == 0) {
            return Err(CurveError::Invalid("f must be non-constant".into()));
        }
        let kind = if m == 2 && f.is_squarefree() {
            CurveKind::Hyperelliptic
        } else if f == x_p_minus_x(field) && (p + 1) % m == 0 {
            CurveKind::ArtinSchreierQuotient
        } else {
            CurveKind::General
        };
        Ok(SuperellipticCurve { p, m, f, kind })
    }

    /// `y^m = x^p - x` for `m | p + 1`.
    pub fn artin_schreier_quotient(p: u64, m: u64) -> Result<Self, CurveError> {
        let field = make_field(p, 1)?;
        let curve = Self::new(m, x_p_minus_x(&field))?;
        if (p + 1) % m != 0 {
            return Err(CurveError::Invalid(format!("m = {m} does not divide p + 1 = {}", p + 1)));
        }
        Ok(curve)
    }

    /// `y^2 = f(x)` for squarefree `f`.
    pub fn hyperelliptic(f: Poly) -> Result<Self, CurveError> {
        let curve = Self::new(2, f)?;
        if curve.kind != CurveKind::Hyperelliptic {
            return Err(CurveError::Invalid("f is not squarefree".into()));
        }
        Ok(curve)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn base_field(&self) -> &Field {
        self.f.field()
    }

    /// `(p + 1) / m` when `f = x^p - x` and `m | p + 1`.
    pub fn m_prime(&self) -> Option<u64> {
        if self.has_sl2_action() {
            Some((self.p + 1) / self.m)
        } else {
            None
        }
    }

    /// Whether the Möbius automorphisms are defined, i.e. `f = x^p - x` and
    /// `m | p + 1`. True for the Bolza-type curve `y^2 = x^p - x` even though
    /// its kind is hyperelliptic.
    pub fn has_sl2_action(&self) -> bool {
        (self.p + 1) % self.m == 0 && self.f == x_p_minus_x(self.base_field())
    }

    /// Genus of the smooth projective model.
    pub fn genus(&self) -> Result<u64, CurveError> {
        match self.kind {
            CurveKind::Hyperelliptic => Ok((self.f.degree().unwrap() as u64 - 1) / 2),
            CurveKind::ArtinSchreierQuotient => Ok((self.p - 1) * (self.m - 1) / 2),
            CurveKind::General => Err(CurveError::UnsupportedModel),
        }
    }

    fn points_at_infinity(&self, k: &Field) -> u64 {
        if self.kind == CurveKind::ArtinSchreierQuotient || self.f.degree().unwrap() % 2 == 1 {
            return 1;
        }
        if k.wrap(self.f.leading().code()).is_nth_power(2) {
            2
        } else {
            0
        }
    }
}

impl fmt::Debug for SuperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} = {} over F_{} ({})", self.m, self.f, self.p, self.kind)
    }
}

impl fmt::Display for SuperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} = {} mod {}", self.m, self.f, self.p)
    }
}

/// `x^p - x` over `field`'s prime field.
pub fn x_p_minus_x(field: &Field) -> Poly {
    let p = field.p() as usize;
    let mut c = vec![0i64; p + 1];
    c[1] = -1;
    c[p] = 1;
    Poly::from_ints(field, &c)
}

/// Comparison with the Weil bound over `F_{q^2}`, `q = p^{e/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointStatus {
    /// `q^2 + 2gq + 1` points.
    Maximal,
    /// `q^2 - 2gq + 1` points.
    Minimal,
    Neither,
}

impl PointStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PointStatus::Maximal => "maximal",
            PointStatus::Minimal => "minimal",
            PointStatus::Neither => "neither",
        }
    }
}

/// Number of `F_{p^e}`-rational points of the smooth model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointCount {
    pub e: u32,
    pub count: u64,
    /// `None` when `e` is odd.
    pub status: Option<PointStatus>,
}

/// Counts `F_{p^e}`-points using the `m`-th power character on each fibre.
/// Fails if the result is outside the Weil interval.
pub fn count_points(curve: &SuperellipticCurve, e: u32) -> Result<PointCount, CurveError> {
    let genus = curve.genus()?;
    let p = curve.p;
    let k = extension(p, e, COUNT_LIMIT)?;
    let q = k.order();
    let fiber = curve.m.gcd(&(q - 1));
    let exponent = (q - 1) / fiber;
    let f = curve.f.codes().to_vec();
    let affine: u64 = (0..q)
        .into_par_iter()
        .map(|x| {
            let v = f.iter().rev().fold(0u64, |acc, &c| k.add(k.mul(acc, x), c));
            if v == 0 {
                1
            } else if k.pow(v, exponent) == 1 {
                fiber
            } else {
                0
            }
        })
        .sum();
    let count = affine + curve.points_at_infinity(&k);
    check_weil(p, e, count, genus)?;
    let status = (e % 2 == 0).then(|| {
        let half = p.pow(e / 2) as i128;
        let top = half * half + 1;
        let width = 2 * genus as i128 * half;
        match count as i128 {
            c if c == top + width => PointStatus::Maximal,
            c if c == top - width => PointStatus::Minimal,
            _ => PointStatus::Neither,
        }
    });
    Ok(PointCount { e, count, status })
}

/// [`count_points`] for several extension degrees, computed in parallel and
/// returned in ascending order of `e`.
pub fn count_points_range(
    curve: &SuperellipticCurve,
    es: &[u32],
) -> Result<Vec<PointCount>, CurveError> {
    let mut sorted = es.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.par_iter().map(|&e| count_points(curve, e)).collect()
}

/// `(N - p^e - 1)^2 <= 4 g^2 p^e`, in exact integers.
fn check_weil(p: u64, e: u32, count: u64, genus: u64) -> Result<(), CurveError> {
    let q = p.pow(e) as i128;
    let dev = count as i128 - q - 1;
    let g = genus as i128;
    if dev * dev <= 4 * g * g * q {
        Ok(())
    } else {
        Err(CurveError::WeilViolation { p, e, count, genus })
    }
}

fn extension(p: u64, e: u32, limit: u64) -> Result<Field, CurveError> {
    let too_large = CurveError::TooLarge { p, e, limit };
    if e < 1 {
        return Err(CurveError::Field(FieldError::BadDegree(e)));
    }
    match p.checked_pow(e) {
        Some(q) if q <= limit => Ok(make_field(p, e)?),
        _ => Err(too_large),
    }
}

/// A point of the smooth model over some `F_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Affine { x: FieldElement, y: FieldElement },
    /// Points above `x = infinity`, indexed from 0.
    Infinity(u8),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
            Point::Infinity(0) => f.write_str("inf"),
            Point::Infinity(i) => write!(f, "inf{i}"),
        }
    }
}

/// Automorphisms of `y^m = x^p - x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurveAutomorphism {
    /// `(x, y) -> (x, zeta * y)` with `zeta^m = 1`.
    RootOfUnity(FieldElement),
    /// `(x, y) -> ((ax + b)/(cx + d), y/(cx + d)^{m'})` with `ad - bc = 1` in `F_p`.
    Mobius { a: i64, b: i64, c: i64, d: i64 },
}

impl CurveAutomorphism {
    pub fn mobius(a: i64, b: i64, c: i64, d: i64) -> Self {
        CurveAutomorphism::Mobius { a, b, c, d }
    }

    /// `x -> x + 1`.
    pub fn translation() -> Self {
        Self::mobius(1, 1, 0, 1)
    }

    /// `x -> -1/x`.
    pub fn inversion() -> Self {
        Self::mobius(0, 1, -1, 0)
    }

    fn validate(&self, curve: &SuperellipticCurve, k: &Field) -> Result<(), CurveError> {
        if !curve.has_sl2_action() {
            return Err(CurveError::BadAutomorphism(
                "automorphisms are only modelled for y^m = x^p - x with m | p + 1".into(),
            ));
        }
        match self {
            CurveAutomorphism::RootOfUnity(z) => {
                if z.field() != k {
                    return Err(CurveError::BadAutomorphism(format!(
                        "zeta lives in {}, points in {}",
                        z.field().name(),
                        k.name()
                    )));
                }
                if !z.pow(curve.m).is_one() {
                    return Err(CurveError::BadAutomorphism(format!("zeta^{} != 1", curve.m)));
                }
            }
            CurveAutomorphism::Mobius { a, b, c, d } => {
                let p = curve.p as i128;
                let det = (*a as i128 * *d as i128 - *b as i128 * *c as i128).rem_euclid(p);
                if det != 1 {
                    return Err(CurveError::BadAutomorphism(format!(
                        "({a}, {b}, {c}, {d}) has determinant {det} mod {p}, not 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Image of the `k`-rational point `pt` under `sigma`.
pub fn apply_automorphism(
    curve: &SuperellipticCurve,
    sigma: &CurveAutomorphism,
    pt: &Point,
    k: &Field,
) -> Result<Point, CurveError> {
    if let Point::Affine { x, y } = pt {
        if x.field() != k || y.field() != k {
            return Err(CurveError::BadAutomorphism(format!("point is not over {}", k.name())));
        }
    }
    sigma.validate(curve, k)?;
    Ok(apply_unchecked(curve, sigma, pt, k))
}

fn apply_unchecked(curve: &SuperellipticCurve, sigma: &CurveAutomorphism, pt: &Point, k: &Field) -> Point {
    match sigma {
        CurveAutomorphism::RootOfUnity(z) => match pt {
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: y * z,
            },
            inf => inf.clone(),
        },
        CurveAutomorphism::Mobius { a, b, c, d } => {
            let (a, b, c, d) = (k.from_int(*a), k.from_int(*b), k.from_int(*c), k.from_int(*d));
            match pt {
                Point::Infinity(_) => {
                    if c.is_zero() {
                        Point::Infinity(0)
                    } else {
                        Point::Affine {
                            x: (&a * &c.inv().unwrap()),
                            y: k.zero(),
                        }
                    }
                }
                Point::Affine { x, y } => {
                    let den = &(&c * x) + &d;
                    if den.is_zero() {
                        return Point::Infinity(0);
                    }
                    let inv = den.inv().unwrap();
                    let mp = curve.m_prime().unwrap();
                    Point::Affine {
                        x: (&(&a * x) + &b) * &inv,
                        y: y * &inv.pow(mp),
                    }
                }
            }
        }
    }
}

/// All `F_{p^e}`-rational points, affine ones sorted by coordinates first.
pub fn rational_points(curve: &SuperellipticCurve, e: u32) -> Result<Vec<Point>, CurveError> {
    curve.genus()?;
    let k = extension(curve.p, e, ORBIT_LIMIT)?;
    let mut roots: HashMap<u64, Vec<u64>> = HashMap::new();
    for y in 0..k.order() {
        roots.entry(k.pow(y, curve.m)).or_default().push(y);
    }
    let mut pts = Vec::new();
    for x in 0..k.order() {
        let v = curve.f.eval_code(&k, x);
        if let Some(ys) = roots.get(&v) {
            for &y in ys {
                pts.push(Point::Affine {
                    x: k.wrap(x),
                    y: k.wrap(y),
                });
            }
        }
    }
    for i in 0..curve.points_at_infinity(&k) {
        pts.push(Point::Infinity(i as u8));
    }
    pts.sort();
    Ok(pts)
}

/// Orbits of the group generated by `gens` on the `F_{p^e}`-rational points,
/// each orbit sorted, orbits ordered by their smallest point.
pub fn orbit_partition(
    curve: &SuperellipticCurve,
    gens: &[CurveAutomorphism],
    e: u32,
) -> Result<Vec<Vec<Point>>, CurveError> {
    let pts = rational_points(curve, e)?;
    let k = extension(curve.p, e, ORBIT_LIMIT)?;
    for g in gens {
        g.validate(curve, &k)?;
    }
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in &pts {
        if seen.contains(start) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut queue = vec![start.clone()];
        orbit.insert(start.clone());
        while let Some(pt) = queue.pop() {
            for g in gens {
                let img = apply_unchecked(curve, g, &pt, &k);
                if orbit.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

/// Orbit sizes with multiplicities.
pub fn orbit_sizes(orbits: &[Vec<Point>]) -> BTreeMap<usize, usize> {
    let mut sizes = BTreeMap::new();
    for o in orbits {
        *sizes.entry(o.len()).or_insert(0) += 1;
    }
    sizes
}
