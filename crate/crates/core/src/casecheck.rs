//! Finite searches and closed-form bounds from the case analysis of large
//! automorphism groups.
//!
//! Two different integers are traditionally called `d` here. The genus
//! decomposition `g = c(p-1)/2 + d p` uses `genus_d`; the index `(q-1)/E`
//! of a tame part inside a wild stabilizer uses `caseiv_d`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cartier::{hasse_witt_poly, classify_p_rank, CartierError, PRankClass, PRankVerdict};
use crate::ff::{is_prime, prime_factors, FieldElement};
use crate::poly::Poly;
use crate::ramify::{case_equation_check, final_family, RamifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CasecheckError {
    #[error("unknown search `{0}` (expected tame-outside, tame-inside or mersenne)")]
    UnknownSearch(String),
    #[error("unknown bound kind `{0}`")]
    UnknownBound(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("g = {g} is not c(p-1)/2 + d p for p = {p}, c = {c}, d = {d}")]
    GenusMismatch { g: u64, p: u64, c: u64, d: u64 },
    #[error(transparent)]
    Cartier(#[from] CartierError),
    #[error(transparent)]
    Ramify(#[from] RamifyError),
}

fn pre(msg: impl Into<String>) -> CasecheckError {
    CasecheckError::Precondition(msg.into())
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// Searches

/// The builtin divisibility searches over the small genus decompositions
/// `2 <= n <= 4`, `d >= 1`, `c >= 0`, `2d + c <= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchId {
    /// `np + 1 | n(n + c) + 2d + c + 1`.
    TameOutside,
    /// `np + 1 | 16(n - 1) d (c + d + 1)`.
    TameInside,
    /// `(c + 1)(p - 1) - 2d | 32 d (c + d + 1)^2` over Mersenne primes `p >= 31`.
    Mersenne,
}

impl SearchId {
    pub const ALL: [SearchId; 3] = [SearchId::TameOutside, SearchId::TameInside, SearchId::Mersenne];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchId::TameOutside => "tame-outside",
            SearchId::TameInside => "tame-inside",
            SearchId::Mersenne => "mersenne",
        }
    }

    pub fn predicate(self) -> &'static str {
        match self {
            SearchId::TameOutside => "n p + 1 | n (n + c) + 2 d + c + 1",
            SearchId::TameInside => "n p + 1 | 16 (n - 1) d (c + d + 1)",
            SearchId::Mersenne => "(c + 1)(p - 1) - 2 d | 32 d (c + d + 1)^2",
        }
    }

    fn uses_n(self) -> bool {
        self != SearchId::Mersenne
    }

    fn holds(self, p: u64, n: u64, c: u64, d: u64) -> bool {
        let (p, n, c, d) = (p as i128, n as i128, c as i128, d as i128);
        let (divisor, dividend) = match self {
            SearchId::TameOutside => (n * p + 1, n * (n + c) + 2 * d + c + 1),
            SearchId::TameInside => (n * p + 1, 16 * (n - 1) * d * (c + d + 1)),
            SearchId::Mersenne => ((c + 1) * (p - 1) - 2 * d, 32 * d * (c + d + 1) * (c + d + 1)),
        };
        if divisor == 0 {
            return dividend == 0;
        }
        dividend % divisor == 0
    }

    fn primes(self, p_max: u64) -> Vec<u64> {
        let all = (2..=p_max).filter(|&p| is_prime(p));
        match self {
            SearchId::Mersenne => all.filter(|&p| p >= 31 && (p + 1).is_power_of_two()).collect(),
            _ => all.collect(),
        }
    }

    fn ranges(self) -> Vec<RangeDecl> {
        let mut out = Vec::new();
        let p_range = match self {
            SearchId::Mersenne => "Mersenne primes 31 <= p <= p_max",
            _ => "primes 2 <= p <= p_max",
        };
        out.push(RangeDecl::new("p", p_range));
        if self.uses_n() {
            out.push(RangeDecl::new("n", "2 <= n <= 4"));
        }
        out.push(RangeDecl::new("genus_d", "d >= 1"));
        out.push(RangeDecl::new("c", "c >= 0"));
        out.push(RangeDecl::new("constraint", "2 d + c <= 4"));
        out
    }
}

impl fmt::Display for SearchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchId {
    type Err = CasecheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SearchId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| CasecheckError::UnknownSearch(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeDecl {
    pub name: String,
    pub range: String,
}

impl RangeDecl {
    fn new(name: &str, range: &str) -> Self {
        RangeDecl { name: name.into(), range: range.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchSolution {
    pub p: u64,
    pub n: Option<u64>,
    pub c: u64,
    pub genus_d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub id: SearchId,
    pub predicate: String,
    pub ranges: Vec<RangeDecl>,
    pub p_max: u64,
    pub solutions: Vec<SearchSolution>,
}

impl SearchReport {
    /// Distinct primes among the solutions, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.solutions.iter().map(|s| s.p).collect();
        ps.dedup();
        ps
    }
}

/// `(c, d)` with `d >= 1`, `c >= 0`, `2d + c <= 4`.
pub fn small_decompositions() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d in 1..=2u64 {
        for c in 0..=(4 - 2 * d) {
            out.push((c, d));
        }
    }
    out
}

pub const DEFAULT_P_MAX: u64 = 200;

/// Exhaustive run of a builtin search over primes up to `p_max`.
/// Solutions come back sorted by `(p, n, c, d)`.
pub fn run_search(id: SearchId, p_max: u64) -> SearchReport {
    let ns: Vec<Option<u64>> = if id.uses_n() { (2..=4).map(Some).collect() } else { vec![None] };
    let cds = small_decompositions();
    let mut solutions: Vec<SearchSolution> = id
        .primes(p_max)
        .into_par_iter()
        .flat_map_iter(|p| {
            let mut found = Vec::new();
            for &n in &ns {
                for &(c, d) in &cds {
                    if id.holds(p, n.unwrap_or(0), c, d) {
                        found.push(SearchSolution { p, n, c, genus_d: d });
                    }
                }
            }
            found
        })
        .collect();
    solutions.sort();
    SearchReport {
        id,
        predicate: id.predicate().to_string(),
        ranges: id.ranges(),
        p_max,
        solutions,
    }
}

// ---------------------------------------------------------------------------
// Bound reports

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Gt,
    Eq,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Eq => "==",
        }
    }

    fn test(self, a: &BigRational, b: &BigRational) -> bool {
        match self {
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Gt => a > b,
            Relation::Eq => a == b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub label: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: BigRational,
    pub holds: bool,
}

impl Comparison {
    fn new(label: &str, lhs: BigRational, relation: Relation, rhs: BigRational) -> Self {
        let holds = relation.test(&lhs, &rhs);
        Comparison { label: label.into(), lhs, relation, rhs, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub formula_id: String,
    pub inputs: Vec<(String, BigInt)>,
    pub value: BigRational,
    /// The value is zero because a factor vanished.
    pub degenerate: bool,
    pub comparisons: Vec<Comparison>,
}

impl BoundReport {
    pub fn integral(&self) -> bool {
        self.value.is_integer()
    }

    pub fn all_hold(&self) -> bool {
        self.comparisons.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    MaxRough,
    MinRough,
    MaxFine,
    MinFine,
    FineCor,
}

impl BoundKind {
    pub const ALL: [BoundKind; 5] =
        [BoundKind::MaxRough, BoundKind::MinRough, BoundKind::MaxFine, BoundKind::MinFine, BoundKind::FineCor];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::MaxRough => "max-rough",
            BoundKind::MinRough => "min-rough",
            BoundKind::MaxFine => "max-fine",
            BoundKind::MinFine => "min-fine",
            BoundKind::FineCor => "fine-cor",
        }
    }
}

impl FromStr for BoundKind {
    type Err = CasecheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| CasecheckError::UnknownBound(s.to_string()))
    }
}

/// Parameters of [`divisibility_bound`]. `g` is needed by the fine forms,
/// `c` and `genus_d` by `fine-cor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundParams {
    pub q: u64,
    pub g: Option<u64>,
    pub c: Option<u64>,
    pub genus_d: Option<u64>,
}

fn prime_power_base(q: u64) -> Option<u64> {
    match prime_factors(q).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

/// Divisor of `|Aut(X)|` for an `F_{q^2}`-maximal or minimal curve whose
/// group has only free orbits away from the rational points:
///
/// * `max-rough`: `2 q^3 (q^2 - 1)(q + 1)`
/// * `min-rough`: `2 q^3 (q^2 - 1)(q - 1)`
/// * `max-fine`: `2 q^3 (q + 1) gcd(2g - 2, q + 1) gcd(4g, q - 1)`
/// * `min-fine`: `2 q^3 (q - 1) gcd(2g - 2, q - 1) gcd(4g, q + 1)`
/// * `fine-cor`: `16 q^3 (q + 1) d (c + d + 1)` with `q = p` and
///   `g = c(p-1)/2 + d p`.
///
/// When `g` is known the bound is compared against `g^2` and `84(g - 1)`.
pub fn divisibility_bound(kind: BoundKind, params: BoundParams) -> Result<BoundReport, CasecheckError> {
    let q = params.q;
    let p = prime_power_base(q).ok_or_else(|| pre(format!("q = {q} is not a prime power")))?;
    let need_g = || {
        params
            .g
            .filter(|&g| g >= 2)
            .ok_or_else(|| pre(format!("{} needs a genus g >= 2", kind.as_str())))
    };
    let bq = big(q);
    let q3 = bq.pow(3);
    let mut inputs = vec![("q".to_string(), bq.clone())];
    let value = match kind {
        BoundKind::MaxRough => big(2) * &q3 * (&bq * &bq - 1) * (&bq + 1),
        BoundKind::MinRough => big(2) * &q3 * (&bq * &bq - 1) * (&bq - 1),
        BoundKind::MaxFine | BoundKind::MinFine => {
            let g = need_g()?;
            let (plus, minus) = if kind == BoundKind::MaxFine { (q + 1, q - 1) } else { (q - 1, q + 1) };
            let gcd1 = (2 * g - 2).gcd(&plus);
            let gcd2 = (4 * g).gcd(&minus);
            big(2) * &q3 * big(plus) * big(gcd1) * big(gcd2)
        }
        BoundKind::FineCor => {
            let g = need_g()?;
            if p != q || p == 2 {
                return Err(pre(format!("fine-cor needs q = p an odd prime, got q = {q}")));
            }
            let (c, d) = match (params.c, params.genus_d) {
                (Some(c), Some(d)) => (c, d),
                _ => return Err(pre("fine-cor needs c and d")),
            };
            if c * (p - 1) + 2 * d * p != 2 * g {
                return Err(CasecheckError::GenusMismatch { g, p, c, d });
            }
            inputs.push(("c".into(), big(c)));
            inputs.push(("genus_d".into(), big(d)));
            big(16) * &q3 * (&bq + 1) * big(d) * big(c + d + 1)
        }
    };
    let mut comparisons = Vec::new();
    if let Some(g) = params.g {
        inputs.insert(1, ("g".into(), big(g)));
        let v = rat(value.clone());
        comparisons.push(Comparison::new("bound > g^2", v.clone(), Relation::Gt, rat(big(g) * big(g))));
        comparisons.push(Comparison::new("bound > 84(g - 1)", v, Relation::Gt, rat(big(84) * (big(g) - 1))));
    }
    Ok(BoundReport {
        formula_id: kind.as_str().to_string(),
        inputs,
        degenerate: value.is_zero(),
        value: rat(value),
        comparisons,
    })
}

// ---------------------------------------------------------------------------
// The ordinary bound 6(g^2 + 12 sqrt(21) g^{3/2})

/// `ceil(sqrt(n))` for `n >= 0`.
fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Certified integer upper bound for `6(g^2 + 12 sqrt(21) g^{3/2})`:
/// `6 g^2 + 72 ceil(sqrt(21 g^3))`.
pub fn aut_bound_ordinary(g: u64) -> Result<BigInt, CasecheckError> {
    if g < 2 {
        return Err(pre(format!("genus must be at least 2, got {g}")));
    }
    let bg = big(g);
    Ok(big(6) * &bg * &bg + big(72) * ceil_sqrt(&(big(21) * bg.pow(3))))
}

/// Lower end of the same bracketing: `6 g^2 + 72 floor(sqrt(21 g^3))`.
pub fn aut_bound_ordinary_floor(g: u64) -> Result<BigInt, CasecheckError> {
    if g < 2 {
        return Err(pre(format!("genus must be at least 2, got {g}")));
    }
    let bg = big(g);
    Ok(big(6) * &bg * &bg + big(72) * (big(21) * bg.pow(3)).sqrt())
}

/// `84 g (g - 1)`.
pub fn nakajima_bound(g: u64) -> BigInt {
    big(84) * big(g) * (big(g) - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossover {
    /// Smallest genus from which the ordinary bound stays below
    /// `84 g (g - 1)` through `checked_up_to`.
    pub genus: u64,
    pub checked_up_to: u64,
}

pub fn bound_crossover(g_max: u64) -> Result<Crossover, CasecheckError> {
    if g_max < 2 {
        return Err(pre("g_max must be at least 2"));
    }
    let below: Vec<bool> = (2..=g_max)
        .into_par_iter()
        .map(|g| aut_bound_ordinary(g).map(|b| b < nakajima_bound(g)))
        .collect::<Result<_, _>>()?;
    let last_bad = below.iter().rposition(|&b| !b);
    let genus = match last_bad {
        Some(i) => i as u64 + 3,
        None => 2,
    };
    Ok(Crossover { genus, checked_up_to: g_max })
}

// ---------------------------------------------------------------------------
// Closed forms of the case analysis

/// Parameter sets of the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseParams {
    /// One wild and two order-two tame branch points:
    /// `|G| = 2(g + a - 1)(g + 2a - 1)/(a d)`, `1 <= a < g`.
    I { g: u64, a: u64, caseiv_d: u64 },
    /// Two wild branch points with `q != 2`, `q' != 1`.
    IIa { g: u64, q: u64, q_prime: u64, b1: u64, b2: u64 },
    /// Two wild branch points with `q = 2`: `|G| = 2 a q'(2q' - 1)/b_2`,
    /// `a (q' - 1) = g - 1`.
    IIb { g: u64, a: u64, q_prime: u64, b2: u64 },
    /// Two wild branch points with `q' = 1`:
    /// `|G| = 2(g - 1) q (q - 1)/((b_1 + b_2)(q - 2))`.
    IIc { g: u64, q: u64, b1: u64, b2: u64 },
    /// The extremal family `|G| = p^{4n} - p^{2n}`, `g = p^{2n} - p^n`.
    IVFinal { p: u64, n: u32 },
}

impl CaseParams {
    pub fn case_id(&self) -> &'static str {
        match self {
            CaseParams::I { .. } => "I",
            CaseParams::IIa { .. } => "II-a",
            CaseParams::IIb { .. } => "II-b",
            CaseParams::IIc { .. } => "II-c",
            CaseParams::IVFinal { .. } => "IV-final",
        }
    }
}

fn frac(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

pub fn case_closed_forms(params: CaseParams) -> Result<BoundReport, CasecheckError> {
    let mut cmp = Vec::new();
    let (inputs, value): (Vec<(&str, BigInt)>, BigRational) = match params {
        CaseParams::I { g, a, caseiv_d } => {
            if g < 2 || a < 1 || a >= g || caseiv_d < 1 {
                return Err(pre(format!("case I needs g >= 2, 1 <= a < g, d >= 1; got g = {g}, a = {a}, d = {caseiv_d}")));
            }
            let (bg, ba) = (big(g), big(a));
            let v = frac(big(2) * (&bg + &ba - 1) * (&bg + big(2) * &ba - 1), &ba * big(caseiv_d));
            let mid = rat(big(2) * (big(2) * &bg - 1) * (&bg + 1));
            cmp.push(Comparison::new("|G| <= 2(2g - 1)(g + 1)", v.clone(), Relation::Le, mid.clone()));
            cmp.push(Comparison::new("2(2g - 1)(g + 1) <= 5g^2", mid, Relation::Le, rat(big(5) * &bg * &bg)));
            (vec![("g", bg), ("a", ba), ("caseiv_d", big(caseiv_d))], v)
        }
        CaseParams::IIa { g, q, q_prime, b1, b2 } => {
            if g < 2 || q < 3 || q_prime < 2 || b1 < 1 || b2 < 1 || q * q_prime < 15 {
                return Err(pre("case II-a needs g >= 2, q >= 3, q' >= 2, q q' >= 15, b1, b2 >= 1"));
            }
            if prime_power_base(q).is_none() || prime_power_base(q_prime) != prime_power_base(q) {
                return Err(pre("case II-a needs q and q' powers of one prime"));
            }
            let (bg, bq, bq2) = (big(g), big(q), big(q_prime));
            let qq = &bq * &bq2;
            let den = big(b2) * (&bq - 1) * (&qq - 2) + big(b1) * (&qq - 1) * &bq2 * (&bq - 2);
            let v = frac(&qq * big(2) * (&bg - 1) * (&bq - 1) * (&qq - 1), den);
            let mid = frac(big(15) * &qq * (&bg - 1), big(7) * big(b2));
            cmp.push(Comparison::new("|G| <= 15 q q'(g - 1)/(7 b2)", v.clone(), Relation::Le, mid));
            cmp.push(Comparison::new(
                "|G| <= 32/7 (g - 1)^2",
                v.clone(),
                Relation::Le,
                frac(big(32) * (&bg - 1) * (&bg - 1), big(7)),
            ));
            (vec![("g", bg), ("q", bq), ("q_prime", bq2), ("b1", big(b1)), ("b2", big(b2))], v)
        }
        CaseParams::IIb { g, a, q_prime, b2 } => {
            if g < 2 || a < 1 || a >= g || q_prime < 2 || b2 < 1 {
                return Err(pre("case II-b needs g >= 2, 1 <= a < g, q' >= 2, b2 >= 1"));
            }
            if !q_prime.is_power_of_two() {
                return Err(pre(format!("case II-b needs q' a power of 2, got {q_prime}")));
            }
            if a * (q_prime - 1) != g - 1 {
                return Err(pre(format!("case II-b needs a (q' - 1) = g - 1, got a = {a}, q' = {q_prime}, g = {g}")));
            }
            let (bg, ba, bq2) = (big(g), big(a), big(q_prime));
            let v = frac(big(2) * &ba * &bq2 * (big(2) * &bq2 - 1), big(b2));
            let alt = frac(big(2) * (&bg + &ba - 1) * (big(2) * &bg + &ba - 2), &ba * big(b2));
            cmp.push(Comparison::new("2aq'(2q' - 1)/b2 == 2(g + a - 1)(2g + a - 2)/(a b2)", v.clone(), Relation::Eq, alt));
            cmp.push(Comparison::new("|G| <= 6g^2", v.clone(), Relation::Le, rat(big(6) * &bg * &bg)));
            (vec![("g", bg), ("a", ba), ("q_prime", bq2), ("b2", big(b2))], v)
        }
        CaseParams::IIc { g, q, b1, b2 } => {
            if g < 2 || q < 15 || b1 < 1 || b2 < 1 || prime_power_base(q).is_none() {
                return Err(pre("case II-c needs g >= 2, q >= 15 a prime power, b1, b2 >= 1"));
            }
            let (bg, bq) = (big(g), big(q));
            let v = frac(big(2) * (&bg - 1) * &bq * (&bq - 1), big(b1 + b2) * (&bq - 2));
            let mid = frac(big(15) * (&bg - 1) * big(2) * &bg, big(14));
            cmp.push(Comparison::new("|G| <= 15/14 (g - 1) 2g", v.clone(), Relation::Le, mid.clone()));
            cmp.push(Comparison::new("15/14 (g - 1) 2g <= 3g^2", mid, Relation::Le, rat(big(3) * &bg * &bg)));
            (vec![("g", bg), ("q", bq), ("b1", big(b1)), ("b2", big(b2))], v)
        }
        CaseParams::IVFinal { p, n } => {
            let fam = final_family(p, n)?;
            let g = fam.genus.to_u64().ok_or_else(|| pre("genus out of range"))?;
            let v = rat(fam.order.clone());
            if fam.big_e >= big(2) {
                let eq = case_equation_check(&fam.case_data())?;
                cmp.push(Comparison::new("Riemann-Hurwitz residual", eq.residual, Relation::Eq, BigRational::zero()));
            }
            cmp.push(Comparison::new("|G| > g^2", v.clone(), Relation::Gt, rat(&fam.genus * &fam.genus)));
            if g >= 2 {
                cmp.push(Comparison::new(
                    "|G| <= 6(g^2 + 12 sqrt(21) g^{3/2})",
                    v.clone(),
                    Relation::Le,
                    rat(aut_bound_ordinary(g)?),
                ));
            }
            (vec![("p", big(p)), ("n", big(n)), ("g", fam.genus.clone())], v)
        }
    };
    Ok(BoundReport {
        formula_id: params.case_id().to_string(),
        inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        degenerate: value.is_zero(),
        value,
        comparisons: cmp,
    })
}

// ---------------------------------------------------------------------------
// The hyperelliptic curves y^2 = x (x^{E/2} - a)

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicHyperellipticVerdict {
    Classified(PRankClass),
    /// Characteristic 2: Frobenius kills `H^1`, so the curve is not ordinary.
    CharacteristicTwo,
    /// `p | E/2` makes `x^{E/2} - a` inseparable and the model singular.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicHyperellipticReport {
    pub p: u64,
    pub big_e: u64,
    pub a: FieldElement,
    pub genus: u64,
    pub verdict: CyclicHyperellipticVerdict,
    pub is_ordinary: bool,
    /// `E <= 6(p - 1)`.
    pub within_bound: bool,
}

impl CyclicHyperellipticReport {
    /// Ordinary implies `E <= 6(p - 1)`.
    pub fn implication_holds(&self) -> bool {
        !self.is_ordinary || self.within_bound
    }
}

/// Genus bound `756 (p - 1)^2` that follows from `E <= 6(p - 1)` and
/// `g < 21 E^2`.
pub fn ordinary_genus_constant(p: u64) -> BigInt {
    big(756) * big(p - 1) * big(p - 1)
}

/// Classifies `y^2 = x (x^{E/2} - a)` over the field of `a`.
pub fn cyclic_hyperelliptic_ordinarity(big_e: u64, a: &FieldElement) -> Result<CyclicHyperellipticReport, CasecheckError> {
    let field = a.field();
    let p = field.p();
    if big_e < 2 || big_e % 2 == 1 {
        return Err(pre(format!("E must be even and at least 2, got {big_e}")));
    }
    if a.is_zero() {
        return Err(pre("a must be nonzero"));
    }
    let half = (big_e / 2) as usize;
    let mut coeffs = vec![field.zero(); half + 2];
    coeffs[1] = -a.clone();
    coeffs[half + 1] = field.one();
    let f = Poly::from_elements(field, &coeffs);
    let genus = big_e / 4;
    let within_bound = big_e <= 6 * (p - 1);
    let verdict = if p == 2 {
        CyclicHyperellipticVerdict::CharacteristicTwo
    } else if (big_e / 2) % p == 0 {
        CyclicHyperellipticVerdict::NotApplicable
    } else {
        match hasse_witt_poly(&f) {
            Ok(hw) => CyclicHyperellipticVerdict::Classified(classify_p_rank(&hw)),
            Err(CartierError::GenusZero) => return Err(pre("genus 0 curve")),
            Err(e) => return Err(e.into()),
        }
    };
    let is_ordinary = matches!(&verdict, CyclicHyperellipticVerdict::Classified(c) if c.verdict == PRankVerdict::Ordinary);
    Ok(CyclicHyperellipticReport { p, big_e, a: a.clone(), genus, verdict, is_ordinary, within_bound })
}

/// Exact rational as a decimal string when integral, else `num/den`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use proptest::prelude::*;

    #[test]
    fn tame_outside_primes() {
        let r = run_search(SearchId::TameOutside, 200);
        assert!(!r.solutions.is_empty());
        assert!(r.primes().iter().all(|p| [2, 3, 5, 7].contains(p)), "{:?}", r.primes());
    }

    #[test]
    fn tame_inside_primes_and_witnesses() {
        let r = run_search(SearchId::TameInside, 200);
        assert_eq!(r.primes(), vec![2, 5]);
        let has = |p, n, c, d| r.solutions.contains(&SearchSolution { p, n: Some(n), c, genus_d: d });
        assert!(has(2, 4, 0, 2));
        assert!(has(5, 3, 0, 2));
        assert!(has(5, 3, 2, 1));
    }

    #[test]
    fn mersenne_is_empty() {
        let r = run_search(SearchId::Mersenne, 200);
        assert!(r.solutions.is_empty());
        assert_eq!(SearchId::Mersenne.primes(200), vec![31, 127]);
    }

    #[test]
    fn search_ids_parse() {
        for id in SearchId::ALL {
            assert_eq!(id.as_str().parse::<SearchId>().unwrap(), id);
        }
        assert!(matches!("nope".parse::<SearchId>(), Err(CasecheckError::UnknownSearch(_))));
    }

    #[test]
    fn searches_are_monotone_in_p_max() {
        for id in SearchId::ALL {
            let small = run_search(id, 200);
            let large = run_search(id, 400);
            let restricted: Vec<_> = large.solutions.iter().copied().filter(|s| s.p <= 200).collect();
            assert_eq!(restricted, small.solutions);
        }
    }

    #[test]
    fn rough_and_fine_values() {
        let r = divisibility_bound(BoundKind::MaxRough, BoundParams { q: 5, ..Default::default() }).unwrap();
        assert_eq!(r.value, rat(36000));
        let r = divisibility_bound(BoundKind::MaxFine, BoundParams { q: 5, g: Some(2), ..Default::default() }).unwrap();
        assert_eq!(r.value, rat(12000));
        assert!(r.all_hold());
        let r = divisibility_bound(BoundKind::MinRough, BoundParams { q: 5, ..Default::default() }).unwrap();
        assert_eq!(r.value, rat(2 * 125 * 24 * 4));
    }

    #[test]
    fn fine_cor_degenerate_and_mismatch() {
        let params = BoundParams { q: 5, g: Some(2), c: Some(1), genus_d: Some(0) };
        let r = divisibility_bound(BoundKind::FineCor, params).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.value, rat(0));
        let bad = BoundParams { q: 5, g: Some(3), c: Some(1), genus_d: Some(0) };
        assert!(matches!(divisibility_bound(BoundKind::FineCor, bad), Err(CasecheckError::GenusMismatch { .. })));
        assert!(divisibility_bound(BoundKind::MaxRough, BoundParams { q: 6, ..Default::default() }).is_err());
    }

    #[test]
    fn ordinary_bound_examples() {
        assert_eq!(aut_bound_ordinary(4).unwrap(), big(2760));
        assert_eq!(aut_bound_ordinary(2).unwrap(), big(960));
        let b = aut_bound_ordinary(100).unwrap();
        assert!(b > big(389_000) && b <= big(390_000), "{b}");
        assert!(b < nakajima_bound(100));
        assert!(aut_bound_ordinary(1).is_err());
    }

    #[test]
    fn crossover_is_pinned() {
        let c = bound_crossover(10_000).unwrap();
        assert_eq!(c.genus, 21);
        assert_eq!(aut_bound_ordinary(20).unwrap(), nakajima_bound(20));
    }

    #[test]
    fn case_examples() {
        let r = case_closed_forms(CaseParams::I { g: 10, a: 1, caseiv_d: 1 }).unwrap();
        assert_eq!(r.value, rat(220));
        assert!(r.all_hold());

        let r = case_closed_forms(CaseParams::IVFinal { p: 3, n: 1 }).unwrap();
        assert_eq!(r.value, rat(72));
        assert!(r.all_hold());

        let r = case_closed_forms(CaseParams::IIb { g: 3, a: 2, q_prime: 2, b2: 1 }).unwrap();
        assert_eq!(r.value, rat(24));
        assert!(r.all_hold());

        assert!(case_closed_forms(CaseParams::I { g: 3, a: 3, caseiv_d: 1 }).is_err());
        assert!(case_closed_forms(CaseParams::IIb { g: 4, a: 2, q_prime: 2, b2: 1 }).is_err());
    }

    #[test]
    fn case_two_chains() {
        let r = case_closed_forms(CaseParams::IIc { g: 40, q: 16, b1: 1, b2: 1 }).unwrap();
        assert!(r.all_hold(), "{r:?}");
        let r = case_closed_forms(CaseParams::IIa { g: 50, q: 4, q_prime: 4, b1: 1, b2: 1 }).unwrap();
        assert!(r.comparisons[0].holds);
    }

    #[test]
    fn cyclic_hyperelliptic_examples() {
        let f3 = make_field(3, 1).unwrap();
        for a in [1, 2] {
            let r = cyclic_hyperelliptic_ordinarity(20, &f3.from_int(a)).unwrap();
            assert!(!r.is_ordinary);
            assert!(r.implication_holds());
        }
        let f5 = make_field(5, 1).unwrap();
        let r = cyclic_hyperelliptic_ordinarity(8, &f5.one()).unwrap();
        assert!(r.within_bound && r.implication_holds());
        let r = cyclic_hyperelliptic_ordinarity(18, &f3.one()).unwrap();
        assert_eq!(r.verdict, CyclicHyperellipticVerdict::NotApplicable);
        let f2 = make_field(2, 1).unwrap();
        let r = cyclic_hyperelliptic_ordinarity(6, &f2.one()).unwrap();
        assert_eq!(r.verdict, CyclicHyperellipticVerdict::CharacteristicTwo);
        assert!(cyclic_hyperelliptic_ordinarity(7, &f3.one()).is_err());
        assert_eq!(ordinary_genus_constant(3), big(3024));
    }

    proptest! {
        #[test]
        fn ordinary_bound_is_certified(g in 2u64..2_000_000) {
            let b = aut_bound_ordinary(g).unwrap();
            let lo = aut_bound_ordinary_floor(g).unwrap();
            let six_g2 = big(6) * big(g) * big(g);
            let t = (&b - &six_g2) / big(72);
            prop_assert!(&t * &t >= big(21) * big(g).pow(3));
            let s = (&lo - &six_g2) / big(72);
            prop_assert!(&s * &s <= big(21) * big(g).pow(3));
            prop_assert!(&b - &lo <= big(72));
        }

        #[test]
        fn case_one_value_stays_in_chain(g in 2u64..500, a_frac in 0.0f64..1.0, d in 1u64..20) {
            let a = 1 + ((g - 1) as f64 * a_frac) as u64 % (g - 1);
            let r = case_closed_forms(CaseParams::I { g, a, caseiv_d: d }).unwrap();
            prop_assert!(r.all_hold());
        }
    }
}
