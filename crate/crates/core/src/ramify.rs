//! Exact evaluation of the Riemann-Hurwitz and Deuring-Shafarevich formulas.
//!
//! Riemann-Hurwitz for a Galois cover `X -> Y = X/G`:
//! `(2 g_X - 2) / |G| = 2 g_Y - 2 + sum_Q d_Q / e_Q`.
//!
//! Deuring-Shafarevich for a p-group `H` and `Z = X/H`:
//! `(gamma_X - 1) / |H| = gamma_Z - 1 + sum_Q (1 - 1/e_Q)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ff::{is_prime, prime_factors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamifyError {
    #[error("invalid ramification point e = {e}, d = {d}: {reason}")]
    BadPoint { e: u64, d: u64, reason: String },
    #[error("exactly one quantity may be unknown, got {0}")]
    Unknowns(usize),
    #[error("group order must be positive")]
    BadOrder,
    #[error("|H| = {0} is not a prime power")]
    NotPrimePower(BigInt),
    #[error("the remaining terms vanish, so the group order is undetermined")]
    DivisionByZero,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Ramification data `(e_Q, d_Q)` of one branch point upstairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamPoint {
    pub e: u64,
    pub d: u64,
}

impl RamPoint {
    pub fn new(e: u64, d: u64) -> Result<Self, RamifyError> {
        if e < 1 {
            return Err(RamifyError::BadPoint { e, d, reason: "e must be at least 1".into() });
        }
        if d + 1 < e {
            return Err(RamifyError::BadPoint { e, d, reason: "d must be at least e - 1".into() });
        }
        Ok(RamPoint { e, d })
    }

    pub fn tame(e: u64) -> Self {
        RamPoint { e, d: e.saturating_sub(1) }
    }

    pub fn is_tame(&self) -> bool {
        self.d + 1 == self.e
    }
}

/// Which quantity was solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unknown {
    CoverGenus,
    BaseGenus,
    GroupOrder,
}

impl Unknown {
    pub fn as_str(self) -> &'static str {
        match self {
            Unknown::CoverGenus => "g_X",
            Unknown::BaseGenus => "g_Y",
            Unknown::GroupOrder => "order",
        }
    }
}

/// A cover profile with at most one missing quantity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverProfile {
    pub cover_genus: Option<BigInt>,
    pub base_genus: Option<BigInt>,
    pub group_order: Option<BigInt>,
    pub ram_points: Vec<RamPoint>,
}

/// Outcome of a formula evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HurwitzOutcome {
    /// The unknown has an admissible integral value.
    Solved { unknown: Unknown, value: BigInt },
    /// The formula forces a value that is not admissible.
    Infeasible { unknown: Unknown, value: BigRational, reason: String },
    /// All quantities were given and the formula holds.
    Consistent,
    /// All quantities were given and the formula fails.
    Inconsistent { lhs: BigRational, rhs: BigRational },
}

impl HurwitzOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, HurwitzOutcome::Solved { .. } | HurwitzOutcome::Consistent)
    }
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `sum d_Q / e_Q`.
pub fn different_sum(points: &[RamPoint]) -> BigRational {
    points.iter().fold(BigRational::zero(), |acc, q| acc + frac(q.d, q.e))
}

/// Evaluates Riemann-Hurwitz, solving for the single missing quantity.
pub fn riemann_hurwitz(profile: &CoverProfile) -> Result<HurwitzOutcome, RamifyError> {
    let missing = [&profile.cover_genus, &profile.base_genus, &profile.group_order]
        .iter()
        .filter(|x| x.is_none())
        .count();
    if missing > 1 {
        return Err(RamifyError::Unknowns(missing));
    }
    if let Some(n) = &profile.group_order {
        if !n.is_positive() {
            return Err(RamifyError::BadOrder);
        }
    }
    let two = rat(2);
    let sum = different_sum(&profile.ram_points);

    match (&profile.cover_genus, &profile.base_genus, &profile.group_order) {
        (Some(gx), Some(gy), Some(n)) => {
            let lhs = (rat(gx.clone()) * &two - &two) / rat(n.clone());
            let rhs = rat(gy.clone()) * &two - &two + &sum;
            if lhs == rhs && non_dividing(&profile.ram_points, n).is_none() {
                Ok(HurwitzOutcome::Consistent)
            } else {
                Ok(HurwitzOutcome::Inconsistent { lhs, rhs })
            }
        }
        (None, Some(gy), Some(n)) => {
            let value = (rat(n.clone()) * (rat(gy.clone()) * &two - &two + &sum) + &two) / &two;
            let unknown = Unknown::CoverGenus;
            if let Some(e) = non_dividing(&profile.ram_points, n) {
                return Ok(infeasible(unknown, value, format!("e = {e} does not divide |G| = {n}")));
            }
            Ok(genus_outcome(unknown, value))
        }
        (Some(gx), None, Some(n)) => {
            let value = ((rat(gx.clone()) * &two - &two) / rat(n.clone()) - &sum + &two) / &two;
            let unknown = Unknown::BaseGenus;
            if let Some(e) = non_dividing(&profile.ram_points, n) {
                return Ok(infeasible(unknown, value, format!("e = {e} does not divide |G| = {n}")));
            }
            Ok(genus_outcome(unknown, value))
        }
        (Some(gx), Some(gy), None) => {
            let r = rat(gy.clone()) * &two - &two + &sum;
            if r.is_zero() {
                return Err(RamifyError::DivisionByZero);
            }
            let value = (rat(gx.clone()) * &two - &two) / r;
            let unknown = Unknown::GroupOrder;
            if !value.is_integer() {
                return Ok(infeasible(unknown, value, "order is not an integer".into()));
            }
            if !value.is_positive() {
                return Ok(infeasible(unknown, value, "order is not positive".into()));
            }
            let n = value.to_integer();
            if let Some(e) = non_dividing(&profile.ram_points, &n) {
                return Ok(infeasible(unknown, value, format!("e = {e} does not divide |G| = {n}")));
            }
            Ok(HurwitzOutcome::Solved { unknown, value: n })
        }
        _ => unreachable!(),
    }
}

fn non_dividing(points: &[RamPoint], n: &BigInt) -> Option<u64> {
    points
        .iter()
        .find(|q| !(n % BigInt::from(q.e)).is_zero())
        .map(|q| q.e)
}

fn infeasible(unknown: Unknown, value: BigRational, reason: String) -> HurwitzOutcome {
    HurwitzOutcome::Infeasible { unknown, value, reason }
}

fn genus_outcome(unknown: Unknown, value: BigRational) -> HurwitzOutcome {
    if !value.is_integer() {
        infeasible(unknown, value, "genus is not an integer".into())
    } else if value.is_negative() {
        infeasible(unknown, value, "genus is negative".into())
    } else {
        HurwitzOutcome::Solved { unknown, value: value.to_integer() }
    }
}

/// Which p-rank was solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PRankUnknown {
    Cover,
    Quotient,
}

/// Inputs to Deuring-Shafarevich; `None` marks the unknown p-rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRankProfile {
    pub gamma_cover: Option<BigInt>,
    pub gamma_quotient: Option<BigInt>,
    pub group_order: BigInt,
    /// Ramification indices of the points upstairs.
    pub ram_indices: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PRankOutcome {
    Solved { unknown: PRankUnknown, value: BigInt },
    Infeasible { unknown: PRankUnknown, value: BigRational, reason: String },
    Consistent,
    Inconsistent { lhs: BigRational, rhs: BigRational },
}

/// `Some(p)` if `n` is a power of the prime `p`; `n = 1` reports `Some(1)`.
pub fn prime_power_base(n: &BigInt) -> Option<u64> {
    let v = n.to_u64()?;
    if v == 1 {
        return Some(1);
    }
    let ps = prime_factors(v);
    (ps.len() == 1).then(|| ps[0])
}

/// Evaluates Deuring-Shafarevich, solving for the missing p-rank.
pub fn deuring_shafarevich(profile: &PRankProfile) -> Result<PRankOutcome, RamifyError> {
    let h = &profile.group_order;
    if !h.is_positive() {
        return Err(RamifyError::BadOrder);
    }
    if prime_power_base(h).is_none() {
        return Err(RamifyError::NotPrimePower(h.clone()));
    }
    for &e in &profile.ram_indices {
        if e < 1 || !(h % BigInt::from(e)).is_zero() {
            return Err(RamifyError::BadPoint { e, d: 0, reason: format!("e must divide |H| = {h}") });
        }
    }
    let sum = ds_sum(&profile.ram_indices);
    let one = BigRational::one();
    let hr = rat(h.clone());
    let (unknown, value) = match (&profile.gamma_cover, &profile.gamma_quotient) {
        (Some(gx), Some(gz)) => {
            let lhs = (rat(gx.clone()) - &one) / &hr;
            let rhs = rat(gz.clone()) - &one + &sum;
            return Ok(if lhs == rhs {
                PRankOutcome::Consistent
            } else {
                PRankOutcome::Inconsistent { lhs, rhs }
            });
        }
        (None, Some(gz)) => (PRankUnknown::Cover, (rat(gz.clone()) - &one + &sum) * &hr + &one),
        (Some(gx), None) => (PRankUnknown::Quotient, (rat(gx.clone()) - &one) / &hr - &sum + &one),
        (None, None) => return Err(RamifyError::Unknowns(2)),
    };
    Ok(if !value.is_integer() {
        PRankOutcome::Infeasible { unknown, value, reason: "p-rank is not an integer".into() }
    } else if value.is_negative() {
        PRankOutcome::Infeasible { unknown, value, reason: "p-rank is negative".into() }
    } else {
        PRankOutcome::Solved { unknown, value: value.to_integer() }
    })
}

fn ds_sum(es: &[u64]) -> BigRational {
    es.iter()
        .fold(BigRational::zero(), |acc, &e| acc + BigRational::one() - frac(1, e))
}

/// All `(gamma_Z, multiset of e)` solving Deuring-Shafarevich for a group of
/// order `p^k` and cover p-rank `gamma_cover`, with each `e` a nontrivial
/// divisor of `p^k`. Multisets are sorted ascending.
pub fn ds_ramification_search(p: u64, k: u32, gamma_cover: u64) -> Result<Vec<(u64, Vec<u64>)>, RamifyError> {
    if !is_prime(p) || k < 1 {
        return Err(RamifyError::Precondition(format!("need p prime and k >= 1, got p = {p}, k = {k}")));
    }
    let order = p
        .checked_pow(k)
        .ok_or_else(|| RamifyError::Precondition("p^k overflows".into()))?;
    // gamma_Z - 1 + sum = (gamma_X - 1)/|H|, with gamma_Z >= 0 bounds the sum
    let target = (rat(gamma_cover) - BigRational::one()) / rat(order);
    let max_sum = &target + BigRational::one();
    let divisors: Vec<u64> = (1..=k).map(|i| p.pow(i)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    search_multisets(&divisors, 0, &mut current, BigRational::zero(), &max_sum, &target, &mut out);
    out.sort();
    Ok(out)
}

fn search_multisets(
    divisors: &[u64],
    start: usize,
    current: &mut Vec<u64>,
    sum: BigRational,
    max_sum: &BigRational,
    target: &BigRational,
    out: &mut Vec<(u64, Vec<u64>)>,
) {
    if &sum > max_sum {
        return;
    }
    // gamma_Z = target + 1 - sum
    let gz = target + BigRational::one() - &sum;
    if gz.is_integer() && !gz.is_negative() {
        out.push((gz.to_integer().to_u64().unwrap(), current.clone()));
    }
    for (i, &e) in divisors.iter().enumerate().skip(start) {
        current.push(e);
        let next = &sum + BigRational::one() - frac(1, e);
        search_multisets(divisors, i, current, next, max_sum, target, out);
        current.pop();
    }
}

/// The rational identity for the two-point ramification pattern:
/// `(2g - 2)/|G|` against `((e - E) q - 2e)/(E q e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseEquation {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub residual: BigRational,
    pub holds: bool,
    /// `p` does not divide `E` (when `p` was supplied).
    pub p_coprime_to_tame_index: Option<bool>,
    /// `p` does not divide `e` (when `p` was supplied).
    pub p_coprime_to_other_index: Option<bool>,
}

/// Inputs to [`case_equation_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseData {
    pub big_e: BigInt,
    pub q: BigInt,
    pub e: BigInt,
    pub genus: BigInt,
    pub order: BigInt,
    pub p: Option<u64>,
}

pub fn case_equation_check(data: &CaseData) -> Result<CaseEquation, RamifyError> {
    let CaseData { big_e, q, e, genus, order, p } = data;
    for (name, v) in [("E", big_e), ("q", q), ("e", e), ("g", genus), ("|G|", order)] {
        if !v.is_positive() {
            return Err(RamifyError::Precondition(format!("{name} must be positive")));
        }
    }
    if big_e < &BigInt::from(2) {
        return Err(RamifyError::Precondition("E >= 2 is needed for a nontrivial tame part".into()));
    }
    let lhs = (rat(genus.clone()) * rat(2) - rat(2)) / rat(order.clone());
    let rhs = BigRational::new((e - big_e) * q - e * 2, big_e * q * e);
    let residual = &lhs - &rhs;
    let flag = |x: &BigInt| p.map(|p| !(x % BigInt::from(p)).is_zero());
    Ok(CaseEquation {
        holds: residual.is_zero(),
        p_coprime_to_tame_index: flag(big_e),
        p_coprime_to_other_index: flag(e),
        lhs,
        rhs,
        residual,
    })
}

/// Parameters of the extremal two-point family attached to `(p, n)`:
/// `E = p^n - 1`, `e = p^n + 1`, `q = p^{2n}`, `g = p^{2n} - p^n`,
/// `|G| = p^{4n} - p^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalFamily {
    pub p: u64,
    pub n: u32,
    pub big_e: BigInt,
    pub e: BigInt,
    pub q: BigInt,
    pub genus: BigInt,
    pub order: BigInt,
}

pub fn final_family(p: u64, n: u32) -> Result<FinalFamily, RamifyError> {
    if !is_prime(p) || n < 1 {
        return Err(RamifyError::Precondition(format!("need p prime and n >= 1, got p = {p}, n = {n}")));
    }
    let pn = BigInt::from(p).pow(n);
    let q = &pn * &pn;
    Ok(FinalFamily {
        p,
        n,
        big_e: &pn - 1,
        e: &pn + 1,
        genus: &q - &pn,
        order: &q * &q - &q,
        q,
    })
}

impl FinalFamily {
    /// Profile over `P^1` with the wild point `(E q, E q + q - 2)` and the
    /// tame point `(e, e - 1)`, cover genus unknown.
    pub fn profile(&self) -> Option<CoverProfile> {
        let eq = (&self.big_e * &self.q).to_u64()?;
        let e = self.e.to_u64()?;
        let q = self.q.to_u64()?;
        Some(CoverProfile {
            cover_genus: None,
            base_genus: Some(BigInt::zero()),
            group_order: Some(self.order.clone()),
            ram_points: vec![RamPoint { e: eq, d: eq + q - 2 }, RamPoint::tame(e)],
        })
    }

    pub fn case_data(&self) -> CaseData {
        CaseData {
            big_e: self.big_e.clone(),
            q: self.q.clone(),
            e: self.e.clone(),
            genus: self.genus.clone(),
            order: self.order.clone(),
            p: Some(self.p),
        }
    }
}

/// `lambda = (d E eps - 2E - eps) / (E + eps)`.
pub fn lambda(d: i64, big_e: i64, eps: i64) -> Result<BigRational, RamifyError> {
    if big_e + eps == 0 {
        return Err(RamifyError::Precondition("E + eps must be nonzero".into()));
    }
    let (d, be, ep) = (BigInt::from(d), BigInt::from(big_e), BigInt::from(eps));
    Ok(BigRational::new(&d * &be * &ep - &be * 2 - &ep, &be + &ep))
}

/// `mu = lambda / (d + 1/E)`.
pub fn mu(d: i64, big_e: i64, eps: i64) -> Result<BigRational, RamifyError> {
    if big_e == 0 || d * big_e + 1 == 0 {
        return Err(RamifyError::Precondition("d + 1/E must be nonzero".into()));
    }
    let l = lambda(d, big_e, eps)?;
    Ok(l / (rat(d) + BigRational::new(BigInt::one(), BigInt::from(big_e))))
}

/// Grid check of `lambda >= 1 - 6/E` and `mu >= 1/3 - 4/E` wherever
/// `lambda > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGridReport {
    pub points: usize,
    pub positive: usize,
    /// `(d, E, eps)` triples violating either inequality.
    pub violations: Vec<(i64, i64, i64)>,
}

pub fn lambda_grid(
    d_range: std::ops::RangeInclusive<i64>,
    eps_range: std::ops::RangeInclusive<i64>,
    e_range: std::ops::RangeInclusive<i64>,
) -> Result<LambdaGridReport, RamifyError> {
    let mut report = LambdaGridReport { points: 0, positive: 0, violations: Vec::new() };
    for big_e in e_range {
        if big_e <= 0 {
            return Err(RamifyError::Precondition("E must be positive".into()));
        }
        let inv_e = BigRational::new(BigInt::one(), BigInt::from(big_e));
        let lambda_floor = BigRational::one() - &inv_e * rat(6);
        let mu_floor = BigRational::new(BigInt::one(), BigInt::from(3)) - &inv_e * rat(4);
        for d in d_range.clone() {
            for eps in eps_range.clone() {
                report.points += 1;
                let l = lambda(d, big_e, eps)?;
                if !l.is_positive() {
                    continue;
                }
                report.positive += 1;
                let m = mu(d, big_e, eps)?;
                if l < lambda_floor || m < mu_floor {
                    report.violations.push((d, big_e, eps));
                }
            }
        }
    }
    Ok(report)
}

impl fmt::Display for HurwitzOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HurwitzOutcome::Solved { unknown, value } => write!(f, "{} = {value}", unknown.as_str()),
            HurwitzOutcome::Infeasible { unknown, value, reason } => {
                write!(f, "infeasible: {} = {value} ({reason})", unknown.as_str())
            }
            HurwitzOutcome::Consistent => f.write_str("consistent"),
            HurwitzOutcome::Inconsistent { lhs, rhs } => write!(f, "inconsistent: {lhs} != {rhs}"),
        }
    }
}
