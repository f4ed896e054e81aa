//! Acceptance suite: one PASS/FAIL line per criterion. All checks are exact;
//! the only tolerances are the wall-clock budgets below.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use curvecheck_core::canrep::{
    build_basis, build_module, commutant_dimension, decide_irreducibility, divisor_table,
    explicit_invariant_subspace, is_invariant, Verdict,
};
use curvecheck_core::cartier::{classify_p_rank, crosscheck_superspecial, hasse_witt, hasse_witt_poly, PRankVerdict};
use curvecheck_core::casecheck::{run_search, cyclic_hyperelliptic_ordinarity, SearchId, CyclicHyperellipticVerdict};
use curvecheck_core::curve::{apply_automorphism, count_points, orbit_partition, rational_points, CurveAutomorphism};
use curvecheck_core::ff::is_prime;
use curvecheck_core::ramify::{case_equation_check, final_family, lambda_grid};
use curvecheck_core::{make_field, PointStatus, Poly, SuperellipticCurve};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// Criteria that are known not to hold as stated; see the project notes.
/// The suite still evaluates them and prints FAIL, and it fails if one of
/// them starts passing so the list stays honest.
const KNOWN_RED: &[u32] = &[4];

const SAMPLE_SEED: u64 = 0x5eed;
const SAMPLE_PER_PRIME: usize = 50;
const SAMPLE_PRIMES: [i64; 5] = [3, 5, 7, 11, 13];
const MEATAXE_SEED: u64 = 0;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn run(id: u32, name: &'static str, budget: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let budget = budget.map(Duration::from_secs);
    let in_time = budget.map_or(true, |b| elapsed < b);
    Outcome { id, name, pass: ok && in_time, detail, elapsed, budget }
}

fn bolza(p: u64) -> SuperellipticCurve {
    let f = make_field(p, 1).unwrap();
    SuperellipticCurve::hyperelliptic(Poly::from_ints(&f, &[0, -1, 0, 0, 0, 1])).unwrap()
}

fn sample() -> Vec<(i64, Vec<i64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut out = Vec::new();
    for p in SAMPLE_PRIMES {
        for _ in 0..SAMPLE_PER_PRIME {
            let deg = if rng.gen_bool(0.5) { 5 } else { 7 };
            out.push((p, random_squarefree(&mut rng, p, deg)));
        }
    }
    out
}

fn c1_bolza_census() -> (bool, String) {
    let mut mismatches = Vec::new();
    let primes: Vec<u64> = (3..100).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let verdict = classify_p_rank(&hasse_witt(&bolza(p)).unwrap()).verdict;
        let expected = if matches!(p % 8, 1 | 3) { PRankVerdict::Ordinary } else { PRankVerdict::Superspecial };
        if verdict != expected {
            mismatches.push(p);
        }
    }
    (
        primes.len() == 24 && mismatches.is_empty(),
        format!("{} primes, mismatches {:?}", primes.len(), mismatches),
    )
}

fn c2_oracle_equivalence(sample: &[(i64, Vec<i64>)]) -> (bool, String) {
    let mut mismatches = 0;
    for (p, f) in sample {
        let field = make_field(*p as u64, 1).unwrap();
        let hw = hasse_witt_poly(&Poly::from_ints(&field, f)).unwrap();
        let got: Vec<Vec<i64>> =
            (0..hw.genus).map(|i| hw.matrix.row(i).iter().map(|e| e.code() as i64).collect()).collect();
        if got != hasse_witt_cech(f, *p) {
            mismatches += 1;
        }
    }
    (mismatches == 0, format!("{} curves, {mismatches} mismatches", sample.len()))
}

fn c3_crosscheck(sample: &[(i64, Vec<i64>)]) -> (bool, String) {
    let mut violations = 0;
    let (mut ss, mut ord, mut mid) = (0, 0, 0);
    for (p, f) in sample {
        let field = make_field(*p as u64, 1).unwrap();
        let curve = SuperellipticCurve::hyperelliptic(Poly::from_ints(&field, f)).unwrap();
        let r = crosscheck_superspecial(&curve).unwrap();
        let extremal = matches!(r.count.status, Some(PointStatus::Maximal | PointStatus::Minimal));
        match r.class.verdict {
            PRankVerdict::Superspecial => {
                ss += 1;
                violations += usize::from(!extremal);
            }
            PRankVerdict::Ordinary => {
                ord += 1;
                violations += usize::from(extremal);
            }
            PRankVerdict::Intermediate => mid += 1,
        }
    }
    (
        violations == 0,
        format!("superspecial {ss}, ordinary {ord}, intermediate {mid}, violations {violations}"),
    )
}

fn c4_hermitian() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let curve = SuperellipticCurve::artin_schreier_quotient(p, p + 1).unwrap();
        let g = curve.genus().unwrap();
        let c2 = count_points(&curve, 2).unwrap();
        let c4 = count_points(&curve, 4).unwrap();
        let want = p * p * p + 1;
        let good = g == p * (p - 1) / 2 && c2.count == want && c2.status == Some(PointStatus::Maximal);
        ok &= good;
        parts.push(format!(
            "p={p}: g={g}, #X(F_p^2)={} (want {want}), #X(F_p^4)={} {}",
            c2.count,
            c4.count,
            c4.status.map_or("", |s| s.as_str())
        ));
    }
    (ok, parts.join("; "))
}

fn c5_meataxe() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [5u64, 7, 11, 13] {
        for m in (2..=p + 1).filter(|m| (p + 1) % m == 0) {
            let basis = build_basis(p, m).unwrap();
            let module = build_module(&basis).unwrap();
            let v = decide_irreducibility(&module, MEATAXE_SEED).unwrap();
            let good = if m == 2 || m == p + 1 {
                v.verdict == Verdict::AbsolutelyIrreducible
                    && v.endo_dim == Some(1)
                    && commutant_dimension(&module.generators) == 1
            } else {
                let w = explicit_invariant_subspace(&basis, &module.field).unwrap();
                let witness_ok = v.witness.as_ref().is_some_and(|x| is_invariant(&module.generators, x));
                v.verdict == Verdict::Reducible && witness_ok && is_invariant(&module.generators, &w)
            };
            if !good {
                ok = false;
                parts.push(format!("p={p} m={m}: {}", v.verdict.as_str()));
            }
        }
    }
    (ok, if parts.is_empty() { "all (p, m) as expected".into() } else { parts.join("; ") })
}

fn c6_basis_genus() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in (2..=23).filter(|&p| is_prime(p)) {
        for m in (2..=p + 1).filter(|m| (p + 1) % m == 0) {
            checked += 1;
            let basis = build_basis(p, m).unwrap();
            let g = (p - 1) * (m - 1) / 2;
            let table = divisor_table(p, m).unwrap();
            if basis.dim() as u64 != g || table.canonical_degree != 2 * g as i64 - 2 {
                bad.push((p, m));
            }
        }
    }
    (bad.is_empty(), format!("{checked} (p, m) pairs, failures {bad:?}"))
}

fn c7_searches() -> (bool, String) {
    let a = run_search(SearchId::TameOutside, 200).primes();
    let b = run_search(SearchId::TameInside, 200).primes();
    let c = run_search(SearchId::Mersenne, 200);
    let allowed: BTreeSet<u64> = [2, 3, 5, 7].into();
    let ok = a.iter().all(|p| allowed.contains(p)) && b == vec![2, 5] && c.solutions.is_empty();
    (ok, format!("tame-outside {a:?}, tame-inside {b:?}, mersenne {:?}", c.primes()))
}

fn c8_identities() -> (bool, String) {
    let mut residual_ok = true;
    for (p, n) in [(3u64, 1u32), (5, 1), (2, 2), (3, 2)] {
        let fam = final_family(p, n).unwrap();
        let eq = case_equation_check(&fam.case_data()).unwrap();
        residual_ok &= eq.residual.is_zero() && eq.holds;
    }
    let grid = lambda_grid(1..=40, 1..=40, 444..=520).unwrap();
    (
        residual_ok && grid.violations.is_empty(),
        format!(
            "residuals zero: {residual_ok}; grid {} points, {} with lambda > 0, {} violations",
            grid.points,
            grid.positive,
            grid.violations.len()
        ),
    )
}

fn c9_cyclic_non_ordinary() -> (bool, String) {
    let f3 = make_field(3, 1).unwrap();
    let (mut classified, mut skipped, mut ordinary) = (0, 0, 0);
    for e in (14..=40).step_by(2) {
        for a in 1..=2 {
            let r = cyclic_hyperelliptic_ordinarity(e, &f3.from_int(a)).unwrap();
            match r.verdict {
                CyclicHyperellipticVerdict::NotApplicable => skipped += 1,
                _ => classified += 1,
            }
            ordinary += usize::from(r.is_ordinary);
        }
    }
    (
        ordinary == 0,
        format!("{classified} curves classified, {skipped} singular (3 | E/2), {ordinary} ordinary"),
    )
}

fn c10_orbits() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5] {
        let curve = SuperellipticCurve::artin_schreier_quotient(p, p + 1).unwrap();
        let orbits = orbit_partition(&curve, &[CurveAutomorphism::translation()], 2).unwrap();
        let fixed = orbits.iter().filter(|o| o.len() == 1).count();
        let others_p = orbits.iter().filter(|o| o.len() != 1).all(|o| o.len() as u64 == p);
        ok &= fixed == 1 && others_p;
        parts.push(format!("p={p}: {} orbits, {fixed} fixed", orbits.len()));
    }
    let mut permuted = 0;
    for p in [3u64, 5, 7] {
        let k = make_field(p, 2).unwrap();
        for m in (2..=p + 1).filter(|m| (p + 1) % m == 0) {
            let curve = SuperellipticCurve::artin_schreier_quotient(p, m).unwrap();
            let pts: BTreeSet<_> = rational_points(&curve, 2).unwrap().into_iter().collect();
            let zeta = k.root_of_unity(m).unwrap();
            for sigma in [
                CurveAutomorphism::RootOfUnity(zeta),
                CurveAutomorphism::translation(),
                CurveAutomorphism::inversion(),
            ] {
                let image: BTreeSet<_> =
                    pts.iter().map(|pt| apply_automorphism(&curve, &sigma, pt, &k).unwrap()).collect();
                if image != pts {
                    ok = false;
                    parts.push(format!("p={p} m={m}: {sigma:?} does not permute"));
                }
                permuted += 1;
            }
        }
    }
    parts.push(format!("{permuted} generator actions permute the F_p^2 points"));
    (ok, parts.join("; "))
}

#[test]
fn acceptance() {
    let sample = sample();
    let outcomes = vec![
        run(1, "Bolza census", Some(10), c1_bolza_census),
        run(2, "Hasse-Witt oracle equivalence", None, || c2_oracle_equivalence(&sample)),
        run(3, "superspecial/extremal cross-check", Some(60), || c3_crosscheck(&sample)),
        run(4, "Hermitian family maximal over F_p^2", None, c4_hermitian),
        run(5, "canonical representation verdicts", Some(120), c5_meataxe),
        run(6, "basis and canonical degree", None, c6_basis_genus),
        run(7, "proof-search reproduction", Some(5), c7_searches),
        run(8, "two-point identities and lambda grid", None, c8_identities),
        run(9, "y^2 = x(x^(E/2) - a) non-ordinary", None, c9_cyclic_non_ordinary),
        run(10, "orbit properties", None, c10_orbits),
    ];
    let mut unexpected = Vec::new();
    let mut err = std::io::stderr().lock();
    for o in &outcomes {
        let budget = o.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        let known = KNOWN_RED.contains(&o.id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        let _ = writeln!(
            err,
            "criterion {:>2} {:<40} {tag} [{:.2}s{budget}] {}",
            o.id,
            o.name,
            o.elapsed.as_secs_f64(),
            o.detail
        );
        if o.pass == known {
            unexpected.push(o.id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
