use std::fmt::Write as _;

use curvecheck_core::canrep::{
    build_basis, build_module, commutant_dimension, decide_irreducibility, explicit_invariant_subspace,
    is_invariant, CanrepError,
};
use curvecheck_core::cartier::{classify_p_rank, crosscheck_superspecial, hasse_witt, CartierError};
use curvecheck_core::casecheck::{
    aut_bound_ordinary, case_closed_forms, divisibility_bound, format_rational, nakajima_bound, run_search,
    BoundKind, BoundParams, BoundReport, CaseParams, CasecheckError, SearchId,
};
use curvecheck_core::curve::{count_points, CurveError};
use curvecheck_core::exprparse::{parse_curve, render_curve};
use curvecheck_core::ramify::{riemann_hurwitz, CoverProfile, RamPoint, RamifyError};
use curvecheck_core::{CurveKind, FieldMatrix, HurwitzOutcome};
use num_bigint::BigInt;
use serde::Serialize;

use crate::report::*;
use crate::{BoundKindArg, BoundsArgs, HurwitzArgs, SpecArg};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Infeasible(String),
}

pub struct Output {
    pub json: String,
    pub text: String,
    pub infeasible: bool,
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn render<I: Serialize, R: Serialize>(report: &Report<I, R>) -> String {
    serde_json::to_string_pretty(report).expect("report types serialize")
}

fn matrix_strings(m: &FieldMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect()
}

fn column_strings(m: &FieldMatrix) -> Vec<Vec<String>> {
    (0..m.cols()).map(|j| m.column(j).iter().map(|e| e.to_string()).collect()).collect()
}

fn curve_error(e: CurveError) -> CliError {
    match e {
        CurveError::WeilViolation { .. } => CliError::Infeasible(e.to_string()),
        other => usage(other),
    }
}

pub fn classify(src: &str, es: &[u32]) -> Result<Output, CliError> {
    let curve = parse_curve(src).map_err(usage)?;
    let genus = curve.genus().ok();
    let mut notes = Vec::new();
    let mut point_counts = Vec::new();
    if genus.is_some() {
        for &e in es {
            if e == 0 {
                return Err(usage("extension degree must be positive"));
            }
            let c = count_points(&curve, e).map_err(curve_error)?;
            point_counts.push(PointCountOut { e, count: c.count, status: c.status.map(|s| s.as_str()) });
        }
    } else {
        notes.push("genus and point counts are only modelled for hyperelliptic curves and y^m = x^p - x".into());
    }

    let (mut hw_out, mut verdict, mut cross) = (None, None, None);
    let mut infeasible = false;
    if curve.kind() == CurveKind::Hyperelliptic {
        match hasse_witt(&curve) {
            Ok(hw) => {
                let class = classify_p_rank(&hw);
                verdict = Some(class.verdict.as_str());
                hw_out = Some(HasseWittOut {
                    basis: hw.basis_labels.clone(),
                    matrix: matrix_strings(&hw.matrix),
                    stable_rank: class.stable_rank,
                });
                let r = crosscheck_superspecial(&curve).map_err(|e| match e {
                    CartierError::Curve(c) => curve_error(c),
                    other => usage(other),
                })?;
                infeasible = !r.consistent();
                cross = Some(CrosscheckOut {
                    superspecial_is_extremal: r.superspecial_is_extremal,
                    extremal_is_superspecial: r.extremal_is_superspecial,
                    ordinary_is_neither: r.ordinary_is_neither,
                    consistent: r.consistent(),
                });
            }
            Err(e) => notes.push(e.to_string()),
        }
    } else if curve.kind() == CurveKind::ArtinSchreierQuotient {
        notes.push("Hasse-Witt matrices are only built for hyperelliptic curves".into());
    }

    let rendered = render_curve(&curve);
    let mut text = String::new();
    let _ = writeln!(text, "curve    {rendered}");
    let _ = writeln!(
        text,
        "kind     {}{}",
        curve.kind(),
        genus.map_or(String::new(), |g| format!(", genus {g}"))
    );
    for c in &point_counts {
        let _ = writeln!(
            text,
            "#X(F_{}^{})  {}{}",
            curve.p(),
            c.e,
            c.count,
            c.status.map_or(String::new(), |s| format!("  ({s})"))
        );
    }
    if let Some(hw) = &hw_out {
        let _ = writeln!(text, "Hasse-Witt, rows {}:", hw.basis.join(", "));
        for row in &hw.matrix {
            let _ = writeln!(text, "  [{}]", row.join(" "));
        }
        let _ = writeln!(text, "stable rank {}: {}", hw.stable_rank, verdict.unwrap_or("-"));
    }
    if let Some(c) = &cross {
        let _ = writeln!(text, "cross-check {}", if c.consistent { "consistent" } else { "INCONSISTENT" });
    }
    for n in &notes {
        let _ = writeln!(text, "note     {n}");
    }

    let report = Report::new(
        "classify",
        ClassifyInputs { source: src.to_string(), curve: rendered, e: es.to_vec() },
        ClassifyResults {
            p: curve.p(),
            m: curve.m(),
            kind: curve.kind().as_str(),
            genus,
            point_counts,
            hasse_witt: hw_out,
            p_rank_verdict: verdict,
            crosscheck: cross,
            notes,
        },
        vec![
            "point counts over F_{p^e} with the Weil bound check",
            "Hasse-Witt matrix and stable rank of Frobenius",
            "superspecial exactly when maximal or minimal over F_{p^2}",
        ],
    );
    Ok(Output { json: render(&report), text, infeasible })
}

pub fn rep(p: u64, m: u64, seed: u64) -> Result<Output, CliError> {
    let basis = build_basis(p, m).map_err(usage)?;
    let module = build_module(&basis).map_err(usage)?;
    let v = decide_irreducibility(&module, seed).map_err(|e| match e {
        CanrepError::Inconclusive(_) => CliError::Infeasible(e.to_string()),
        other => usage(other),
    })?;
    let commutant = commutant_dimension(&module.generators);
    let coordinate = explicit_invariant_subspace(&basis, &module.field)
        .ok()
        .map(|w| is_invariant(&module.generators, &w));
    let labels: Vec<String> = (0..basis.dim()).map(|i| basis.label(i)).collect();

    let mut text = String::new();
    let _ = writeln!(text, "y^{m} = x^{p} - x over {}, dimension {}", module.field, module.dim);
    let _ = writeln!(text, "basis    {}", labels.join(", "));
    let _ = writeln!(text, "gens     {}", module.labels.join(", "));
    let _ = writeln!(text, "verdict  {}", v.verdict.as_str());
    if let Some(d) = v.endo_dim {
        let _ = writeln!(text, "endomorphism dimension {d} (linear solve: {commutant})");
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(text, "witness  invariant subspace of dimension {}", w.cols());
    }
    if let Some(ok) = coordinate {
        let _ = writeln!(text, "x^i dx/y block invariant: {ok}");
    }

    let report = Report::new(
        "rep",
        RepInputs { p, m, seed },
        RepResults {
            field: module.field.name(),
            dim: module.dim,
            basis: labels,
            generators: module
                .labels
                .iter()
                .zip(&module.generators)
                .map(|(l, g)| GeneratorOut { label: l.clone(), matrix: matrix_strings(g) })
                .collect(),
            verdict: v.verdict.as_str(),
            endo_dim: v.endo_dim,
            commutant_dim: commutant,
            samples: v.samples,
            witness: v.witness.as_ref().map(|w| WitnessOut { dim: w.cols(), columns: column_strings(w) }),
            coordinate_subspace_invariant: coordinate,
        },
        vec![
            "basis x^i dx / y^j of holomorphic differentials",
            "pullback matrices of zeta, x -> x + 1, x -> -1/x and the shear for m = p + 1",
            "MeatAxe irreducibility with Norton's criterion",
        ],
    );
    Ok(Output { json: render(&report), text, infeasible: false })
}

pub fn search(spec: SpecArg, p_max: u64) -> Result<Output, CliError> {
    let id = match spec {
        SpecArg::TameOutside => SearchId::TameOutside,
        SpecArg::TameInside => SearchId::TameInside,
        SpecArg::Mersenne => SearchId::Mersenne,
    };
    let r = run_search(id, p_max);
    let primes = r.primes();
    let mut text = String::new();
    let _ = writeln!(text, "{}: {}", id, r.predicate);
    for range in &r.ranges {
        let _ = writeln!(text, "  {:<10} {}", range.name, range.range);
    }
    let _ = writeln!(text, "{} solutions, primes {:?}", r.solutions.len(), primes);
    for s in &r.solutions {
        let n = s.n.map_or(String::new(), |n| format!("n={n} "));
        let _ = writeln!(text, "  p={} {n}c={} d={}", s.p, s.c, s.genus_d);
    }
    let report = Report::new(
        "search",
        SearchInputs { spec: id.as_str(), p_max },
        SearchResults {
            predicate: r.predicate.clone(),
            ranges: r.ranges.iter().map(|x| RangeOut { name: x.name.clone(), range: x.range.clone() }).collect(),
            solutions: r
                .solutions
                .iter()
                .map(|s| SolutionOut { p: s.p, n: s.n, c: s.c, genus_d: s.genus_d })
                .collect(),
            primes,
        },
        vec!["divisibility searches over genus decompositions with 2d + c <= 4"],
    );
    Ok(Output { json: render(&report), text, infeasible: false })
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this kind")))
}

fn casecheck_error(e: CasecheckError) -> CliError {
    match e {
        CasecheckError::GenusMismatch { .. } => CliError::Infeasible(e.to_string()),
        other => usage(other),
    }
}

fn bound_results(r: &BoundReport) -> BoundsResults {
    BoundsResults {
        formula_id: r.formula_id.clone(),
        value: format_rational(&r.value),
        integral: r.integral(),
        degenerate: r.degenerate,
        comparisons: r
            .comparisons
            .iter()
            .map(|c| ComparisonOut {
                label: c.label.clone(),
                lhs: format_rational(&c.lhs),
                relation: c.relation.as_str(),
                rhs: format_rational(&c.rhs),
                holds: c.holds,
            })
            .collect(),
    }
}

fn aut_ordinary_results(g: u64) -> Result<BoundsResults, CliError> {
    let bound = aut_bound_ordinary(g).map_err(casecheck_error)?;
    let bg = BigInt::from(g);
    let six_g2 = BigInt::from(6) * &bg * &bg;
    let half = (&bound - &six_g2) / BigInt::from(72);
    let lhs = BigInt::from(21) * bg.pow(3);
    let squared = &half * &half;
    let nak = nakajima_bound(g);
    Ok(BoundsResults {
        formula_id: "aut-ordinary".into(),
        value: bound.to_string(),
        integral: true,
        degenerate: false,
        comparisons: vec![
            ComparisonOut {
                label: "21 g^3 <= ((bound - 6g^2)/72)^2".into(),
                holds: lhs <= squared,
                lhs: lhs.to_string(),
                relation: "<=",
                rhs: squared.to_string(),
            },
            ComparisonOut {
                label: "bound < 84 g (g - 1)".into(),
                holds: bound < nak,
                lhs: bound.to_string(),
                relation: "<",
                rhs: nak.to_string(),
            },
        ],
    })
}

pub fn bounds(a: &BoundsArgs) -> Result<Output, CliError> {
    let mut params = Vec::new();
    let mut push = |name: &str, v: Option<u64>| {
        if let Some(v) = v {
            params.push(NamedValue { name: name.into(), value: v.to_string() });
        }
    };
    push("q", a.q);
    push("g", a.g);
    push("c", a.c);
    push("genus_d", a.genus_d);
    push("caseiv_d", a.caseiv_d);
    push("a", a.a);
    push("q_prime", a.q_prime);
    push("b1", a.b1);
    push("b2", a.b2);
    push("p", a.p);
    push("n", a.n.map(u64::from));

    let divisibility = |kind: BoundKind| -> Result<BoundsResults, CliError> {
        let bp = BoundParams { q: need(a.q, "q")?, g: a.g, c: a.c, genus_d: a.genus_d };
        divisibility_bound(kind, bp).map(|r| bound_results(&r)).map_err(casecheck_error)
    };
    let case = |cp: CaseParams| -> Result<BoundsResults, CliError> {
        case_closed_forms(cp).map(|r| bound_results(&r)).map_err(casecheck_error)
    };
    let results = match a.kind {
        BoundKindArg::MaxRough => divisibility(BoundKind::MaxRough)?,
        BoundKindArg::MinRough => divisibility(BoundKind::MinRough)?,
        BoundKindArg::MaxFine => divisibility(BoundKind::MaxFine)?,
        BoundKindArg::MinFine => divisibility(BoundKind::MinFine)?,
        BoundKindArg::FineCor => divisibility(BoundKind::FineCor)?,
        BoundKindArg::AutOrdinary => aut_ordinary_results(need(a.g, "g")?)?,
        BoundKindArg::CaseI => case(CaseParams::I {
            g: need(a.g, "g")?,
            a: need(a.a, "a")?,
            caseiv_d: need(a.caseiv_d, "caseiv-d")?,
        })?,
        BoundKindArg::CaseIIa => case(CaseParams::IIa {
            g: need(a.g, "g")?,
            q: need(a.q, "q")?,
            q_prime: need(a.q_prime, "q-prime")?,
            b1: need(a.b1, "b1")?,
            b2: need(a.b2, "b2")?,
        })?,
        BoundKindArg::CaseIIb => case(CaseParams::IIb {
            g: need(a.g, "g")?,
            a: need(a.a, "a")?,
            q_prime: need(a.q_prime, "q-prime")?,
            b2: need(a.b2, "b2")?,
        })?,
        BoundKindArg::CaseIIc => case(CaseParams::IIc {
            g: need(a.g, "g")?,
            q: need(a.q, "q")?,
            b1: need(a.b1, "b1")?,
            b2: need(a.b2, "b2")?,
        })?,
        BoundKindArg::CaseIVFinal => case(CaseParams::IVFinal { p: need(a.p, "p")?, n: need(a.n, "n")? })?,
    };

    let mut text = String::new();
    let _ = writeln!(text, "{} = {}", results.formula_id, results.value);
    if results.degenerate {
        let _ = writeln!(text, "  degenerate: a factor vanishes");
    }
    for c in &results.comparisons {
        let _ = writeln!(
            text,
            "  {:<5} {}: {} {} {}",
            if c.holds { "ok" } else { "fails" },
            c.label,
            c.lhs,
            c.relation,
            c.rhs
        );
    }
    let kind = a.kind;
    let report = Report::new(
        "bounds",
        BoundsInputs { kind: kind_name(kind).into(), params },
        results,
        vec![bound_provenance(kind)],
    );
    Ok(Output { json: render(&report), text, infeasible: false })
}

fn kind_name(k: BoundKindArg) -> &'static str {
    match k {
        BoundKindArg::MaxRough => "max-rough",
        BoundKindArg::MinRough => "min-rough",
        BoundKindArg::MaxFine => "max-fine",
        BoundKindArg::MinFine => "min-fine",
        BoundKindArg::FineCor => "fine-cor",
        BoundKindArg::AutOrdinary => "aut-ordinary",
        BoundKindArg::CaseI => "case-I",
        BoundKindArg::CaseIIa => "case-II-a",
        BoundKindArg::CaseIIb => "case-II-b",
        BoundKindArg::CaseIIc => "case-II-c",
        BoundKindArg::CaseIVFinal => "case-IV-final",
    }
}

fn bound_provenance(k: BoundKindArg) -> &'static str {
    match k {
        BoundKindArg::MaxRough | BoundKindArg::MinRough => "order divisibility for maximal/minimal curves",
        BoundKindArg::MaxFine | BoundKindArg::MinFine => "refined order divisibility with genus gcd factors",
        BoundKindArg::FineCor => "order divisibility through the genus decomposition",
        BoundKindArg::AutOrdinary => "automorphism bound for ordinary curves, certified by integer square roots",
        _ => "closed-form group orders in the ramification case analysis",
    }
}

fn parse_big(v: &Option<String>, flag: &str) -> Result<Option<BigInt>, CliError> {
    v.as_ref()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| usage(format!("--{flag}: `{s}` is not an integer"))))
        .transpose()
}

/// Parses `e:d,e:d,...`; an empty string means no ramification.
pub fn parse_ram(src: &str) -> Result<Vec<RamPoint>, CliError> {
    let mut out = Vec::new();
    for (i, item) in src.split(',').map(str::trim).enumerate() {
        if item.is_empty() {
            if src.trim().is_empty() {
                break;
            }
            return Err(usage(format!("--ram: empty entry at position {}", i + 1)));
        }
        let (e, d) = item
            .split_once(':')
            .ok_or_else(|| usage(format!("--ram: `{item}` is not of the form e:d")))?;
        let e: u64 = e.trim().parse().map_err(|_| usage(format!("--ram: bad index in `{item}`")))?;
        let d: u64 = d.trim().parse().map_err(|_| usage(format!("--ram: bad different exponent in `{item}`")))?;
        out.push(RamPoint::new(e, d).map_err(usage)?);
    }
    Ok(out)
}

pub fn hurwitz(a: &HurwitzArgs) -> Result<Output, CliError> {
    let gx = parse_big(&a.gx, "gx")?;
    let gy = parse_big(&a.gy, "gy")?;
    let order = parse_big(&a.order, "order")?;
    let ram = parse_ram(&a.ram)?;
    let profile = CoverProfile {
        cover_genus: gx.clone(),
        base_genus: gy.clone(),
        group_order: order.clone(),
        ram_points: ram.clone(),
    };
    let outcome = riemann_hurwitz(&profile).map_err(|e| match e {
        RamifyError::DivisionByZero => CliError::Infeasible(e.to_string()),
        other => usage(other),
    })?;
    let results = match &outcome {
        HurwitzOutcome::Solved { unknown, value } => HurwitzResults {
            outcome: "solved",
            unknown: Some(unknown.as_str()),
            value: Some(value.to_string()),
            reason: None,
            lhs: None,
            rhs: None,
        },
        HurwitzOutcome::Infeasible { unknown, value, reason } => HurwitzResults {
            outcome: "infeasible",
            unknown: Some(unknown.as_str()),
            value: Some(format_rational(value)),
            reason: Some(reason.clone()),
            lhs: None,
            rhs: None,
        },
        HurwitzOutcome::Consistent => HurwitzResults {
            outcome: "consistent",
            unknown: None,
            value: None,
            reason: None,
            lhs: None,
            rhs: None,
        },
        HurwitzOutcome::Inconsistent { lhs, rhs } => HurwitzResults {
            outcome: "inconsistent",
            unknown: None,
            value: None,
            reason: None,
            lhs: Some(format_rational(lhs)),
            rhs: Some(format_rational(rhs)),
        },
    };
    let text = format!("{outcome}\n");
    let report = Report::new(
        "hurwitz",
        HurwitzInputs {
            gx: gx.map(|v| v.to_string()),
            gy: gy.map(|v| v.to_string()),
            order: order.map(|v| v.to_string()),
            ram: ram.iter().map(|q| RamOut { e: q.e, d: q.d }).collect(),
        },
        results,
        vec!["Riemann-Hurwitz formula with wild different exponents"],
    );
    Ok(Output { json: render(&report), text, infeasible: !outcome.is_feasible() })
}
