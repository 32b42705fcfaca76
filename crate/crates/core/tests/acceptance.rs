//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use common::*;
use opcert::certify::{certify_named, verify_certificate, CertificateFile, ClaimOutcome, CertifyReport, Verdict};
use opcert::cli::{run, RunConfig, Status};
use opcert::freealg::{parse, render};
use opcert::matcheck::{MatrixFixture, MatrixReport};
use opcert::quiver::{check_problem, Incompatibility};
use opcert::statements::{parse_problem, translate, StepOutcome, Translation};
use proptest::prelude::*;

type Outcome = Result<String, String>;

fn load(name: &str) -> Result<Translation, String> {
    let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
    let problem = parse_problem(&text).map_err(|e| format!("{name}: {e}"))?;
    translate(&problem).map_err(|e| format!("{name}: {e}"))
}

fn certify_all(tr: &Translation) -> Result<CertifyReport, String> {
    certify_named(&tr.assumption_polys(), &tr.assumption_names(), &tr.claim_polys(), &tr.order, &tr.options)
        .map_err(|e| e.to_string())
}

/// Every claim certified, each certificate passes the verifier and expands
/// to its claim; returns the term counts.
fn all_valid(tr: &Translation, report: &CertifyReport, integral: bool) -> Result<Vec<usize>, String> {
    let mut terms = Vec::new();
    for ((name, claim), outcome) in tr.claims.iter().zip(&report.claims) {
        let ClaimOutcome::Certified(c) = outcome else {
            return Err(format!("{name} not certified: {outcome:?}"));
        };
        if verify_certificate(c) != Verdict::Valid || &expand(c) != claim {
            return Err(format!("{name}: certificate does not verify"));
        }
        if integral && !c.integral {
            return Err(format!("{name}: certificate has non-integer cofactors"));
        }
        terms.push(c.term_count());
    }
    Ok(terms)
}

fn cli(args: &[&str]) -> (Status, String) {
    let config = RunConfig::try_parse_from(std::iter::once("opcert").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let status = run(&config, &mut out);
    (status, String::from_utf8(out).unwrap())
}

fn c1_werner_paper_certificate() -> Outcome {
    let path = fixture("werner_paper.cert");
    let file = CertificateFile::read(&path).map_err(|e| e.to_string())?;
    let transcribed: Vec<(&str, &str, &str)> =
        file.summands.iter().map(|s| (s.left.as_str(), s.assumption.as_str(), s.right.as_str())).collect();
    let expected = [("1", "f1", "b"), ("a", "f2", "1"), ("-a", "f3", "b"), ("a b b⁻ - a", "f6", "1")];
    if transcribed != expected {
        return Err(format!("certificate file does not hold f1 b + a f2 - a f3 b + (a b b⁻ - a) f6: {transcribed:?}"));
    }
    let (_, cert) = file.to_certificate().map_err(|e| e.to_string())?;
    if verify_certificate(&cert) != Verdict::Valid {
        return Err("verifier rejects the certificate".into());
    }
    let (status, out) = cli(&["check-cert", path.to_str().unwrap()]);
    if status != Status::Ok {
        return Err(format!("check-cert exit {}: {out}", status.code()));
    }
    Ok(format!("{} summands, {} terms, integral", cert.summands.len(), cert.term_count()))
}

fn c2_werner_certify() -> Outcome {
    let tr = load("werner.prob")?;
    let report = certify_all(&tr)?;
    all_valid(&tr, &report, true)?;
    let c = report.claims[0].certificate().unwrap();
    let used: BTreeSet<&str> = c.used_indices().into_iter().map(|k| c.names[k].as_str()).collect();
    let allowed: BTreeSet<&str> = ["f1", "f2", "f3", "f6"].into();
    if !used.is_subset(&allowed) {
        return Err(format!("uses {used:?}"));
    }
    Ok(format!("{} terms using {}", c.term_count(), used.into_iter().collect::<Vec<_>>().join(" ")))
}

fn c3_hartwig_v_to_i() -> Outcome {
    let tr = load("hartwig_v_to_i.prob")?;
    if tr.table.len() != 22 {
        return Err(format!("{} indeterminates", tr.table.len()));
    }
    let report = certify_all(&tr)?;
    let terms = all_valid(&tr, &report, true)?;
    Ok(format!(
        "22 indeterminates, {} polynomials, certificate {} terms, {} obstructions",
        tr.assumptions.len(),
        terms[0],
        report.stats.completion.obstructions_processed
    ))
}

fn c4_hartwig_i_to_v() -> Outcome {
    let tr = load("hartwig_i_to_v.prob")?;
    let report = certify_all(&tr)?;
    let terms = all_valid(&tr, &report, true)?;
    if terms.len() != 5 {
        return Err(format!("{} claims", terms.len()));
    }
    Ok(format!("5 integral certificates, terms {terms:?}"))
}

fn c5_thm2_3_workflow() -> Outcome {
    let tr = load("thm2_3_v_to_i.prob")?;
    let [step] = tr.workflow.as_slice() else {
        return Err("expected one workflow step".into());
    };
    let expected = parse("(1 - a b c c† b~ a†) a b c (a b c)*", &tr.table).map_err(|e| e.to_string())?;
    if step.step.witness != expected {
        return Err(format!("witness is {}", render(&step.step.witness, &tr.table)));
    }
    let StepOutcome::Applied { certificate, .. } = &step.outcome else {
        return Err(format!("witness not certified: {:?}", step.outcome));
    };
    if verify_certificate(certificate) != Verdict::Valid {
        return Err("witness certificate does not verify".into());
    }
    let report = certify_all(&tr)?;
    let terms = all_valid(&tr, &report, false)?;
    if terms.len() != 4 {
        return Err(format!("{} claims", terms.len()));
    }
    Ok(format!("witness {} terms; Penrose equations {terms:?} terms", certificate.term_count()))
}

fn c6_thm2_3_cancellability() -> Outcome {
    let tr = load("thm2_3_i_to_v.prob")?;
    let k = tr.claims.iter().position(|(n, _)| n == "cancel").ok_or("no claim named cancel")?;
    let z_m = parse("z a b c", &tr.table).map_err(|e| e.to_string())?;
    if tr.claims[k].1 != z_m {
        return Err("claim is not z m".into());
    }
    let report = certify_all(&tr)?;
    let terms = all_valid(&tr, &report, false)?;
    Ok(format!("z m certified with {} terms; all {} claims hold", terms[k], terms.len()))
}

fn run_matrix_fixture(name: &str) -> Result<MatrixReport, String> {
    let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
    let report = MatrixFixture::parse(&text).and_then(|f| f.run()).map_err(|e| e.to_string())?;
    match report.checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Err(format!("{what} fails")),
        None => Ok(report),
    }
}

fn c7_example_matrices() -> Outcome {
    let report = run_matrix_fixture("example2_1.mat")?;
    for needed in ["A† equals the stated matrix", "PQ = 0", "(ABC)† ≠ C†B†A†", "reversed: (ABC)† ≠ C†B†A†"] {
        if report.get(needed) != Some(true) {
            return Err(format!("missing check: {needed}"));
        }
    }
    Ok(format!("{} exact checks", report.checks.len()))
}

fn c8_projection_example() -> Outcome {
    let text = std::fs::read_to_string(fixture("example2_2.mat")).map_err(|e| e.to_string())?;
    let f = MatrixFixture::parse(&text).map_err(|e| e.to_string())?;
    let a = &f.matrices["A"];
    if &(a * a) != a || *a == opcert::matcheck::RatMatrix::identity(a.rows()) {
        return Err("A is not a projection different from the identity".into());
    }
    let report = run_matrix_fixture("example2_2.mat")?;
    Ok(format!("{} exact checks; (ii)-(v) hold, (i) fails", report.checks.len()))
}

fn c9_quivers() -> Outcome {
    let werner = load("werner.prob")?;
    if werner.quiver.vertices().len() != 3 || !werner.quiver_report.passed() {
        return Err("Werner fixture not compatible with its 3-vertex quiver".into());
    }
    let hartwig = load("hartwig_v_to_i.prob")?;
    let q = &hartwig.quiver;
    if q.vertices().len() != 4 || q.edges().len() != hartwig.table.len() || !hartwig.quiver_report.passed() {
        return Err(format!("Hartwig quiver: {} vertices, {} edges", q.vertices().len(), q.edges().len()));
    }
    let i = werner.table.lookup("i").unwrap();
    let mutated = werner.quiver.without_edge(i);
    let report = check_problem(&werner.assumptions, &werner.claims, &mutated, &werner.table);
    let Some(f) = report.failures.first() else {
        return Err("mutated quiver passes".into());
    };
    let Incompatibility::Unpathable(w) = &f.reason else {
        return Err(format!("unexpected reason {:?}", f.reason));
    };
    if !w.letters().contains(&i) {
        return Err("witness monomial does not use the removed edge".into());
    }
    Ok(format!("without edge i: {}: {}", f.name, f.reason.describe(&werner.table)))
}

fn c10_properties() -> Outcome {
    const N: u32 = 200;
    let werner = shipped("werner.prob");
    let converse = shipped("thm2_3_i_to_v.prob");
    let suites: Vec<(&str, Result<(), String>)> = vec![
        (
            "trace identity",
            run_cases(N, (prop::collection::vec(raw_poly(3, 1, 3, 3), 1..=3), raw_poly(3, 0, 5, 5)), |(g, p)| {
                check_trace_identity(&g, &p)
            }),
        ),
        (
            "solver output verifies",
            run_cases(
                N,
                (prop::collection::vec(raw_poly(3, 1, 3, 3), 1..=3), prop::collection::vec(raw_poly(3, 1, 4, 3), 1..=2)),
                |(g, c)| check_solver_outputs_verify(&g, &c),
            ),
        ),
        ("adjoint laws", run_cases(N, (raw_poly(4, 0, 3, 4), raw_poly(4, 0, 3, 4), coeff()), |(p, q, c)| check_adjoint_laws(&p, &q, c))),
        ("deglex axioms", run_cases(N, (ranking(), words5()), |(r, w)| check_deglex(&r, &w))),
        ("ideal members certified", run_cases(N, homogeneous_member(), |m| check_member_certified(&m))),
        (
            "realization soundness",
            run_cases(
                N,
                (1usize..=3, 1usize..=3, 0usize..=2, prop::collection::vec(-3i64..=3, 1..=12), prop::collection::vec(1usize..=2, 6)),
                |(m, n, extra, entries, dims)| {
                    check_werner_realization_zeroes_claim(&werner, m, n, extra, &entries)?;
                    check_realization_homomorphism(&werner, &dims, &entries)?;
                    check_realization_homomorphism(&converse, &dims, &entries)
                },
            ),
        ),
    ];
    let failed: Vec<String> = suites.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    if failed.is_empty() {
        Ok(format!("{} suites x {N} cases", suites.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("Werner certificate from the paper verifies", Duration::from_millis(100), c1_werner_paper_certificate),
        ("Werner certified without f4 f5 f7 f8", Duration::from_secs(1), c2_werner_certify),
        ("Hartwig (v) => (i)", Duration::from_secs(300), c3_hartwig_v_to_i),
        ("Hartwig (i) => (v)", Duration::from_secs(300), c4_hartwig_i_to_v),
        ("right *-cancellability workflow, (v) => (i)", Duration::from_secs(300), c5_thm2_3_workflow),
        ("right *-cancellability of m, (i) => (v)", Duration::from_secs(60), c6_thm2_3_cancellability),
        ("three-matrix counterexample", Duration::from_secs(1), c7_example_matrices),
        ("projection counterexample", Duration::from_secs(1), c8_projection_example),
        ("quiver compatibility", Duration::from_secs(1), c9_quivers),
        ("property suites", Duration::from_secs(60), c10_properties),
    ];
    let mut failures = 0;
    for (k, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget {budget:?}: {d}")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("{verdict} {:>2} {name} [{elapsed:.2?}] {detail}", k + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
