//! Acceptance run: one pass/fail line per criterion, details above the summary.
//! Every comparison is exact; the only tolerances are the runtime budgets below
//! and the numeric oracles of the property suites.

mod common;

use std::time::{Duration, Instant};

use kkw_engine::kkw::identities::{self, IdentityCheck, IdentityGroup};
use kkw_engine::kkw::{curvature_coefficient, enumerate_cases, evaluate_cases, sum_outcomes, Execution};
use kkw_engine::report::{run_verification, total_id, VerificationReport, VerifyOptions};
use kkw_engine::scalars::GaussianRational;

const TRACE_BUDGET: Duration = Duration::from_secs(1);
const PROJECTION_BUDGET: Duration = Duration::from_secs(1);
const LEMMA_BUDGET: Duration = Duration::from_secs(10);
const LOW_DIMENSION_BUDGET: Duration = Duration::from_secs(10);
const HIGH_DIMENSION_BUDGET: Duration = Duration::from_secs(300);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);

struct Verdict {
    title: &'static str,
    passed: bool,
    summary: String,
    elapsed: Duration,
}

fn timed<F: FnOnce(&mut Vec<String>) -> (bool, String)>(
    title: &'static str,
    budget: Duration,
    run: F,
) -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let (ok, summary) = run(&mut notes);
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    if !in_budget {
        notes.push(format!("over budget: {elapsed:.2?} > {budget:?}"));
    }
    println!("== {title}");
    for n in &notes {
        println!("   {n}");
    }
    Verdict {
        title,
        passed: ok && in_budget,
        summary,
        elapsed,
    }
}

fn tally(checks: &[IdentityCheck], notes: &mut Vec<String>) -> (bool, String) {
    for c in checks.iter().filter(|c| !c.passed) {
        notes.push(format!("{c}"));
    }
    let ok = checks.iter().filter(|c| c.passed).count();
    (ok == checks.len(), format!("{ok}/{} exact", checks.len()))
}

fn collect(f: fn(usize) -> kkw_engine::Result<Vec<IdentityCheck>>) -> kkw_engine::Result<Vec<IdentityCheck>> {
    let mut v = f(4)?;
    v.extend(f(6)?);
    Ok(v)
}

fn families(f: fn(usize) -> kkw_engine::Result<Vec<IdentityCheck>>, notes: &mut Vec<String>) -> (bool, String) {
    match collect(f) {
        Ok(checks) => tally(&checks, notes),
        Err(e) => (false, format!("error: {e}")),
    }
}

fn verify(n: usize) -> kkw_engine::Result<VerificationReport> {
    run_verification(&VerifyOptions::new(n))
}

fn list_mismatches(r: &VerificationReport, notes: &mut Vec<String>) {
    for d in r.mismatches() {
        notes.push(format!("{} against {}", d.id, d.equation));
        for m in &d.deltas {
            notes.push(format!(
                "  {}: computed {}, expected {}",
                m.monomial.join("*"),
                m.computed,
                m.expected
            ));
        }
    }
}

fn low_dimension(notes: &mut Vec<String>) -> (bool, String) {
    let r = match verify(4) {
        Ok(r) => r,
        Err(e) => return (false, format!("error: {e}")),
    };
    list_mismatches(&r, notes);
    let total = r.discrepancies.iter().find(|d| d.id == total_id(4));
    let curvature_free = total.is_some_and(|d| curvature_coefficient(&d.computed).is_zero());
    if !curvature_free {
        notes.push("total carries an h'(0) term".into());
    }
    let matched = r.discrepancies.iter().filter(|d| d.matched).count();
    (
        matched == r.discrepancies.len() && curvature_free,
        format!("{matched}/{} densities exact, total h'(0)-free: {curvature_free}", r.discrepancies.len()),
    )
}

fn high_dimension(notes: &mut Vec<String>) -> (bool, String) {
    let r = match verify(6) {
        Ok(r) => r,
        Err(e) => return (false, format!("error: {e}")),
    };
    list_mismatches(&r, notes);
    let gating: Vec<_> = r
        .identities
        .iter()
        .filter(|c| matches!(c.check.group, IdentityGroup::Integrand | IdentityGroup::Consistency))
        .map(|c| c.check.clone())
        .collect();
    let (ok, counted) = tally(&gating, notes);
    let want = GaussianRational::complex(65, 8, -41, 8);
    let got = r
        .discrepancies
        .iter()
        .find(|d| d.id == total_id(6))
        .map(|d| curvature_coefficient(&d.computed))
        .unwrap_or_default();
    let curvature_ok = got == want;
    notes.push(format!("total h'(0) coefficient: computed {got}, required {want}"));
    let matched = r.discrepancies.iter().filter(|d| d.matched).count();
    (
        ok && curvature_ok,
        format!(
            "integrand and consistency checks {counted}; total h'(0) = {got} (required {want}); \
             {matched}/{} densities match the record",
            r.discrepancies.len()
        ),
    )
}

fn properties(notes: &mut Vec<String>) -> (bool, String) {
    let suites = common::suites();
    let mut ok = 0;
    for (name, run) in &suites {
        match run() {
            Ok(()) => ok += 1,
            Err(e) => notes.push(format!("{name}: {e}")),
        }
    }
    (ok == suites.len(), format!("{ok}/{} suites", suites.len()))
}

fn determinism(notes: &mut Vec<String>) -> (bool, String) {
    let mut ok = true;
    for n in [4, 6] {
        let run = || -> kkw_engine::Result<bool> {
            let specs = enumerate_cases(n)?;
            let seq = evaluate_cases(&specs, n, Execution::Sequential)?;
            let par = evaluate_cases(&specs, n, Execution::Parallel)?;
            let same = seq.len() == par.len()
                && seq.iter().zip(&par).all(|(a, b)| {
                    a.spec.id == b.spec.id
                        && serde_json::to_string(&a.density).ok() == serde_json::to_string(&b.density).ok()
                });
            Ok(same && sum_outcomes(&seq, n) == sum_outcomes(&par, n))
        };
        match run() {
            Ok(true) => {}
            Ok(false) => {
                ok = false;
                notes.push(format!("n={n}: parallel and sequential densities differ"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    let mut opts = VerifyOptions::new(4);
    opts.execution = Execution::Sequential;
    let round_trip = run_verification(&opts)
        .and_then(|r| Ok((VerificationReport::from_json(&r.to_json()?)?, r)))
        .map(|(back, r)| back == r);
    let rt = matches!(round_trip, Ok(true));
    if !rt {
        notes.push(format!("report round trip failed: {round_trip:?}"));
    }
    (ok && rt, format!("parallel = sequential: {ok}, report round trip: {rt}"))
}

fn main() {
    let lemma_checks = |n: usize| -> kkw_engine::Result<Vec<IdentityCheck>> {
        Ok(identities::lemmas(n)?
            .into_iter()
            .filter(|c| c.group == IdentityGroup::Lemma)
            .collect())
    };
    let verdicts = vec![
        timed("1 trace tables", TRACE_BUDGET, |notes| families(identities::trace_table, notes)),
        timed("2 projection closed forms", PROJECTION_BUDGET, |notes| {
            families(identities::projections, notes)
        }),
        timed("3 lemma cross-checks", LEMMA_BUDGET, |notes| families(lemma_checks, notes)),
        timed("4 dimension four cases", LOW_DIMENSION_BUDGET, low_dimension),
        timed("5 dimension six cases", HIGH_DIMENSION_BUDGET, high_dimension),
        timed("6 property suites", PROPERTY_BUDGET, properties),
        timed("7 determinism and parallelism", HIGH_DIMENSION_BUDGET, determinism),
    ];

    println!();
    for v in &verdicts {
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] criterion {}: {} ({:.2?})", v.title, v.summary, v.elapsed);
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    if failed > 0 {
        println!("{failed} of {} criteria failed", verdicts.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", verdicts.len());
}
