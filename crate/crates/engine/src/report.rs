//! Verification runs and their reports.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{
    default_fixture_dir, densities_file, load_citations, load_fixtures, CitationTable, FixtureSet,
    CLOSED_FORMS_FILE,
};
use crate::kkw::identities::{self, IdentityCheck, IdentityGroup};
use crate::kkw::{
    compare_expected, density_invariants, enumerate_cases, evaluate_cases, sum_outcomes, BoundaryDensity,
    CaseOutcome, DiscrepancyReport, Execution,
};

/// Fixture id of the assembled boundary term.
pub fn total_id(n: usize) -> &'static str {
    if n == 6 {
        "Psi"
    } else {
        "Phi"
    }
}

/// What a verification run covers.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub dimension: usize,
    /// Restricts the run to one case; identity checks are skipped.
    pub case: Option<String>,
    /// Rewrites `f ∂_n f⁻¹` as `−f⁻¹ ∂_n f` on both sides before comparing.
    pub simplify: bool,
    pub fixture_dir: PathBuf,
    pub execution: Execution,
}

impl VerifyOptions {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            case: None,
            simplify: false,
            fixture_dir: default_fixture_dir(),
            execution: Execution::Parallel,
        }
    }
}

/// An identity check with its citation, when one is recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedCheck {
    #[serde(flatten)]
    pub check: IdentityCheck,
    pub equation: Option<String>,
    pub quote: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTiming {
    pub id: String,
    pub micros: u64,
}

/// Wall-clock figures; excluded from determinism comparisons.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub cases: Vec<CaseTiming>,
    pub identities_micros: u64,
    pub total_micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub engine_version: String,
    pub dimension: usize,
    pub scope: String,
    pub simplified: bool,
    pub discrepancies: Vec<DiscrepancyReport>,
    pub identities: Vec<CitedCheck>,
    pub passed: bool,
    pub timing: Timing,
}

/// Output format of [`VerificationReport::emit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

fn micros(d: std::time::Duration) -> u64 {
    u64::try_from(d.as_micros()).unwrap_or(u64::MAX)
}

fn cite(checks: Vec<IdentityCheck>, table: &CitationTable) -> Vec<CitedCheck> {
    checks
        .into_iter()
        .map(|check| {
            let c = table.get(&check.id, check.dimension);
            CitedCheck {
                equation: c.map(|c| c.equation.clone()),
                quote: c.map(|c| c.quote.clone()),
                check,
            }
        })
        .collect()
}

/// The recorded case values must add up to the recorded total.
pub fn fixture_invariants(n: usize, fixtures: &FixtureSet) -> IdentityCheck {
    let id = "consistency.recorded-cases-sum-to-total";
    let total = fixtures.get(total_id(n));
    let cases = fixtures
        .entries
        .iter()
        .filter(|f| f.citation.id != total_id(n))
        .fold(BoundaryDensity::zero(), |acc, f| acc.add(&f.density));
    match total {
        Some(t) => {
            let diff = cases.sub(&t.density).normalized(n);
            IdentityCheck::new(id, IdentityGroup::Consistency, n, diff.is_zero(), format!("difference {diff}"))
        }
        None => IdentityCheck::new(id, IdentityGroup::Consistency, n, false, "no recorded total".into()),
    }
}

fn compare_with(
    fixtures: &FixtureSet,
    id: &str,
    computed: &BoundaryDensity,
    n: usize,
    simplify: bool,
) -> Result<DiscrepancyReport> {
    let f = fixtures.get(id).ok_or_else(|| Error::Fixture {
        entry: id.to_string(),
        reason: format!("no expected density recorded for dimension {n}"),
    })?;
    let prep = |d: &BoundaryDensity| if simplify { d.simplified(n) } else { d.clone() };
    Ok(compare_expected(
        id,
        &f.citation.equation,
        &f.citation.quote,
        &prep(computed),
        &prep(&f.density),
        n,
    ))
}

/// Evaluates the requested cases, compares them with the fixtures and, for a
/// full run, checks every identity family (`run_verify`).
pub fn run_verification(opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = opts.dimension;
    let mut specs = enumerate_cases(n)?;
    let fixtures = load_fixtures(&opts.fixture_dir.join(densities_file(n)))?;
    if let Some(id) = &opts.case {
        specs.retain(|s| &s.id == id);
        if specs.is_empty() {
            return Err(Error::InvalidCase(format!("no case `{id}` in dimension {n}")));
        }
    }
    let outcomes: Vec<CaseOutcome> = evaluate_cases(&specs, n, opts.execution)?;

    let mut discrepancies = Vec::new();
    for o in &outcomes {
        discrepancies.push(compare_with(&fixtures, &o.spec.id, &o.density, n, opts.simplify)?);
    }

    let mut identities = Vec::new();
    let mut identities_micros = 0;
    if opts.case.is_none() {
        discrepancies.push(compare_with(&fixtures, total_id(n), &sum_outcomes(&outcomes, n), n, opts.simplify)?);
        let table = load_citations(&opts.fixture_dir.join(CLOSED_FORMS_FILE))?;
        let t = Instant::now();
        let mut checks = identities::all(n)?;
        checks.extend(density_invariants(n, &outcomes));
        checks.push(fixture_invariants(n, &fixtures));
        identities_micros = micros(t.elapsed());
        identities = cite(checks, &table);
    }

    let passed = discrepancies.iter().all(|d| d.matched) && identities.iter().all(|c| c.check.passed);
    Ok(VerificationReport {
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        dimension: n,
        scope: opts.case.as_ref().map_or_else(|| "all-cases".to_string(), |c| format!("case {c}")),
        simplified: opts.simplify,
        discrepancies,
        identities,
        passed,
        timing: Timing {
            cases: outcomes
                .iter()
                .map(|o| CaseTiming {
                    id: o.spec.id.clone(),
                    micros: micros(o.elapsed),
                })
                .collect(),
            identities_micros,
            total_micros: micros(start.elapsed()),
        },
    })
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &DiscrepancyReport> {
        self.discrepancies.iter().filter(|d| !d.matched)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CitedCheck> {
        self.identities.iter().filter(|c| !c.check.passed)
    }

    /// The report without its timing block, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Human-readable form with citations; the last line states the verdict.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let on = if self.simplified { "on" } else { "off" };
        let _ = writeln!(
            s,
            "boundary-term verification, engine {}, dimension {}, {}, simplify {on}",
            self.engine_version, self.dimension, self.scope
        );
        if !self.identities.is_empty() {
            let _ = writeln!(s, "\nidentities");
            for c in &self.identities {
                let mark = if c.check.passed { "ok  " } else { "FAIL" };
                let eq = c.equation.as_deref().map(|e| format!("  {e}")).unwrap_or_default();
                let _ = writeln!(s, "  [{mark}] {}{eq}", c.check.id);
                if !c.check.passed {
                    if let Some(q) = &c.quote {
                        let _ = writeln!(s, "         expected: {q}");
                    }
                    if !c.check.detail.is_empty() {
                        let _ = writeln!(s, "         {}", c.check.detail);
                    }
                }
            }
        }
        let _ = writeln!(s, "\ndensities");
        for d in &self.discrepancies {
            let mark = if d.matched { "ok  " } else { "DIFF" };
            let _ = writeln!(s, "  [{mark}] {}  {}", d.id, d.equation);
            let _ = writeln!(s, "         computed: {}", d.computed);
            if !d.matched {
                let _ = writeln!(s, "         expected: {}", d.expected);
                let _ = writeln!(s, "         quote:    {}", d.quote);
                for m in &d.deltas {
                    let _ = writeln!(
                        s,
                        "         {}: computed {}, expected {}, difference {}",
                        m.monomial.join("*"),
                        m.computed,
                        m.expected,
                        m.delta
                    );
                }
            }
        }
        let _ = writeln!(s, "\ntiming");
        for c in &self.timing.cases {
            let _ = writeln!(s, "  {:<6} {:>10.3} ms", c.id, c.micros as f64 / 1e3);
        }
        if self.timing.identities_micros > 0 {
            let _ = writeln!(s, "  {:<6} {:>10.3} ms", "checks", self.timing.identities_micros as f64 / 1e3);
        }
        let _ = writeln!(s, "  {:<6} {:>10.3} ms", "total", self.timing.total_micros as f64 / 1e3);
        if self.passed {
            let _ = writeln!(s, "\nALL IDENTITIES VERIFIED");
        } else {
            let _ = writeln!(
                s,
                "\nVERIFICATION FAILED: {} density mismatch(es), {} failed check(s)",
                self.mismatches().count(),
                self.failed_checks().count()
            );
        }
        s
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Text => Ok(self.to_text()),
            ReportFormat::Json => self.to_json(),
        }
    }

    /// Writes the report to a file (`emit_report`).
    pub fn emit(&self, path: &Path, format: ReportFormat) -> Result<()> {
        fs::write(path, self.render(format)?)?;
        Ok(())
    }
}
