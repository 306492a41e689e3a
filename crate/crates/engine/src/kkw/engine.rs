use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::integrate::{sphere_integrate, XiRational};
use crate::scalars::{apply_relations, Relations};
use crate::symbols::{left_factor, right_factor, BoundarySymbol, GradedSymbol};

use super::cases::{enumerate_cases, CaseSpec};
use super::density::BoundaryDensity;

/// Environment variable capping the number of worker threads for case fan-out.
pub const THREADS_ENV: &str = "KKW_THREADS";

/// The two symbol factors of the boundary pairing in one dimension.
#[derive(Debug)]
pub struct PairingFactors {
    pub left: GradedSymbol,
    pub right: GradedSymbol,
}

fn cache() -> &'static Mutex<BTreeMap<usize, Arc<PairingFactors>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<PairingFactors>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Symbols of the left and right factors, computed once per dimension.
pub fn pairing_factors(n: usize) -> Result<Arc<PairingFactors>> {
    if n != 4 && n != 6 {
        return Err(Error::UnsupportedDimension(n));
    }
    // holding the lock while computing keeps concurrent callers from duplicating work
    let mut guard = cache().lock().map_err(|_| Error::Invariant("factor cache poisoned".into()))?;
    if let Some(f) = guard.get(&n) {
        return Ok(f.clone());
    }
    let f = Arc::new(PairingFactors {
        left: left_factor(n)?,
        right: right_factor(n)?,
    });
    guard.insert(n, f.clone());
    Ok(f)
}

/// Left factor after the derivatives and the projection of a case, for one
/// tangential direction (`None` when `|α| = 0`).
pub fn left_operand(spec: &CaseSpec, n: usize, dir: Option<usize>) -> Result<BoundarySymbol> {
    let f = pairing_factors(n)?;
    let mut a = f.left.require(spec.r)?.clone();
    for _ in 0..spec.j {
        a = a.d_xn()?;
    }
    if let Some(i) = dir {
        a = a.d_xi(i)?;
    }
    let mut a = a.to_sphere()?.pi_plus()?;
    for _ in 0..spec.k {
        a = a.d_xi(n)?;
    }
    Ok(a)
}

/// Right factor after the derivatives of a case.
pub fn right_operand(spec: &CaseSpec, n: usize, dir: Option<usize>) -> Result<BoundarySymbol> {
    let f = pairing_factors(n)?;
    let mut b = f.right.require(spec.l)?.clone();
    if let Some(i) = dir {
        b = b.d_x_tangential(i)?;
    }
    for _ in 0..spec.k {
        b = b.d_xn()?;
    }
    let mut b = b.to_sphere()?;
    for _ in 0..=spec.j {
        b = b.d_xi(n)?;
    }
    Ok(b)
}

fn directions(spec: &CaseSpec, n: usize) -> Vec<Option<usize>> {
    if spec.alpha == 0 {
        vec![None]
    } else {
        (1..n).map(Some).collect()
    }
}

/// Trace integrand of a case before `ξ_n` and sphere integration, without the
/// prefactor.
pub fn case_integrand(spec: &CaseSpec, n: usize) -> Result<XiRational> {
    let mut acc = XiRational::zero(n);
    for dir in directions(spec, n) {
        let a = left_operand(spec, n, dir)?;
        let b = right_operand(spec, n, dir)?;
        acc = acc.add(&a.trace_with(&b)?);
    }
    Ok(acc)
}

/// Integrates a trace integrand over `ξ_n` and the unit tangential sphere.
pub fn integrate_case(integrand: &XiRational, spec: &CaseSpec, n: usize) -> Result<BoundaryDensity> {
    let inner = integrand.integrate_xi_n()?;
    let outer = sphere_integrate(&apply_relations(&inner, &Relations::sphere(n), n), n)?;
    let scaled = outer.scale(&spec.prefactor);
    let density = BoundaryDensity::from_poly(apply_relations(&scaled, &Relations::plain(), n));
    density.check_shape()?;
    Ok(density)
}

/// Exact density of one case (`compute_case`).
pub fn compute_case(spec: &CaseSpec, n: usize) -> Result<BoundaryDensity> {
    integrate_case(&case_integrand(spec, n)?, spec, n)
}

/// Result of one case evaluation with its wall-clock time.
#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub spec: CaseSpec,
    pub density: BoundaryDensity,
    pub elapsed: Duration,
}

fn timed(spec: &CaseSpec, n: usize) -> Result<CaseOutcome> {
    let start = Instant::now();
    let density = compute_case(spec, n)?;
    Ok(CaseOutcome {
        spec: spec.clone(),
        density,
        elapsed: start.elapsed(),
    })
}

/// How independent cases are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

/// Worker cap read from [`THREADS_ENV`]; `None` leaves the choice to rayon.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Evaluates the given cases, returning outcomes in input order.
pub fn evaluate_cases(specs: &[CaseSpec], n: usize, mode: Execution) -> Result<Vec<CaseOutcome>> {
    // warm the cache so every worker starts from the same shared symbols
    pairing_factors(n)?;
    match mode {
        Execution::Sequential => specs.iter().map(|s| timed(s, n)).collect(),
        Execution::Parallel => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(t) = thread_cap() {
                builder = builder.num_threads(t);
            }
            let pool = builder
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            pool.install(|| specs.par_iter().map(|s| timed(s, n)).collect())
        }
    }
}

/// Sum of all case densities in the canonical case order.
pub fn sum_outcomes(outcomes: &[CaseOutcome], n: usize) -> BoundaryDensity {
    outcomes
        .iter()
        .fold(BoundaryDensity::zero(), |acc, o| acc.add(&o.density))
        .normalized(n)
}

/// Exact boundary term: the sum over all enumerated cases
/// (`assemble_boundary_term`).
pub fn assemble_boundary_term(n: usize, mode: Execution) -> Result<BoundaryDensity> {
    let specs = enumerate_cases(n)?;
    Ok(sum_outcomes(&evaluate_cases(&specs, n, mode)?, n))
}
