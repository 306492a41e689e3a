//! Internal-consistency checks on computed case densities.

use crate::scalars::GaussianRational;

use super::density::BoundaryDensity;
use super::engine::{sum_outcomes, CaseOutcome};
use super::identities::{IdentityCheck, IdentityGroup};

const CURVATURE: [&str; 3] = ["PI", "OMEGA", "H1"];
const NORMAL_TORSION: [&str; 3] = ["PI", "OMEGA", "GTHP_N"];

/// Coefficient of `π h'(0) Ω`.
pub fn curvature_coefficient(d: &BoundaryDensity) -> GaussianRational {
    d.coefficient(&CURVATURE).unwrap_or_default()
}

/// Coefficient of `π g(θ', dx_n) Ω`.
pub fn normal_torsion_coefficient(d: &BoundaryDensity) -> GaussianRational {
    d.coefficient(&NORMAL_TORSION).unwrap_or_default()
}

fn density<'a>(outcomes: &'a [CaseOutcome], id: &str) -> Option<&'a BoundaryDensity> {
    outcomes.iter().find(|o| o.spec.id == id).map(|o| &o.density)
}

fn check(id: &str, n: usize, passed: bool, detail: String) -> IdentityCheck {
    IdentityCheck::new(id, IdentityGroup::Consistency, n, passed, detail)
}

fn cancels(id: &str, n: usize, outcomes: &[CaseOutcome], a: &str, b: &str) -> IdentityCheck {
    match (density(outcomes, a), density(outcomes, b)) {
        (Some(x), Some(y)) => {
            let s = curvature_coefficient(x) + curvature_coefficient(y);
            check(id, n, s.is_zero(), format!("h'(0) coefficients sum to {s}"))
        }
        _ => check(id, n, false, format!("cases {a} and {b} not evaluated")),
    }
}

/// Consistency of the case densities of a full run. Outcomes must cover every
/// enumerated case.
pub fn density_invariants(n: usize, outcomes: &[CaseOutcome]) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let vanishing = density(outcomes, "a-I").map(BoundaryDensity::is_zero).unwrap_or(false);
    out.push(check("consistency.tangential-case-vanishes", n, vanishing, String::new()));
    let total = sum_outcomes(outcomes, n);
    if n == 4 {
        out.push(cancels("consistency.curvature-cancels-normal-derivative-cases", n, outcomes, "a-II", "a-III"));
        out.push(cancels("consistency.curvature-cancels-lower-order-cases", n, outcomes, "b", "c"));
        let h = curvature_coefficient(&total);
        out.push(check(
            "consistency.total-curvature-free",
            n,
            h.is_zero(),
            format!("total h'(0) coefficient {h}"),
        ));
        let four = GaussianRational::from_int(-4);
        let tb = density(outcomes, "b").map(normal_torsion_coefficient);
        let tc = density(outcomes, "c").map(normal_torsion_coefficient);
        out.push(check(
            "consistency.torsion-split-evenly",
            n,
            tb.as_ref() == Some(&four) && tc.as_ref() == Some(&four),
            format!("g(θ', dx_n) coefficients {tb:?} and {tc:?}"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Monomial, ScalarPoly, Var};

    #[test]
    fn coefficients_read_back() {
        let d = BoundaryDensity::from_poly(
            ScalarPoly::term(
                Monomial::from_vars([Var::Pi, Var::Omega, Var::H1]),
                GaussianRational::ratio(3, 2),
            )
            .add(&ScalarPoly::term(
                Monomial::from_vars([Var::Pi, Var::Omega, Var::GThpN]),
                GaussianRational::from_int(-4),
            )),
        );
        assert_eq!(curvature_coefficient(&d), GaussianRational::ratio(3, 2));
        assert_eq!(normal_torsion_coefficient(&d), GaussianRational::from_int(-4));
    }

    #[test]
    fn missing_cases_fail() {
        let checks = density_invariants(4, &[]);
        assert!(checks.iter().any(|c| !c.passed));
    }
}
