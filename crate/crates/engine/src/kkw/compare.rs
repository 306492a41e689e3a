use serde::{Deserialize, Serialize};

use crate::scalars::GaussianRational;

use super::density::BoundaryDensity;

/// Coefficient difference on one monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDelta {
    pub monomial: Vec<String>,
    pub computed: String,
    pub expected: String,
    pub delta: String,
}

/// Outcome of comparing a computed density with its recorded expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub id: String,
    pub equation: String,
    pub quote: String,
    pub computed: BoundaryDensity,
    pub expected: BoundaryDensity,
    pub difference: BoundaryDensity,
    pub matched: bool,
    pub deltas: Vec<MonomialDelta>,
}

/// Diffs two densities after normalization (`compare_expected`). Never fails on
/// a mismatch; the report carries both values and the per-monomial delta.
pub fn compare_expected(
    id: &str,
    equation: &str,
    quote: &str,
    computed: &BoundaryDensity,
    expected: &BoundaryDensity,
    n: usize,
) -> DiscrepancyReport {
    let computed = computed.normalized(n);
    let expected = expected.normalized(n);
    let difference = computed.sub(&expected);
    let deltas = difference
        .as_poly()
        .terms()
        .map(|(m, d)| MonomialDelta {
            monomial: m.to_names(),
            computed: computed.as_poly().coefficient(m).to_string(),
            expected: expected.as_poly().coefficient(m).to_string(),
            delta: d.to_string(),
        })
        .collect();
    DiscrepancyReport {
        id: id.to_string(),
        equation: equation.to_string(),
        quote: quote.to_string(),
        matched: difference.is_zero(),
        computed,
        expected,
        difference,
        deltas,
    }
}

impl DiscrepancyReport {
    /// Coefficient delta on a monomial, zero when it matches.
    pub fn delta_of(&self, names: &[&str]) -> GaussianRational {
        self.difference.coefficient(names).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Monomial, ScalarPoly, Var};

    fn hpo(c: GaussianRational) -> BoundaryDensity {
        BoundaryDensity::from_poly(ScalarPoly::term(
            Monomial::from_vars([Var::Pi, Var::Omega, Var::H1]),
            c,
        ))
    }

    #[test]
    fn equal_densities_match() {
        let a = hpo(GaussianRational::ratio(9, 2));
        let r = compare_expected("b", "", "", &a, &a, 4);
        assert!(r.matched);
        assert!(r.difference.is_zero());
        assert!(r.deltas.is_empty());
    }

    #[test]
    fn mismatch_reports_delta() {
        let r = compare_expected(
            "b",
            "",
            "",
            &hpo(GaussianRational::ratio(9, 2)),
            &hpo(GaussianRational::ratio(7, 2)),
            4,
        );
        assert!(!r.matched);
        assert_eq!(r.delta_of(&["PI", "OMEGA", "H1"]), GaussianRational::one());
        assert_eq!(r.deltas.len(), 1);
        assert_eq!(r.deltas[0].delta, "1");
    }
}
