use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{apply_relations, GaussianRational, Monomial, Relations, ScalarPoly, Var};

/// Exact boundary density: a linear combination of monomials in `π`, `Ω`, `h'(0)`,
/// the conformal-factor fields and `g(θ', dx_n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryDensity(ScalarPoly);

impl BoundaryDensity {
    pub fn zero() -> Self {
        Self(ScalarPoly::zero())
    }

    pub fn from_poly(p: ScalarPoly) -> Self {
        Self(p)
    }

    pub fn as_poly(&self) -> &ScalarPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.sub(&o.0))
    }

    /// Coefficient of a monomial given by its symbol names.
    pub fn coefficient(&self, names: &[&str]) -> Result<GaussianRational> {
        let vars = names
            .iter()
            .map(|s| s.parse::<Var>())
            .collect::<Result<Vec<_>>>()?;
        Ok(self.0.coefficient(&Monomial::from_vars(vars)))
    }

    /// Sum of the coefficients of all monomials containing `v`, with `v` and the
    /// formal constants `π`, `Ω` removed. Returns the remaining polynomial.
    pub fn part_with(&self, v: Var) -> ScalarPoly {
        self.0
            .filter(|m| m.exponent(v) > 0)
            .map_monomials(|m| {
                let r = m
                    .with_exponent(v, m.exponent(v) - 1)
                    .with_exponent(Var::Pi, 0)
                    .with_exponent(Var::Omega, 0);
                Some(ScalarPoly::term(r, GaussianRational::one()))
            })
    }

    /// Rewrites `f ∂_n f⁻¹` as `−f⁻¹ ∂_n f`.
    pub fn simplified(&self, n: usize) -> Self {
        Self(apply_relations(&self.0, &Relations::plain().with_analytic(true), n))
    }

    /// Normal form used for comparisons.
    pub fn normalized(&self, n: usize) -> Self {
        Self(apply_relations(&self.0, &Relations::plain(), n))
    }

    /// Checks that every monomial is linear in `π` and in `Ω`.
    pub fn check_shape(&self) -> Result<()> {
        for (m, _) in self.0.terms() {
            if m.exponent(Var::Pi) != 1 || m.exponent(Var::Omega) != 1 {
                return Err(Error::Invariant(format!("density monomial {m} is not linear in PI and OMEGA")));
            }
        }
        Ok(())
    }

    pub fn to_terms(&self) -> Vec<DensityTerm> {
        self.0
            .terms()
            .map(|(m, c)| DensityTerm {
                coeff_re: GaussianRational::rational_string(c.re()),
                coeff_im: GaussianRational::rational_string(c.im()),
                monomial: m.to_names(),
            })
            .collect()
    }

    pub fn from_terms(terms: &[DensityTerm]) -> Result<Self> {
        let mut p = ScalarPoly::zero();
        for t in terms {
            let c = GaussianRational::from_strs(&t.coeff_re, &t.coeff_im)?;
            let vars = t
                .monomial
                .iter()
                .map(|s| s.parse::<Var>())
                .collect::<Result<Vec<_>>>()?;
            p.add_term(Monomial::from_vars(vars), &c);
        }
        Ok(Self(p))
    }
}

/// Serialized form of one density term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityTerm {
    pub coeff_re: String,
    pub coeff_im: String,
    pub monomial: Vec<String>,
}

impl Serialize for BoundaryDensity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryDensity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<DensityTerm>::deserialize(d)?;
        Self::from_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BoundaryDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_round_trip() {
        let p = ScalarPoly::term(
            Monomial::from_vars([Var::Pi, Var::Omega, Var::H1]),
            GaussianRational::complex(-9, 2, 3, 7),
        );
        let d = BoundaryDensity::from_poly(p);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"-9/2\""));
        let back: BoundaryDensity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn simplification_rewrites_reciprocal_derivative() {
        let d = BoundaryDensity::from_poly(ScalarPoly::term(
            Monomial::from_vars([Var::Pi, Var::Omega, Var::F, Var::DnFInv]),
            GaussianRational::one(),
        ));
        let s = d.simplified(4);
        assert_eq!(s.coefficient(&["PI", "OMEGA", "FINV", "DNF"]).unwrap(), -GaussianRational::one());
    }

    #[test]
    fn shape_check() {
        let bad = BoundaryDensity::from_poly(ScalarPoly::var(Var::H1));
        assert!(bad.check_shape().is_err());
        assert!(BoundaryDensity::zero().check_shape().is_ok());
    }
}
