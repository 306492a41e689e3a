//! Residue integration in the normal covariable and exact moments over the unit
//! tangential sphere.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalars::{apply_relations, GaussianRational, Monomial, Relations, ScalarPoly, Var};
use crate::symbols::laurent::{laurent_at_i, pole_product};

/// Scalar rational function `Σ N_{a,b}(ξ) / ((ξ_n − i)^a (ξ_n + i)^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiRational {
    n: usize,
    terms: BTreeMap<(u32, u32), ScalarPoly>,
}

impl XiRational {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A single fraction `numerator / ((ξ_n − i)^a (ξ_n + i)^b)`.
    pub fn fraction(n: usize, numerator: ScalarPoly, a: u32, b: u32) -> Self {
        let mut r = Self::zero(n);
        r.add_term(a, b, &numerator);
        r
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn normal_var(&self) -> Var {
        Var::Xi(self.n as u8)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: u32, b: u32, numerator: &ScalarPoly) {
        if numerator.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        slot.add_assign(numerator);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), p) in &o.terms {
            out.add_term(*a, *b, p);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), p) in &self.terms {
            out.add_term(*a, *b, &p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, q: &ScalarPoly) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), p) in &self.terms {
            out.add_term(*a, *b, &p.mul(q));
        }
        out
    }

    /// Common denominator `(a, b)` and numerator, normalized with `rel`.
    pub fn consolidated(&self, rel: &Relations) -> (u32, u32, ScalarPoly) {
        let xn = self.normal_var();
        let a = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut num = ScalarPoly::zero();
        for ((ta, tb), p) in &self.terms {
            num.add_assign(&p.mul(&pole_product(xn, a - ta, b - tb)));
        }
        (a, b, apply_relations(&num, rel, self.n))
    }

    /// Exact zero test under the sphere relations (plus `analytic` if requested).
    pub fn is_zero(&self, analytic: bool) -> bool {
        let rel = Relations::sphere(self.n).with_analytic(analytic);
        self.consolidated(&rel).2.is_zero()
    }

    fn decaying_terms(&self) -> Result<Vec<(u32, u32, ScalarPoly)>> {
        let xn = self.normal_var();
        let ok = |a: u32, b: u32, p: &ScalarPoly| u32::from(p.degree_in(xn)) + 2 <= a + b;
        if self.terms.iter().all(|((a, b), p)| ok(*a, *b, p)) {
            return Ok(self
                .terms
                .iter()
                .map(|((a, b), p)| (*a, *b, p.clone()))
                .collect());
        }
        let (a, b, p) = self.consolidated(&Relations::plain());
        if p.is_zero() {
            return Ok(Vec::new());
        }
        if !ok(a, b, &p) {
            return Err(Error::NonDecaying(format!(
                "numerator degree {} over denominator degree {}",
                p.degree_in(xn),
                a + b
            )));
        }
        Ok(vec![(a, b, p)])
    }

    /// Sum of residues at `ξ_n = +i`.
    pub fn residue_upper(&self) -> Result<ScalarPoly> {
        let xn = self.normal_var();
        let mut acc = ScalarPoly::zero();
        for (a, b, p) in self.decaying_terms()? {
            if a == 0 {
                continue;
            }
            let g = laurent_at_i(&p, xn, a, b);
            acc.add_assign(&g[(a - 1) as usize]);
        }
        Ok(acc)
    }

    /// Sum of residues at `ξ_n = −i`, via the reflection `ξ_n → −ξ_n`.
    pub fn residue_lower(&self) -> Result<ScalarPoly> {
        let xn = self.normal_var();
        let flip = ScalarPoly::var(xn).neg();
        let mut reflected = Self::zero(self.n);
        for (a, b, p) in self.decaying_terms()? {
            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
            let q = p.substitute(xn, &flip).scale(&GaussianRational::from_int(sign));
            reflected.add_term(b, a, &q);
        }
        Ok(reflected.residue_upper()?.neg())
    }

    /// `∫ dξ_n` over the real line as `2πi Σ Res_{+i}`, with `π` formal
    /// (`integrate_xi_n`).
    pub fn integrate_xi_n(&self) -> Result<ScalarPoly> {
        let two_pi_i = ScalarPoly::term(Monomial::var(Var::Pi), GaussianRational::complex(0, 1, 2, 1));
        Ok(self.residue_upper()?.mul(&two_pi_i))
    }

    /// Numerical value at a real `ξ_n` with the other symbols given by `value`.
    pub fn eval<G>(&self, xi_n: f64, value: G) -> (f64, f64)
    where
        G: Fn(Var) -> (f64, f64),
    {
        let xn = self.normal_var();
        let at = |v: Var| if v == xn { (xi_n, 0.0) } else { value(v) };
        let mut acc = (0.0, 0.0);
        for ((a, b), p) in &self.terms {
            let num = p.eval(at);
            let den = pole_product(xn, *a, *b).eval(at);
            let d2 = den.0 * den.0 + den.1 * den.1;
            acc.0 += (num.0 * den.0 + num.1 * den.1) / d2;
            acc.1 += (num.1 * den.0 - num.0 * den.1) / d2;
        }
        acc
    }
}

impl fmt::Display for XiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), p)| format!("({p})/((xi_n-i)^{a}(xi_n+i)^{b})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn double_factorial_odd(e: u32) -> BigInt {
    // (e - 1)!! for even e
    let mut acc = BigInt::one();
    let mut k = e.saturating_sub(1);
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// `∫_{|ξ'|=1} Π ξ_i^{e_i} dσ / Ω` over the unit sphere in `R^m`.
pub fn sphere_moment(exponents: &[u32], m: u32) -> BigRational {
    if exponents.iter().any(|e| e % 2 == 1) {
        return BigRational::from_integer(BigInt::from(0));
    }
    let mut num = BigInt::one();
    for &e in exponents {
        num *= double_factorial_odd(e);
    }
    let half: u32 = exponents.iter().sum::<u32>() / 2;
    let mut den = BigInt::one();
    for t in 0..half {
        den *= BigInt::from(m + 2 * t);
    }
    BigRational::new(num, den)
}

/// Integrates a polynomial in `ξ_1..ξ_{n−1}` over the unit sphere, returning a
/// multiple of the formal volume `Ω` (`sphere_integrate`). `|ξ'|²` counts as one.
pub fn sphere_integrate(p: &ScalarPoly, n: usize) -> Result<ScalarPoly> {
    let m = (n - 1) as u32;
    let mut out = ScalarPoly::zero();
    for (mono, c) in p.terms() {
        if mono.exponent(Var::Xi(n as u8)) > 0 {
            return Err(Error::Invariant(format!(
                "sphere integrand still depends on the normal covariable: {mono}"
            )));
        }
        let exps: Vec<u32> = (1..n as u8).map(|i| u32::from(mono.exponent(Var::Xi(i)))).collect();
        let w = sphere_moment(&exps, m);
        if w == BigRational::from_integer(BigInt::from(0)) {
            continue;
        }
        let mut rest = mono.with_exponent(Var::Sq, 0);
        for i in 1..n as u8 {
            rest = rest.with_exponent(Var::Xi(i), 0);
        }
        rest = rest.mul(&Monomial::var(Var::Omega));
        out.add_term(rest, &(&GaussianRational::from_real(w) * c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi() -> ScalarPoly {
        ScalarPoly::var(Var::Pi)
    }

    #[test]
    fn arctangent_integral() {
        let r = XiRational::fraction(4, ScalarPoly::one(), 1, 1);
        assert_eq!(r.integrate_xi_n().unwrap(), pi());
    }

    #[test]
    fn double_and_triple_pole() {
        let r = XiRational::fraction(4, ScalarPoly::one(), 2, 3);
        let expected = pi().scale(&GaussianRational::complex(0, 1, -3, 8));
        assert_eq!(r.integrate_xi_n().unwrap(), expected);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = XiRational::fraction(4, ScalarPoly::var(Var::Xi(4)), 2, 2);
        assert!(r.integrate_xi_n().unwrap().is_zero());
    }

    #[test]
    fn insufficient_decay_is_rejected() {
        let r = XiRational::fraction(4, ScalarPoly::var(Var::Xi(4)), 1, 1);
        assert!(matches!(r.integrate_xi_n(), Err(Error::NonDecaying(_))));
    }

    #[test]
    fn residues_sum_to_zero() {
        let num = ScalarPoly::var(Var::Xi(4)).add(&ScalarPoly::int(3));
        let r = XiRational::fraction(4, num, 3, 2);
        let total = r.residue_upper().unwrap().add(&r.residue_lower().unwrap());
        assert!(total.is_zero());
    }

    #[test]
    fn sphere_moments() {
        let q = |a, b| GaussianRational::from_real(BigRational::new(BigInt::from(a), BigInt::from(b)));
        assert_eq!(GaussianRational::from_real(sphere_moment(&[2, 0, 0], 3)), q(1, 3));
        assert_eq!(GaussianRational::from_real(sphere_moment(&[2, 2, 0], 3)), q(1, 15));
        assert_eq!(GaussianRational::from_real(sphere_moment(&[4, 0, 0], 3)), q(1, 5));
        assert_eq!(GaussianRational::from_real(sphere_moment(&[1, 0, 0], 3)), q(0, 1));
        let p = ScalarPoly::var(Var::Xi(1)).pow(2).mul(&ScalarPoly::var(Var::H1));
        let got = sphere_integrate(&p, 4).unwrap();
        let want = ScalarPoly::var(Var::H1)
            .mul(&ScalarPoly::var(Var::Omega))
            .scale(&GaussianRational::ratio(1, 3));
        assert_eq!(got, want);
    }
}
