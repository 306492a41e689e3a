use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::gaussian::GaussianRational;
use super::var::Var;
use crate::error::Result;

/// Power product of formal symbols, sorted by symbol, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, u16); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Var, e: u16) -> Self {
        let mut s = SmallVec::new();
        if e > 0 {
            s.push((v, e));
        }
        Self(s)
    }

    /// Builds a monomial from a list of (possibly repeated) symbols.
    pub fn from_vars<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        vars.into_iter()
            .fold(Self::one(), |acc, v| acc.mul(&Self::var(v)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Sets the exponent of `v` (removing it when zero).
    pub fn with_exponent(&self, v: Var, e: u16) -> Self {
        let mut out: SmallVec<[(Var, u16); 4]> =
            self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        if e > 0 {
            let pos = out.iter().position(|(w, _)| *w > v).unwrap_or(out.len());
            out.insert(pos, (v, e));
        }
        Self(out)
    }

    /// Total weight under `xi -> lambda * xi`.
    pub fn xi_degree(&self) -> u32 {
        self.0
            .iter()
            .map(|(v, e)| v.xi_weight() * u32::from(*e))
            .sum()
    }

    /// Symbol names with repetition, in canonical order.
    pub fn to_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            for _ in 0..*e {
                out.push(v.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(v: i64) -> Self {
        Self::constant(GaussianRational::from_int(v))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        out.add_assign(small);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    /// Polynomial product (`poly_mul`).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Maximal exponent of `v` among the terms.
    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Splits into coefficients of powers of `v`.
    pub fn split_by(&self, v: Var) -> BTreeMap<u16, ScalarPoly> {
        let mut out: BTreeMap<u16, ScalarPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.entry(e)
                .or_default()
                .add_term(m.with_exponent(v, 0), c);
        }
        out
    }

    /// Derivation determined by its values on the generators.
    pub fn derive<D>(&self, image: &D) -> Result<Self>
    where
        D: Fn(Var) -> Result<Option<ScalarPoly>>,
    {
        let mut out = Self::zero();
        let mut cache: BTreeMap<Var, Option<ScalarPoly>> = BTreeMap::new();
        for (m, c) in &self.terms {
            for &(v, e) in m.factors() {
                let img = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = image(v)?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                let Some(img) = img else { continue };
                let rest = m.with_exponent(v, e - 1);
                let coeff = c * &GaussianRational::from_int(i64::from(e));
                out.add_assign(&img.mul_monomial(&rest, &coeff));
            }
        }
        Ok(out)
    }

    /// Ordinary partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        self.derive(&|w| Ok((w == v).then(ScalarPoly::one)))
            .unwrap_or_default()
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &ScalarPoly) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut powers: Vec<ScalarPoly> = vec![ScalarPoly::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = usize::from(m.exponent(v));
            while powers.len() <= e {
                let next = powers.last().map(|p| p.mul(value)).unwrap_or_default();
                powers.push(next);
            }
            let rest = m.with_exponent(v, 0);
            out.add_assign(&powers[e].mul_monomial(&rest, c));
        }
        out
    }

    /// Rewrites monomials term by term with `f` returning a replacement polynomial.
    pub fn map_monomials<G>(&self, f: G) -> Self
    where
        G: Fn(&Monomial) -> Option<ScalarPoly>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            match f(m) {
                Some(p) => out.add_assign(&p.scale(c)),
                None => out.add_term(m.clone(), c),
            }
        }
        out
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter<G>(&self, keep: G) -> Self
    where
        G: Fn(&Monomial) -> bool,
    {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Numeric evaluation with complex values for the symbols.
    pub fn eval<G>(&self, value: G) -> (f64, f64)
    where
        G: Fn(Var) -> (f64, f64),
    {
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for &(v, e) in m.factors() {
                let x = value(v);
                for _ in 0..e {
                    t = (t.0 * x.0 - t.1 * x.1, t.0 * x.1 + t.1 * x.0);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if c.is_one() {
                    m.to_string()
                } else if *c == -GaussianRational::one() {
                    format!("-{m}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Free-function form of the polynomial product.
pub fn poly_mul(a: &ScalarPoly, b: &ScalarPoly) -> ScalarPoly {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(j: u8) -> ScalarPoly {
        ScalarPoly::var(Var::Xi(j))
    }

    #[test]
    fn binomial_square() {
        let p = x(1).add(&x(2));
        let sq = poly_mul(&p, &p);
        let expect = x(1)
            .mul(&x(1))
            .add(&x(2).mul(&x(2)))
            .add(&x(1).mul(&x(2)).scale(&GaussianRational::from_int(2)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = x(1).sub(&x(1));
        assert!(p.is_zero());
    }

    #[test]
    fn partial_derivative() {
        let p = x(1).pow(3).mul(&ScalarPoly::var(Var::H1));
        let d = p.partial(Var::Xi(1));
        assert_eq!(
            d,
            x(1).pow(2)
                .mul(&ScalarPoly::var(Var::H1))
                .scale(&GaussianRational::from_int(3))
        );
    }

    #[test]
    fn substitution() {
        let p = x(1).pow(2).add(&ScalarPoly::one());
        let q = p.substitute(Var::Xi(1), &ScalarPoly::constant(GaussianRational::i()));
        assert!(q.is_zero());
    }

    #[test]
    fn split_by_variable() {
        let p = x(6).pow(2).mul(&x(1)).add(&x(2));
        let parts = p.split_by(Var::Xi(6));
        assert_eq!(parts[&2], x(1));
        assert_eq!(parts[&0], x(2));
    }

    #[test]
    fn monomial_names() {
        let m = Monomial::from_vars([Var::Pi, Var::H1, Var::Pi]);
        assert_eq!(m.to_names(), vec!["H1", "PI", "PI"]);
        assert_eq!(m.exponent(Var::Pi), 2);
    }
}
