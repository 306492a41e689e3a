use std::fmt;

use super::gaussian::GaussianRational;
use super::poly::{Monomial, ScalarPoly};
use super::var::Var;
use crate::error::{Error, Result};

/// First-order jet in the normal coordinate: `value + slope * x_n`, with `x_n^2 = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Jet {
    pub value: ScalarPoly,
    pub slope: ScalarPoly,
}

impl Jet {
    pub fn new(value: ScalarPoly, slope: ScalarPoly) -> Self {
        Self { value, slope }
    }

    pub fn constant(value: ScalarPoly) -> Self {
        Self::new(value, ScalarPoly::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ScalarPoly::one())
    }

    pub fn int(v: i64) -> Self {
        Self::constant(ScalarPoly::int(v))
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::constant(ScalarPoly::constant(c))
    }

    /// The conformal factor with its normal derivative.
    pub fn conformal() -> Self {
        Self::new(ScalarPoly::var(Var::F), ScalarPoly::var(Var::DnF))
    }

    /// The reciprocal conformal factor with its normal derivative.
    pub fn conformal_inverse() -> Self {
        Self::new(ScalarPoly::var(Var::FInv), ScalarPoly::var(Var::DnFInv))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.slope.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.value.add(&o.value), self.slope.add(&o.slope))
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.value.add_assign(&o.value);
        self.slope.add_assign(&o.slope);
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.value.sub(&o.value), self.slope.sub(&o.slope))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.value.neg(), self.slope.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.value.scale(c), self.slope.scale(c))
    }

    /// Truncated product.
    pub fn mul(&self, o: &Self) -> Self {
        let value = self.value.mul(&o.value);
        let mut slope = self.value.mul(&o.slope);
        slope.add_assign(&self.slope.mul(&o.value));
        Self::new(value, slope)
    }

    /// Drops the slope, i.e. evaluates at `x_n = 0`.
    pub fn at_boundary(&self) -> Self {
        Self::constant(self.value.clone())
    }

    /// Applies a derivation in the covariables to value and slope.
    pub fn derive<D>(&self, image: &D) -> Result<Self>
    where
        D: Fn(Var) -> Result<Option<ScalarPoly>>,
    {
        Ok(Self::new(
            self.value.derive(image)?,
            self.slope.derive(image)?,
        ))
    }

    pub fn map<G>(&self, f: G) -> Self
    where
        G: Fn(&ScalarPoly) -> ScalarPoly,
    {
        Self::new(f(&self.value), f(&self.slope))
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "[{}] + x_n*[{}]", self.value, self.slope)
        }
    }
}

/// Inverse of a value that is a unit: a nonzero constant times a power product of
/// the conformal fields.
fn invert_unit(p: &ScalarPoly) -> Result<ScalarPoly> {
    let mut it = p.terms();
    let (Some((m, c)), None) = (it.next(), it.next()) else {
        return Err(Error::NotInvertible(format!("{p}")));
    };
    let mut inv = Monomial::one();
    for &(v, e) in m.factors() {
        let w = match v {
            Var::F => Var::FInv,
            Var::FInv => Var::F,
            _ => return Err(Error::NotInvertible(format!("{p}"))),
        };
        inv = inv.mul(&Monomial::power(w, e));
    }
    Ok(ScalarPoly::term(inv, c.inverse()?))
}

/// `1/(a + b x_n) = 1/a - (b/a^2) x_n` (`jet_invert`).
pub fn jet_invert(j: &Jet) -> Result<Jet> {
    let inv = invert_unit(&j.value)?;
    let slope = inv.mul(&inv).mul(&j.slope).neg();
    Ok(Jet::new(inv, slope))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_affine_jet() {
        let j = Jet::new(ScalarPoly::int(2), ScalarPoly::var(Var::H1));
        let inv = jet_invert(&j).unwrap();
        assert_eq!(inv.value, ScalarPoly::constant(GaussianRational::ratio(1, 2)));
        assert_eq!(
            inv.slope,
            ScalarPoly::var(Var::H1).scale(&GaussianRational::ratio(-1, 4))
        );
        assert_eq!(j.mul(&inv), Jet::one());
    }

    #[test]
    fn invert_conformal_factor() {
        let inv = jet_invert(&Jet::conformal()).unwrap();
        assert_eq!(inv.value, ScalarPoly::var(Var::FInv));
    }

    #[test]
    fn non_units_are_rejected() {
        let j = Jet::constant(ScalarPoly::var(Var::Xi(1)));
        assert!(jet_invert(&j).is_err());
        assert!(jet_invert(&Jet::zero()).is_err());
    }

    #[test]
    fn slope_squared_vanishes() {
        let x = Jet::new(ScalarPoly::zero(), ScalarPoly::one());
        assert!(x.mul(&x).is_zero());
    }
}
