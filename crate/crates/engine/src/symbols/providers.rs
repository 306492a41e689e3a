//! Symbols of the modified Novikov operators, their inverses, the sixth-order
//! triple product and the conformally weighted factors.

use crate::clifford::{build_generators, c_theta_prime, c_xi, cbar_theta, CliffordElement};
use crate::error::Result;
use crate::scalars::{GaussianRational, Jet, Relations};

use super::boundary::BoundarySymbol;
use super::calculus::{compose, conformal_wrap, provider_inverse, Side};
use super::connection::Connection;
use super::graded::GradedSymbol;

/// The operator or its formal adjoint; they differ in the sign of `c(θ')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NovikovVariant {
    Plain,
    Adjoint,
}

/// Zeroth-order part `b₀¹ + b₀² + c̄(θ) ± c(θ')` at the boundary point.
pub fn zeroth_order_part(n: usize, variant: NovikovVariant) -> Result<CliffordElement> {
    let gens = build_generators(n)?;
    let conn = Connection::new(n)?;
    let base = conn
        .b0_mixed(&gens)?
        .add(&conn.b0_pure(&gens)?)?
        .add(&cbar_theta(n)?)?;
    let tp = c_theta_prime(n)?;
    match variant {
        NovikovVariant::Plain => base.add(&tp),
        NovikovVariant::Adjoint => base.sub(&tp),
    }
}

/// `σ₁ = i c(ξ)`, `σ₀` as above (`provider_novikov`).
pub fn provider_novikov(n: usize, variant: NovikovVariant) -> Result<GradedSymbol> {
    let p1 = c_xi(n)?.scale_by(&GaussianRational::i());
    let p0 = zeroth_order_part(n, variant)?;
    Ok(GradedSymbol::new(n)
        .with_part(1, BoundarySymbol::interior(p1, 0, true))
        .with_part(0, BoundarySymbol::interior(p0, 0, false)))
}

/// Orders 3 and 2 of `(D* ∘ f)(D ∘ f⁻¹)(D* ∘ f)` (`provider_triple`).
///
/// The second-order part is reported with `∂_n f⁻¹` expressed through `∂_n f`.
pub fn provider_triple(n: usize) -> Result<GradedSymbol> {
    let adj = provider_novikov(n, NovikovVariant::Adjoint)?;
    let plain = provider_novikov(n, NovikovVariant::Plain)?;
    let a = conformal_wrap(&adj, Side::Right, &Jet::conformal())?;
    let b = conformal_wrap(&plain, Side::Right, &Jet::conformal_inverse())?;
    let ab = compose(&a, &b, 1)?;
    let abc = compose(&ab, &a, 2)?;
    let analytic = Relations::tangential(n).with_analytic(true);
    abc.map_parts(|o, p| if o == 2 { p.normalize(&analytic) } else { Ok(p.clone()) })
}

/// Symbol of `f · D⁻¹` to the two leading orders.
pub fn left_factor(n: usize) -> Result<GradedSymbol> {
    let inv = provider_inverse(&provider_novikov(n, NovikovVariant::Plain)?)?;
    conformal_wrap(&inv, Side::Left, &Jet::conformal())
}

/// Symbol of the right factor of the boundary pairing to its two leading orders:
/// `f⁻¹ (D*)⁻¹` in dimension four and the inverse of the conformal triple
/// product otherwise.
pub fn right_factor(n: usize) -> Result<GradedSymbol> {
    if n == 4 {
        let inv = provider_inverse(&provider_novikov(n, NovikovVariant::Adjoint)?)?;
        conformal_wrap(&inv, Side::Left, &Jet::conformal_inverse())
    } else {
        provider_inverse(&provider_triple(n)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::c_xi;

    #[test]
    fn first_order_inverse_leading_part() {
        let inv = provider_inverse(&provider_novikov(4, NovikovVariant::Plain).unwrap()).unwrap();
        let want = BoundarySymbol::interior(c_xi(4).unwrap().scale_by(&GaussianRational::i()), 1, true);
        let diff = inv.require(-1).unwrap().sub(&want).unwrap();
        assert!(diff.is_zero(&Relations::plain()).unwrap());
        inv.check_homogeneous().unwrap();
    }

    #[test]
    fn variants_differ_by_theta_prime() {
        let a = zeroth_order_part(4, NovikovVariant::Plain).unwrap();
        let b = zeroth_order_part(4, NovikovVariant::Adjoint).unwrap();
        let two = c_theta_prime(4).unwrap().scale_by(&GaussianRational::from_int(2));
        assert_eq!(a.sub(&b).unwrap(), two);
    }

    #[test]
    fn triple_leading_part() {
        let t = provider_triple(6).unwrap();
        let q = crate::symbols::square_length_jet(6);
        let num = c_xi(6)
            .unwrap()
            .scale(&q)
            .scale(&Jet::conformal())
            .scale_by(&GaussianRational::i());
        let want = BoundarySymbol::interior(num, 0, true);
        let diff = t.require(3).unwrap().sub(&want).unwrap();
        assert!(diff.is_zero(&Relations::plain().with_analytic(true)).unwrap());
        t.check_homogeneous().unwrap();
        let inv = provider_inverse(&t).unwrap();
        let lead = BoundarySymbol::interior(
            c_xi(6).unwrap().scale(&Jet::conformal_inverse()).scale_by(&GaussianRational::i()),
            2,
            true,
        );
        assert!(inv.require(-3).unwrap().sub(&lead).unwrap().is_zero(&Relations::plain()).unwrap());
    }
}
