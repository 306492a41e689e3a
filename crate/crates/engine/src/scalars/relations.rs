use super::gaussian::GaussianRational;
use super::poly::{Monomial, ScalarPoly};
use super::var::Var;

/// Rewrite rules applied when normalizing scalars.
///
/// `F * FINV -> 1` is always applied. The tangential rule rewrites
/// `xi_1^2 -> SQ - sum_{1<i<n} xi_i^2`, a canonical form modulo the definition of
/// the squared tangential length. The sphere rules additionally set `SQ = 1`. The
/// analytic rule expresses derivatives of the reciprocal factor through
/// derivatives of the factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Relations {
    /// Ambient dimension when the sphere rules are active.
    pub sphere: Option<usize>,
    /// Ambient dimension when only the tangential rule is active.
    pub tangential: Option<usize>,
    pub analytic_conformal: bool,
}

impl Relations {
    pub fn plain() -> Self {
        Self::default()
    }

    pub fn sphere(n: usize) -> Self {
        Self {
            sphere: Some(n),
            ..Self::default()
        }
    }

    pub fn tangential(n: usize) -> Self {
        Self {
            tangential: Some(n),
            ..Self::default()
        }
    }

    pub fn with_analytic(mut self, on: bool) -> Self {
        self.analytic_conformal = on;
        self
    }
}

fn cancel_conformal(p: &ScalarPoly) -> ScalarPoly {
    p.map_monomials(|m| {
        let (a, b) = (m.exponent(Var::F), m.exponent(Var::FInv));
        let k = a.min(b);
        (k > 0).then(|| {
            let r = m.with_exponent(Var::F, a - k).with_exponent(Var::FInv, b - k);
            ScalarPoly::term(r, GaussianRational::one())
        })
    })
}

fn analytic_conformal(p: &ScalarPoly, n: usize) -> ScalarPoly {
    let finv_sq = ScalarPoly::var(Var::FInv).pow(2).neg();
    let mut out = p.substitute(Var::DnFInv, &finv_sq.mul(&ScalarPoly::var(Var::DnF)));
    for j in 1..=n as u8 {
        out = out.substitute(Var::DjFInv(j), &finv_sq.mul(&ScalarPoly::var(Var::DjF(j))));
    }
    out
}

fn reduce_tangential(p: &ScalarPoly, n: usize) -> ScalarPoly {
    if n < 3 || p.degree_in(Var::Xi(1)) < 2 {
        return p.clone();
    }
    let mut rest = ScalarPoly::var(Var::Sq);
    for i in 2..n as u8 {
        rest.sub_assign(&ScalarPoly::var(Var::Xi(i)).pow(2));
    }
    let top = usize::from(p.degree_in(Var::Xi(1)) / 2);
    let mut powers = vec![ScalarPoly::one()];
    for k in 0..top {
        let next = powers[k].mul(&rest);
        powers.push(next);
    }
    p.map_monomials(|m| {
        let e = m.exponent(Var::Xi(1));
        (e >= 2).then(|| {
            let base = m.with_exponent(Var::Xi(1), e % 2);
            powers[usize::from(e / 2)].mul_monomial(&base, &GaussianRational::one())
        })
    })
}

/// Normalizes a polynomial under `rel` (`apply_relations`).
pub fn apply_relations(p: &ScalarPoly, rel: &Relations, n: usize) -> ScalarPoly {
    let mut out = if rel.analytic_conformal {
        analytic_conformal(p, n)
    } else {
        p.clone()
    };
    out = cancel_conformal(&out);
    if let Some(dim) = rel.sphere.or(rel.tangential) {
        out = reduce_tangential(&out, dim);
    }
    if rel.sphere.is_some() {
        out = out.substitute(Var::Sq, &ScalarPoly::one());
    }
    out
}

/// Replaces the squared-length placeholder by the explicit sum of squares.
pub fn expand_square_length(p: &ScalarPoly, n: usize) -> ScalarPoly {
    let mut sq = ScalarPoly::zero();
    for i in 1..n as u8 {
        sq.add_assign(&ScalarPoly::var(Var::Xi(i)).pow(2));
    }
    p.substitute(Var::Sq, &sq)
}

/// Helper for building monomials from names in tests and fixtures.
pub fn monomial_of(vars: &[Var]) -> Monomial {
    Monomial::from_vars(vars.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conformal_product_cancels() {
        let p = ScalarPoly::term(
            monomial_of(&[Var::F, Var::F, Var::FInv, Var::DnF]),
            GaussianRational::one(),
        );
        let q = apply_relations(&p, &Relations::plain(), 4);
        assert_eq!(q, ScalarPoly::term(monomial_of(&[Var::F, Var::DnF]), GaussianRational::one()));
    }

    #[test]
    fn analytic_rule() {
        let p = ScalarPoly::term(monomial_of(&[Var::F, Var::DnFInv]), GaussianRational::one());
        let q = apply_relations(&p, &Relations::plain().with_analytic(true), 4);
        assert_eq!(q, ScalarPoly::term(monomial_of(&[Var::FInv, Var::DnF]), -GaussianRational::one()));
    }

    #[test]
    fn sphere_reduction_is_canonical() {
        // xi_1^2 + xi_2^2 + xi_3^2 reduces to 1 in dimension 4.
        let mut p = ScalarPoly::zero();
        for i in 1..4 {
            p.add_assign(&ScalarPoly::var(Var::Xi(i)).pow(2));
        }
        assert_eq!(apply_relations(&p, &Relations::sphere(4), 4), ScalarPoly::one());
        let q = ScalarPoly::var(Var::Xi(1)).pow(4);
        let r = apply_relations(&q, &Relations::sphere(4), 4);
        assert!(r.degree_in(Var::Xi(1)) <= 1);
        // On the sphere point (0.8, 0.6, 0) both sides agree.
        let at = |v: Var| match v {
            Var::Xi(1) => (0.8, 0.0),
            Var::Xi(2) => (0.6, 0.0),
            _ => (0.0, 0.0),
        };
        assert!((r.eval(at).0 - q.eval(at).0).abs() < 1e-12);
    }
}
