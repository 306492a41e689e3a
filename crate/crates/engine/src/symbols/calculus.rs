//! Composition and inversion of graded symbols to first order in the
//! composition formula.

use crate::clifford::{c_xi, CliffordElement};
use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Jet, Relations};

use super::boundary::{BoundarySymbol, Stage};
use super::graded::GradedSymbol;

/// `σ(A∘B) = Σ_α (1/α!) ∂_ξ^α σ(A) D_x^α σ(B)` with `|α| <= 1`, keeping orders
/// `>= keep_from`.
pub fn compose(a: &GradedSymbol, b: &GradedSymbol, keep_from: i32) -> Result<GradedSymbol> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let (Some(ta), Some(tb)) = (a.top_order(), b.top_order()) else {
        return Ok(GradedSymbol::new(n));
    };
    let top = ta + tb;
    if keep_from < top - 1 {
        return Err(Error::Truncation(format!(
            "orders below {} need second derivatives",
            top - 1
        )));
    }
    let mut acc: std::collections::BTreeMap<i32, BoundarySymbol> = Default::default();
    let mut add = |order: i32, s: BoundarySymbol| -> Result<()> {
        let slot = acc
            .entry(order)
            .or_insert_with(|| BoundarySymbol::zero(n, Stage::Interior));
        *slot = slot.add(&s)?;
        Ok(())
    };
    for (oa, pa) in a.parts() {
        for (ob, pb) in b.parts() {
            if oa + ob >= keep_from {
                add(oa + ob, pa.mul(pb)?)?;
            }
            if oa + ob > keep_from {
                for l in 1..=n {
                    let da = pa.d_xi(l)?;
                    if da.is_trivially_zero() {
                        continue;
                    }
                    let db = pb.d_x(l)?;
                    if db.is_trivially_zero() {
                        continue;
                    }
                    add(oa + ob - 1, da.mul(&db)?)?;
                }
            }
        }
    }
    let mut out = GradedSymbol::new(n);
    for (o, p) in acc {
        out.insert(o, p.normalize(&Relations::tangential(n))?);
    }
    Ok(out)
}

/// Multiplication operator by a function, as an order-zero symbol.
pub fn function_symbol(n: usize, f: Jet) -> GradedSymbol {
    let s = BoundarySymbol::interior(CliffordElement::scalar(n, f), 0, true);
    GradedSymbol::new(n).with_part(0, s)
}

/// Which side the conformal factor multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `f · P`: every component is multiplied by the function.
    Left,
    /// `P ∘ f`: composition with the multiplication operator.
    Right,
}

/// Multiplies an operator by the conformal factor or its reciprocal
/// (`conformal_wrap`).
pub fn conformal_wrap(s: &GradedSymbol, side: Side, factor: &Jet) -> Result<GradedSymbol> {
    match side {
        Side::Left => {
            let rel = Relations::tangential(s.dim());
            s.map_parts(|_, p| p.scale(factor).normalize(&rel))
        }
        Side::Right => {
            let top = s
                .top_order()
                .ok_or_else(|| Error::InvalidCase("empty symbol".into()))?;
            let keep = s.lowest_order().unwrap_or(top).max(top - 1);
            compose(s, &function_symbol(s.dim(), factor.clone()), keep)
        }
    }
}

/// Inverts a graded symbol whose leading part is `λ φ c(ξ) |ξ|^(m−1)` for an
/// odd order `m`, a unit `λ ∈ {±i, ±1}` and `φ ∈ {1, f, f⁻¹}`
/// (`provider_inverse`). Returns the components of orders `−m` and `−m−1`.
pub fn provider_inverse(p: &GradedSymbol) -> Result<GradedSymbol> {
    let n = p.dim();
    let m = p
        .top_order()
        .ok_or_else(|| Error::NotInvertible("empty symbol".into()))?;
    if m < 1 || m % 2 == 0 {
        return Err(Error::NotInvertible(format!("leading order {m}")));
    }
    let top = p.require(m)?;
    let q_power = ((m + 1) / 2) as u32;
    let cx = c_xi(n)?;
    let units = [
        GaussianRational::i(),
        -GaussianRational::i(),
        GaussianRational::one(),
        -GaussianRational::one(),
    ];
    // reciprocals of the admissible conformal weights 1, f, f⁻¹
    let inverses = [Jet::one(), Jet::conformal_inverse(), Jet::conformal()];
    let rel = Relations::plain().with_analytic(true);
    let one = BoundarySymbol::interior(CliffordElement::identity(n), 0, true);
    let mut q_top = None;
    'search: for lam in &units {
        let c = -lam.inverse()?;
        for phi_inv in &inverses {
            let cand = BoundarySymbol::interior(cx.scale(phi_inv).scale_by(&c), q_power, true);
            let prod = top.mul(&cand)?.sub(&one)?;
            if prod.is_zero(&rel)? {
                q_top = Some(cand);
                break 'search;
            }
        }
    }
    let q_top = q_top.ok_or_else(|| Error::NotInvertible("leading symbol".into()))?;
    let mut inner = p.part_or_zero(m - 1).mul(&q_top)?;
    for l in 1..=n {
        let dp = top.d_xi(l)?;
        if dp.is_trivially_zero() {
            continue;
        }
        inner = inner.add(&dp.mul(&q_top.d_x(l)?)?)?;
    }
    let q_next = q_top.mul(&inner)?.neg().normalize(&Relations::tangential(n))?;
    Ok(GradedSymbol::new(n)
        .with_part(-m, q_top)
        .with_part(-m - 1, q_next))
}
