//! Intermediate identities: Clifford trace tables, closed forms of the
//! Boutet de Monvel projection, trace integrands before integration, and
//! cross-checks of the symbol calculus against closed forms.
//!
//! Every check compares an object built by the engine with an independently
//! written closed form. Citations for the closed forms live in the fixture data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{
    build_generators, c_covector, c_theta_prime, c_xi, c_xi_prime, cbar_covector, cbar_theta,
    d_normal_c_xi_prime, CliffordElement,
};
use crate::error::Result;
use crate::integrate::XiRational;
use crate::scalars::{apply_relations, GaussianRational, Jet, Relations, ScalarPoly, Var};
use crate::symbols::{
    compose, provider_inverse, provider_novikov, provider_triple, BoundarySymbol, Connection,
    GradedSymbol, NovikovVariant, Stage,
};

use super::cases::enumerate_cases;
use super::engine::case_integrand;

/// Family an identity belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityGroup {
    Trace,
    Projection,
    Integrand,
    Lemma,
    Consistency,
}

impl fmt::Display for IdentityGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityGroup::Trace => "trace",
            IdentityGroup::Projection => "projection",
            IdentityGroup::Integrand => "integrand",
            IdentityGroup::Lemma => "lemma",
            IdentityGroup::Consistency => "consistency",
        };
        f.write_str(s)
    }
}

/// Result of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub id: String,
    pub group: IdentityGroup,
    pub dimension: usize,
    pub passed: bool,
    pub detail: String,
}

impl IdentityCheck {
    pub fn new(id: &str, group: IdentityGroup, n: usize, passed: bool, detail: String) -> Self {
        Self {
            id: id.to_string(),
            group,
            dimension: n,
            passed,
            detail,
        }
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "[{mark}] n={} {}", self.dimension, self.id)?;
        if !self.passed && !self.detail.is_empty() {
            write!(f, "\n       {}", self.detail)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// small builders

fn h1() -> ScalarPoly {
    ScalarPoly::var(Var::H1)
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::complex(re, 1, im, 1)
}

/// `Σ_k coeffs[k] ξ_n^k` with Gaussian-integer coefficients.
fn xp(n: usize, coeffs: &[(i64, i64)]) -> ScalarPoly {
    let xn = ScalarPoly::var(Var::Xi(n as u8));
    let mut acc = ScalarPoly::zero();
    let mut power = ScalarPoly::one();
    for &(re, im) in coeffs {
        acc.add_assign(&power.scale(&g(re, im)));
        power = power.mul(&xn);
    }
    acc
}

fn frac(n: usize, num: ScalarPoly, a: u32, b: u32) -> XiRational {
    XiRational::fraction(n, num, a, b)
}

fn values(e: &CliffordElement) -> Result<CliffordElement> {
    e.map_entries(|j| Ok(Jet::constant(j.value.clone())))
}

fn times(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    a.mul(b)
}

fn triple(a: &CliffordElement, b: &CliffordElement, c: &CliffordElement) -> Result<CliffordElement> {
    a.mul(b)?.mul(c)
}

/// Shared Clifford data at the boundary point.
struct Frame {
    n: usize,
    /// `c(ξ)` with jets.
    cx: CliffordElement,
    /// `c(ξ')` values.
    cp: CliffordElement,
    /// `c(dx_n)`.
    cn: CliffordElement,
    /// `∂_{x_n} c(ξ')`.
    dcp: CliffordElement,
    conn: Connection,
    b0_mixed: CliffordElement,
    b0_pure: CliffordElement,
}

impl Frame {
    fn new(n: usize) -> Result<Self> {
        let gens = build_generators(n)?;
        let conn = Connection::new(n)?;
        Ok(Self {
            n,
            cx: c_xi(n)?,
            cp: values(&c_xi_prime(n)?)?,
            cn: gens.c(n).clone(),
            dcp: d_normal_c_xi_prime(n)?,
            b0_mixed: conn.b0_mixed(&gens)?,
            b0_pure: conn.b0_pure(&gens)?,
            conn,
        })
    }

    fn interior(&self, num: CliffordElement, q: u32) -> BoundarySymbol {
        BoundarySymbol::interior(num, q, true)
    }

    /// `σ_{−1} = i c(ξ)/|ξ|²` of the inverse first-order operator.
    fn first_order_inverse(&self) -> BoundarySymbol {
        self.interior(self.cx.scale_by(&GaussianRational::i()), 1)
    }

    /// `σ_{−3} = i c(ξ)/|ξ|⁴` of the inverse triple product without the conformal factor.
    fn third_order_inverse(&self) -> BoundarySymbol {
        self.interior(self.cx.scale_by(&GaussianRational::i()), 2)
    }

    /// `h'(0)`-part of `∂_{x_n}` of the first-order inverse: `−i h'|ξ'|² c(ξ)/|ξ|⁴`.
    fn curvature_part(&self) -> BoundarySymbol {
        let k = h1().mul(&ScalarPoly::var(Var::Sq)).scale(&-GaussianRational::i());
        self.interior(self.cx.scale_poly(&k), 2)
    }

    /// Frame part of the same derivative: `i ∂_{x_n}c(ξ')/|ξ|²`.
    fn frame_part(&self) -> BoundarySymbol {
        self.interior(self.dcp.scale_by(&GaussianRational::i()), 1)
    }

    /// `h'(0) π⁺[c(ξ)c(dx_n)c(ξ)/|ξ|⁶]`.
    fn curvature_projection(&self) -> Result<BoundarySymbol> {
        let num = triple(&self.cx, &self.cn, &self.cx)?.scale_poly(&h1());
        self.interior(num, 3).to_sphere()?.pi_plus()
    }

    /// `π⁺[(c(ξ) b c(ξ) + c(ξ)c(dx_n)∂_{x_n}c(ξ'))/|ξ|⁴]` with `b` the pure
    /// connection term.
    fn frame_projection(&self) -> Result<BoundarySymbol> {
        let num = triple(&self.cx, &self.b0_pure, &self.cx)?
            .add(&triple(&self.cx, &self.cn, &self.dcp)?)?;
        self.interior(num, 2).to_sphere()?.pi_plus()
    }

    fn trace(&self, a: &CliffordElement, b: &CliffordElement, sphere: bool) -> Result<ScalarPoly> {
        let t = a.trace_product(b)?.value;
        let rel = if sphere {
            Relations::sphere(self.n)
        } else {
            Relations::plain()
        };
        Ok(apply_relations(&t, &rel, self.n))
    }

    fn tr_id(&self) -> i64 {
        1 << self.n
    }
}

fn check_poly(id: &str, group: IdentityGroup, n: usize, got: &ScalarPoly, want: &ScalarPoly) -> IdentityCheck {
    let rel = Relations::plain();
    let d = apply_relations(&got.sub(want), &rel, n);
    let passed = d.is_zero();
    let detail = if passed {
        String::new()
    } else {
        format!("computed {got}; expected {want}")
    };
    IdentityCheck::new(id, group, n, passed, detail)
}

fn describe(r: &XiRational) -> String {
    let (a, b, num) = r.consolidated(&Relations::sphere(r.dim()));
    format!("({num}) / ((xi_n-i)^{a} (xi_n+i)^{b})")
}

fn check_xi(id: &str, group: IdentityGroup, n: usize, got: &XiRational, want: &XiRational) -> IdentityCheck {
    let passed = got.sub(want).is_zero(false);
    let detail = if passed {
        String::new()
    } else {
        format!("computed {}; expected {}", describe(got), describe(want))
    };
    IdentityCheck::new(id, group, n, passed, detail)
}

fn check_symbol(
    id: &str,
    group: IdentityGroup,
    n: usize,
    got: &BoundarySymbol,
    want: &BoundarySymbol,
    rel: &Relations,
) -> Result<IdentityCheck> {
    let diff = got.sub(want)?;
    let passed = diff.is_zero(rel)?;
    let detail = if passed {
        String::new()
    } else {
        let nnz: usize = diff.terms().map(|(_, e)| e.nnz()).sum();
        format!("difference has {nnz} nonzero matrix entries")
    };
    Ok(IdentityCheck::new(id, group, n, passed, detail))
}

// ---------------------------------------------------------------------------
// trace tables

/// Clifford trace identities derived from the matrix representation alone.
pub fn trace_table(n: usize) -> Result<Vec<IdentityCheck>> {
    let fr = Frame::new(n)?;
    let gens = build_generators(n)?;
    let t = IdentityGroup::Trace;
    let tr_id = fr.tr_id();
    let zero = ScalarPoly::zero();
    let mut out = vec![check_poly("trace.tangential-normal", t, n, &fr.trace(&fr.cp, &fr.cn, false)?, &zero)];
    out.push(check_poly(
        "trace.normal-square",
        t,
        n,
        &fr.trace(&fr.cn, &fr.cn, false)?,
        &ScalarPoly::int(-tr_id),
    ));
    out.push(check_poly(
        "trace.tangential-square",
        t,
        n,
        &fr.trace(&fr.cp, &fr.cp, true)?,
        &ScalarPoly::int(-tr_id),
    ));
    out.push(check_poly("trace.frame-derivative-normal", t, n, &fr.trace(&fr.dcp, &fr.cn, false)?, &zero));
    out.push(check_poly(
        "trace.frame-derivative-tangential",
        t,
        n,
        &fr.trace(&fr.dcp, &fr.cp, true)?,
        &h1().scale(&GaussianRational::from_int(-tr_id / 2)),
    ));

    // tr[c̄_i c̄_j c_k c_l] = 0 for i ≠ j
    let mut worst = None;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for k in 1..=n {
                for l in 1..=n {
                    let w = times(gens.cbar(i), gens.cbar(j))?.mul(gens.c(k))?;
                    let v = fr.trace(&w, gens.c(l), false)?;
                    if !v.is_zero() && worst.is_none() {
                        worst = Some(format!("tr[cbar{i} cbar{j} c{k} c{l}] = {v}"));
                    }
                }
            }
        }
    }
    out.push(IdentityCheck::new(
        "trace.two-right-two-left",
        t,
        n,
        worst.is_none(),
        worst.unwrap_or_default(),
    ));

    let mut worst = None;
    for i in 1..n {
        let w = times(gens.c(i), gens.cbar(i))?.mul(gens.c(n))?;
        let v = fr.trace(&w, gens.cbar(n), false)?;
        if !v.is_zero() && worst.is_none() {
            worst = Some(format!("tr[c{i} cbar{i} cn cbarn] = {v}"));
        }
    }
    out.push(IdentityCheck::new("trace.mixed-pair-normal", t, n, worst.is_none(), worst.unwrap_or_default()));

    out.push(check_poly("trace.mixed-connection-normal", t, n, &fr.trace(&fr.b0_mixed, &fr.cn, false)?, &zero));
    out.push(check_poly("trace.right-theta-normal", t, n, &fr.trace(&cbar_theta(n)?, &fr.cn, false)?, &zero));
    out.push(check_poly(
        "trace.theta-prime-normal",
        t,
        n,
        &fr.trace(&c_theta_prime(n)?, &fr.cn, false)?,
        &ScalarPoly::var(Var::GThpN).scale(&GaussianRational::from_int(-tr_id)),
    ));
    let cbar_xi = values(&cbar_covector(
        n,
        &(1..n as u8)
            .map(|i| Jet::constant(ScalarPoly::var(Var::Xi(i))))
            .collect::<Vec<_>>(),
    )?)?;
    out.push(check_poly("trace.right-tangential-normal", t, n, &fr.trace(&cbar_xi, gens.cbar(n), false)?, &zero));
    let mut pairing = ScalarPoly::zero();
    for k in 1..n as u8 {
        pairing.add_assign(&ScalarPoly::var(Var::ThP(k)).mul(&ScalarPoly::var(Var::Xi(k))));
    }
    out.push(check_poly(
        "trace.theta-prime-tangential",
        t,
        n,
        &fr.trace(&c_theta_prime(n)?, &fr.cp, false)?,
        &pairing.scale(&GaussianRational::from_int(-tr_id)),
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// projection closed forms

fn sphere_sum(n: usize, parts: Vec<(CliffordElement, u32, u32)>) -> Result<BoundarySymbol> {
    let mut acc = BoundarySymbol::zero(n, Stage::Sphere);
    for (num, a, b) in parts {
        acc = acc.add(&BoundarySymbol::sphere(num, a, b))?;
    }
    Ok(acc)
}

/// Closed forms of `π⁺` applied to the symbols that enter the case integrands.
pub fn projections(n: usize) -> Result<Vec<IdentityCheck>> {
    let fr = Frame::new(n)?;
    let p = IdentityGroup::Projection;
    let rel = Relations::sphere(n);
    let i = GaussianRational::i();
    let mut out = Vec::new();
    let inv = provider_inverse(&provider_novikov(n, NovikovVariant::Plain)?)?;
    let sigma_m1 = inv.require(-1)?;

    if n == 4 {
        // π⁺[c(ξ)/|ξ|⁴] = −((iξ_n + 2)c(ξ') + i c(dx_n)) / (4(ξ_n − i)²)
        let lhs = fr.interior(fr.cx.clone(), 2).to_sphere()?.pi_plus()?;
        let num = fr
            .cp
            .scale_poly(&xp(n, &[(2, 0), (0, 1)]))
            .add(&fr.cn.scale_by(&i))?
            .scale_by(&GaussianRational::ratio(-1, 4));
        out.push(check_symbol("projection.clifford-over-square", p, n, &lhs, &sphere_sum(n, vec![(num, 2, 0)])?, &rel)?);

        // π⁺[i ∂_{x_n}c(ξ')/|ξ|²] = ∂_{x_n}c(ξ') / (2(ξ_n − i))
        let lhs = fr.frame_part().to_sphere()?.pi_plus()?;
        let num = fr.dcp.scale_by(&GaussianRational::ratio(1, 2));
        out.push(check_symbol("projection.frame-derivative", p, n, &lhs, &sphere_sum(n, vec![(num, 1, 0)])?, &rel)?);

        // π⁺[c(ξ) b c(ξ)/|ξ|⁴] for the mixed connection term b
        let b = &fr.b0_mixed;
        let lhs = fr.interior(triple(&fr.cx, b, &fr.cx)?, 2).to_sphere()?.pi_plus()?;
        let quarter = GaussianRational::ratio(1, 4);
        let num = triple(&fr.cp, b, &fr.cp)?
            .scale_poly(&xp(n, &[(-2, 0), (0, -1)]))
            .add(&triple(&fr.cp, b, &fr.cn)?.scale_by(&i))?
            .add(&triple(&fr.cn, b, &fr.cp)?.scale_by(&i))?
            .add(&triple(&fr.cn, b, &fr.cn)?.scale_poly(&xp(n, &[(0, 0), (0, -1)])))?
            .scale_by(&quarter);
        out.push(check_symbol("projection.mixed-connection-sandwich", p, n, &lhs, &sphere_sum(n, vec![(num, 2, 0)])?, &rel)?);

        // π⁺σ_{−1} = (c(ξ') + i c(dx_n)) / (2(ξ_n − i))
        let lhs = sigma_m1.to_sphere()?.pi_plus()?;
        let num = fr.cp.add(&fr.cn.scale_by(&i))?.scale_by(&GaussianRational::ratio(1, 2));
        out.push(check_symbol("projection.first-order-inverse", p, n, &lhs, &sphere_sum(n, vec![(num, 1, 0)])?, &rel)?);
    }
    if n == 6 {
        // π⁺∂_{x_n}σ_{−1} = ∂c(ξ')/(2(ξ_n−i)) + i h'[i c(ξ')/(4(ξ_n−i)) + (c(ξ')+i c(dx_n))/(4(ξ_n−i)²)]
        let lhs = sigma_m1.d_xn()?.to_sphere()?.pi_plus()?;
        let ih = h1().scale(&i);
        let first = fr
            .dcp
            .scale_by(&GaussianRational::ratio(1, 2))
            .add(&fr.cp.scale_poly(&ih).scale_by(&GaussianRational::complex(0, 1, 1, 4)))?;
        let second = fr
            .cp
            .add(&fr.cn.scale_by(&i))?
            .scale_poly(&ih)
            .scale_by(&GaussianRational::ratio(1, 4));
        let want = sphere_sum(n, vec![(values(&first)?, 1, 0), (second, 2, 0)])?;
        out.push(check_symbol("projection.normal-derivative-first-order-inverse", p, n, &lhs, &want, &rel)?);

        // printed with an overall minus sign: −(c(ξ') + i c(dx_n)) / (2(ξ_n − i))
        let lhs = sigma_m1.to_sphere()?.pi_plus()?;
        let num = fr.cp.add(&fr.cn.scale_by(&i))?.scale_by(&GaussianRational::ratio(-1, 2));
        out.push(check_symbol("projection.first-order-inverse", p, n, &lhs, &sphere_sum(n, vec![(num, 1, 0)])?, &rel)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// integrands

fn tr(a: &BoundarySymbol, b: &BoundarySymbol) -> Result<XiRational> {
    a.trace_with(b)
}

/// Printed right-hand sides of the integrand identities, by id.
fn printed_integrands(n: usize) -> Vec<(&'static str, XiRational)> {
    let h = h1();
    let c = |re: i64, im: i64| g(re, im);
    match n {
        4 => vec![
            ("integrand.a-II.curvature", frac(n, xp(n, &[(0, 1), (-1, 0), (0, -2)]).mul(&h).scale(&c(-16, 0)), 4, 3)),
            ("integrand.a-II.frame", frac(n, xp(n, &[(-1, 0), (0, 0), (3, 0)]).mul(&h).scale(&c(0, -8)), 4, 3)),
            ("integrand.a-III.curvature", frac(n, xp(n, &[(0, 1), (-3, 0)]).mul(&h).scale(&c(8, 0)), 4, 3)),
            ("integrand.a-III.frame", frac(n, xp(n, &[(0, 0), (1, 0)]).mul(&h).scale(&c(0, -8)), 4, 2)),
            ("integrand.b.curvature", frac(n, xp(n, &[(0, 4), (-1, 0), (0, -1)]).mul(&h).scale(&c(0, 2)), 3, 2)),
            (
                "integrand.b.frame",
                frac(n, h.scale(&c(0, 6)), 2, 2).add(&frac(n, xp(n, &[(-2, 0), (0, -1), (1, 0)]).mul(&h).scale(&c(2, 0)), 3, 2)),
            ),
        ],
        6 => vec![
            ("integrand.a-II.curvature", frac(n, xp(n, &[(-1, 0), (0, -3), (5, 0), (0, 3)]).mul(&h).scale(&c(64, 0)), 6, 4)),
            ("integrand.a-II.conformal", frac(n, xp(n, &[(0, -1), (3, 0), (0, 5), (-3, 0)]).scale(&c(-128, 0)), 5, 4)),
            ("integrand.a-III.curvature", frac(n, xp(n, &[(0, 1), (-4, 0), (0, -1)]).mul(&h).scale(&c(64, 0)), 5, 4)),
            ("integrand.a-III.conformal", frac(n, xp(n, &[(1, 0), (0, 4), (-3, 0)]).scale(&c(-32, 0)), 5, 3)),
            ("integrand.c.curvature", frac(n, xp(n, &[(0, 4), (-11, 0), (0, -6), (3, 0)]).mul(&h).scale(&c(8, 0)), 5, 3)),
            ("integrand.c.frame", frac(n, xp(n, &[(3, 0), (0, 12), (3, 0)]).mul(&h).scale(&c(8, 0)), 4, 3)),
        ],
        _ => Vec::new(),
    }
}

fn printed(n: usize, id: &str) -> XiRational {
    printed_integrands(n)
        .into_iter()
        .find(|(k, _)| *k == id)
        .map(|(_, v)| v)
        .unwrap_or_else(|| XiRational::zero(n))
}

/// Engine-side left-hand sides of the integrand identities.
fn engine_integrands(n: usize) -> Result<Vec<(&'static str, XiRational)>> {
    let fr = Frame::new(n)?;
    let s1 = fr.first_order_inverse();
    let pp = s1.to_sphere()?.pi_plus()?;
    let dpp = pp.d_xi(n)?;
    let mut out = Vec::new();
    match n {
        4 => {
            let r = s1.d_xi(n)?.d_xi(n)?.to_sphere()?;
            out.push(("integrand.a-II.curvature", tr(&fr.curvature_part().to_sphere()?.pi_plus()?, &r)?));
            out.push(("integrand.a-II.frame", tr(&fr.frame_part().to_sphere()?.pi_plus()?, &r)?));
            out.push(("integrand.a-III.curvature", tr(&dpp, &fr.curvature_part().d_xi(n)?.to_sphere()?)?));
            out.push(("integrand.a-III.frame", tr(&dpp, &fr.frame_part().d_xi(n)?.to_sphere()?)?));
            let r = s1.d_xi(n)?.to_sphere()?;
            out.push(("integrand.b.curvature", tr(&fr.curvature_projection()?, &r)?));
            out.push(("integrand.b.frame", tr(&fr.frame_projection()?, &r)?));
        }
        6 => {
            let s3 = fr.third_order_inverse();
            let r2 = s3.d_xi(n)?.d_xi(n)?.to_sphere()?;
            let left = s1.d_xn()?.to_sphere()?.pi_plus()?;
            out.push(("integrand.a-II.curvature", tr(&left, &r2)?));
            out.push(("integrand.a-II.conformal", tr(&pp, &r2)?));
            out.push(("integrand.a-III.curvature", tr(&dpp, &s3.d_xn()?.d_xi(n)?.to_sphere()?)?));
            let r1 = s3.d_xi(n)?.to_sphere()?;
            out.push(("integrand.a-III.conformal", tr(&dpp, &r1)?));
            out.push(("integrand.c.curvature", tr(&fr.curvature_projection()?, &r1)?));
            out.push(("integrand.c.frame", tr(&fr.frame_projection()?, &r1)?));
        }
        _ => {}
    }
    Ok(out)
}

/// Trace integrands before `ξ_n` integration against their printed closed forms.
pub fn integrands(n: usize) -> Result<Vec<IdentityCheck>> {
    let engine = engine_integrands(n)?;
    Ok(engine
        .iter()
        .map(|(id, got)| check_xi(id, IdentityGroup::Integrand, n, got, &printed(n, id)))
        .collect())
}

// ---------------------------------------------------------------------------
// consistency between the printed pieces and the engine's case integrands

fn case_by_id(n: usize, id: &str) -> Result<super::cases::CaseSpec> {
    enumerate_cases(n)?
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| crate::Error::InvalidCase(id.to_string()))
}

fn var(v: Var) -> ScalarPoly {
    ScalarPoly::var(v)
}

/// The full case integrands decompose into the printed pieces.
pub fn decompositions(n: usize) -> Result<Vec<IdentityCheck>> {
    let fr = Frame::new(n)?;
    let cg = IdentityGroup::Consistency;
    let s1 = fr.first_order_inverse();
    let pp = s1.to_sphere()?.pi_plus()?;
    let dpp = pp.d_xi(n)?;
    let mut out = Vec::new();
    match n {
        4 => {
            let f_part = tr(&pp, &s1.d_xi(n)?.d_xi(n)?.to_sphere()?)?
                .mul_poly(&var(Var::FInv).mul(&var(Var::DnF)));
            let want = printed(n, "integrand.a-II.curvature")
                .add(&printed(n, "integrand.a-II.frame"))
                .add(&f_part);
            let got = case_integrand(&case_by_id(n, "a-II")?, n)?;
            out.push(check_xi("decomposition.a-II", cg, n, &got, &want));

            let f_part = tr(&dpp, &s1.d_xi(n)?.to_sphere()?)?.mul_poly(&var(Var::F).mul(&var(Var::DnFInv)));
            let want = printed(n, "integrand.a-III.curvature")
                .add(&printed(n, "integrand.a-III.frame"))
                .add(&f_part);
            let got = case_integrand(&case_by_id(n, "a-III")?, n)?;
            out.push(check_xi("decomposition.a-III", cg, n, &got, &want));

            // remaining pieces of the lower-order parametrix: c(ξ)[b + c̄(θ) + c(θ')]c(ξ)/|ξ|⁴
            let rest = fr.b0_mixed.add(&cbar_theta(n)?)?.add(&c_theta_prime(n)?)?;
            let rest = fr.interior(triple(&fr.cx, &rest, &fr.cx)?, 2).to_sphere()?.pi_plus()?;
            let want = printed(n, "integrand.b.frame")
                .sub(&printed(n, "integrand.b.curvature"))
                .add(&tr(&rest, &s1.d_xi(n)?.to_sphere()?)?);
            let spec = case_by_id(n, "b")?;
            let got = case_integrand(&spec, n)?;
            out.push(check_xi("decomposition.b", cg, n, &got, &want));

            // tangential θ' components enter pointwise through odd integrands and
            // drop out on the sphere
            let tangential = |m: &crate::scalars::Monomial| m.factors().iter().any(|(v, _)| matches!(v, Var::ThP(_)));
            let pointwise = got.terms().any(|(_, p)| p.terms().any(|(m, _)| tangential(m)));
            let density = super::engine::integrate_case(&got, &spec, n)?;
            let survives = density.as_poly().terms().any(|(m, _)| tangential(m));
            out.push(IdentityCheck::new(
                "decomposition.odd-tangential-piece",
                cg,
                n,
                pointwise && !survives,
                format!("pointwise {pointwise}, after integration {survives}"),
            ));
        }
        6 => {
            let want = printed(n, "integrand.a-II.curvature")
                .add(&printed(n, "integrand.a-II.conformal").mul_poly(&var(Var::FInv).mul(&var(Var::DnF))));
            let got = case_integrand(&case_by_id(n, "a-II")?, n)?;
            out.push(check_xi("decomposition.a-II", cg, n, &got, &want));

            let want = printed(n, "integrand.a-III.curvature")
                .add(&printed(n, "integrand.a-III.conformal").mul_poly(&var(Var::F).mul(&var(Var::DnFInv))));
            let got = case_integrand(&case_by_id(n, "a-III")?, n)?;
            out.push(check_xi("decomposition.a-III", cg, n, &got, &want));
        }
        _ => {}
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// lemma cross-checks

fn filter_symbol<P>(s: &BoundarySymbol, keep: P) -> Result<BoundarySymbol>
where
    P: Fn(&crate::scalars::Monomial) -> bool + Sync,
{
    let mut out = BoundarySymbol::zero(s.dim(), s.stage());
    for (d, num) in s.terms() {
        let kept = num.map_entries(|e| Ok(Jet::constant(e.value.filter(&keep))))?;
        out = out.add(&BoundarySymbol::interior(kept, d.q, false))?;
    }
    Ok(out)
}

fn mentions(m: &crate::scalars::Monomial, vars: &[fn(&Var) -> bool]) -> bool {
    m.factors().iter().any(|(v, _)| vars.iter().any(|p| p(v)))
}

fn is_theta_prime(v: &Var) -> bool {
    matches!(v, Var::ThP(_) | Var::GThpN)
}

fn is_theta(v: &Var) -> bool {
    matches!(v, Var::Th(_))
}

/// Unweighted triple product `D* D D*` to orders 3 and 2.
pub fn unweighted_triple(n: usize) -> Result<GradedSymbol> {
    let adj = provider_novikov(n, NovikovVariant::Adjoint)?;
    let plain = provider_novikov(n, NovikovVariant::Plain)?;
    compose(&compose(&adj, &plain, 1)?, &adj, 2)
}

/// `c(df)` at the boundary point.
fn c_df(n: usize) -> Result<CliffordElement> {
    let mut comps: Vec<Jet> = (1..n as u8)
        .map(|j| Jet::constant(var(Var::DjF(j))))
        .collect();
    comps.push(Jet::constant(var(Var::DnF)));
    c_covector(n, &comps)
}

/// `|ξ|²` at the boundary point, values only.
fn square_length(n: usize) -> ScalarPoly {
    var(Var::Sq).add(&var(Var::Xi(n as u8)).pow(2))
}

/// Symbol calculus against closed forms of the parametrices and the triple
/// product, plus the two anchors of the connection data.
pub fn lemmas(n: usize) -> Result<Vec<IdentityCheck>> {
    let fr = Frame::new(n)?;
    let l = IdentityGroup::Lemma;
    let i = GaussianRational::i();
    let tangential = Relations::tangential(n);
    let analytic = Relations::tangential(n).with_analytic(true);
    let mut out = Vec::new();

    // parametrix of the first-order operator
    let plain = provider_novikov(n, NovikovVariant::Plain)?;
    let inv = provider_inverse(&plain)?;
    let sigma0 = crate::symbols::zeroth_order_part(n, NovikovVariant::Plain)?;
    let q = square_length(n);
    let want = BoundarySymbol::interior(triple(&fr.cx, &sigma0, &fr.cx)?, 2, false)
        .add(&BoundarySymbol::interior(triple(&fr.cx, &fr.cn, &fr.dcp)?, 2, false))?
        .sub(&BoundarySymbol::interior(
            triple(&fr.cx, &fr.cn, &fr.cx)?.scale_poly(&h1().mul(&var(Var::Sq))),
            3,
            false,
        ))?;
    out.push(check_symbol("lemma.first-order-parametrix", l, n, inv.require(-2)?, &want, &tangential)?);

    let prod = compose(&plain, &inv, -1)?;
    let one = BoundarySymbol::interior(CliffordElement::identity(n), 0, true);
    let ok = prod.require(0)?.sub(&one)?.is_zero(&tangential)? && prod.part_or_zero(-1).is_zero(&tangential)?;
    out.push(IdentityCheck::new("lemma.first-order-composition", l, n, ok, String::new()));

    if n == 4 {
        let want = fr.cn.scale_poly(&h1().scale(&GaussianRational::ratio(-3, 4)));
        let ok = fr.b0_pure.sub(&want)?.is_zero();
        out.push(IdentityCheck::new("lemma.connection-normal-coefficient", l, n, ok, String::new()));
    }
    if n == 6 {
        out.push(check_poly(
            "lemma.connection-contraction",
            l,
            n,
            &fr.conn.contracted(n),
            &h1().scale(&GaussianRational::ratio(5, 2)),
        ));

        let t = provider_triple(n)?;
        let free = unweighted_triple(n)?;
        let want = BoundarySymbol::interior(
            fr.cx.scale_poly(&q).scale_poly(&var(Var::F)).scale_by(&i),
            0,
            false,
        );
        out.push(check_symbol("lemma.triple-leading", l, n, t.require(3)?, &want, &analytic)?);

        // σ₂ = f σ₂(D*DD*) + 2 c(df)|ξ|²
        let want = free
            .require(2)?
            .scale(&Jet::constant(var(Var::F)))
            .add(&BoundarySymbol::interior(c_df(n)?.scale_poly(&q).scale_by(&g(2, 0)), 0, false))?;
        out.push(check_symbol("lemma.triple-conformal-term", l, n, t.require(2)?, &want, &analytic)?);

        // θ-dependent parts of σ₂(D*DD*): −2[c(ξ)c(θ')c(ξ) + |ξ|²c(θ')] + |ξ|²(c̄(θ) − c(θ'))
        let s2 = free.require(2)?;
        let ctp = c_theta_prime(n)?;
        let got = filter_symbol(s2, |m| mentions(m, &[is_theta_prime]))?;
        let want_num = triple(&fr.cx, &ctp, &fr.cx)?
            .add(&ctp.scale_poly(&q))?
            .scale_by(&g(-2, 0))
            .sub(&ctp.scale_poly(&q))?;
        let want = BoundarySymbol::interior(want_num, 0, false);
        out.push(check_symbol("lemma.triple-theta-prime", l, n, &got, &want, &tangential)?);

        // the same part re-derived by expanding the three factors by hand
        let want_num = triple(&fr.cx, &ctp, &fr.cx)?
            .scale_by(&g(-1, 0))
            .sub(&ctp.scale_poly(&q).scale_by(&g(2, 0)))?;
        let want = BoundarySymbol::interior(want_num, 0, false);
        out.push(check_symbol("consistency.triple-theta-prime-expanded", IdentityGroup::Consistency, n, &got, &want, &tangential)?);
        let got = filter_symbol(s2, |m| mentions(m, &[is_theta]))?;
        let want = BoundarySymbol::interior(cbar_theta(n)?.scale_poly(&q), 0, false);
        out.push(check_symbol("lemma.triple-theta", l, n, &got, &want, &tangential)?);

        // parametrix of the weighted triple product
        let tinv = provider_inverse(&t)?;
        let want = BoundarySymbol::interior(fr.cx.scale_poly(&var(Var::FInv)).scale_by(&i), 2, false);
        out.push(check_symbol("lemma.triple-parametrix-leading", l, n, tinv.require(-3)?, &want, &analytic)?);

        let finv = Jet::constant(var(Var::FInv));
        let free_inv = provider_inverse(&free)?;
        let finv_sq = var(Var::FInv).pow(2);
        let first = triple(&fr.cx, &c_df(n)?, &fr.cx)?.scale_poly(&finv_sq.scale(&g(2, 0)));
        let mut inner = CliffordElement::zero(n);
        for j in 1..=n {
            let d = if j == n { var(Var::DnFInv) } else { var(Var::DjFInv(j as u8)) };
            let cj = CliffordElement::c(n, j)?;
            let term = cj
                .scale_poly(&q)
                .add(&values(&fr.cx)?.scale_poly(&var(Var::Xi(j as u8)).scale(&g(2, 0))))?
                .scale_poly(&d);
            inner = inner.add(&term)?;
        }
        // i c(ξ) [...] D_{x_j}(f⁻¹) c(ξ) with D = −i∂
        let second = triple(&fr.cx, &inner, &fr.cx)?;
        let want = free_inv
            .require(-4)?
            .scale(&finv)
            .add(&BoundarySymbol::interior(first, 3, false))?
            .add(&BoundarySymbol::interior(second, 4, false))?;
        out.push(check_symbol("lemma.triple-parametrix-conformal-terms", l, n, tinv.require(-4)?, &want, &analytic)?);

        let prod = compose(&t, &tinv, -1)?;
        let ok = prod.require(0)?.sub(&one)?.is_zero(&analytic)? && prod.part_or_zero(-1).is_zero(&analytic)?;
        out.push(IdentityCheck::new("lemma.triple-composition", l, n, ok, String::new()));
    }
    Ok(out)
}

/// Every identity family for one dimension.
pub fn all(n: usize) -> Result<Vec<IdentityCheck>> {
    let mut out = trace_table(n)?;
    out.extend(projections(n)?);
    out.extend(integrands(n)?);
    out.extend(decompositions(n)?);
    out.extend(lemmas(n)?);
    Ok(out)
}
