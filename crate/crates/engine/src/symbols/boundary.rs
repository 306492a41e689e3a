use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::integrate::XiRational;
use crate::scalars::{
    apply_relations, expand_square_length, GaussianRational, Jet, ScalarPoly, Var,
};

use super::laurent::{laurent_at_i, pole_product};

/// Whether a symbol still depends on `|ξ'|` symbolically or has been restricted
/// to the unit tangential sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// Denominators are powers of `|ξ|²_g`, numerators carry `x_n` jets.
    Interior,
    /// `|ξ'| = 1`; denominators are `(ξ_n − i)^a (ξ_n + i)^b`.
    Sphere,
}

/// Denominator of a term. Interior terms use only `q`, sphere terms only
/// `minus`/`plus`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Denom {
    pub q: u32,
    pub minus: u32,
    pub plus: u32,
}

impl Denom {
    pub fn interior(q: u32) -> Self {
        Self { q, minus: 0, plus: 0 }
    }

    pub fn poles(minus: u32, plus: u32) -> Self {
        Self { q: 0, minus, plus }
    }

    fn combine(self, o: Self) -> Self {
        Self {
            q: self.q + o.q,
            minus: self.minus + o.minus,
            plus: self.plus + o.plus,
        }
    }
}

/// Clifford-valued rational function of the covariables at the boundary point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySymbol {
    n: usize,
    stage: Stage,
    /// Whether the `x_n` slopes of the numerators are the true normal derivatives.
    exact_jets: bool,
    terms: BTreeMap<Denom, CliffordElement>,
}

/// `|ξ|²_g = h(x_n)|ξ'|² + ξ_n²` as a jet.
pub fn square_length_jet(n: usize) -> Jet {
    let xn = ScalarPoly::var(Var::Xi(n as u8));
    let sq = ScalarPoly::var(Var::Sq);
    Jet::new(sq.add(&xn.mul(&xn)), sq.mul(&ScalarPoly::var(Var::H1)))
}

fn xi_derivative_of_square_length(n: usize, j: usize) -> Jet {
    let xj = ScalarPoly::var(Var::Xi(j as u8)).scale(&GaussianRational::from_int(2));
    if j < n {
        Jet::new(xj.clone(), xj.mul(&ScalarPoly::var(Var::H1)))
    } else {
        Jet::constant(xj)
    }
}

impl BoundarySymbol {
    pub fn zero(n: usize, stage: Stage) -> Self {
        Self {
            n,
            stage,
            exact_jets: true,
            terms: BTreeMap::new(),
        }
    }

    /// `numerator / |ξ|^(2q)`.
    pub fn interior(numerator: CliffordElement, q: u32, exact_jets: bool) -> Self {
        let mut s = Self::zero(numerator.dim(), Stage::Interior);
        s.exact_jets = exact_jets;
        s.push(Denom::interior(q), numerator);
        s
    }

    /// `numerator / ((ξ_n − i)^minus (ξ_n + i)^plus)`.
    pub fn sphere(numerator: CliffordElement, minus: u32, plus: u32) -> Self {
        let mut s = Self::zero(numerator.dim(), Stage::Sphere);
        s.push(Denom::poles(minus, plus), numerator);
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn exact_jets(&self) -> bool {
        self.exact_jets
    }

    pub fn with_exact_jets(mut self, exact: bool) -> Self {
        self.exact_jets = exact;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Denom, &CliffordElement)> {
        self.terms.iter()
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, d: Denom, num: CliffordElement) {
        if num.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(prev) => {
                let sum = prev.add(&num).unwrap_or(prev);
                if !sum.is_zero() {
                    self.terms.insert(d, sum);
                }
            }
            None => {
                self.terms.insert(d, num);
            }
        }
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: o.n,
            });
        }
        if self.stage != o.stage {
            return Err(Error::Stage(format!(
                "cannot combine {:?} with {:?}",
                self.stage, o.stage
            )));
        }
        Ok(())
    }

    fn empty_like(&self) -> Self {
        Self {
            n: self.n,
            stage: self.stage,
            exact_jets: self.exact_jets,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.clone();
        out.exact_jets = self.exact_jets && o.exact_jets;
        for (d, num) in &o.terms {
            out.push(*d, num.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_numerators(CliffordElement::neg)
    }

    /// Product of symbols (`symbol_mul`).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.empty_like();
        out.exact_jets = self.exact_jets && o.exact_jets;
        if !out.exact_jets {
            // slopes of the product would be meaningless, skip them
            let (a, b) = (self.values_only()?, o.values_only()?);
            for (da, x) in &a.terms {
                for (db, y) in &b.terms {
                    out.push(da.combine(*db), x.mul(y)?);
                }
            }
            return Ok(out);
        }
        for (da, a) in &self.terms {
            for (db, b) in &o.terms {
                out.push(da.combine(*db), a.mul(b)?);
            }
        }
        Ok(out)
    }

    fn values_only(&self) -> Result<Self> {
        if self.terms.values().all(|e| e.entries().all(|(_, _, j)| j.slope.is_zero())) {
            return Ok(self.clone());
        }
        self.try_map_numerators(|e| e.map_entries(|j| Ok(j.at_boundary())))
    }

    /// Multiplies by a Clifford element on the left.
    pub fn left_mul(&self, e: &CliffordElement) -> Result<Self> {
        let mut out = self.empty_like();
        for (d, num) in &self.terms {
            out.push(*d, e.mul(num)?);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Jet) -> Self {
        self.map_numerators(|e| e.scale(s))
    }

    pub fn scale_by(&self, c: &GaussianRational) -> Self {
        self.map_numerators(|e| e.scale_by(c))
    }

    fn map_numerators<G>(&self, f: G) -> Self
    where
        G: Fn(&CliffordElement) -> CliffordElement,
    {
        let mut out = self.empty_like();
        for (d, num) in &self.terms {
            out.push(*d, f(num));
        }
        out
    }

    fn try_map_numerators<G>(&self, f: G) -> Result<Self>
    where
        G: Fn(&CliffordElement) -> Result<CliffordElement>,
    {
        let mut out = self.empty_like();
        for (d, num) in &self.terms {
            out.push(*d, f(num)?);
        }
        Ok(out)
    }

    /// Applies scalar relations to every entry (value and slope).
    pub fn normalize(&self, rel: &crate::scalars::Relations) -> Result<Self> {
        let n = self.n;
        self.try_map_numerators(|e| e.map_entries(|j| Ok(j.map(|p| apply_relations(p, rel, n)))))
    }

    /// `∂/∂ξ_j`, `1 <= j <= n`.
    pub fn d_xi(&self, j: usize) -> Result<Self> {
        let n = self.n;
        if j == 0 || j > n {
            return Err(Error::DimensionMismatch { expected: n, found: j });
        }
        let xj = Var::Xi(j as u8);
        let two_xj = ScalarPoly::var(xj).scale(&GaussianRational::from_int(2));
        let image = move |v: Var| -> Result<Option<ScalarPoly>> {
            Ok(match v {
                w if w == xj => Some(ScalarPoly::one()),
                Var::Sq if j < n => Some(two_xj.clone()),
                _ => None,
            })
        };
        let mut out = self.empty_like();
        match self.stage {
            Stage::Interior => {
                let dq = CliffordElement::scalar(n, xi_derivative_of_square_length(n, j));
                for (d, num) in &self.terms {
                    out.push(*d, num.map_entries(|e| e.derive(&image))?);
                    if d.q > 0 {
                        let k = GaussianRational::from_int(-i64::from(d.q));
                        out.push(Denom::interior(d.q + 1), dq.mul(num)?.scale_by(&k));
                    }
                }
            }
            Stage::Sphere => {
                if j != n {
                    return Err(Error::Stage(
                        "tangential covariable derivative after sphere restriction".into(),
                    ));
                }
                for (d, num) in &self.terms {
                    out.push(*d, num.map_entries(|e| e.derive(&image))?);
                    if d.minus > 0 {
                        let k = GaussianRational::from_int(-i64::from(d.minus));
                        out.push(Denom::poles(d.minus + 1, d.plus), num.scale_by(&k));
                    }
                    if d.plus > 0 {
                        let k = GaussianRational::from_int(-i64::from(d.plus));
                        out.push(Denom::poles(d.minus, d.plus + 1), num.scale_by(&k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∂/∂x_n` at the boundary point. The result no longer carries slopes.
    pub fn d_xn(&self) -> Result<Self> {
        if self.stage != Stage::Interior {
            return Err(Error::Stage("normal derivative after sphere restriction".into()));
        }
        if !self.exact_jets {
            return Err(Error::DerivativeUnavailable(
                "normal derivative of a symbol without exact jets".into(),
            ));
        }
        let n = self.n;
        let dq = Jet::constant(square_length_jet(n).slope);
        let mut out = self.empty_like();
        out.exact_jets = false;
        for (d, num) in &self.terms {
            out.push(*d, num.map_entries(|e| Ok(Jet::constant(e.slope.clone())))?);
            if d.q > 0 {
                let at0 = num.map_entries(|e| Ok(e.at_boundary()))?;
                let k = GaussianRational::from_int(-i64::from(d.q));
                out.push(Denom::interior(d.q + 1), at0.scale(&dq).scale_by(&k));
            }
        }
        Ok(out)
    }

    /// `∂/∂x_j` for a tangential direction `j < n` at the boundary point.
    ///
    /// Metric data is flat to first order along the boundary in normal coordinates,
    /// so only the conformal factor contributes.
    pub fn d_x_tangential(&self, j: usize) -> Result<Self> {
        let n = self.n;
        if j == 0 || j >= n {
            return Err(Error::DimensionMismatch { expected: n - 1, found: j });
        }
        let jj = j as u8;
        let image = move |v: Var| -> Result<Option<ScalarPoly>> {
            match v {
                Var::F => Ok(Some(ScalarPoly::var(Var::DjF(jj)))),
                Var::FInv => Ok(Some(ScalarPoly::var(Var::DjFInv(jj)))),
                Var::H1 | Var::Pi | Var::Omega | Var::Sq | Var::Xi(_) => Ok(None),
                other => Err(Error::DerivativeUnavailable(format!(
                    "tangential derivative of {other}"
                ))),
            }
        };
        let mut out = self
            .try_map_numerators(|e| e.map_entries(|x| Ok(Jet::constant(x.value.derive(&image)?))))?;
        out.exact_jets = false;
        Ok(out)
    }

    /// `D_{x_l} = −i ∂_{x_l}`.
    pub fn d_x(&self, l: usize) -> Result<Self> {
        let d = if l == self.n {
            self.d_xn()?
        } else {
            self.d_x_tangential(l)?
        };
        Ok(d.scale_by(&-GaussianRational::i()))
    }

    /// Drops the slopes and restricts to `|ξ'| = 1`.
    pub fn to_sphere(&self) -> Result<Self> {
        if self.stage == Stage::Sphere {
            return Ok(self.clone());
        }
        let n = self.n;
        let rel = crate::scalars::Relations::sphere(n);
        let mut out = Self::zero(n, Stage::Sphere);
        for (d, num) in &self.terms {
            let v = num.map_entries(|e| Ok(Jet::constant(apply_relations(&e.value, &rel, n))))?;
            out.push(Denom::poles(d.q, d.q), v);
        }
        Ok(out)
    }

    fn require_sphere(&self, what: &str) -> Result<()> {
        if self.stage != Stage::Sphere {
            return Err(Error::Stage(format!("{what} needs |ξ'| = 1")));
        }
        Ok(())
    }

    fn xn(&self) -> Var {
        Var::Xi(self.n as u8)
    }

    /// Whether every term decays like `|ξ_n|^(-1)`.
    fn decays_termwise(&self) -> bool {
        let xn = self.xn();
        self.terms.iter().all(|(d, num)| {
            let deg = num
                .entries()
                .map(|(_, _, j)| u32::from(j.value.degree_in(xn)))
                .max()
                .unwrap_or(0);
            deg < d.minus + d.plus
        })
    }

    /// Rewrites all terms over the common denominator.
    pub fn consolidate(&self) -> Result<Self> {
        self.require_sphere("consolidation")?;
        let xn = self.xn();
        let a = self.terms.keys().map(|d| d.minus).max().unwrap_or(0);
        let b = self.terms.keys().map(|d| d.plus).max().unwrap_or(0);
        let rel = crate::scalars::Relations::sphere(self.n);
        let n = self.n;
        let mut acc = CliffordElement::zero(n);
        for (d, num) in &self.terms {
            let factor = Jet::constant(pole_product(xn, a - d.minus, b - d.plus));
            acc = acc.add(&num.scale(&factor))?;
        }
        let acc = acc.map_entries(|e| Ok(e.map(|p| apply_relations(p, &rel, n))))?;
        let mut out = self.empty_like();
        out.push(Denom::poles(a, b), acc);
        Ok(out)
    }

    /// Boutet de Monvel projection: the principal parts at `ξ_n = +i` (`pi_plus`).
    pub fn pi_plus(&self) -> Result<Self> {
        self.require_sphere("the projection")?;
        let src = if self.decays_termwise() {
            self.clone()
        } else {
            let c = self.consolidate()?;
            if !c.decays_termwise() {
                return Err(Error::NonDecaying(format!("{} terms", self.terms.len())));
            }
            c
        };
        let n = self.n;
        let xn = self.xn();
        let mut out = self.empty_like();
        for (d, num) in &src.terms {
            if d.minus == 0 {
                continue;
            }
            let mut parts: Vec<Vec<(u32, u32, Jet)>> = vec![Vec::new(); d.minus as usize];
            for (r, c, e) in num.entries() {
                for (k, g) in laurent_at_i(&e.value, xn, d.minus, d.plus).into_iter().enumerate() {
                    if !g.is_zero() {
                        parts[k].push((r, c, Jet::constant(g)));
                    }
                }
            }
            for (k, p) in parts.into_iter().enumerate() {
                out.push(
                    Denom::poles(d.minus - k as u32, 0),
                    CliffordElement::from_entries(n, p),
                );
            }
        }
        Ok(out)
    }

    /// `π⁻ = id − π⁺`.
    pub fn pi_minus(&self) -> Result<Self> {
        self.sub(&self.pi_plus()?)
    }

    /// Exact zero test after normalizing with `rel`.
    ///
    /// Interior symbols are compared over the common power of `|ξ|²`, with `|ξ'|²`
    /// expanded; slopes are compared only when the jets are exact.
    pub fn is_zero(&self, rel: &crate::scalars::Relations) -> Result<bool> {
        let n = self.n;
        match self.stage {
            Stage::Interior => {
                let top = self.terms.keys().map(|d| d.q).max().unwrap_or(0);
                let q = square_length_jet(n);
                let mut acc = CliffordElement::zero(n);
                for (d, num) in &self.terms {
                    let mut f = Jet::one();
                    for _ in d.q..top {
                        f = f.mul(&q);
                    }
                    acc = acc.add(&num.scale(&f))?;
                }
                let check_slope = self.exact_jets;
                for (_, _, e) in acc.entries() {
                    let v = apply_relations(&expand_square_length(&e.value, n), rel, n);
                    if !v.is_zero() {
                        return Ok(false);
                    }
                    if check_slope {
                        let s = apply_relations(&expand_square_length(&e.slope, n), rel, n);
                        if !s.is_zero() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Stage::Sphere => {
                let c = self.consolidate()?;
                let rel = crate::scalars::Relations::sphere(n).with_analytic(rel.analytic_conformal);
                for num in c.terms.values() {
                    for (_, _, e) in num.entries() {
                        if !apply_relations(&e.value, &rel, n).is_zero() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    /// Homogeneity degree in `ξ` if all terms share one (interior stage only).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.stage != Stage::Interior {
            return None;
        }
        let mut deg: Option<i64> = None;
        for (d, num) in &self.terms {
            for (_, _, e) in num.entries() {
                for (m, _) in e.value.terms().chain(e.slope.terms()) {
                    let k = i64::from(m.xi_degree()) - 2 * i64::from(d.q);
                    match deg {
                        None => deg = Some(k),
                        Some(prev) if prev != k => return None,
                        _ => {}
                    }
                }
            }
        }
        deg
    }

    /// The symbol evaluated at `λξ` (interior stage only).
    pub fn xi_scaled(&self, lambda: i64) -> Result<Self> {
        if self.stage != Stage::Interior {
            return Err(Error::Stage("scaling needs the symbolic |ξ'|".into()));
        }
        let lam = GaussianRational::from_int(lambda);
        let inv = lam.inverse()?;
        let scale_poly = |p: &ScalarPoly| {
            let mut out = ScalarPoly::zero();
            for (m, c) in p.terms() {
                out.add_term(m.clone(), &(c * &lam.pow(m.xi_degree())));
            }
            out
        };
        self.try_map_numerators(|e| e.map_entries(|j| Ok(j.map(scale_poly))))
            .map(|mut s| {
                let terms = std::mem::take(&mut s.terms);
                for (d, num) in terms {
                    let f = inv.pow(2 * d.q);
                    s.push(d, num.scale_by(&f));
                }
                s
            })
    }

    /// `tr(self · other)` as a scalar rational function of `ξ_n`.
    pub fn trace_with(&self, other: &Self) -> Result<XiRational> {
        self.compatible(other)?;
        self.require_sphere("the trace integrand")?;
        let mut out = XiRational::zero(self.n);
        for (da, a) in &self.terms {
            for (db, b) in &other.terms {
                let t = a.trace_product(b)?;
                out.add_term(da.minus + db.minus, da.plus + db.plus, &t.value);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BoundarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, num) in &self.terms {
            match self.stage {
                Stage::Interior => writeln!(f, "/ |xi|^{}:", 2 * d.q)?,
                Stage::Sphere => writeln!(f, "/ (xi_n-i)^{} (xi_n+i)^{}:", d.minus, d.plus)?,
            }
            write!(f, "{num}")?;
        }
        Ok(())
    }
}
