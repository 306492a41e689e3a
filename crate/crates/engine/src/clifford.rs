//! Concrete matrix model of the two anticommuting Clifford actions on the exterior
//! algebra `Λ*(R^n)`.
//!
//! Basis vectors are indexed by subsets of `{1..n}` stored as bitmasks. For a unit
//! covector `e_i`, `c(e_i) = ε_i − ι_i` and `c̄(e_i) = ε_i + ι_i`, where `ε_i` is the
//! wedge product and `ι_i` the contraction. Matrices are kept row-sparse and the
//! generator action is a subset toggle with a sign.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Jet, ScalarPoly, Var};

/// Which of the two Clifford actions a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// `c(e) = ε − ι`, squares to `−1`.
    Left,
    /// `c̄(e) = ε + ι`, squares to `+1`.
    Right,
}

/// Element of `End(Λ*(R^n))` with jet-valued entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    /// `rows[r]` lists `(column, entry)` sorted by column, without zero entries.
    rows: Vec<Vec<(u32, Jet)>>,
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: i,
        });
    }
    Ok(())
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rows: vec![Vec::new(); 1 << n],
        }
    }

    pub fn scalar(n: usize, s: Jet) -> Self {
        if s.is_zero() {
            return Self::zero(n);
        }
        Self {
            n,
            rows: (0..1u32 << n).map(|r| vec![(r, s.clone())]).collect(),
        }
    }

    /// Builds an element from `(row, column, entry)` triples; repeated positions add up.
    pub fn from_entries<I>(n: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Jet)>,
    {
        let mut maps: Vec<BTreeMap<u32, Jet>> = vec![BTreeMap::new(); 1 << n];
        for (r, c, j) in entries {
            maps[r as usize].entry(c).or_default().add_assign(&j);
        }
        Self::from_maps(n, maps)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Jet::one())
    }

    /// Generator `c(e_i)` or `c̄(e_i)` for `1 <= i <= n`.
    pub fn generator(n: usize, i: usize, action: Action) -> Result<Self> {
        check_index(n, i)?;
        let bit = 1u32 << (i - 1);
        let mut rows = vec![Vec::new(); 1 << n];
        for col in 0..1u32 << n {
            let below = (col & (bit - 1)).count_ones();
            let sign: i64 = if below.is_multiple_of(2) { 1 } else { -1 };
            let row = col ^ bit;
            let coeff = if col & bit == 0 {
                sign
            } else {
                match action {
                    Action::Left => -sign,
                    Action::Right => sign,
                }
            };
            rows[row as usize].push((col, Jet::int(coeff)));
        }
        Ok(Self { n, rows })
    }

    pub fn c(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, i, Action::Left)
    }

    pub fn cbar(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, i, Action::Right)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: u32, col: u32) -> Option<&Jet> {
        let r = self.rows.get(row as usize)?;
        r.binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|k| &r[k].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &Jet)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, j)| (r as u32, *c, j)))
    }

    fn same_dim(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: o.n,
            });
        }
        Ok(())
    }

    fn from_maps(n: usize, maps: Vec<BTreeMap<u32, Jet>>) -> Self {
        Self {
            n,
            rows: maps
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, j)| !j.is_zero()).collect())
                .collect(),
        }
    }

    fn combine(&self, o: &Self, sign: bool) -> Result<Self> {
        self.same_dim(o)?;
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| {
                let mut m: BTreeMap<u32, Jet> = a.iter().cloned().collect();
                for (c, j) in b {
                    let j = if sign { j.clone() } else { j.neg() };
                    match m.get_mut(c) {
                        Some(e) => e.add_assign(&j),
                        None => {
                            m.insert(*c, j);
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_maps(self.n, rows))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, false)
    }

    pub fn neg(&self) -> Self {
        self.map_entries_infallible(Jet::neg)
    }

    /// Matrix product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_dim(o)?;
        let row_product = |row: &Vec<(u32, Jet)>| {
            let mut acc: BTreeMap<u32, Jet> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &o.rows[*k as usize] {
                    let p = a.mul(b);
                    match acc.get_mut(c) {
                        Some(e) => e.add_assign(&p),
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc
        };
        let maps: Vec<BTreeMap<u32, Jet>> = if self.n >= 5 {
            self.rows.par_iter().map(row_product).collect()
        } else {
            self.rows.iter().map(row_product).collect()
        };
        Ok(Self::from_maps(self.n, maps))
    }

    /// Multiplies every entry by a scalar jet.
    pub fn scale(&self, s: &Jet) -> Self {
        self.map_entries_infallible(|j| s.mul(j))
    }

    pub fn scale_by(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        self.map_entries_infallible(|j| j.scale(c))
    }

    pub fn scale_poly(&self, p: &ScalarPoly) -> Self {
        self.scale(&Jet::constant(p.clone()))
    }

    fn map_entries_infallible<G>(&self, f: G) -> Self
    where
        G: Fn(&Jet) -> Jet + Sync,
    {
        Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, j)| (*c, f(j)))
                        .filter(|(_, j)| !j.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Applies `f` to every entry.
    pub fn map_entries<G>(&self, f: G) -> Result<Self>
    where
        G: Fn(&Jet) -> Result<Jet> + Sync,
    {
        let rows: Result<Vec<Vec<(u32, Jet)>>> = self
            .rows
            .par_iter()
            .map(|r| {
                let mut out = Vec::with_capacity(r.len());
                for (c, j) in r {
                    let v = f(j)?;
                    if !v.is_zero() {
                        out.push((*c, v));
                    }
                }
                Ok(out)
            })
            .collect();
        Ok(Self { n: self.n, rows: rows? })
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Jet {
        let mut acc = Jet::zero();
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(k) = row.binary_search_by_key(&(r as u32), |(c, _)| *c) {
                acc.add_assign(&row[k].1);
            }
        }
        acc
    }

    /// `tr(self * o)` without forming the product.
    pub fn trace_product(&self, o: &Self) -> Result<Jet> {
        self.same_dim(o)?;
        let mut acc = Jet::zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                if let Some(b) = o.entry(*k, r as u32) {
                    acc.add_assign(&a.mul(b));
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c, j) in self.entries() {
            writeln!(f, "[{r:0w$b},{c:0w$b}] {j}", w = self.n)?;
        }
        Ok(())
    }
}

/// All `2n` generators in dimension `n`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub c: Vec<CliffordElement>,
    pub cbar: Vec<CliffordElement>,
}

impl Generators {
    /// `c(e_i)`, one-based.
    pub fn c(&self, i: usize) -> &CliffordElement {
        &self.c[i - 1]
    }

    /// `c̄(e_i)`, one-based.
    pub fn cbar(&self, i: usize) -> &CliffordElement {
        &self.cbar[i - 1]
    }
}

/// Builds the generators for `n` in 1..=6 (`build_generators`).
pub fn build_generators(n: usize) -> Result<Generators> {
    if n == 0 || n > 6 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(Generators {
        c: (1..=n).map(|i| CliffordElement::c(n, i)).collect::<Result<_>>()?,
        cbar: (1..=n)
            .map(|i| CliffordElement::cbar(n, i))
            .collect::<Result<_>>()?,
    })
}

/// `Σ_k comps[k] c(e_{k+1})`.
pub fn c_covector(n: usize, comps: &[Jet]) -> Result<CliffordElement> {
    combination(n, comps, Action::Left)
}

/// `Σ_k comps[k] c̄(e_{k+1})`.
pub fn cbar_covector(n: usize, comps: &[Jet]) -> Result<CliffordElement> {
    combination(n, comps, Action::Right)
}

fn combination(n: usize, comps: &[Jet], action: Action) -> Result<CliffordElement> {
    if comps.len() > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: comps.len(),
        });
    }
    let mut acc = CliffordElement::zero(n);
    for (k, a) in comps.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let g = CliffordElement::generator(n, k + 1, action)?;
        acc = acc.add(&g.scale(a))?;
    }
    Ok(acc)
}

/// `c(ξ')` in boundary normal coordinates, to first order in `x_n`.
///
/// With `dx_i = √h(x_n) ẽ_i^*` and `h(0) = 1`, each tangential component picks up
/// the factor `1 + h'(0) x_n / 2`.
pub fn c_xi_prime(n: usize) -> Result<CliffordElement> {
    let half_h1 = ScalarPoly::var(Var::H1).scale(&GaussianRational::ratio(1, 2));
    let comps: Vec<Jet> = (1..n as u8)
        .map(|i| {
            let xi = ScalarPoly::var(Var::Xi(i));
            Jet::new(xi.clone(), xi.mul(&half_h1))
        })
        .collect();
    c_covector(n, &comps)
}

/// `c(ξ) = c(ξ') + ξ_n c(dx_n)`.
pub fn c_xi(n: usize) -> Result<CliffordElement> {
    let cn = CliffordElement::c(n, n)?;
    c_xi_prime(n)?.add(&cn.scale_poly(&ScalarPoly::var(Var::Xi(n as u8))))
}

/// `∂_{x_n} c(ξ')` at the boundary point.
pub fn d_normal_c_xi_prime(n: usize) -> Result<CliffordElement> {
    let c = c_xi_prime(n)?;
    c.map_entries(|j| Ok(Jet::constant(j.slope.clone())))
}

/// `c(θ')` with tangential components `THP_k` and normal component `GTHP_N`.
pub fn c_theta_prime(n: usize) -> Result<CliffordElement> {
    let mut comps: Vec<Jet> = (1..n as u8)
        .map(|k| Jet::constant(ScalarPoly::var(Var::ThP(k))))
        .collect();
    comps.push(Jet::constant(ScalarPoly::var(Var::GThpN)));
    c_covector(n, &comps)
}

/// `c̄(θ)` with components `TH_k`.
pub fn cbar_theta(n: usize) -> Result<CliffordElement> {
    let comps: Vec<Jet> = (1..=n as u8)
        .map(|k| Jet::constant(ScalarPoly::var(Var::Th(k))))
        .collect();
    cbar_covector(n, &comps)
}

/// Trace of an element (`trace`).
pub fn trace(a: &CliffordElement) -> Jet {
    a.trace()
}
