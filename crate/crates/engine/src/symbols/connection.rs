//! Levi-Civita data of the collar metric `g = h(x_n)^{-1} g_∂ + dx_n²` at a
//! boundary point, computed from metric jets.

use crate::clifford::{CliffordElement, Generators};
use crate::error::Result;
use crate::scalars::{jet_invert, GaussianRational, Jet, ScalarPoly, Var};

/// Connection coefficients at the boundary point in the orthonormal frame
/// `ẽ_i = √h ∂_i` (`i < n`), `ẽ_n = ∂_n`.
#[derive(Clone, Debug)]
pub struct Connection {
    n: usize,
    /// `christoffel[k][i][j] = Γ^k_{ij}` at the boundary point (zero-based).
    christoffel: Vec<Vec<Vec<ScalarPoly>>>,
    /// `omega[s][t][i] = ω_{s,t}(ẽ_i)`.
    omega: Vec<Vec<Vec<ScalarPoly>>>,
}

fn h_jet() -> Jet {
    Jet::new(ScalarPoly::one(), ScalarPoly::var(Var::H1))
}

/// Diagonal metric jets: `g_ii = 1/h` tangentially, `g_nn = 1`.
fn metric_diagonal(n: usize) -> Result<Vec<Jet>> {
    let inv_h = jet_invert(&h_jet())?;
    Ok((0..n)
        .map(|i| if i + 1 < n { inv_h.clone() } else { Jet::one() })
        .collect())
}

/// Diagonal frame coefficients `E_i^i`: `√h = 1 + h' x_n / 2` tangentially.
fn frame_diagonal(n: usize) -> Vec<Jet> {
    let half = ScalarPoly::var(Var::H1).scale(&GaussianRational::ratio(1, 2));
    (0..n)
        .map(|i| {
            if i + 1 < n {
                Jet::new(ScalarPoly::one(), half.clone())
            } else {
                Jet::one()
            }
        })
        .collect()
}

impl Connection {
    /// Derives the Christoffel symbols and the frame connection form.
    ///
    /// Only normal derivatives of the metric are nonzero at the boundary point.
    pub fn new(n: usize) -> Result<Self> {
        let g = metric_diagonal(n)?;
        let dg = |a: usize, b: usize, c: usize| -> ScalarPoly {
            // ∂_c g_ab
            if a == b && c + 1 == n {
                g[a].slope.clone()
            } else {
                ScalarPoly::zero()
            }
        };
        let half = GaussianRational::ratio(1, 2);
        let mut christoffel = vec![vec![vec![ScalarPoly::zero(); n]; n]; n];
        for (k, gk) in christoffel.iter_mut().enumerate() {
            let ginv = jet_invert(&g[k])?.value;
            for (i, gki) in gk.iter_mut().enumerate() {
                for (j, slot) in gki.iter_mut().enumerate() {
                    let s = dg(j, k, i).add(&dg(i, k, j)).sub(&dg(i, j, k));
                    *slot = s.mul(&ginv).scale(&half);
                }
            }
        }
        let e = frame_diagonal(n);
        let mut omega = vec![vec![vec![ScalarPoly::zero(); n]; n]; n];
        for (s, os) in omega.iter_mut().enumerate() {
            for (t, ost) in os.iter_mut().enumerate() {
                for (i, slot) in ost.iter_mut().enumerate() {
                    // ⟨∇_{ẽ_i} ẽ_t, ẽ_s⟩ at the point where the frame is the coordinate basis.
                    let mut v = christoffel[s][i][t].clone();
                    if i + 1 == n && s == t {
                        v.add_assign(&e[t].slope);
                    }
                    *slot = v;
                }
            }
        }
        Ok(Self {
            n,
            christoffel,
            omega,
        })
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &ScalarPoly {
        &self.christoffel[k - 1][i - 1][j - 1]
    }

    /// `ω_{s,t}(ẽ_i)`, one-based.
    pub fn omega(&self, s: usize, t: usize, i: usize) -> &ScalarPoly {
        &self.omega[s - 1][t - 1][i - 1]
    }

    /// Contracted symbol `Γ^k = g^{ij} Γ^k_{ij}` at the boundary point.
    pub fn contracted(&self, k: usize) -> ScalarPoly {
        let mut acc = ScalarPoly::zero();
        for i in 0..self.n {
            acc.add_assign(&self.christoffel[k - 1][i][i]);
        }
        acc
    }

    /// `¼ Σ ω_{s,t}(ẽ_i) c(ẽ_i) c̄(ẽ_s) c̄(ẽ_t)`.
    pub fn b0_mixed(&self, gens: &Generators) -> Result<CliffordElement> {
        self.quarter_sum(|i, s, t| {
            gens.c(i).mul(gens.cbar(s))?.mul(gens.cbar(t))
        }, GaussianRational::ratio(1, 4))
    }

    /// `−¼ Σ ω_{s,t}(ẽ_i) c(ẽ_i) c(ẽ_s) c(ẽ_t)`.
    pub fn b0_pure(&self, gens: &Generators) -> Result<CliffordElement> {
        self.quarter_sum(|i, s, t| {
            gens.c(i).mul(gens.c(s))?.mul(gens.c(t))
        }, GaussianRational::ratio(-1, 4))
    }

    fn quarter_sum<W>(&self, word: W, factor: GaussianRational) -> Result<CliffordElement>
    where
        W: Fn(usize, usize, usize) -> Result<CliffordElement>,
    {
        let mut acc = CliffordElement::zero(self.n);
        for i in 1..=self.n {
            for s in 1..=self.n {
                for t in 1..=self.n {
                    let w = self.omega(s, t, i);
                    if w.is_zero() {
                        continue;
                    }
                    acc = acc.add(&word(i, s, t)?.scale_poly(w))?;
                }
            }
        }
        Ok(acc.scale_by(&factor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_generators;

    fn h1(c: GaussianRational) -> ScalarPoly {
        ScalarPoly::var(Var::H1).scale(&c)
    }

    #[test]
    fn normal_christoffel_contraction() {
        let c = Connection::new(6).unwrap();
        assert_eq!(c.contracted(6), h1(GaussianRational::ratio(5, 2)));
        let c4 = Connection::new(4).unwrap();
        assert_eq!(c4.contracted(4), h1(GaussianRational::ratio(3, 2)));
    }

    #[test]
    fn frame_connection_is_antisymmetric() {
        let c = Connection::new(4).unwrap();
        for s in 1..=4 {
            for t in 1..=4 {
                for i in 1..=4 {
                    assert_eq!(c.omega(s, t, i), &c.omega(t, s, i).neg());
                }
            }
        }
        assert_eq!(c.omega(4, 1, 1), &h1(GaussianRational::ratio(1, 2)));
    }

    #[test]
    fn pure_part_is_normal() {
        let gens = build_generators(4).unwrap();
        let b = Connection::new(4).unwrap().b0_pure(&gens).unwrap();
        let want = gens.c(4).scale_poly(&h1(GaussianRational::ratio(-3, 4)));
        assert_eq!(b, want);
    }
}
