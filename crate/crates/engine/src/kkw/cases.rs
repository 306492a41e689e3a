use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::GaussianRational;

/// One term of the boundary pairing: orders of the two symbol factors and the
/// derivative pattern applied to them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    /// Order of the left factor.
    pub r: i32,
    /// Order of the right factor.
    pub l: i32,
    /// Number of `ξ_n` derivatives on the projected left factor.
    pub k: u32,
    /// Number of `x_n` derivatives on the left factor.
    pub j: u32,
    /// `|α|`, the number of tangential derivative pairs.
    pub alpha: u32,
    #[serde(skip, default = "GaussianRational::zero")]
    pub prefactor: GaussianRational,
}

/// `(|α|, j, k)`.
type DerivativePattern = (u32, u32, u32);
/// `(re_num, re_den, im_num, im_den)`.
type ExactComplex = (i64, i64, i64, i64);

/// Prefactors by `(|α|, j, k)`, read off the individual case formulas.
pub const PREFACTORS: [(DerivativePattern, ExactComplex); 4] = [
    ((1, 0, 0), (-1, 1, 0, 1)),
    ((0, 1, 0), (-1, 2, 0, 1)),
    ((0, 0, 1), (-1, 2, 0, 1)),
    ((0, 0, 0), (0, 1, -1, 1)),
];

/// Looks up the prefactor of a derivative pattern.
pub fn prefactor(alpha: u32, j: u32, k: u32) -> Result<GaussianRational> {
    PREFACTORS
        .iter()
        .find(|(key, _)| *key == (alpha, j, k))
        .map(|(_, (a, b, c, d))| GaussianRational::complex(*a, *b, *c, *d))
        .ok_or_else(|| Error::InvalidCase(format!("no prefactor for |α|={alpha}, j={j}, k={k}")))
}

/// Highest admissible order of the right factor.
pub fn right_order_bound(n: usize) -> Result<i32> {
    match n {
        4 => Ok(-1),
        6 => Ok(-3),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

fn label(n: usize, r: i32, l: i32, k: u32, j: u32, alpha: u32) -> String {
    match (alpha, j, k) {
        (1, 0, 0) => "a-I".into(),
        (0, 1, 0) => "a-II".into(),
        (0, 0, 1) => "a-III".into(),
        _ => {
            // the lowered factor is the left one in dimension four and the right one otherwise
            let left_lowered = r < -1;
            let b = if n == 4 { left_lowered } else { !left_lowered };
            if b {
                "b".into()
            } else {
                let _ = l;
                "c".into()
            }
        }
    }
}

/// All `(r, l, k, j, α)` with `r + l − k − j − |α| − 1 = −n`, `r <= −1` and
/// `l <=` the right-order bound (`enumerate_cases`).
pub fn enumerate_cases(n: usize) -> Result<Vec<CaseSpec>> {
    let l_max = right_order_bound(n)?;
    let target = -(n as i32);
    let mut out = Vec::new();
    // r + l <= l_max − 1 bounds k + j + |α|, so the search space is finite
    let budget = (l_max - 1 - target + 1).max(0) as u32;
    for alpha in 0..=1u32.min(budget) {
        for j in 0..=budget {
            for k in 0..=budget {
                let shift = (k + j + alpha) as i32;
                let sum = target + 1 + shift;
                for r in (sum - l_max..=-1).rev() {
                    let l = sum - r;
                    if l > l_max {
                        continue;
                    }
                    if r + l - shift - 1 != target {
                        continue;
                    }
                    let Ok(p) = prefactor(alpha, j, k) else {
                        return Err(Error::InvalidCase(format!(
                            "unexpected pattern |α|={alpha}, j={j}, k={k}"
                        )));
                    };
                    out.push(CaseSpec {
                        id: label(n, r, l, k, j, alpha),
                        r,
                        l,
                        k,
                        j,
                        alpha,
                        prefactor: p,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {}: r={}, l={}, k={}, j={}, |alpha|={}, prefactor {}",
            self.id, self.r, self.l, self.k, self.j, self.alpha, self.prefactor
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cases_in_dimension_four() {
        let cases = enumerate_cases(4).unwrap();
        let ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a-I", "a-II", "a-III", "b", "c"]);
        let b = cases.iter().find(|c| c.id == "b").unwrap();
        assert_eq!((b.r, b.l, b.k, b.j, b.alpha), (-2, -1, 0, 0, 0));
        assert!(cases.iter().all(|c| c.r >= -2));
    }

    #[test]
    fn five_cases_in_dimension_six() {
        let cases = enumerate_cases(6).unwrap();
        assert_eq!(cases.len(), 5);
        let c = cases.iter().find(|c| c.id == "c").unwrap();
        assert_eq!((c.r, c.l), (-2, -3));
        let b = cases.iter().find(|c| c.id == "b").unwrap();
        assert_eq!((b.r, b.l), (-1, -4));
        for c in &cases {
            assert_eq!(c.r + c.l - (c.k + c.j + c.alpha) as i32 - 1, -6);
        }
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(enumerate_cases(5), Err(Error::UnsupportedDimension(5))));
    }

    #[test]
    fn table_matches_a_closed_exponent() {
        // (−i)^{|α|+j+k+1} / (α! (j+k+1)!)
        let minus_i = -GaussianRational::i();
        for ((a, j, k), _) in PREFACTORS {
            let fact: i64 = (1..=i64::from(j + k + 1)).product();
            let want = minus_i.pow(a + j + k + 1).div(&GaussianRational::from_int(fact)).unwrap();
            assert_eq!(prefactor(a, j, k).unwrap(), want);
        }
    }
}
