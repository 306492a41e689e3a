//! Expansions at the pole `ξ_n = i` used by the projection and by residues.

use crate::scalars::{GaussianRational, ScalarPoly, Var};

fn binomial(m: u64, s: u64) -> i64 {
    if s > m {
        return 0;
    }
    let mut acc: i128 = 1;
    for k in 0..s {
        acc = acc * i128::from(m - k) / i128::from(k + 1);
    }
    acc as i64
}

/// Coefficients of `t^s`, `s < order`, in `N(i + t)` where `N` is polynomial in `xn`.
pub fn taylor_at_i(num: &ScalarPoly, xn: Var, order: usize) -> Vec<ScalarPoly> {
    let i = GaussianRational::i();
    let mut out = vec![ScalarPoly::zero(); order];
    for (m, coeff) in num.split_by(xn) {
        let m = u64::from(m);
        for (s, slot) in out.iter_mut().enumerate() {
            let s = s as u64;
            if s > m {
                break;
            }
            let c = GaussianRational::from_int(binomial(m, s)) * i.pow((m - s) as u32);
            slot.add_assign(&coeff.scale(&c));
        }
    }
    out
}

/// Coefficients of `t^s`, `s < order`, in `(2i + t)^(-b)`.
pub fn inverse_power_series(b: u32, order: usize) -> Vec<GaussianRational> {
    let two_i = GaussianRational::complex(0, 1, 2, 1);
    let inv = two_i.inverse().unwrap_or_default();
    (0..order)
        .map(|s| {
            if b == 0 {
                return if s == 0 {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                };
            }
            let s64 = s as u64;
            let mag = binomial(u64::from(b) + s64 - 1, s64);
            let sign = if s % 2 == 0 { 1 } else { -1 };
            GaussianRational::from_int(sign * mag) * inv.pow(b + s as u32)
        })
        .collect()
}

/// Laurent coefficients `g_0..g_{a-1}` of `N / (ξ_n + i)^b` at `ξ_n = i`, so that the
/// principal part of `N / ((ξ_n - i)^a (ξ_n + i)^b)` is `Σ_k g_k / (ξ_n - i)^(a - k)`.
pub fn laurent_at_i(num: &ScalarPoly, xn: Var, a: u32, b: u32) -> Vec<ScalarPoly> {
    let order = a as usize;
    let taylor = taylor_at_i(num, xn, order);
    let series = inverse_power_series(b, order);
    (0..order)
        .map(|k| {
            let mut acc = ScalarPoly::zero();
            for u in 0..=k {
                acc.add_assign(&taylor[u].scale(&series[k - u]));
            }
            acc
        })
        .collect()
}

/// `(ξ_n - i)^a (ξ_n + i)^b` as a polynomial.
pub fn pole_product(xn: Var, a: u32, b: u32) -> ScalarPoly {
    let x = ScalarPoly::var(xn);
    let i = ScalarPoly::constant(GaussianRational::i());
    x.sub(&i).pow(a).mul(&x.add(&i).pow(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_of_inverse_square() {
        // (2i + t)^-2 = -1/4 + (-i/4) t + ...
        let s = inverse_power_series(2, 2);
        assert_eq!(s[0], GaussianRational::ratio(-1, 4));
        assert_eq!(s[1], GaussianRational::complex(0, 1, -1, 4));
    }

    #[test]
    fn principal_part_of_simple_pole() {
        // 1/(1 + x^2) has principal part 1/(2i (x - i)) at i.
        let g = laurent_at_i(&ScalarPoly::one(), Var::Xi(4), 1, 1);
        assert_eq!(g[0].as_constant().unwrap(), GaussianRational::complex(0, 1, -1, 2));
    }

    #[test]
    fn taylor_shift() {
        // x^2 at i + t: -1 + 2i t + t^2
        let x2 = ScalarPoly::var(Var::Xi(4)).pow(2);
        let t = taylor_at_i(&x2, Var::Xi(4), 3);
        assert_eq!(t[0].as_constant().unwrap(), GaussianRational::from_int(-1));
        assert_eq!(t[1].as_constant().unwrap(), GaussianRational::complex(0, 1, 2, 1));
        assert_eq!(t[2].as_constant().unwrap(), GaussianRational::one());
    }
}
