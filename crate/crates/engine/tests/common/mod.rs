//! Property suites shared by the proptest target and the acceptance harness.
//! Each suite runs a deterministic proptest runner and reports the first
//! counterexample as an error string.

#![allow(dead_code)]

use std::f64::consts::PI;

use kkw_engine::clifford::{build_generators, CliffordElement};
use kkw_engine::integrate::{sphere_integrate, sphere_moment, XiRational};
use kkw_engine::scalars::{apply_relations, GaussianRational, Jet, Monomial, Relations, ScalarPoly, Var};
use kkw_engine::symbols::{provider_inverse, provider_novikov, BoundarySymbol, NovikovVariant};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance of residue integration against quadrature.
pub const QUADRATURE_REL_TOL: f64 = 1e-8;
/// Absolute tolerance of sphere moments against Monte Carlo (three digits).
pub const MONTE_CARLO_ABS_TOL: f64 = 2e-3;
pub const MONTE_CARLO_SAMPLES: usize = 1_000_000;

pub type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn lift<T>(r: kkw_engine::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

// ---------------------------------------------------------------------------
// strategies

const N: usize = 4;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
}

fn normal_poly(max_degree: usize) -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec(gaussian(), max_degree + 1).prop_map(|cs| {
        let mut p = ScalarPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            p.add_term(Monomial::from_vars(vec![Var::Xi(N as u8); k]), c);
        }
        p
    })
}

/// Small polynomial in the tangential covariables, `h'(0)` and the conformal factor.
fn field_poly() -> impl Strategy<Value = ScalarPoly> {
    let var = prop_oneof![
        Just(Var::Xi(1)),
        Just(Var::Xi(2)),
        Just(Var::Xi(3)),
        Just(Var::H1),
        Just(Var::F),
        Just(Var::FInv),
        Just(Var::Sq),
    ];
    prop::collection::vec((gaussian(), prop::collection::vec(var, 0..4)), 1..4).prop_map(|terms| {
        let mut p = ScalarPoly::zero();
        for (c, vars) in terms {
            p.add_term(Monomial::from_vars(vars), &c);
        }
        p
    })
}

fn clifford_factor() -> impl Strategy<Value = usize> {
    0usize..=5
}

fn element(kind: usize) -> CliffordElement {
    let g = build_generators(N).expect("generators");
    match kind {
        0 => CliffordElement::identity(N),
        k @ 1..=4 => g.c(k).clone(),
        _ => g.c(1).mul(g.cbar(2)).expect("product"),
    }
}

/// Random decaying symbol with poles at `ξ_n = ±i`.
fn sphere_symbol() -> impl Strategy<Value = BoundarySymbol> {
    prop::collection::vec((0u32..=3, 0u32..=3, normal_poly(3), clifford_factor()), 1..4).prop_map(|terms| {
        let mut s = BoundarySymbol::zero(N, kkw_engine::symbols::Stage::Sphere);
        for (a, b, num, kind) in terms {
            if a + b == 0 {
                continue;
            }
            let keep = (a + b - 1) as u16;
            let num = num.filter(|m| m.exponent(Var::Xi(N as u8)) <= keep);
            let t = BoundarySymbol::sphere(element(kind).scale_poly(&num), a, b);
            s = s.add(&t).expect("same stage");
        }
        s
    })
}

// ---------------------------------------------------------------------------
// suites

/// `π⁺` is idempotent and `π⁺ + π⁻ = id` on 30 random symbols.
pub fn projection_idempotence() -> Outcome {
    let rel = Relations::sphere(N);
    run(30, sphere_symbol(), |s| {
        let p = lift(s.pi_plus())?;
        let pp = lift(p.pi_plus())?;
        ensure(lift(pp.sub(&p).and_then(|d| d.is_zero(&rel)))?, || format!("π⁺π⁺ ≠ π⁺ for {s}"))?;
        let sum = lift(p.add(&lift(s.pi_minus())?))?;
        ensure(lift(sum.sub(&s).and_then(|d| d.is_zero(&rel)))?, || format!("π⁺ + π⁻ ≠ id for {s}"))
    })
}

/// Derivations obey the Leibniz rule: `∂_{ξ_n}` on symbol products and partial
/// derivatives on scalar polynomials.
pub fn leibniz() -> Outcome {
    let rel = Relations::sphere(N);
    run(20, (sphere_symbol(), sphere_symbol()), |(a, b)| {
        let lhs = lift(lift(a.mul(&b))?.d_xi(N))?;
        let rhs = lift(lift(a.d_xi(N))?.mul(&b))?;
        let rhs = lift(rhs.add(&lift(a.mul(&lift(b.d_xi(N))?))?))?;
        ensure(lift(lhs.sub(&rhs).and_then(|d| d.is_zero(&rel)))?, || "symbol Leibniz rule".into())
    })?;
    run(30, (field_poly(), field_poly()), |(p, q)| {
        for v in [Var::Xi(1), Var::H1, Var::F] {
            let lhs = p.mul(&q).partial(v);
            let rhs = p.partial(v).mul(&q).add(&p.mul(&q.partial(v)));
            ensure(lhs == rhs, || format!("Leibniz in {v:?} for {p} and {q}"))?;
        }
        Ok(())
    })
}

fn word(n: usize, letters: &[(bool, usize)]) -> CliffordElement {
    let g = build_generators(n).expect("generators");
    letters.iter().fold(CliffordElement::identity(n), |acc, &(bar, i)| {
        let x = if bar { g.cbar(i) } else { g.c(i) };
        acc.mul(x).expect("product")
    })
}

/// `tr(AB) = tr(BA)` on 50 random words in the generators.
pub fn trace_cyclicity() -> Outcome {
    let letters = |n: usize| prop::collection::vec((any::<bool>(), 1..=n), 1..7);
    let case = prop_oneof![
        (Just(4usize), letters(4), 0usize..7),
        (Just(6usize), letters(6), 0usize..7),
    ];
    run(50, case, |(n, w, cut)| {
        let cut = cut.min(w.len());
        let a = word(n, &w[..cut]);
        let b = word(n, &w[cut..]);
        let ab = lift(a.trace_product(&b))?;
        let ba = lift(b.trace_product(&a))?;
        ensure(ab == ba, || format!("tr(AB) = {ab}, tr(BA) = {ba} for {w:?} cut at {cut}"))
    })
}

fn random_rational() -> impl Strategy<Value = XiRational> {
    prop::collection::vec((1u32..=3, 0u32..=3, normal_poly(4)), 1..4).prop_map(|terms| {
        let mut r = XiRational::zero(N);
        for (a, b, num) in terms {
            if a + b < 2 {
                continue;
            }
            let keep = (a + b - 2) as u16;
            let num = num.filter(|m| m.exponent(Var::Xi(N as u8)) <= keep);
            r.add_term(a, b, &num);
        }
        r
    })
}

type C = (f64, f64);

fn cmul(x: C, y: C) -> C {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn cdiv(x: C, y: C) -> C {
    let d = y.0 * y.0 + y.1 * y.1;
    ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
}

fn quadrature(r: &XiRational) -> C {
    // floating-point copy of each term: ascending numerator coefficients and pole orders
    let terms: Vec<(Vec<C>, u32, u32)> = r
        .terms()
        .map(|(&(a, b), p)| {
            let parts = p.split_by(Var::Xi(N as u8));
            let top = parts.keys().max().copied().unwrap_or(0);
            let coeffs = (0..=top)
                .map(|k| {
                    parts
                        .get(&k)
                        .and_then(ScalarPoly::as_constant)
                        .map_or((0.0, 0.0), |c| c.to_f64())
                })
                .collect();
            (coeffs, a, b)
        })
        .collect();
    let value = |x: f64| {
        let mut acc = (0.0, 0.0);
        for (coeffs, a, b) in &terms {
            let num = coeffs.iter().rev().fold((0.0, 0.0), |s, &c| {
                let s = cmul(s, (x, 0.0));
                (s.0 + c.0, s.1 + c.1)
            });
            let mut den = (1.0, 0.0);
            for _ in 0..*a {
                den = cmul(den, (x, -1.0));
            }
            for _ in 0..*b {
                den = cmul(den, (x, 1.0));
            }
            let v = cdiv(num, den);
            acc = (acc.0 + v.0, acc.1 + v.1);
        }
        acc
    };
    // ξ = tan t maps the line onto (−π/2, π/2) with a smooth integrand
    let steps = 4_000usize;
    let h = PI / steps as f64;
    let f = |t: f64| {
        let (re, im) = value(t.tan());
        let w = 1.0 / (t.cos() * t.cos());
        (re * w, im * w)
    };
    // three-point Gauss-Legendre per subinterval keeps clear of the endpoints
    let r35 = (0.6f64).sqrt();
    let rule = [(-r35, 5.0 / 9.0), (0.0, 8.0 / 9.0), (r35, 5.0 / 9.0)];
    let mut acc = (0.0, 0.0);
    for k in 0..steps {
        let mid = -PI / 2.0 + (k as f64 + 0.5) * h;
        for (x, w) in rule {
            let v = f(mid + x * h / 2.0);
            acc.0 += w * v.0 * h / 2.0;
            acc.1 += w * v.1 * h / 2.0;
        }
    }
    acc
}

/// Residue integration against numerical quadrature on 20 random rationals.
pub fn residues_match_quadrature() -> Outcome {
    run(20, random_rational(), |r| {
        let exact = lift(r.integrate_xi_n())?.eval(|v| if v == Var::Pi { (PI, 0.0) } else { (0.0, 0.0) });
        let num = quadrature(&r);
        let err = ((exact.0 - num.0).powi(2) + (exact.1 - num.1).powi(2)).sqrt();
        let scale = (exact.0.powi(2) + exact.1.powi(2)).sqrt().max(1.0);
        ensure(err <= QUADRATURE_REL_TOL * scale, || {
            format!("residues {exact:?} vs quadrature {num:?} for {r}")
        })
    })
}

fn tangential_monomial(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=4, n - 1)
}

fn monomial_poly(exps: &[u32]) -> ScalarPoly {
    let vars = exps
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(Var::Xi(i as u8 + 1), e as usize));
    ScalarPoly::term(Monomial::from_vars(vars), GaussianRational::one())
}

fn sphere_value(p: &ScalarPoly, n: usize) -> Result<GaussianRational, TestCaseError> {
    let s = lift(sphere_integrate(p, n))?;
    Ok(s.coefficient(&Monomial::var(Var::Omega)))
}

/// Sphere moments: multiplying by `(Σ ξ_i²)^k` changes nothing, and the exact
/// moments agree with a Monte Carlo average.
pub fn sphere_moments() -> Outcome {
    let case = prop_oneof![(Just(4usize), tangential_monomial(4)), (Just(6usize), tangential_monomial(6))];
    run(30, (case, 1u32..=2), |((n, exps), k)| {
        let p = monomial_poly(&exps);
        let mut sq = ScalarPoly::zero();
        for i in 1..n as u8 {
            sq.add_assign(&ScalarPoly::var(Var::Xi(i)).pow(2));
        }
        let base = sphere_value(&p, n)?;
        let lifted = sphere_value(&p.mul(&sq.pow(k)), n)?;
        ensure(base == lifted, || format!("{exps:?} times |ξ'|^{}: {base} vs {lifted}", 2 * k))
    })?;

    // Monte Carlo on S² (n = 4) with one shared point cloud
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points: Vec<[f64; 3]> = (0..MONTE_CARLO_SAMPLES)
        .map(|_| {
            let g: [f64; 3] = [gauss(&mut rng), gauss(&mut rng), gauss(&mut rng)];
            let r = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
            [g[0] / r, g[1] / r, g[2] / r]
        })
        .collect();
    run(20, tangential_monomial(4), |exps| {
        let exact = sphere_moment(&exps, 3).to_f64().unwrap_or(f64::NAN);
        let mean = points
            .iter()
            .map(|x| (0..3).map(|i| x[i].powi(exps[i] as i32)).product::<f64>())
            .sum::<f64>()
            / points.len() as f64;
        ensure((mean - exact).abs() <= MONTE_CARLO_ABS_TOL, || {
            format!("moment {exps:?}: exact {exact}, Monte Carlo {mean}")
        })
    })
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

/// Ring laws of the scalar polynomials and the field laws of their coefficients.
pub fn ring_laws() -> Outcome {
    run(40, (field_poly(), field_poly(), field_poly()), |(a, b, c)| {
        ensure(a.mul(&b) == b.mul(&a), || "commutativity".into())?;
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || "associativity".into())?;
        ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || "distributivity".into())?;
        ensure(a.sub(&a).is_zero(), || "additive inverse".into())
    })?;
    run(40, (gaussian(), gaussian()), |(x, y)| {
        if !x.is_zero() {
            ensure((&x * &lift(x.inverse())?).is_one(), || format!("inverse of {x}"))?;
            ensure(&lift(y.div(&x))? * &x == y, || format!("{y} / {x}"))?;
        }
        ensure(&x * &y == &y * &x, || "commutativity".into())
    })
}

/// Normalizing with the relations twice changes nothing.
pub fn relations_idempotent() -> Outcome {
    let rels = [
        Relations::plain(),
        Relations::sphere(N),
        Relations::tangential(N),
        Relations::sphere(N).with_analytic(true),
    ];
    run(40, field_poly(), |p| {
        for rel in &rels {
            let once = apply_relations(&p, rel, N);
            ensure(apply_relations(&once, rel, N) == once, || format!("{p} under {rel:?}"))?;
        }
        Ok(())
    })
}

fn homogeneous_symbol() -> impl Strategy<Value = (BoundarySymbol, i64)> {
    (0u32..=3, 0u32..=3, clifford_factor(), gaussian()).prop_map(|(d, q, kind, c)| {
        let mut p = ScalarPoly::zero();
        for i in 1..=N as u8 {
            p.add_term(Monomial::from_vars(vec![Var::Xi(i); d as usize]), &c);
        }
        let num = element(kind).scale(&Jet::constant(p));
        (BoundarySymbol::interior(num, q, false), i64::from(d) - 2 * i64::from(q))
    })
}

/// Symbols are homogeneous: scaling `ξ` by 2 multiplies by `2^degree`, both for
/// random monomial symbols and for the parametrix of the first-order operator.
pub fn homogeneity() -> Outcome {
    let rel = Relations::plain();
    let scaled_ok = |s: &BoundarySymbol, deg: i64| -> Result<bool, TestCaseError> {
        let two = GaussianRational::from_int(2);
        let f = if deg >= 0 {
            two.pow(deg as u32)
        } else {
            lift(two.pow((-deg) as u32).inverse())?
        };
        let d = lift(lift(s.xi_scaled(2))?.sub(&s.scale_by(&f)))?;
        lift(d.is_zero(&rel))
    };
    run(30, homogeneous_symbol(), |(s, deg)| {
        ensure(scaled_ok(&s, deg)?, || format!("degree {deg} for {s}"))
    })?;
    let inv = provider_inverse(&provider_novikov(N, NovikovVariant::Plain).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    for order in [-1, -2] {
        let s = inv.require(order).map_err(|e| e.to_string())?;
        let ok = scaled_ok(s, i64::from(order)).map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!("parametrix part of order {order} is not homogeneous"));
        }
    }
    Ok(())
}

pub type Suite = (&'static str, fn() -> Outcome);

/// Every suite with its name, in reporting order.
pub fn suites() -> Vec<Suite> {
    vec![
        ("projection idempotence and complement", projection_idempotence as fn() -> Outcome),
        ("Leibniz rule", leibniz),
        ("trace cyclicity", trace_cyclicity),
        ("residues against quadrature", residues_match_quadrature),
        ("sphere moments", sphere_moments),
        ("ring laws", ring_laws),
        ("relations idempotent", relations_idempotent),
        ("homogeneity", homogeneity),
    ]
}
