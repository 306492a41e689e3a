use kkw_engine::kkw::{
    assemble_boundary_term, compute_case, curvature_coefficient, density_invariants, enumerate_cases,
    evaluate_cases, normal_torsion_coefficient, sum_outcomes, BoundaryDensity, Execution,
};
use kkw_engine::scalars::GaussianRational;

fn case(n: usize, id: &str) -> BoundaryDensity {
    let spec = enumerate_cases(n).unwrap().into_iter().find(|s| s.id == id).unwrap();
    compute_case(&spec, n).unwrap()
}

#[test]
fn dimension_four_total() {
    let phi = assemble_boundary_term(4, Execution::Parallel).unwrap();
    assert!(curvature_coefficient(&phi).is_zero());
    assert_eq!(normal_torsion_coefficient(&phi), GaussianRational::from_int(-8));
    // the conformal-factor terms collapse under f ∂_n f⁻¹ = −f⁻¹ ∂_n f
    let s = phi.simplified(4);
    assert_eq!(s.coefficient(&["PI", "OMEGA", "FINV", "DNF"]).unwrap(), GaussianRational::from_int(4));
}

#[test]
fn dimension_four_invariants() {
    let specs = enumerate_cases(4).unwrap();
    let outcomes = evaluate_cases(&specs, 4, Execution::Sequential).unwrap();
    for c in density_invariants(4, &outcomes) {
        assert!(c.passed, "{c}");
    }
}

// curvature parts printed for the normal-derivative cases and case (c) in dimension six
#[test]
fn dimension_six_curvature_parts() {
    let r = GaussianRational::ratio;
    assert!(case(6, "a-I").is_zero());
    assert_eq!(curvature_coefficient(&case(6, "a-II")), r(-15, 2));
    assert_eq!(curvature_coefficient(&case(6, "a-III")), r(25, 2));
    assert_eq!(curvature_coefficient(&case(6, "c")), r(55, 2));
}

#[test]
fn dimension_six_parallel_matches_sequential() {
    let specs = enumerate_cases(6).unwrap();
    let a = evaluate_cases(&specs, 6, Execution::Sequential).unwrap();
    let b = evaluate_cases(&specs, 6, Execution::Parallel).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.spec.id, y.spec.id);
        assert_eq!(x.density, y.density, "case {}", x.spec.id);
    }
    assert_eq!(sum_outcomes(&a, 6), assemble_boundary_term(6, Execution::Parallel).unwrap());
    for c in density_invariants(6, &a) {
        assert!(c.passed, "{c}");
    }
}
