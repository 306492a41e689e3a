//! Boundary-term assembly: the case decomposition of the boundary pairing, case
//! evaluation, and comparison with recorded expectations.

mod cases;
mod compare;
mod density;
mod engine;
pub mod identities;
mod invariants;

pub use cases::{enumerate_cases, prefactor, right_order_bound, CaseSpec, PREFACTORS};
pub use compare::{compare_expected, DiscrepancyReport, MonomialDelta};
pub use density::{BoundaryDensity, DensityTerm};
pub use invariants::{curvature_coefficient, density_invariants, normal_torsion_coefficient};
pub use engine::{
    assemble_boundary_term, case_integrand, compute_case, evaluate_cases, integrate_case,
    left_operand, pairing_factors, right_operand, sum_outcomes, thread_cap, CaseOutcome,
    Execution, PairingFactors, THREADS_ENV,
};
