//! Exact scalars: Gaussian rationals, formal symbols, sparse polynomials and
//! first-order jets in the normal coordinate.

mod gaussian;
mod jet;
mod poly;
mod relations;
mod var;

pub use gaussian::{gq_inverse, GaussianRational};
pub use jet::{jet_invert, Jet};
pub use poly::{poly_mul, Monomial, ScalarPoly};
pub use relations::{apply_relations, expand_square_length, monomial_of, Relations};
pub use var::Var;
