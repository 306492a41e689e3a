//! Symbol calculus at a boundary point in boundary normal coordinates.

mod boundary;
mod calculus;
mod connection;
mod graded;
pub(crate) mod laurent;
mod providers;

pub use boundary::{square_length_jet, BoundarySymbol, Denom, Stage};
pub use calculus::{compose, conformal_wrap, function_symbol, provider_inverse, Side};
pub use connection::Connection;
pub use graded::GradedSymbol;
pub use providers::{
    left_factor, provider_novikov, provider_triple, right_factor, zeroth_order_part,
    NovikovVariant,
};

use crate::error::Result;

/// Product of two symbols (`symbol_mul`).
pub fn symbol_mul(a: &BoundarySymbol, b: &BoundarySymbol) -> Result<BoundarySymbol> {
    a.mul(b)
}

/// A derivation acting on boundary symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// `∂/∂ξ_j`, one-based.
    Xi(usize),
    /// `∂/∂x_n`.
    Normal,
    /// `∂/∂x_j` for a tangential `j`.
    Tangential(usize),
}

/// Applies a derivation (`symbol_derive`).
pub fn symbol_derive(s: &BoundarySymbol, d: Derivation) -> Result<BoundarySymbol> {
    match d {
        Derivation::Xi(j) => s.d_xi(j),
        Derivation::Normal => s.d_xn(),
        Derivation::Tangential(j) => s.d_x_tangential(j),
    }
}

/// Boutet de Monvel projection (`pi_plus`).
pub fn pi_plus(s: &BoundarySymbol) -> Result<BoundarySymbol> {
    s.pi_plus()
}
