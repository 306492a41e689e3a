use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Formal scalar symbols carried by boundary densities.
///
/// Indices are one-based: `Xi(j)` is the covariable along `x_j`, `ThP(k)` the
/// `k`-th frame component of the vector field `theta'`, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// First normal derivative of the boundary warping function at the boundary.
    H1,
    Pi,
    /// Volume of the unit sphere in the boundary cotangent space.
    Omega,
    /// Conformal factor.
    F,
    /// Reciprocal of the conformal factor, kept as an independent field.
    FInv,
    DnF,
    DnFInv,
    DjF(u8),
    DjFInv(u8),
    /// Normal component of `theta'`.
    GThpN,
    /// Tangential components of `theta'`.
    ThP(u8),
    /// Components of `theta`.
    Th(u8),
    /// Squared tangential covector length.
    Sq,
    Xi(u8),
}

impl Var {
    /// Weight under the scaling `xi -> lambda * xi`.
    pub fn xi_weight(self) -> u32 {
        match self {
            Var::Xi(_) => 1,
            Var::Sq => 2,
            _ => 0,
        }
    }

    /// Whether the symbol is one of the conformal-factor fields.
    pub fn is_conformal(self) -> bool {
        matches!(
            self,
            Var::F | Var::FInv | Var::DnF | Var::DnFInv | Var::DjF(_) | Var::DjFInv(_)
        )
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::H1 => write!(f, "H1"),
            Var::Pi => write!(f, "PI"),
            Var::Omega => write!(f, "OMEGA"),
            Var::F => write!(f, "F"),
            Var::FInv => write!(f, "FINV"),
            Var::DnF => write!(f, "DNF"),
            Var::DnFInv => write!(f, "DNFINV"),
            Var::DjF(j) => write!(f, "DJF_{j}"),
            Var::DjFInv(j) => write!(f, "DJFINV_{j}"),
            Var::GThpN => write!(f, "GTHP_N"),
            Var::ThP(k) => write!(f, "THP_{k}"),
            Var::Th(k) => write!(f, "TH_{k}"),
            Var::Sq => write!(f, "SQ"),
            Var::Xi(j) => write!(f, "XI_{j}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSymbol(s.to_string());
        let idx = |rest: &str| -> Result<u8> {
            match rest.parse::<u8>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(unknown()),
            }
        };
        Ok(match s {
            "H1" => Var::H1,
            "PI" => Var::Pi,
            "OMEGA" => Var::Omega,
            "F" => Var::F,
            "FINV" => Var::FInv,
            "DNF" => Var::DnF,
            "DNFINV" => Var::DnFInv,
            "GTHP_N" => Var::GThpN,
            "SQ" => Var::Sq,
            _ => {
                if let Some(rest) = s.strip_prefix("DJFINV_") {
                    Var::DjFInv(idx(rest)?)
                } else if let Some(rest) = s.strip_prefix("DJF_") {
                    Var::DjF(idx(rest)?)
                } else if let Some(rest) = s.strip_prefix("THP_") {
                    Var::ThP(idx(rest)?)
                } else if let Some(rest) = s.strip_prefix("TH_") {
                    Var::Th(idx(rest)?)
                } else if let Some(rest) = s.strip_prefix("XI_") {
                    Var::Xi(idx(rest)?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}
