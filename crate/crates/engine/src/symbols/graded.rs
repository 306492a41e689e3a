use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Jet, Relations};

use super::boundary::{BoundarySymbol, Stage};

/// Leading homogeneous components of a total symbol, keyed by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSymbol {
    n: usize,
    parts: BTreeMap<i32, BoundarySymbol>,
}

impl GradedSymbol {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            parts: BTreeMap::new(),
        }
    }

    pub fn with_part(mut self, order: i32, part: BoundarySymbol) -> Self {
        self.insert(order, part);
        self
    }

    pub fn insert(&mut self, order: i32, part: BoundarySymbol) {
        self.parts.insert(order, part);
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn part(&self, order: i32) -> Option<&BoundarySymbol> {
        self.parts.get(&order)
    }

    /// The component of the given order, or an error naming the order.
    pub fn require(&self, order: i32) -> Result<&BoundarySymbol> {
        self.part(order)
            .ok_or_else(|| Error::InvalidCase(format!("no symbol component of order {order}")))
    }

    pub fn part_or_zero(&self, order: i32) -> BoundarySymbol {
        self.part(order)
            .cloned()
            .unwrap_or_else(|| BoundarySymbol::zero(self.n, Stage::Interior))
    }

    pub fn top_order(&self) -> Option<i32> {
        self.parts.keys().next_back().copied()
    }

    pub fn lowest_order(&self) -> Option<i32> {
        self.parts.keys().next().copied()
    }

    /// Components from the highest order down.
    pub fn parts(&self) -> impl Iterator<Item = (i32, &BoundarySymbol)> {
        self.parts.iter().rev().map(|(o, p)| (*o, p))
    }

    pub fn map_parts<G>(&self, f: G) -> Result<Self>
    where
        G: Fn(i32, &BoundarySymbol) -> Result<BoundarySymbol>,
    {
        let mut out = Self::new(self.n);
        for (o, p) in &self.parts {
            out.insert(*o, f(*o, p)?);
        }
        Ok(out)
    }

    /// Multiplies every component by a scalar jet on the left.
    pub fn scale(&self, s: &Jet) -> Self {
        Self {
            n: self.n,
            parts: self.parts.iter().map(|(o, p)| (*o, p.scale(s))).collect(),
        }
    }

    pub fn normalize(&self, rel: &Relations) -> Result<Self> {
        self.map_parts(|_, p| p.normalize(rel))
    }

    /// Checks that each component is homogeneous of its order in `ξ`.
    pub fn check_homogeneous(&self) -> Result<()> {
        for (o, p) in &self.parts {
            if p.is_trivially_zero() {
                continue;
            }
            match p.homogeneous_degree() {
                Some(d) if d == i64::from(*o) => {}
                other => {
                    return Err(Error::Invariant(format!(
                        "component of order {o} has degree {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (o, p) in self.parts() {
            writeln!(f, "order {o}:")?;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
