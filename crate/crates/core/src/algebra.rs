use std::str::FromStr;

use crate::rootsystem::{build_algebra, AlgebraSpec, RootSystem};
use crate::weylgroup::{generate_group, WeylGroup};
use crate::{Error, Result};

/// Root data together with its generated Weyl group.
///
/// Everything downstream (grids, orbit functions, transforms) takes an
/// `&Algebra`; it is immutable once built.
#[derive(Debug, Clone)]
pub struct Algebra {
    roots: RootSystem,
    group: WeylGroup,
}

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        let roots = build_algebra(spec)?;
        let group = generate_group(&roots);
        Ok(Algebra { roots, group })
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.roots.spec()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// `c·|W|·M^n`, the common factor of every diagonal Gram entry.
    pub fn norm_scale(&self, level: i64) -> f64 {
        self.roots.det() as f64 * self.group.order() as f64 * (level as f64).powi(self.rank() as i32)
    }

    /// `c·M^n`, the order of `(1/M)P∨/Q∨`.
    pub fn torus_order(&self, level: i64) -> u128 {
        self.roots.det() as u128 * (level as u128).pow(self.rank() as u32)
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algebra::new(s.parse()?)
    }
}
