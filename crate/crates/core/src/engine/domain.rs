use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Axis-aligned integration box.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Domain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDomain("domain needs at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidDomain(
                "lower and upper bounds differ in length",
            ));
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| !(l.is_finite() && u.is_finite() && l < u))
        {
            return Err(Error::InvalidDomain(
                "every axis needs finite lower < upper",
            ));
        }
        let domain = Self { lower, upper };
        let volume = domain.volume();
        if !(volume.is_finite() && volume > 0.0) {
            return Err(Error::InvalidDomain("volume must be finite and positive"));
        }
        Ok(domain)
    }

    /// `[-1, 1]^dims`, the box every dimensionless purity integral lives on.
    pub fn symmetric_unit(dims: usize) -> Result<Self> {
        Self::new(vec![-1.0; dims], vec![1.0; dims])
    }

    /// `[0, 1]^dims`.
    pub fn unit(dims: usize) -> Result<Self> {
        Self::new(vec![0.0; dims], vec![1.0; dims])
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn volume(&self) -> f64 {
        box_volume(&self.lower, &self.upper)
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dims()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (l, u))| l <= x && x <= u)
    }
}

pub(crate) fn box_volume(lower: &[f64], upper: &[f64]) -> f64 {
    lower.iter().zip(upper).map(|(l, u)| u - l).product()
}
