//! Monte Carlo integration over axis-aligned boxes.
//!
//! Every entry point is deterministic in its inputs: the same integrand,
//! domain, budget, parameters and stream address produce the same bits.

mod domain;
mod miser;
mod plain;
mod rng;
mod shard;
mod target;

pub use domain::Domain;
pub use miser::{integrate_miser, integrate_miser_traced, MiserNode, MiserParams, MiserSplit};
pub use plain::integrate_plain;
pub use rng::{philox4x64_10, RngStream};
pub use shard::{shard_integrate, shard_integrate_substream};
pub use target::{
    integrate_to_target, integrate_to_target_sharded, TargetStatus, TargetedEstimate,
    TerminationPolicy,
};

use crate::error::{Error, Result};
use crate::integrands::Integrand;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegratorId {
    Plain,
    Miser,
}

impl IntegratorId {
    pub fn as_str(self) -> &'static str {
        match self {
            IntegratorId::Plain => "plain",
            IntegratorId::Miser => "miser",
        }
    }
}

impl core::fmt::Display for IntegratorId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Monte Carlo estimate with its one-sigma standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Integrand evaluations spent on this estimate.
    pub calls: u64,
    pub seed: u64,
    pub integrator: IntegratorId,
}

impl McEstimate {
    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.stderr == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.stderr / libm::fabs(self.value)
        }
    }

    pub fn bit_identical(&self, other: &Self) -> bool {
        self.value.to_bits() == other.value.to_bits()
            && self.stderr.to_bits() == other.stderr.to_bits()
            && self.calls == other.calls
            && self.seed == other.seed
            && self.integrator == other.integrator
    }
}

/// Integration method selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrator {
    Plain,
    Miser(MiserParams),
}

impl Integrator {
    pub fn id(&self) -> IntegratorId {
        match self {
            Integrator::Plain => IntegratorId::Plain,
            Integrator::Miser(_) => IntegratorId::Miser,
        }
    }

    /// MISER with the default parameters for `dims` dimensions.
    pub fn miser_for(dims: usize) -> Self {
        Integrator::Miser(MiserParams::for_dims(dims))
    }

    /// Smallest budget the integrator accepts.
    pub fn min_calls(&self) -> u64 {
        match self {
            Integrator::Plain => 2,
            Integrator::Miser(p) => p.min_calls,
        }
    }
}

pub fn integrate<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    integrator: &Integrator,
    stream: &mut RngStream,
) -> Result<McEstimate> {
    match integrator {
        Integrator::Plain => integrate_plain(f, domain, calls, stream),
        Integrator::Miser(params) => integrate_miser(f, domain, calls, params, stream),
    }
}

pub(crate) fn check_dimension<F: Integrand + ?Sized>(f: &F, domain: &Domain) -> Result<()> {
    if f.dimension() != domain.dims() {
        return Err(Error::DimensionMismatch {
            integrand: f.dimension(),
            domain: domain.dims(),
        });
    }
    Ok(())
}
