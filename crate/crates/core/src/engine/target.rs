//! Budget growth until a relative standard error is reached.

use super::shard::shard_integrate_substream;
use super::{integrate_miser, Domain, Integrator, McEstimate, MiserParams, RngStream};
use crate::error::{Error, Result};
use crate::integrands::Integrand;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminationPolicy {
    /// Stop once `stderr / |value|` is at or below this.
    pub target_rel_error: f64,
    /// Cap on cumulative calls across rounds.
    pub max_calls: u64,
    pub initial_calls: u64,
    pub growth_factor: f64,
}

impl TerminationPolicy {
    pub fn new(target_rel_error: f64, initial_calls: u64, max_calls: u64) -> Self {
        Self {
            target_rel_error,
            max_calls,
            initial_calls,
            growth_factor: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0 && self.target_rel_error < 1.0) {
            return Err(Error::param("target_rel_error", "must lie in (0, 1)"));
        }
        if self.initial_calls == 0 || self.initial_calls > self.max_calls {
            return Err(Error::param("initial_calls", "must lie in [1, max_calls]"));
        }
        if !(self.growth_factor > 1.0 && self.growth_factor.is_finite()) {
            return Err(Error::param("growth_factor", "must be finite and > 1"));
        }
        Ok(())
    }

    fn next_budget(&self, calls: u64) -> u64 {
        let grown = libm::ceil(calls as f64 * self.growth_factor);
        if grown >= u64::MAX as f64 {
            u64::MAX
        } else {
            (grown as u64).max(calls + 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetStatus {
    Converged,
    /// The next round would have exceeded `max_calls`; not an error.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetedEstimate {
    /// Estimate from the last (largest) round.
    pub estimate: McEstimate,
    /// Calls summed over all rounds.
    pub total_calls: u64,
    pub rounds: u32,
    pub status: TargetStatus,
}

fn drive<R>(policy: &TerminationPolicy, mut round: R) -> Result<TargetedEstimate>
where
    R: FnMut(u64, u64) -> Result<McEstimate>,
{
    policy.validate()?;
    let mut calls = policy.initial_calls;
    let mut total = 0u64;
    let mut index = 0u64;
    loop {
        let estimate = round(calls, index)?;
        total += calls;
        index += 1;
        let rounds = index as u32;
        if estimate.stderr <= policy.target_rel_error * libm::fabs(estimate.value) {
            return Ok(TargetedEstimate {
                estimate,
                total_calls: total,
                rounds,
                status: TargetStatus::Converged,
            });
        }
        calls = policy.next_budget(calls);
        if total.saturating_add(calls) > policy.max_calls {
            return Ok(TargetedEstimate {
                estimate,
                total_calls: total,
                rounds,
                status: TargetStatus::BudgetExhausted,
            });
        }
    }
}

/// Rerun MISER with a growing budget until the relative error target is met.
///
/// Round `k` draws from substream `k` of `stream`, so rounds never share
/// samples.
pub fn integrate_to_target<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    policy: &TerminationPolicy,
    params: &MiserParams,
    stream: &RngStream,
) -> Result<TargetedEstimate> {
    if policy.initial_calls < params.min_calls {
        return Err(Error::TooFewCalls {
            got: policy.initial_calls,
            min: params.min_calls,
        });
    }
    drive(policy, |calls, k| {
        let mut s = stream.substream(k);
        integrate_miser(f, domain, calls, params, &mut s)
    })
}

/// Target-driven loop where each round is a sharded run.
pub fn integrate_to_target_sharded<F: Integrand + Sync + ?Sized>(
    f: &F,
    domain: &Domain,
    policy: &TerminationPolicy,
    integrator: &Integrator,
    seed: u64,
    shards: usize,
) -> Result<TargetedEstimate> {
    drive(policy, |calls, k| {
        shard_integrate_substream(f, domain, calls, integrator, seed, shards, k)
    })
}
