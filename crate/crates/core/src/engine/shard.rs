//! Splitting a budget over independent streams.
//!
//! Shard `i` draws from stream id `i` under the common seed. Shards carry
//! equal budgets (up to one call) of the same estimator, so they share one
//! true variance and the inverse-variance weights reduce to weights
//! proportional to calls. Weighting by each shard's own variance estimate
//! would bias the merge towards shards that missed a narrow peak.
//! Merging runs in shard order, so the result depends on `(seed, shards)`
//! and never on scheduling.

use alloc::vec::Vec;

use super::{check_dimension, integrate, Domain, Integrator, McEstimate, RngStream};
use crate::error::{Error, Result};
use crate::integrands::Integrand;
use crate::summation::NeumaierSum;

pub fn shard_integrate<F: Integrand + Sync + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    integrator: &Integrator,
    seed: u64,
    shards: usize,
) -> Result<McEstimate> {
    shard_integrate_substream(f, domain, calls, integrator, seed, shards, 0)
}

/// [`shard_integrate`] drawing from substream `substream` of every shard stream.
pub fn shard_integrate_substream<F: Integrand + Sync + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    integrator: &Integrator,
    seed: u64,
    shards: usize,
    substream: u64,
) -> Result<McEstimate> {
    check_dimension(f, domain)?;
    if shards == 0 {
        return Err(Error::param("shards", "must be at least 1"));
    }
    let per_shard = calls / shards as u64;
    let extra = calls % shards as u64;
    let budget = |i: usize| per_shard + u64::from((i as u64) < extra);
    let min = integrator.min_calls();
    if budget(shards - 1) < min {
        return Err(Error::TooFewCalls {
            got: budget(shards - 1),
            min,
        });
    }
    let run = |i: usize| {
        let mut stream = RngStream::new(seed, i as u64).substream(substream);
        integrate(f, domain, budget(i), integrator, &mut stream)
    };

    #[cfg(feature = "std")]
    let results: Vec<Result<McEstimate>> = {
        use rayon::prelude::*;
        (0..shards).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "std"))]
    let results: Vec<Result<McEstimate>> = (0..shards).map(run).collect();

    let estimates = results.into_iter().collect::<Result<Vec<_>>>()?;
    if shards == 1 {
        return Ok(estimates[0]);
    }
    Ok(combine(&estimates, seed))
}

/// Calls-weighted merge: `value = sum n_i v_i / N`,
/// `stderr^2 = sum (n_i / N)^2 stderr_i^2`.
pub(crate) fn combine(estimates: &[McEstimate], seed: u64) -> McEstimate {
    let calls: u64 = estimates.iter().map(|e| e.calls).sum();
    let total = calls as f64;
    let mut value = NeumaierSum::new();
    let mut variance = NeumaierSum::new();
    for e in estimates {
        let w = e.calls as f64 / total;
        value.add(w * e.value);
        variance.add(w * w * e.stderr * e.stderr);
    }
    McEstimate {
        value: value.total(),
        stderr: libm::sqrt(variance.total()),
        calls,
        seed,
        integrator: estimates[0].integrator,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{integrate_miser, IntegratorId, MiserParams};
    use crate::integrands::FnIntegrand;

    fn peaked() -> FnIntegrand<impl Fn(&[f64]) -> f64 + Sync> {
        FnIntegrand::new(3, |x: &[f64]| {
            libm::exp(-4.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]))
        })
    }

    #[test]
    fn single_shard_is_plain_miser_on_stream_zero() {
        let f = peaked();
        let d = Domain::symmetric_unit(3).unwrap();
        let params = MiserParams::for_dims(3);
        let a = shard_integrate(&f, &d, 100_000, &Integrator::Miser(params), 17, 1).unwrap();
        let b = integrate_miser(&f, &d, 100_000, &params, &mut RngStream::new(17, 0)).unwrap();
        assert!(a.bit_identical(&b));
    }

    #[test]
    fn fixed_seed_and_shards_replay_bit_identically() {
        let f = peaked();
        let d = Domain::symmetric_unit(3).unwrap();
        let it = Integrator::miser_for(3);
        let a = shard_integrate(&f, &d, 400_000, &it, 5, 8).unwrap();
        let b = shard_integrate(&f, &d, 400_000, &it, 5, 8).unwrap();
        assert!(a.bit_identical(&b));
        assert_eq!(a.calls, 400_000);
        assert_eq!(a.integrator, IntegratorId::Miser);
    }

    #[test]
    fn uneven_split_keeps_total_calls() {
        let f = peaked();
        let d = Domain::symmetric_unit(3).unwrap();
        let est = shard_integrate(&f, &d, 10_007, &Integrator::Plain, 1, 3).unwrap();
        assert_eq!(est.calls, 10_007);
    }

    #[test]
    fn zero_shards_and_tiny_budgets_are_rejected() {
        let f = peaked();
        let d = Domain::symmetric_unit(3).unwrap();
        assert!(shard_integrate(&f, &d, 1000, &Integrator::Plain, 1, 0).is_err());
        assert!(shard_integrate(&f, &d, 100, &Integrator::miser_for(3), 1, 8).is_err());
    }

    #[test]
    fn calls_weighted_merge() {
        let mk = |value, stderr, calls| McEstimate {
            value,
            stderr,
            calls,
            seed: 0,
            integrator: IntegratorId::Plain,
        };
        let c = combine(&[mk(1.0, 1.0, 10), mk(2.0, 0.5, 30)], 0);
        assert!(libm::fabs(c.value - 1.75) < 1e-15);
        // (1/4)^2 * 1 + (3/4)^2 * 0.25
        assert!(libm::fabs(c.stderr - libm::sqrt(0.0625 + 0.140625)) < 1e-15);
        assert_eq!(c.calls, 40);
        let z = combine(&[mk(3.0, 0.0, 5), mk(3.0, 0.0, 5)], 0);
        assert_eq!((z.value, z.stderr), (3.0, 0.0));
    }
}
