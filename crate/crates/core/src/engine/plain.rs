use alloc::vec;

use super::domain::box_volume;
use super::{check_dimension, Domain, IntegratorId, McEstimate, RngStream};
use crate::error::{Error, Result};
use crate::integrands::Integrand;
use crate::summation::ShiftedMoments;

/// Fill `point` with a uniform sample from the box `[lower, upper]`.
#[inline]
pub(crate) fn sample_point(lower: &[f64], upper: &[f64], rng: &mut RngStream, point: &mut [f64]) {
    for ((x, &l), &u) in point.iter_mut().zip(lower).zip(upper) {
        let v = l + rng.next_uniform() * (u - l);
        // rounding can land a hair past the upper edge
        *x = if v > u { u } else { v };
        debug_assert!(l <= *x && *x <= u, "sample {x} outside [{l}, {u}]");
    }
}

#[inline]
pub(crate) fn checked_eval<F: Integrand + ?Sized>(
    f: &F,
    point: &[f64],
    evaluations: &mut u64,
) -> Result<f64> {
    let value = f.evaluate(point);
    let index = *evaluations;
    *evaluations += 1;
    if !value.is_finite() {
        return Err(Error::NonFiniteIntegrand { value, index });
    }
    Ok(value)
}

/// Sample moments of `f` over `calls` uniform points of a box.
pub(crate) fn sample_box<F: Integrand + ?Sized>(
    f: &F,
    lower: &[f64],
    upper: &[f64],
    calls: u64,
    rng: &mut RngStream,
    point: &mut [f64],
    evaluations: &mut u64,
) -> Result<ShiftedMoments> {
    let mut moments = ShiftedMoments::new();
    for _ in 0..calls {
        sample_point(lower, upper, rng, point);
        moments.push(checked_eval(f, point, evaluations)?);
    }
    Ok(moments)
}

/// Box estimate `(value, variance of value)` from sample moments.
pub(crate) fn box_estimate(moments: &ShiftedMoments, volume: f64) -> (f64, f64) {
    let n = moments.count() as f64;
    let value = volume * moments.mean();
    let variance = volume * volume * moments.variance() / n;
    (value, variance)
}

/// Crude Monte Carlo: `volume * mean(f)` over `calls` uniform samples.
pub fn integrate_plain<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    stream: &mut RngStream,
) -> Result<McEstimate> {
    check_dimension(f, domain)?;
    if calls < 2 {
        return Err(Error::TooFewCalls { got: calls, min: 2 });
    }
    let mut point = vec![0.0; domain.dims()];
    let mut evaluations = 0;
    let moments = sample_box(
        f,
        domain.lower(),
        domain.upper(),
        calls,
        stream,
        &mut point,
        &mut evaluations,
    )?;
    let (value, variance) = box_estimate(&moments, box_volume(domain.lower(), domain.upper()));
    Ok(McEstimate {
        value,
        stderr: libm::sqrt(variance),
        calls,
        seed: stream.seed(),
        integrator: IntegratorId::Plain,
    })
}
