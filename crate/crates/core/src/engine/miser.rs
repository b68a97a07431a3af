//! MISER recursive stratified sampling.
//!
//! At each node a fraction of the budget explores the box. For every axis
//! the exploration points are split at the (optionally dithered) midpoint
//! and the per-half standard deviations are recorded. With
//! `w = (V * sigma)^(2 / (1 + alpha))` for each half, the node bisects the
//! axis minimising `w_l + w_r`, hands each half a floor of `min_calls` and
//! apportions the rest in proportion to `w_l : w_r`. Nodes whose budget is below
//! `min_calls_per_bisection` become plain Monte Carlo leaves. Exploration
//! samples are not reused in the estimate, so the result stays unbiased.
//!
//! Leaf variances add up the tree: `var = var_left + var_right`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::domain::box_volume;
use super::plain::{box_estimate, checked_eval, sample_box, sample_point};
use super::{check_dimension, Domain, IntegratorId, McEstimate, RngStream};
use crate::error::{Error, Result};
use crate::integrands::Integrand;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiserParams {
    /// Share of a node's budget spent on exploration, in `(0, 0.5]`.
    pub exploration_fraction: f64,
    /// Exploration floor and per-child floor; also the smallest accepted budget.
    pub min_calls: u64,
    /// Nodes with fewer calls than this are sampled without bisection.
    pub min_calls_per_bisection: u64,
    /// Random displacement of the bisection point, in `[0, 0.5)`.
    pub dither: f64,
    /// Allocation exponent: halves receive calls in proportion to
    /// `sigma^(2 / (1 + alpha))`. `alpha = 1` is proportional to the
    /// standard deviation; larger values hedge against noisy estimates.
    pub alpha: f64,
}

impl MiserParams {
    /// Defaults of the GSL implementation: `min_calls = 16 * dims`,
    /// `min_calls_per_bisection = 32 * min_calls`, no dither, `alpha = 2`.
    pub fn for_dims(dims: usize) -> Self {
        let min_calls = 16 * dims as u64;
        Self {
            exploration_fraction: 0.1,
            min_calls,
            min_calls_per_bisection: 32 * min_calls,
            dither: 0.0,
            alpha: 2.0,
        }
    }

    pub fn validate(&self, dims: usize) -> Result<()> {
        if !(self.exploration_fraction > 0.0 && self.exploration_fraction <= 0.5) {
            return Err(Error::param("exploration_fraction", "must lie in (0, 0.5]"));
        }
        if !(self.dither >= 0.0 && self.dither < 0.5) {
            return Err(Error::param("dither", "must lie in [0, 0.5)"));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::param("alpha", "must be finite and non-negative"));
        }
        if self.min_calls < 2 {
            return Err(Error::param("min_calls", "must be at least 2"));
        }
        if self.min_calls_per_bisection < 4 * dims as u64 {
            return Err(Error::param(
                "min_calls_per_bisection",
                "must be at least 4 x dims",
            ));
        }
        if self.min_calls_per_bisection < 4 * self.min_calls {
            return Err(Error::param(
                "min_calls_per_bisection",
                "must be at least 4 x min_calls",
            ));
        }
        Ok(())
    }
}

/// One node of the bisection tree, recorded by [`integrate_miser_traced`].
#[derive(Debug, Clone, PartialEq)]
pub struct MiserNode {
    pub depth: usize,
    /// Calls assigned to the node, exploration included.
    pub calls: u64,
    pub value: f64,
    /// Variance of `value`.
    pub variance: f64,
    pub split: Option<MiserSplit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiserSplit {
    pub axis: usize,
    pub position: f64,
    pub exploration_calls: u64,
    pub left: Box<MiserNode>,
    pub right: Box<MiserNode>,
}

impl MiserNode {
    pub fn leaves(&self) -> Vec<&MiserNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match &node.split {
                None => out.push(node),
                Some(s) => {
                    stack.push(&s.right);
                    stack.push(&s.left);
                }
            }
        }
        out
    }

    pub fn max_depth(&self) -> usize {
        self.leaves().iter().map(|l| l.depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    #[inline]
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn std_dev(&self) -> f64 {
        if self.n < 2 || self.m2 <= 0.0 {
            0.0
        } else {
            libm::sqrt(self.m2 / (self.n - 1) as f64)
        }
    }
}

struct Miser<'a, F: ?Sized> {
    f: &'a F,
    params: &'a MiserParams,
    rng: &'a mut RngStream,
    point: Vec<f64>,
    left: Vec<Welford>,
    right: Vec<Welford>,
    midpoints: Vec<f64>,
    evaluations: u64,
    trace: bool,
}

impl<F: Integrand + ?Sized> Miser<'_, F> {
    fn leaf(
        &mut self,
        lower: &[f64],
        upper: &[f64],
        calls: u64,
        depth: usize,
    ) -> Result<(f64, f64, Option<MiserNode>)> {
        let moments = sample_box(
            self.f,
            lower,
            upper,
            calls,
            self.rng,
            &mut self.point,
            &mut self.evaluations,
        )?;
        let (value, variance) = box_estimate(&moments, box_volume(lower, upper));
        let node = self.trace.then_some(MiserNode {
            depth,
            calls,
            value,
            variance,
            split: None,
        });
        Ok((value, variance, node))
    }

    fn node(
        &mut self,
        lower: &mut [f64],
        upper: &mut [f64],
        calls: u64,
        depth: usize,
    ) -> Result<(f64, f64, Option<MiserNode>)> {
        let p = *self.params;
        if calls < p.min_calls_per_bisection {
            return self.leaf(lower, upper, calls, depth);
        }
        let dims = lower.len();
        let explore = ((p.exploration_fraction * calls as f64) as u64).max(p.min_calls);

        for i in 0..dims {
            let shift = if p.dither > 0.0 {
                if self.rng.next_uniform() < 0.5 {
                    -p.dither
                } else {
                    p.dither
                }
            } else {
                0.0
            };
            self.midpoints[i] = lower[i] + (0.5 + shift) * (upper[i] - lower[i]);
        }
        self.left.iter_mut().for_each(|w| *w = Welford::default());
        self.right.iter_mut().for_each(|w| *w = Welford::default());
        for _ in 0..explore {
            sample_point(lower, upper, self.rng, &mut self.point);
            let fx = checked_eval(self.f, &self.point, &mut self.evaluations)?;
            for i in 0..dims {
                if self.point[i] <= self.midpoints[i] {
                    self.left[i].push(fx);
                } else {
                    self.right[i].push(fx);
                }
            }
        }

        let remaining = calls - explore;
        let beta = 2.0 / (1.0 + p.alpha);
        let mut best: Option<(usize, f64, f64)> = None;
        for i in 0..dims {
            if self.left[i].n < 2 || self.right[i].n < 2 {
                continue;
            }
            let frac_l = (self.midpoints[i] - lower[i]) / (upper[i] - lower[i]);
            let w_l = libm::pow(frac_l * self.left[i].std_dev(), beta);
            let w_r = libm::pow((1.0 - frac_l) * self.right[i].std_dev(), beta);
            if best.is_none_or(|(_, bl, br)| w_l + w_r < bl + br) {
                best = Some((i, w_l, w_r));
            }
        }
        let Some((axis, w_l, w_r)) = best else {
            return self.leaf(lower, upper, remaining, depth);
        };

        let floor = p.min_calls.min(remaining / 2);
        let share = if w_l + w_r > 0.0 {
            w_l / (w_l + w_r)
        } else {
            0.5
        };
        let calls_l = floor + ((remaining - 2 * floor) as f64 * share) as u64;
        let calls_r = remaining - calls_l;
        let position = self.midpoints[axis];

        let saved_upper = upper[axis];
        upper[axis] = position;
        let (v_l, var_l, n_l) = self.node(lower, upper, calls_l, depth + 1)?;
        upper[axis] = saved_upper;

        let saved_lower = lower[axis];
        lower[axis] = position;
        let (v_r, var_r, n_r) = self.node(lower, upper, calls_r, depth + 1)?;
        lower[axis] = saved_lower;

        let value = v_l + v_r;
        let variance = var_l + var_r;
        let node = match (n_l, n_r) {
            (Some(left), Some(right)) => Some(MiserNode {
                depth,
                calls,
                value,
                variance,
                split: Some(MiserSplit {
                    axis,
                    position,
                    exploration_calls: explore,
                    left: Box::new(left),
                    right: Box::new(right),
                }),
            }),
            _ => None,
        };
        Ok((value, variance, node))
    }
}

fn run<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    params: &MiserParams,
    stream: &mut RngStream,
    trace: bool,
) -> Result<(McEstimate, Option<MiserNode>)> {
    check_dimension(f, domain)?;
    params.validate(domain.dims())?;
    if calls < params.min_calls {
        return Err(Error::TooFewCalls {
            got: calls,
            min: params.min_calls,
        });
    }
    let dims = domain.dims();
    let mut lower = domain.lower().to_vec();
    let mut upper = domain.upper().to_vec();
    let mut state = Miser {
        f,
        params,
        rng: stream,
        point: vec![0.0; dims],
        left: vec![Welford::default(); dims],
        right: vec![Welford::default(); dims],
        midpoints: vec![0.0; dims],
        evaluations: 0,
        trace,
    };
    let (value, variance, tree) = state.node(&mut lower, &mut upper, calls, 0)?;
    debug_assert_eq!(state.evaluations, calls);
    let estimate = McEstimate {
        value,
        stderr: libm::sqrt(variance),
        calls,
        seed: state.rng.seed(),
        integrator: IntegratorId::Miser,
    };
    Ok((estimate, tree))
}

pub fn integrate_miser<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    params: &MiserParams,
    stream: &mut RngStream,
) -> Result<McEstimate> {
    run(f, domain, calls, params, stream, false).map(|(e, _)| e)
}

/// As [`integrate_miser`], also returning the bisection tree.
pub fn integrate_miser_traced<F: Integrand + ?Sized>(
    f: &F,
    domain: &Domain,
    calls: u64,
    params: &MiserParams,
    stream: &mut RngStream,
) -> Result<(McEstimate, MiserNode)> {
    let (estimate, tree) = run(f, domain, calls, params, stream, true)?;
    Ok((estimate, tree.expect("tracing enabled")))
}
