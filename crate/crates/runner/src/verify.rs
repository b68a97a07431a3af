//! Oracle cross-checks behind `purity-mc verify`.

use std::fmt;

use purity_core::engine::shard_integrate;
use purity_core::integrands::make_purity_harmonic;
use purity_core::oracle::{
    grid_purity, harmonic_purity_erf_reduced, harmonic_purity_quadrature, schmidt_purity,
    trace_ground_quadrature, GridWavefunction,
};
use purity_core::physics::{erf, harmonic_k_factor_with, harmonic_purity_bound};
use purity_core::{Domain, Integrator};

use crate::config::RunConfig;
use crate::error::Result;

/// Calls per harmonic Monte Carlo run in the checks.
pub const VERIFY_CALLS: u64 = 32_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub left: f64,
    pub right: f64,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {:.10e} vs {:.10e} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.left,
            self.right,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, left: f64, right: f64, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            left,
            right,
            pass,
            detail,
        });
    }

    fn close(&mut self, name: &str, left: f64, right: f64, tol: f64) {
        let diff = (left - right).abs();
        self.push(
            name,
            left,
            right,
            diff <= tol,
            format!("|diff| {diff:.3e} <= {tol:.1e}"),
        );
    }

    fn below(&mut self, name: &str, left: f64, right: f64) {
        self.push(name, left, right, left < right, "left < right".into());
    }
}

pub fn verify(cfg: &RunConfig) -> Result<VerifyReport> {
    verify_with(cfg, erf)
}

/// [`verify`] with a substitute error function, for fault injection.
pub fn verify_with(cfg: &RunConfig, erf: impl Fn(f64) -> f64 + Copy) -> Result<VerifyReport> {
    let mut r = VerifyReport::default();

    // Grid and Schmidt purities
    let two_mode = GridWavefunction::schmidt_state(&[0.75, 0.25], 256, 8.0)?;
    let g = grid_purity(&two_mode)?;
    let (_, s) = schmidt_purity(&two_mode)?;
    r.close("two-mode state grid purity", g, 0.625, 1e-6);
    r.close("two-mode state Schmidt purity", s, 0.625, 1e-6);
    r.close("two-mode state grid vs Schmidt", g, s, 1e-10);
    let separable = GridWavefunction::from_fn(256, 256, (-8.0, 8.0), (-8.0, 8.0), |x, y| {
        (-(x * x) / 2.0 - (y - 1.0) * (y - 1.0)).exp()
    })?;
    r.close(
        "separable state grid purity",
        grid_purity(&separable)?,
        1.0,
        1e-6,
    );
    let correlated = GridWavefunction::from_fn(256, 256, (-8.0, 8.0), (-8.0, 8.0), |x, y| {
        (-(x * x + y * y) / 2.0 - 0.5 * x * y).exp()
    })?;
    r.close(
        "correlated Gaussian grid vs Schmidt",
        grid_purity(&correlated)?,
        schmidt_purity(&correlated)?.1,
        1e-10,
    );

    // printed digits of the error function
    r.close(
        "erf(2) truncated to 4 decimals",
        (erf(2.0) * 1e4).floor() / 1e4,
        0.9953,
        1e-12,
    );
    r.close(
        "erf(3) truncated to 4 decimals",
        (erf(3.0) * 1e4).floor() / 1e4,
        0.9999,
        1e-12,
    );

    // Harmonic quadrature: convergence, erf reduction, bound chain
    let q64 = harmonic_purity_quadrature(10.0, 64)?;
    let q128 = harmonic_purity_quadrature(10.0, 128)?;
    r.close(
        "harmonic quadrature 64 vs 128 nodes (alpha 10, relative)",
        q64 / q128,
        1.0,
        1e-4,
    );
    for alpha in [10.0, 20.0, 40.0] {
        let full = harmonic_purity_quadrature(alpha, 96)?;
        let reduced = harmonic_purity_erf_reduced(alpha, 96, erf)?;
        r.close(
            &format!("erf-reduced vs tensor quadrature (alpha {alpha}, relative)"),
            reduced / full,
            1.0,
            1e-5,
        );
        let k = harmonic_k_factor_with(alpha, erf)?;
        let bound = harmonic_purity_bound(alpha)?;
        r.below(
            &format!("quadrature < K^3 (alpha {alpha})"),
            full,
            k * k * k,
        );
        r.below(&format!("K^3 < bound (alpha {alpha})"), k * k * k, bound);
    }

    // Trace quadrature against the published alpha = 10 row
    r.close(
        "trace quadrature vs table row (alpha 10)",
        trace_ground_quadrature(10.0, 32)?,
        0.786360,
        0.01,
    );

    // Harmonic Monte Carlo against the quadrature and across shard counts
    let f = make_purity_harmonic(10.0)?;
    let domain = Domain::symmetric_unit(12)?;
    let it = Integrator::miser_for(12);
    let many = shard_integrate(&f, &domain, VERIFY_CALLS, &it, cfg.seed, 8)?;
    let one = shard_integrate(&f, &domain, VERIFY_CALLS, &it, cfg.seed, 1)?;
    r.close(
        "harmonic MC (8 shards) vs quadrature (alpha 10)",
        many.value,
        q64,
        3.0 * many.stderr,
    );
    let combined = (many.stderr * many.stderr + one.stderr * one.stderr).sqrt();
    r.close(
        "harmonic MC 1 vs 8 shards (alpha 10)",
        one.value,
        many.value,
        3.0 * combined,
    );
    r.below(
        "harmonic MC - 3 stderr < bound (alpha 10)",
        many.value - 3.0 * many.stderr,
        harmonic_purity_bound(10.0)?,
    );
    Ok(r)
}
