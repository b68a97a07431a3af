//! Running table reproductions and scalar experiments.

use std::time::Instant;

use purity_core::integrands::{
    make_purity_excited, make_purity_ground, make_purity_harmonic, make_trace_ground,
    PurityIntegrand,
};
use purity_core::physics::{
    entanglement_measure, gravitational_bohr_radius, mz_phase_shift, MassPair, MzConfig,
    PhysicalConstants,
};
use purity_core::{
    integrate_to_target_sharded, shard_integrate, Domain, Integrand, Integrator, McEstimate,
    TargetStatus, TerminationPolicy,
};
use serde::{Deserialize, Serialize};

use crate::config::{
    Experiment, IntegrandKind, IntegratorKind, RunConfig, DEFAULT_CALLS, TABLE2_REL_ERROR,
};
use crate::error::{Result, RunError};
use crate::reference::{table_rows, ReferenceRow};

/// One output record; field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub alpha: Option<f64>,
    pub value: f64,
    pub stderr: f64,
    pub calls: u64,
    pub entanglement: Option<f64>,
    pub seed: u64,
    pub shards: usize,
    pub walltime_s: f64,
}

impl ResultRow {
    /// Equality on every field except walltime.
    pub fn same_result(&self, other: &Self) -> bool {
        Self {
            walltime_s: 0.0,
            ..self.clone()
        } == Self {
            walltime_s: 0.0,
            ..other.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub result: ResultRow,
    /// Set for target-driven runs.
    pub status: Option<TargetStatus>,
    /// The purity sat slightly outside `[0, 1]` and E was clamped.
    pub entanglement_clamped: bool,
}

/// Integrand family behind a table.
pub fn table_integrand(experiment: Experiment) -> Option<IntegrandKind> {
    match experiment {
        Experiment::Table1 => Some(IntegrandKind::Trace),
        Experiment::Table2 => Some(IntegrandKind::Ground),
        Experiment::Table3 => Some(IntegrandKind::Excited),
        Experiment::Table4 => Some(IntegrandKind::Harmonic),
        _ => None,
    }
}

pub fn build_integrand(kind: IntegrandKind, alpha: f64) -> Result<PurityIntegrand> {
    Ok(match kind {
        IntegrandKind::Trace => make_trace_ground(alpha)?,
        IntegrandKind::Ground => make_purity_ground(alpha)?,
        IntegrandKind::Excited => make_purity_excited(alpha)?,
        IntegrandKind::Harmonic => make_purity_harmonic(alpha)?,
    })
}

/// `(alpha, calls)` pairs the run will evaluate.
pub fn plan(cfg: &RunConfig, references: &[ReferenceRow]) -> Vec<(f64, u64)> {
    let rows = table_rows(references, cfg.experiment.as_str());
    if cfg.alphas.is_empty() {
        return rows
            .into_iter()
            .filter(|r| cfg.full || !r.is_full_budget())
            .filter_map(|r| {
                let calls = cfg.calls_budget.or(r.calls())?;
                Some((r.alpha?, calls))
            })
            .collect();
    }
    cfg.alphas
        .iter()
        .map(|&alpha| {
            let published = rows
                .iter()
                .find(|r| r.alpha == Some(alpha))
                .and_then(|r| r.calls());
            (
                alpha,
                cfg.calls_budget.or(published).unwrap_or(DEFAULT_CALLS),
            )
        })
        .collect()
}

pub fn run_experiment(cfg: &RunConfig, references: &[ReferenceRow]) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    match cfg.experiment {
        Experiment::Table1 | Experiment::Table2 | Experiment::Table3 | Experiment::Table4 => {
            let kind = table_integrand(cfg.experiment).expect("table experiment");
            let target = cfg
                .target_rel_error
                .or((cfg.experiment == Experiment::Table2).then_some(TABLE2_REL_ERROR));
            plan(cfg, references)
                .into_iter()
                .map(|(alpha, calls)| integrate_row(cfg, kind, alpha, calls, target))
                .collect()
        }
        Experiment::Integrate => plan(cfg, references)
            .into_iter()
            .map(|(alpha, calls)| {
                integrate_row(cfg, cfg.integrand, alpha, calls, cfg.target_rel_error)
            })
            .collect(),
        Experiment::Bohr => {
            let start = Instant::now();
            let pair = MassPair::new(cfg.masses[0], cfg.masses[1])?;
            let a = gravitational_bohr_radius(&pair, &PhysicalConstants::for_mode(cfg.constants));
            Ok(vec![scalar_row(cfg, a, start)])
        }
        Experiment::Mzphase => {
            let start = Instant::now();
            let [m1, m2, tau, d, dx] = cfg.mz;
            let mz = MzConfig::new(MassPair::new(m1, m2)?, tau, d, dx)?;
            let phi = mz_phase_shift(&mz, &PhysicalConstants::for_mode(cfg.constants));
            Ok(vec![scalar_row(cfg, phi, start)])
        }
        Experiment::Verify => Err(RunError::Config(
            "verify produces a report, not result rows".into(),
        )),
    }
}

fn scalar_row(cfg: &RunConfig, value: f64, start: Instant) -> ExperimentRow {
    ExperimentRow {
        result: ResultRow {
            experiment: cfg.experiment.as_str().to_string(),
            alpha: None,
            value,
            stderr: 0.0,
            calls: 0,
            entanglement: None,
            seed: cfg.seed,
            shards: cfg.shards,
            walltime_s: start.elapsed().as_secs_f64(),
        },
        status: None,
        entanglement_clamped: false,
    }
}

fn integrate_row(
    cfg: &RunConfig,
    kind: IntegrandKind,
    alpha: f64,
    calls: u64,
    target: Option<f64>,
) -> Result<ExperimentRow> {
    let start = Instant::now();
    let f = build_integrand(kind, alpha)?;
    let domain = Domain::symmetric_unit(f.dimension())?;
    let integrator = match cfg.integrator {
        IntegratorKind::Plain => Integrator::Plain,
        IntegratorKind::Miser => Integrator::miser_for(f.dimension()),
    };
    let (estimate, total_calls, status) = match target {
        None => {
            let e = shard_integrate(&f, &domain, calls, &integrator, cfg.seed, cfg.shards)?;
            (e, e.calls, None)
        }
        Some(t) => {
            let floor = integrator.min_calls() * cfg.shards as u64;
            // 255 initial budgets cover the doubling rounds 1, 2, ..., 128
            let initial = calls.div_ceil(255).max(floor).min(calls);
            let policy = TerminationPolicy::new(t, initial, calls);
            let out = integrate_to_target_sharded(
                &f,
                &domain,
                &policy,
                &integrator,
                cfg.seed,
                cfg.shards,
            )?;
            (out.estimate, out.total_calls, Some(out.status))
        }
    };
    let (entanglement, clamped) = entanglement_of(kind, &estimate);
    Ok(ExperimentRow {
        result: ResultRow {
            experiment: cfg.experiment.as_str().to_string(),
            alpha: Some(alpha),
            value: estimate.value,
            stderr: estimate.stderr,
            calls: total_calls,
            entanglement,
            seed: cfg.seed,
            shards: cfg.shards,
            walltime_s: start.elapsed().as_secs_f64(),
        },
        status,
        entanglement_clamped: clamped,
    })
}

fn entanglement_of(kind: IntegrandKind, estimate: &McEstimate) -> (Option<f64>, bool) {
    if !kind.is_purity() {
        return (None, false);
    }
    match entanglement_measure(estimate.value) {
        Ok(e) => (Some(e.value), e.clamped),
        Err(_) => (None, false),
    }
}

/// Comparison of one result row with its reference row.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub row: ReferenceRow,
    pub ours: ResultRow,
    pub combined_tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Comparison {
    pub verdicts: Vec<Verdict>,
    /// Alphas with no reference row; informational only.
    pub unmatched: Vec<f64>,
}

impl Comparison {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Passes when `|ours - row| <= k_sigma * (ours.stderr + row.error)`.
pub fn compare_to_reference(
    table_id: &str,
    rows: &[ResultRow],
    references: &[ReferenceRow],
    k_sigma: f64,
) -> Result<Comparison> {
    if references.is_empty() {
        return Err(RunError::Reference("empty reference set".into()));
    }
    if !(k_sigma > 0.0) {
        return Err(RunError::Config("k_sigma must be positive".into()));
    }
    let mut out = Comparison::default();
    for ours in rows {
        let Some(alpha) = ours.alpha else { continue };
        match references
            .iter()
            .find(|r| r.table_id == table_id && r.alpha == Some(alpha))
        {
            Some(row) => {
                let tol = k_sigma * (ours.stderr + row.error.unwrap_or(0.0));
                out.verdicts.push(Verdict {
                    row: row.clone(),
                    ours: ours.clone(),
                    combined_tolerance: tol,
                    pass: (ours.value - row.value).abs() <= tol,
                });
            }
            None => out.unmatched.push(alpha),
        }
    }
    Ok(out)
}
