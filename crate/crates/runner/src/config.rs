use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use purity_core::physics::ConstantsMode;
use serde::Serialize;

use crate::error::{Result, RunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Trace of the reduced density matrix, ground state (6-D).
    Table1,
    /// Purity, ground state (12-D).
    Table2,
    /// Purity, first excited state (12-D).
    Table3,
    /// Purity, harmonic ground state (12-D), with the analytic bound.
    Table4,
    /// One integrand (see --integrand) at the given alphas.
    Integrate,
    /// Gravitational Bohr radius of a mass pair (see --masses).
    Bohr,
    /// Interferometer phase shift (see --mz).
    Mzphase,
    /// Deterministic oracle cross-checks.
    Verify,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::Table2 => "table2",
            Experiment::Table3 => "table3",
            Experiment::Table4 => "table4",
            Experiment::Integrate => "integrate",
            Experiment::Bohr => "bohr",
            Experiment::Mzphase => "mzphase",
            Experiment::Verify => "verify",
        }
    }

    pub fn is_table(self) -> bool {
        matches!(
            self,
            Experiment::Table1 | Experiment::Table2 | Experiment::Table3 | Experiment::Table4
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegratorKind {
    Plain,
    Miser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantsArg {
    /// G = 6.67e-11, hbar = 1.06e-34
    Paper,
    /// CODATA 2018
    Codata,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegrandKind {
    /// 6-D trace, ground state
    Trace,
    /// 12-D purity, ground state
    Ground,
    /// 12-D purity, first excited state
    Excited,
    /// 12-D purity, harmonic ground state
    Harmonic,
}

impl IntegrandKind {
    pub fn is_purity(self) -> bool {
        self != IntegrandKind::Trace
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "purity-mc",
    version,
    about = "Monte Carlo purity and entanglement of bound bipartite states"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Comma-separated alphas; defaults to the reference rows of the table.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Call budget per alpha; defaults to the published budget.
    #[arg(long)]
    pub calls: Option<u64>,
    /// Grow the budget until stderr/|value| reaches this (capped by --calls).
    #[arg(long = "rel-error")]
    pub rel_error: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    #[arg(long, value_enum, default_value_t = IntegratorKind::Miser)]
    pub integrator: IntegratorKind,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Include rows whose published budget runs to billions of calls.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum, default_value_t = ConstantsArg::Paper)]
    pub constants: ConstantsArg,
    /// Integrand for the `integrate` experiment.
    #[arg(long, value_enum, default_value_t = IntegrandKind::Ground)]
    pub integrand: IntegrandKind,
    /// Masses in kg for `bohr`, as M1,M2.
    #[arg(long, value_delimiter = ',')]
    pub masses: Vec<f64>,
    /// Interferometer for `mzphase`, as M1,M2,TAU,D,DX (kg, s, m).
    #[arg(long, value_delimiter = ',')]
    pub mz: Vec<f64>,
    /// Tolerance multiple for reference verdicts.
    #[arg(long = "k-sigma", default_value_t = 3.0)]
    pub k_sigma: f64,
}

/// Default call budget where no reference row supplies one.
pub const DEFAULT_CALLS: u64 = 1_000_000;
/// Relative error target of the ground-state purity runs.
pub const TABLE2_REL_ERROR: f64 = 0.20;
pub const SUN_EARTH: [f64; 2] = [1.99e30, 5.97e24];
pub const DEFAULT_MZ: [f64; 5] = [1e-14, 1e-14, 1.0, 2e-4, 1e-4];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    /// Empty means the non-full reference rows of the table.
    pub alphas: Vec<f64>,
    pub calls_budget: Option<u64>,
    pub target_rel_error: Option<f64>,
    pub seed: u64,
    pub shards: usize,
    pub integrator: IntegratorKind,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub full: bool,
    pub constants: ConstantsMode,
    pub integrand: IntegrandKind,
    pub masses: [f64; 2],
    pub mz: [f64; 5],
    pub k_sigma: f64,
}

impl RunConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            alphas: Vec::new(),
            calls_budget: None,
            target_rel_error: None,
            seed: 42,
            shards: 8,
            integrator: IntegratorKind::Miser,
            output_path: None,
            format: Format::Csv,
            full: false,
            constants: ConstantsMode::PaperRounded,
            integrand: IntegrandKind::Ground,
            masses: SUN_EARTH,
            mz: DEFAULT_MZ,
            k_sigma: 3.0,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self> {
        let masses = match cli.masses.as_slice() {
            [] => SUN_EARTH,
            [m1, m2] => [*m1, *m2],
            _ => return Err(RunError::Config("--masses takes exactly two values".into())),
        };
        let mz = match cli.mz.as_slice() {
            [] => DEFAULT_MZ,
            [a, b, c, d, e] => [*a, *b, *c, *d, *e],
            _ => return Err(RunError::Config("--mz takes exactly five values".into())),
        };
        let cfg = Self {
            experiment: cli.experiment,
            alphas: cli.alpha,
            calls_budget: cli.calls,
            target_rel_error: cli.rel_error,
            seed: cli.seed,
            shards: cli.shards,
            integrator: cli.integrator,
            output_path: cli.out,
            format: cli.format,
            full: cli.full,
            constants: match cli.constants {
                ConstantsArg::Paper => ConstantsMode::PaperRounded,
                ConstantsArg::Codata => ConstantsMode::Codata,
            },
            integrand: cli.integrand,
            masses,
            mz,
            k_sigma: cli.k_sigma,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(RunError::Config(format!(
                "alpha must be finite and positive, got {a}"
            )));
        }
        if self.experiment == Experiment::Integrate && self.alphas.is_empty() {
            return Err(RunError::Config("integrate needs --alpha".into()));
        }
        if self.calls_budget == Some(0) {
            return Err(RunError::Config("--calls must be positive".into()));
        }
        if let Some(t) = self.target_rel_error {
            if !(t > 0.0 && t < 1.0) {
                return Err(RunError::Config(format!(
                    "--rel-error must lie in (0, 1), got {t}"
                )));
            }
        }
        if self.shards == 0 {
            return Err(RunError::Config("--shards must be at least 1".into()));
        }
        if !(self.k_sigma > 0.0 && self.k_sigma.is_finite()) {
            return Err(RunError::Config("--k-sigma must be positive".into()));
        }
        Ok(())
    }
}
