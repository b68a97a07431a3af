//! Experiment runner: table reproductions, reference verdicts, result
//! files and oracle checks on top of `purity-core`.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod reference;
pub mod verify;

pub use config::{Cli, Experiment, Format, IntegrandKind, IntegratorKind, RunConfig};
pub use error::{Result, RunError};
pub use experiment::{
    compare_to_reference, run_experiment, Comparison, ExperimentRow, ResultRow, Verdict,
};
pub use output::{read_results, write_results, write_to};
pub use reference::{load_reference, ReferenceRow};
pub use verify::{verify, verify_with, Check, VerifyReport};
