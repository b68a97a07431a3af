use std::io;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use purity_core::TargetStatus;
use purity_mc::{
    compare_to_reference, load_reference, run_experiment, verify, write_results, write_to, Cli,
    Experiment, ResultRow, RunConfig, RunError,
};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Ok(false) when a check or verdict failed.
fn run(cli: Cli) -> Result<bool, RunError> {
    let cfg = RunConfig::from_cli(cli)?;
    if cfg.experiment == Experiment::Verify {
        let report = verify(&cfg)?;
        for check in &report.checks {
            println!("{check}");
        }
        return Ok(report.all_pass());
    }

    let references = load_reference()?;
    let rows = run_experiment(&cfg, &references)?;
    for row in &rows {
        if row.status == Some(TargetStatus::BudgetExhausted) {
            eprintln!(
                "warning: alpha {} stopped at the call budget before reaching the target",
                row.result.alpha.unwrap_or(f64::NAN)
            );
        }
        if row.entanglement_clamped {
            eprintln!("warning: purity {} clamped into [0, 1]", row.result.value);
        }
    }
    let results: Vec<ResultRow> = rows.into_iter().map(|r| r.result).collect();
    match &cfg.output_path {
        Some(path) => write_results(&results, cfg.format, path)?,
        None => write_to(
            &results,
            cfg.format,
            io::stdout().lock(),
            Path::new("<stdout>"),
        )?,
    }

    let mut ok = true;
    if cfg.experiment.is_table() {
        let comparison =
            compare_to_reference(cfg.experiment.as_str(), &results, &references, cfg.k_sigma)?;
        for v in &comparison.verdicts {
            eprintln!(
                "{} alpha {}: ours {:.6e} +- {:.3e}, reference {:.6e} +- {:.3e}, |diff| {:.3e}, tolerance {:.3e}",
                if v.pass { "PASS" } else { "FAIL" },
                v.row.alpha.unwrap_or(f64::NAN),
                v.ours.value,
                v.ours.stderr,
                v.row.value,
                v.row.error.unwrap_or(0.0),
                (v.ours.value - v.row.value).abs(),
                v.combined_tolerance,
            );
        }
        for alpha in &comparison.unmatched {
            eprintln!("note: alpha {alpha} has no reference row");
        }
        ok = comparison.all_pass();
    }
    Ok(ok)
}
