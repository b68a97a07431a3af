use purity_core::TargetStatus;
use purity_mc::experiment::plan;
use purity_mc::{load_reference, run_experiment, Experiment, IntegrandKind, RunConfig, RunError};

fn table(experiment: Experiment) -> RunConfig {
    RunConfig::new(experiment)
}

#[test]
fn default_plans_follow_published_budgets() {
    let refs = load_reference().unwrap();
    assert_eq!(
        plan(&table(Experiment::Table1), &refs),
        [(10.0, 1_000_000), (20.0, 2_000_000), (40.0, 16_000_000)]
    );
    assert_eq!(
        plan(&table(Experiment::Table2), &refs),
        [(10.0, 256_000_000)]
    );
    assert_eq!(
        plan(&table(Experiment::Table4), &refs),
        [(10.0, 8_000_000), (20.0, 128_000_000)]
    );
    let full = RunConfig {
        full: true,
        ..table(Experiment::Table2)
    };
    assert_eq!(plan(&full, &refs).len(), 5);
}

#[test]
fn explicit_alphas_and_calls_override_the_table() {
    let refs = load_reference().unwrap();
    let cfg = RunConfig {
        alphas: vec![40.0, 7.0],
        ..table(Experiment::Table1)
    };
    assert_eq!(plan(&cfg, &refs), [(40.0, 16_000_000), (7.0, 1_000_000)]);
    let cfg = RunConfig {
        calls_budget: Some(5000),
        ..cfg
    };
    assert_eq!(plan(&cfg, &refs), [(40.0, 5000), (7.0, 5000)]);
}

#[test]
fn table2_replays_bit_identically() {
    let refs = load_reference().unwrap();
    let cfg = RunConfig {
        alphas: vec![10.0],
        calls_budget: Some(4_000_000),
        ..table(Experiment::Table2)
    };
    let a = run_experiment(&cfg, &refs).unwrap();
    let b = run_experiment(&cfg, &refs).unwrap();
    assert_eq!(a.len(), 1);
    assert!(a[0].result.same_result(&b[0].result));
    assert_eq!(a[0].result.value.to_bits(), b[0].result.value.to_bits());
    assert!(a[0].status.is_some());
    assert!(a[0].result.calls <= 4_000_000);
}

#[test]
fn entanglement_is_one_minus_purity() {
    let refs = load_reference().unwrap();
    let cfg = RunConfig {
        alphas: vec![10.0],
        calls_budget: Some(1_000_000),
        ..table(Experiment::Table3)
    };
    let r = &run_experiment(&cfg, &refs).unwrap()[0].result;
    assert_eq!(r.entanglement, Some(1.0 - r.value));
    assert_eq!(r.experiment, "table3");
    assert_eq!((r.seed, r.shards, r.calls), (42, 8, 1_000_000));
}

#[test]
fn trace_rows_carry_no_entanglement() {
    let refs = load_reference().unwrap();
    let cfg = RunConfig {
        alphas: vec![10.0],
        calls_budget: Some(200_000),
        ..table(Experiment::Table1)
    };
    let r = &run_experiment(&cfg, &refs).unwrap()[0].result;
    assert_eq!(r.entanglement, None);
    assert!((r.value - 0.786360).abs() < 0.05);
}

#[test]
fn target_mode_stops_on_the_relative_error() {
    let refs = load_reference().unwrap();
    let cfg = RunConfig {
        experiment: Experiment::Integrate,
        integrand: IntegrandKind::Trace,
        alphas: vec![10.0],
        calls_budget: Some(64_000_000),
        target_rel_error: Some(0.01),
        ..table(Experiment::Integrate)
    };
    let row = &run_experiment(&cfg, &refs).unwrap()[0];
    assert_eq!(row.status, Some(TargetStatus::Converged));
    assert!(row.result.stderr <= 0.01 * row.result.value);
}

#[test]
fn scalar_experiments() {
    let refs = load_reference().unwrap();
    let bohr = &run_experiment(&table(Experiment::Bohr), &refs).unwrap()[0].result;
    assert_eq!((bohr.alpha, bohr.stderr, bohr.calls), (None, 0.0, 0));
    assert!((bohr.value / 2.375119475636861e-138 - 1.0).abs() < 1e-12);

    let still = RunConfig {
        mz: [1e-14, 1e-14, 1.0, 2e-4, 0.0],
        ..table(Experiment::Mzphase)
    };
    assert_eq!(run_experiment(&still, &refs).unwrap()[0].result.value, 0.0);
}

#[test]
fn invalid_configs_are_config_errors() {
    let refs = load_reference().unwrap();
    for cfg in [
        RunConfig {
            alphas: vec![-1.0],
            ..table(Experiment::Table1)
        },
        RunConfig {
            shards: 0,
            ..table(Experiment::Table1)
        },
        RunConfig {
            target_rel_error: Some(1.5),
            ..table(Experiment::Table1)
        },
        table(Experiment::Integrate),
        table(Experiment::Verify),
        RunConfig {
            masses: [0.0, 1.0],
            ..table(Experiment::Bohr)
        },
    ] {
        let err = run_experiment(&cfg, &refs).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{cfg:?}: {err}");
        assert!(matches!(err, RunError::Config(_) | RunError::Core(_)));
    }
}
