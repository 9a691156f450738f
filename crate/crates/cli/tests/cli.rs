use std::process::{Command, Output};

fn gseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gseries"))
        .args(args)
        .env_remove("GSERIES_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_plain_reports_value_and_deviation() {
    let o = gseries(&["compute", "gamma", "--method", "addison", "--terms", "10000", "--prec", "20"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("value:          0.57721565"), "{s}");
    assert!(s.contains("deviation:"), "{s}");
}

#[test]
fn compute_csv_has_one_row_per_checkpoint() {
    let o = gseries(&[
        "compute", "log4_over_pi", "--terms", "1000", "--checkpoints", "10,100,1000", "--output", "csv",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "terms,partial,est_tail,ref_error");
    assert_eq!(lines.len(), 4);
    let terms: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(terms, ["10", "100", "1000"]);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4 && !l.ends_with(',')));
}

#[test]
fn bench_emits_a_row_per_method_and_checkpoint() {
    let o = gseries(&["bench", "gamma"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "method,terms,abs_error,est_tail,seconds");
    assert_eq!(lines.len(), 7);
    let err = |row: &str| row.split(',').nth(2).unwrap().parse::<f64>().unwrap();
    let vacca = lines.iter().find(|l| l.starts_with("vacca,10000,")).unwrap();
    let addison = lines.iter().find(|l| l.starts_with("addison,10000,")).unwrap();
    assert!(err(addison) < err(vacca));
}

#[test]
fn verify_passes() {
    let o = gseries(&["verify", "--suite", "kernels"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS kernels"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["compute", "gamma", "--terms", "0"][..],
        &["compute", "no_such_constant"],
        &["compute", "somos_t", "--t", "2.5"],
        &["compute", "gamma_ab", "--a", "1", "--b", "1", "--z", "1", "--l", "1"],
        &["compute", "gamma", "--method", "epsilon", "--base", "3", "--terms", "1000"],
        &["compute", "gamma", "--prec", "3"],
        &["verify", "--suite", "nonsense"],
        &["bench", "gamma", "--methods", "simpson"],
    ] {
        let o = gseries(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn precision_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gseries"))
        .args(["compute", "gamma", "--terms", "100", "--output", "csv"])
        .env("GSERIES_PRECISION", "12")
        .output()
        .unwrap();
    assert!(o.status.success());
    let s = stdout(&o);
    let partial = s.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(partial.split('.').nth(1).unwrap().len(), 12, "{partial}");
}

#[test]
fn out_file_matches_stdout_and_runs_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("gseries-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.csv");
    let args = ["compute", "catalan_over_pi", "--terms", "2000", "--output", "csv", "--out", path.to_str().unwrap()];
    let first = gseries(&args);
    assert!(first.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
    let second = gseries(&[&args[..], &["--sequential"]].concat());
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn list_shows_catalog() {
    let o = gseries(&["list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["gamma", "log_b", "somos_t", "glaisher_logA", "catalan_over_pi"] {
        assert!(s.contains(name), "{name}");
    }
}
