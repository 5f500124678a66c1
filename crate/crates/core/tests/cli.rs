use std::process::Command;

use cointoss::analysis::report::Report;

fn cointoss(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cointoss"))
        .args(args)
        .env_remove("COINTOSS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bias_reports_three_quarters() {
    let out = cointoss(&["bias", "--strategy", "optimal-alice", "--target", "0"]);
    assert!(out.status.success());
    let report = Report::parse_structured(&stdout(&out)).unwrap();
    let result = report.section("result").unwrap();
    assert_eq!(result.get("p_win_exact"), Some("0.750000000000"));
    assert_eq!(result.get("p_abort_exact"), Some("0.166666666667"));
    assert_eq!(result.get("analytic_bound"), Some("0.750000000000"));
    assert_eq!(result.get("kitaev_reference"), Some("0.207106781187"));
    assert_eq!(
        report.section("config").unwrap().get("strategy"),
        Some("optimal-alice")
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        cointoss(&["honest", "--trials", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(cointoss(&["bias", "--target", "2"]).status.code(), Some(2));
    assert_eq!(cointoss(&["fly"]).status.code(), Some(2));
    assert_eq!(
        cointoss(&["bias", "--strategy", "nope"]).status.code(),
        Some(3)
    );
    assert_eq!(
        cointoss(&["cheat-alice", "--strategy", "measure-and-pick"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(cointoss(&["--help"]).status.code(), Some(0));
    let help = stdout(&cointoss(&["--help"]));
    assert!(help.contains("Exit codes"));
}

#[test]
fn optimize_reports_maximum() {
    let out = cointoss(&["optimize", "--grid-resolution", "100"]);
    assert!(out.status.success());
    let report = Report::parse_structured(&stdout(&out)).unwrap();
    let result = report.section("result").unwrap();
    let value: f64 = result.get("value").unwrap().parse().unwrap();
    assert!((value - 0.75).abs() < 1e-6);
    let a00: f64 = result.get("a00").unwrap().parse().unwrap();
    assert!((a00 - (2.0f64 / 3.0).sqrt()).abs() < 1e-3);
    assert!(report.table.is_some());
}

#[test]
fn reports_are_reproducible_and_seed_comes_from_env() {
    let args = [
        "cheat-bob",
        "--strategy",
        "random-bob:3",
        "--trials",
        "3000",
    ];
    let a = cointoss(&args);
    let b = cointoss(&args);
    assert_eq!(a.stdout, b.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_cointoss"))
        .args(args)
        .env("COINTOSS_SEED", "99")
        .output()
        .unwrap();
    let report = Report::parse_structured(&stdout(&env)).unwrap();
    assert_eq!(report.section("config").unwrap().get("seed"), Some("99"));
    assert_ne!(env.stdout, a.stdout);
}

#[test]
fn writes_tabular_scan_to_file() {
    let dir = std::env::temp_dir().join(format!("cointoss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let out = cointoss(&[
        "scan",
        "--format",
        "tabular",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "step,t,a00,a01,a10,a11,p_win,p_lose,p_detect");
    assert_eq!(rows.len(), 51);
    assert!(text.contains("# reference.kitaev_reference = 0.207106781187"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn montecarlo_and_runs() {
    let out = cointoss(&[
        "montecarlo",
        "--strategy",
        "measure-and-pick",
        "--trials",
        "20000",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    let report = Report::parse_structured(&stdout(&out)).unwrap();
    assert_eq!(
        report.section("montecarlo").unwrap().get("aborts"),
        Some("0")
    );

    let out = cointoss(&["honest", "--trials", "500"]);
    assert!(out.status.success());
    let report = Report::parse_structured(&stdout(&out)).unwrap();
    assert_eq!(report.section("summary").unwrap().get("aborts"), Some("0"));
    assert!(report
        .section("transcript")
        .unwrap()
        .get("line_0")
        .unwrap()
        .starts_with("seed="));
}
