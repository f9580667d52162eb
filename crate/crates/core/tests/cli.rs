use std::process::{Command, Output};

fn qshuffle(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qshuffle")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_series() {
    let dir = tempfile::tempdir().unwrap();
    let o = qshuffle(&["expand", "--op", "prec", "--lhs", "2 3", "--rhs", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 3 1 + 2 1 3 + 2 4\n");
    let o = qshuffle(&["expand", "--op", "product", "--lhs", "1 1", "--rhs", "1 1"], dir.path());
    assert_eq!(stdout(&o).trim_end(), include_str!("golden/11_star_11.txt").trim_end());
}

#[test]
fn magnus_formula() {
    let dir = tempfile::tempdir().unwrap();
    let o = qshuffle(&["expand", "--op", "magnus", "--input", "X", "--flavor", "strat", "--order", "3"], dir.path());
    assert_eq!(stdout(&o), "X − 1/2·X▷X + 1/4·(X▷X)▷X + 1/12·X▷(X▷X)\n");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qshuffle(&["axioms", "--backend", "bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(qshuffle(&["axioms", "--backend", "words", "--catalog", "NOPE"], dir.path()).status.code(), Some(2));
    assert_eq!(qshuffle(&["expand", "--op", "prec", "--lhs", "0 1", "--rhs", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(qshuffle(&["frobnicate"], dir.path()).status.code(), Some(2));
}

#[test]
fn words_suite_writes_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = qshuffle(&["axioms", "--backend", "words", "--trials", "500", "--seed", "7", "--out", "r.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "K4" && c["max_residual"] == 0.0));
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn zero_driver_has_zero_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = qshuffle(&["magnus", "--driver", "zero", "--trials", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order,mean_err,std"));
    for l in lines {
        let cols: Vec<&str> = l.split(',').collect();
        assert_eq!(cols[1].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = qshuffle(&["simulate", "--kind", "brownian", "--dim", "2", "--steps", "16", "--out", "p.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("t,i,j,value"));
    assert_eq!(text.lines().count(), 1 + 17 * 4);
}
