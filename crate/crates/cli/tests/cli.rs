use std::process::{Command, Output};

use serde_json::Value;

fn qstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstat"))
        .args(args)
        .env_remove("QSTAT_SEED")
        .output()
        .expect("qstat runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = qstat(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn crib_bosons() {
    let doc = json(&["crib", "--stats", "be"]);
    assert_eq!(doc["schema"], "qstat/1");
    assert_eq!(doc["question_I"], "2/3");
    assert_eq!(doc["question_II"], "1/2");
    assert!((doc["question_I_f64"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn crib_text_output() {
    let out = qstat(&["crib", "--stats", "classical"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1/2") && text.contains("1/3"), "{text}");
}

#[test]
fn fermion_coins_never_match() {
    let doc = json(&["coins", "--k", "2", "--n", "2", "--stats", "fd"]);
    assert_eq!(doc["all_same"], "0");
    let doc = json(&["coins", "--k", "2", "--n", "2", "--stats", "classical"]);
    assert_eq!(doc["all_same"], "1/4");
    assert_eq!(doc["distribution"].as_array().unwrap().len(), 3);
}

#[test]
fn spin_one_dice() {
    let doc = json(&["dice", "--k", "3", "--n", "30", "--record", "1,0,0"]);
    assert_eq!(doc["mean"], "1/2");
    assert_eq!(doc["beta"]["nu1"], 2);
    assert_eq!(doc["beta"]["nu_rest"], 2);
    assert_eq!(doc["beta_mean"], "1/2");
    assert_eq!(doc["remaining"], 29);
    assert!(doc["finite_n_deviation"].as_f64().unwrap() > 0.0);
}

#[test]
fn daycare_means() {
    let doc = json(&["daycare", "--n", "10"]);
    assert_eq!(doc["prior_mean_fraction"], "1/2");
    assert_eq!(doc["mean_boys_left"], "6");
    assert_eq!(doc["posterior_mean_fraction"], "2/3");
    let posterior = doc["posterior"].as_array().unwrap();
    assert_eq!(posterior.len(), 10);
    assert_eq!(posterior[0]["p"], "1/55");
}

#[test]
fn domain_errors_exit_one_and_name_the_error() {
    let out = qstat(&["coins", "--k", "2", "--n", "3", "--stats", "fd"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FermionOverfill"));

    let out = qstat(&["dice", "--k", "2", "--n", "2", "--record", "3,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("RecordTooLarge"));
}

#[test]
fn argument_errors_exit_two_with_one_line() {
    for args in [
        &["coins", "--stats", "anyon"][..],
        &["dice", "--k", "3", "--n", "5", "--record", "1,0"],
        &["dice", "--k", "2", "--n", "5", "--record", "1,x"],
        &["daycare", "--n", "0"],
        &["frobnicate"],
        &["verify", "--scenario", "roulette"],
    ] {
        let out = qstat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(stderr.trim_end().lines().count(), 1, "{args:?}: {stderr}");
    }
}

#[test]
fn export_json_round_trips_exact_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dice.json");
    let out = qstat(&[
        "dice", "--k", "2", "--n", "12", "--record", "1,0", "--out", path.to_str().unwrap(), "--format", "json",
    ]);
    assert!(out.status.success());
    let exported: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(exported["schema"], "qstat/1");
    let rows = exported["rows"].as_array().unwrap();
    let live = json(&["dice", "--k", "2", "--n", "12", "--record", "1,0"]);
    let dist = live["distribution"].as_array().unwrap();
    assert_eq!(rows.len(), dist.len());
    for (row, d) in rows.iter().zip(dist) {
        assert_eq!(row["R"], d["R"]);
        assert_eq!(row["exact_p"], d["p"]);
        assert!(row["beta_density"].is_f64());
    }
    // 2(m+1)/(n(n+1)) with n = 12 at m = 0.
    assert_eq!(rows[0]["exact_p"], "1/78");
}

#[test]
fn export_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("daycare.csv");
    let out = qstat(&["daycare", "--n", "5", "--out", path.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("R,exact_p,beta_density"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        // The limiting density is 2R.
        assert!((row[2] - 2.0 * row[0]).abs() < 1e-12);
    }
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn verify_single_scenario_passes() {
    let out = qstat(&["--json", "verify", "--scenario", "crib", "--trials", "100000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], true);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["accepted"].as_u64().unwrap() >= 100_000));
}

#[test]
fn verify_is_deterministic_and_seed_env_overrides() {
    let a = qstat(&["--json", "verify", "--scenario", "coins", "--trials", "2000", "--seed", "5"]);
    let b = qstat(&["--json", "verify", "--scenario", "coins", "--trials", "2000", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_qstat"))
        .args(["--json", "verify", "--scenario", "coins", "--trials", "2000", "--seed", "6"])
        .env("QSTAT_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let doc: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(doc["seed"], 5);
}

#[test]
fn verify_exits_nonzero_on_failed_estimate() {
    // With a single accepted trial, some bin frequency lands at 0 or 1 while the
    // exact value is strictly inside, so at least one estimate falls outside
    // its interval.
    let mut failed = false;
    for seed in 0..5 {
        let out = qstat(&["--json", "verify", "--scenario", "daycare", "--trials", "1", "--seed", &seed.to_string()]);
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let pass = doc["pass"].as_bool().unwrap();
        assert_eq!(out.status.code(), Some(if pass { 0 } else { 1 }));
        failed |= !pass;
    }
    assert!(failed);
}

#[test]
fn verify_rejects_export() {
    let out = qstat(&["verify", "--out", "x.json"]);
    assert_eq!(out.status.code(), Some(2));
}
