use std::path::PathBuf;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swkb-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Column `name` of a CSV table.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name} in {header:?}"));
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("swkb-lab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn step_two_table() {
    let o = lab(&["spectrum", "--pot", "step:2", "--count", "7"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let got = column(&stdout(&o), "energy_6");
    assert_eq!(got, ["-1.30908", "1.09714", "2.93715", "5.04459", "6.96479", "9.02870", "10.9756"]);
    assert_eq!(column(&stdout(&o), "level"), ["0", "1", "2", "3", "4", "5", "6"]);
}

#[test]
fn exceptional_laguerre_row() {
    let o = lab(&["swkb", "--family", "xlag2", "--g", "3", "--n-max", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(column(&stdout(&o), "i_over_pi_hbar_6"), ["0.00000", "0.997674", "1.99781"]);
}

#[test]
fn every_n_classification() {
    for (g, n) in [("5/12", 17), ("1/2", 3), ("1/3", 2), ("2/3", 5)] {
        let o = lab(&["hermite-states", "--pot", &format!("gamma:{g}")]);
        assert!(o.status.success());
        assert!(stderr(&o).contains(&format!("equidistant every {n} states")), "γ={g}: {}", stderr(&o));
        let levels: Vec<usize> = column(&stdout(&o), "level").iter().map(|s| s.parse().unwrap()).collect();
        assert!(levels.len() >= 2 && levels.windows(2).all(|w| w[1] - w[0] == n), "γ={g}: {levels:?}");
    }
}

#[test]
fn quasi_exact_state_is_tagged() {
    let o = lab(&["spectrum", "--pot", "stepramp:3/2,-sqrt(2)", "--range", "1.9,2.1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(column(&out, "kind"), ["hermite"]);
    assert_eq!(column(&out, "exact"), ["true"]);
    assert_eq!(column(&out, "level"), ["1"]);
}

#[test]
fn manifest_replay_is_byte_identical() {
    let path = scratch("spectrum.json");
    let p = path.to_str().unwrap();
    let first = lab(&["spectrum", "--pot", "gamma:1/2", "--count", "5", "--format", "json", "--manifest", p]);
    assert!(first.status.success());
    let again = lab(&["replay", p]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(first.stdout, again.stdout);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(manifest["command"], "spectrum");
    assert_eq!(manifest["format"], "json");
    assert_eq!(manifest["deterministic"], true);
    // A second run of the same command is identical as well.
    let third = lab(&["spectrum", "--pot", "gamma:1/2", "--count", "5", "--format", "json"]);
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn json_has_one_object_per_record() {
    let o = lab(&["catalog", "list", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(rows.len() >= 12);
    assert!(rows.iter().any(|r| r["name"] == "harmonic"));
    assert!(rows.iter().all(|r| r["constraints"].is_string()));
}

#[test]
fn darboux_dumps_and_resolves() {
    let o = lab(&["darboux", "--pot", "step:4", "--mode", "ka:1", "--resolve", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let resolved: Vec<f64> = column(&stdout(&o), "resolved").iter().map(|s| s.parse().unwrap()).collect();
    for (g, w) in resolved.iter().zip([-3.0, 4.0, 6.0]) {
        assert!((g - w).abs() <= 1e-5, "{g} vs {w}");
    }
    let o = lab(&["darboux", "--pot", "step:8", "--mode", "crum:1", "--points", "11", "--states", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("x,potential,psi_1,psi_2\n"));
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn wigner_grid_dump() {
    let o = lab(&["wigner", "--pot", "step:0", "--grid=-1,1,3,1,3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let w: Vec<f64> = column(&stdout(&o), "w").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(w.len(), 9);
    let centre = w[4];
    assert!((centre - 1.0 / std::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn inversion_round_trip() {
    let o = lab(&["invert", "--spectrum", "linear:4", "--ansatz", "product:sqrt(3)", "--levels", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for e in column(&stdout(&o), "error") {
        assert!(e.parse::<f64>().unwrap().abs() <= 1e-6);
    }
    let file = scratch("levels.txt");
    std::fs::write(&file, "# oscillator\n0 2 4\n6, 8, 10\n").unwrap();
    let o = lab(&["invert", "--spectrum", &format!("file:{}", file.display()), "--ansatz", "mirror", "--points", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(column(&stdout(&o), "branch").len(), 8);
}

#[test]
fn validation_errors_exit_with_two() {
    for args in [
        &["spectrum", "--pot", "gamma:0/1"][..],
        &["spectrum", "--pot", "nonsense"],
        &["swkb", "--family", "nope"],
        &["swkb", "--family", "ka-h"],
        &["darboux", "--pot", "step:2", "--mode", "isoseq"],
        &["darboux", "--pot", "step:4", "--mode", "ka:x"],
        &["invert", "--spectrum", "linear:-1", "--ansatz", "mirror"],
        &["spectrum", "--pot", "step:2", "--hbar", "0"],
        &["no-such-command"],
    ] {
        let o = lab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn numerical_failures_exit_with_three() {
    let o = lab(&["swkb", "--family", "xlag2", "--g", "3", "--n-max", "2", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = lab(&["wigner", "--pot", "step:4", "--grid=-4,4,3,1e9,3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}
