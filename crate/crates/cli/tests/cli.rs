use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dball")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Data rows of a CSV result, with the comment lines dropped.
fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn dist_table_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = dball(&["dist", "--f", "1 - z1", "--alpha", "2", "--dmax", "40", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["D", "n", "dist_sq", "sqrt_dist_sq", "phi_prediction", "cond_estimate"]);
    assert_eq!(rows.len(), 41);
    let d: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(d[0] <= 4.0, "bounded by 2^alpha: {}", d[0]);
    assert!(d.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    for r in &rows {
        let s: f64 = r[3].parse().unwrap();
        let q: f64 = r[2].parse().unwrap();
        assert!((s * s - q).abs() <= 1e-12 * q);
    }
}

#[test]
fn cauchy_lemma_form_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = dball(&["cauchy", "--measure", "diag_circle", "--alpha", "2", "--K", "1000", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = read_json(&out);
    // Only even degrees carry mass: A_{2m} = C(2m, m) 4^{-m}.
    let mut a = 1.0;
    let mut lemma = 0.0;
    for m in 0..=500u32 {
        if m > 0 {
            a *= (2 * m - 1) as f64 / (2 * m) as f64;
        }
        lemma += a / (2 * m + 1) as f64;
    }
    let got = v["result"]["lemma_form_trunc"].as_f64().unwrap();
    assert!((got - lemma).abs() < 1e-12 * lemma, "{got} vs {lemma}");
    let exact = v["result"]["exact_trunc"].as_f64().unwrap();
    assert!(exact > 0.0 && exact <= got);
    assert_eq!(v["provenance"]["command"], "cauchy");
}

#[test]
fn diag_circle_energy_is_one_plus_log_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.json");
    let o = dball(&["energy", "--measure", "diag_circle", "--alpha", "2", "--K", "100000", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = read_json(&out);
    let e = v["result"]["value"].as_f64().unwrap();
    assert!((e - (1.0 + std::f64::consts::LN_2)).abs() < 1e-3, "{e}");
    assert_eq!(v["result"]["diverged"], false);
}

#[test]
fn verify_replays_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("e.json");
    let csv = dir.path().join("t.csv");
    let o = dball(&["--threads", "2", "energy", "--measure", "diag_circle", "--K", "5000", "--out", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = dball(&["dist", "--f", "1 - 2*z1*z2", "--alpha", "1", "--dmax", "12", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for p in [&json, &csv] {
        let o = dball(&["--verify", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    let last = text.trim_end().rsplit('\n').next().unwrap().to_string();
    let forged = last.replacen(',', ",9", 2);
    std::fs::write(&csv, text.replace(&last, &forged)).unwrap();
    let o = dball(&["--verify", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("differs"), "{}", stderr(&o));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for t in ["1", "4"] {
        let out = dir.path().join(format!("t{t}.csv"));
        let o = dball(&["--threads", t, "dist", "--f", "1 - z1*z2", "--alpha", "1.5", "--dmax", "24", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        bodies.push(csv_rows(&out).1);
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn malformed_input_exits_two() {
    let o = dball(&["norm", "--f", "1 - w", "--alpha", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("position"), "{}", stderr(&o));

    let o = dball(&["dist", "--f", "1-z1", "--alpha", "1", "--dmax", "4", "--frobnicate"]);
    assert_eq!(code(&o), 2);

    let o = dball(&["--verify", "x.json", "norm", "--f", "1", "--alpha", "1"]);
    assert_eq!(code(&o), 2);

    let o = dball(&["energy", "--measure", "blob"]);
    assert_eq!(code(&o), 2);

    let o = dball(&["norm", "--f", "1", "--alpha", "nan"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn point_mass_energy_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = dball(&["energy", "--measure", "point_10", "--alpha", "2", "--K", "1000", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert_eq!(read_json(&out)["result"]["diverged"], true);
}

#[test]
fn norm_is_unitarily_invariant() {
    let a = dball(&["norm", "--f", "1 - 2*z1*z2 + z1^3", "--alpha", "0.5"]);
    let b = dball(&["norm", "--f", "1 - 2*z1*z2 + z1^3", "--alpha", "0.5", "--unitary", "hadamard"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(code(&b), 0, "{}", stderr(&b));
    let va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    let na = va["result"]["norm_sq"].as_f64().unwrap();
    let nb = vb["result"]["norm_sq"].as_f64().unwrap();
    assert!((na - nb).abs() < 1e-12 * na, "{na} vs {nb}");
}

#[test]
fn capacity_on_circle_gives_near_uniform_weights() {
    let o = dball(&["capacity", "--set", "diag_circle", "--N", "32", "--alpha", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["weight_max_over_min"].as_f64().unwrap() < 1.01);
    assert_eq!(v["result"]["weights"].as_array().unwrap().len(), 32);
}

#[test]
fn evidence_bundles_both_sides() {
    let o = dball(&["evidence", "--dmax", "8", "--N", "16,32", "--iters", "500"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["distances"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["energies"].as_array().unwrap().len(), 2);
}
