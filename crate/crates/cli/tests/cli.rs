use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ahgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

const VERDICT: usize = 8;

#[test]
fn ads_check_passes_and_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ads.csv");
    let o = ahgraph(&["ads-check", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("command,case,quantity,value,reference,residual,relation,tolerance,verdict,note\n"));
    assert!(!text.contains('\r'));
    let rows = rows(&text);
    assert!(rows.len() > 30);
    for r in &rows {
        assert_eq!(r.len(), 10);
        if r[VERDICT] == "PASS" || r[VERDICT] == "FAIL" {
            assert!(!r[7].is_empty(), "row without tolerance: {r:?}");
            assert!(matches!(r[6].as_str(), "<=" | ">="));
        }
    }
    let h = rows.iter().find(|r| r[2] == "H_Phi(V_0)").unwrap();
    let value: f64 = h[3].parse().unwrap();
    assert!((value / (16.0 * std::f64::consts::PI) - 1.0).abs() < 0.01);
}

#[test]
fn ads_check_in_four_dimensions() {
    let o = ahgraph(&["ads-check", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&String::from_utf8(o.stdout).unwrap());
    let h = rows.iter().find(|r| r[2] == "H_Phi(V_0)").unwrap();
    let value: f64 = h[3].parse().unwrap();
    assert!((value / (12.0 * std::f64::consts::PI.powi(2)) - 1.0).abs() < 0.01);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    for (name, text, cmd) in [
        ("neg.ini", "[field]\nkind = ads\nmass = -1\n", "ads-check"),
        ("unknown.ini", "[run]\ncolour = blue\n", "mass"),
        ("kindkey.ini", "[field]\nkind = exponential\ncenter = 2\n", "identity-check"),
        ("flat.ini", "[run]\nn = 2\n", "boundary-report"),
        ("noh.ini", "[field]\nkind = gaussian\n", "penrose-report"),
    ] {
        let p = write(&dir, name, text);
        let o = ahgraph(&[cmd, "--config", s(&p)]);
        assert_eq!(o.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(ahgraph(&["mass", "--config", "/nonexistent/run.ini"]).status.code(), Some(2));
    assert_eq!(ahgraph(&["mass", "--tol-scale", "0"]).status.code(), Some(2));
    assert_eq!(ahgraph(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn corrupted_jet_produces_fail_rows() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "c.ini", "[debug]\ncorrupt_jet = true\n");
    let o = ahgraph(&["identity-check", "--config", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    let rows = rows(&String::from_utf8(o.stdout).unwrap());
    let fails: Vec<_> = rows.iter().filter(|r| r[VERDICT] == "FAIL").collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|r| r[2] == "Gauss trace vs explicit Scal"));
    assert!(!o.stderr.is_empty());
}

#[test]
fn zero_field_has_zero_residuals() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "z.ini", "[field]\nkind = zero\n[surface]\nkind = sphere\nrho = 1\n");
    let o = ahgraph(&["identity-check", "--config", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&String::from_utf8(o.stdout).unwrap());
    for r in rows.iter().filter(|r| r[2].contains("divergence") || r[2].contains("Stokes")) {
        assert_eq!(r[5].parse::<f64>().unwrap(), 0.0, "{r:?}");
    }
}

#[test]
fn penrose_report_flags_and_equality() {
    let o = ahgraph(&["penrose-report"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&String::from_utf8(o.stdout).unwrap());
    let gap = rows
        .iter()
        .find(|r| r[1] == "horizon/graph" && r[2] == "interior + boundary >= rhs")
        .unwrap();
    assert!(gap[5].parse::<f64>().unwrap().abs() < 1e-8);
    for variant in ["graph", "hs", "m"] {
        assert!(rows.iter().any(|r| r[1] == format!("horizon/{variant}")));
    }
    let spike = rows.iter().find(|r| r[1] == "spike/graph" && r[2] == "int HV >= rhs").unwrap();
    assert_eq!(spike[VERDICT], "HYPOTHESIS");
    assert!(rows.iter().any(|r| r[2] == "min Scal + n(n-1)"));
    assert!(rows.iter().any(|r| r[2] == "min H"));
}

#[test]
fn flags_override_file_values() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "r.ini", "[run]\nn = 4\nseed = 1\n[fuzz]\ncount = 200\n");
    let o = ahgraph(&["matrix-fuzz", "--config", s(&p), "--seed", "99"]);
    assert_eq!(o.status.code(), Some(0));
    let fuzz = rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(fuzz[0][3].parse::<f64>().unwrap(), 99.0);
    assert_eq!(fuzz[1][3].parse::<f64>().unwrap(), 200.0);
    let o = ahgraph(&["ads-check", "--config", s(&p), "--n", "3"]);
    let table = rows(&String::from_utf8(o.stdout).unwrap());
    let h = table.iter().find(|r| r[2] == "H_Phi(V_0)").unwrap();
    assert!((h[4].parse::<f64>().unwrap() - 16.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("c.csv"));
    for (out, seed) in [(&a, "11"), (&b, "11"), (&c, "12")] {
        assert_eq!(ahgraph(&["matrix-fuzz", "--seed", seed, "--out", s(out)]).status.code(), Some(0));
    }
    let (a, b, c) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap(), std::fs::read(c).unwrap());
    assert_eq!(a, b);
    assert_ne!(a, c);
    let rows = rows(std::str::from_utf8(&a).unwrap());
    let hits = rows.iter().find(|r| r[2] == "equality hits").unwrap();
    assert!(hits[3].parse::<f64>().unwrap() > 0.0);
    assert_eq!(hits[VERDICT], "PASS");

    let x = ahgraph(&["boundary-report", "--n", "4"]).stdout;
    let y = ahgraph(&["boundary-report", "--n", "4"]).stdout;
    assert_eq!(x, y);
}

#[test]
fn tolerance_scale_can_force_failures() {
    let o = ahgraph(&["ads-check", "--tol-scale", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
}
