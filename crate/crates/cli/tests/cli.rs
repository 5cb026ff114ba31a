use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoparametric-lab"))
        .args(args)
        .env_remove("ISOPAR_SEED")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_octonion_family() {
    let o = lab(&["verify", "--family", "g3-octonion", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["family"], "g3-o");
    assert_eq!(v["passed"], true);
    let ids = v["sections"]["identities"].as_object().unwrap();
    assert_eq!(ids["grad_norm_sq(F) - g^2 r^(2g-2)"], "zero polynomial");
    assert_eq!(ids["laplacian(F) - c r^(g-2)"], "zero polynomial");
    assert_eq!(v["sections"]["exact"]["c_sign"], 0);
}

#[test]
fn spectrum_of_product_family() {
    let o = lab(&["spectrum", "--family", "g2-1-2", "--level", "0", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["points"].as_array().unwrap().len(), 50);
    let orientation = &v["sections"]["orientation"];
    assert!(orientation["match"].is_string());
    let resolved: Vec<(f64, u64)> = orientation["expected"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["theta"].as_f64().unwrap(), c["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(resolved.len(), 2);
    assert!((resolved[0].0 - PI / 4.0).abs() < 1e-12 && resolved[0].1 == 1);
    assert!((resolved[1].0 - 3.0 * PI / 4.0).abs() < 1e-12 && resolved[1].1 == 2);
    assert!(v["residual_summary"]["cartan_identity"]["max"].as_f64().unwrap() < 1e-7);
}

#[test]
fn unknown_family_is_usage_error() {
    let o = lab(&["verify", "--family", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    for name in ["g1-2", "g2-1-2", "g3-h", "g3-o"] {
        assert!(err.contains(name), "{err}");
    }
    assert_eq!(lab(&["spectrum", "--bogus"]).status.code(), Some(2));
    assert_eq!(lab(&[]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["spectrum", "--family", "g3-c", "--level", "0.3", "--samples", "5", "--seed", "42"];
    let a = lab(&args);
    let b = lab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = lab(&["spectrum", "--family", "g3-c", "--level", "0.3", "--samples", "5", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_isoparametric-lab"));
        cmd.args(["flow", "--family", "g1-2", "--samples", "2"]);
        match env {
            Some(s) => cmd.env("ISOPAR_SEED", s),
            None => cmd.env_remove("ISOPAR_SEED"),
        };
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        json(&o)
    };
    let with_env = run(Some("7"));
    assert_eq!(with_env["seed"], 7);
    assert_eq!(run(None)["seed"], 20_240_611);
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eig.csv");
    let o = lab(&[
        "spectrum",
        "--family",
        "g3-r",
        "--samples",
        "4",
        "--csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "sample,index,eigenvalue,theta,cluster");
    assert_eq!(lines.len(), 1 + 4 * 3);
    let last: Vec<&str> = lines[12].split(',').collect();
    assert_eq!(&last[..2], &["3", "2"]);
    assert_eq!(last[4], "2");
}

#[test]
fn catalog_lists_all_families() {
    let o = lab(&["catalog", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["g1-2", "g1-3", "g2-1-1", "g2-1-2", "g2-2-2", "g3-r", "g3-c", "g3-h", "g3-o"]);
    let o8 = &v[8];
    assert_eq!(o8["ambient_dim"], 26);
    assert_eq!(o8["polynomial"]["nvars"], 26);
    assert_eq!(o8["polynomial"]["terms"].as_array().unwrap().len(), 106);
}

#[test]
fn other_commands_pass() {
    for args in [
        ["focal", "--family", "g3-h", "--samples", "5", "--level", "-0.4"],
        ["identity", "--family", "g2-2-2", "--samples", "50", "--level", "0.2"],
        ["flow", "--family", "g3-o", "--samples", "3", "--level", "0"],
    ] {
        let o = lab(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["passed"], true);
    }
}

#[test]
fn text_format() {
    let o = lab(&["spectrum", "--family", "g3-r", "--samples", "2", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("spectrum g3-r seed=20240611 PASS"));
    assert!(s.contains("m 1"));
}
