use std::process::Command;

use ostrovsky::cli::{run, EXIT_BLOW_UP, EXIT_DRIFT, EXIT_OBSTRUCTION, EXIT_OK, EXIT_USAGE};
use ostrovsky::simulator::GridState;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = vec![];
    let mut err = vec![];
    let argv = std::iter::once("ostrovsky").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(body: &str) -> Value {
    serde_json::from_str(body).unwrap()
}

/// Report body with the manifest block removed.
fn without_manifest(body: &str) -> Value {
    let mut v = json(body);
    v.as_object_mut().unwrap().remove("manifest");
    v
}

#[test]
fn integrability_ostrovsky_has_obstruction() {
    let (code, out, _) = call(&["integrability", "--equation", "ostrovsky"]);
    assert_eq!(code, EXIT_OBSTRUCTION);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["verdict"], "obstruction-found");
    assert_eq!(v["report"]["result"]["first_obstruction"]["m"], 1);
    assert_eq!(v["report"]["result"]["first_obstruction"]["n"], 3);
    assert_eq!(v["report"]["omega"], "(xi1^4*beta + gamma)/xi1");
    assert!(v["report"]["disclaimer"].as_str().unwrap().contains("necessary"));
    assert_eq!(v["manifest"]["command"], "integrability");
    assert_eq!(v["manifest"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn integrability_kdv_passes() {
    let (code, out, _) = call(&["integrability", "--equation", "kdv", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: no-obstruction-up-to-depth"));
    assert!(out.contains("phi_2"));
}

#[test]
fn integrability_specialization_and_text_equations() {
    let (code, _, _) = call(&["integrability", "--equation", "ostrovsky", "--specialize", "gamma=0"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = call(&["integrability", "--equation", "u_t = D3(u) + u*u*D1(u)", "--max-order", "3"]);
    assert_eq!(code, EXIT_OK);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.txt");
    std::fs::write(&path, "u_t = Dinv(beta*D4(u) + gamma*u) - 2*u*D1(u)\n").unwrap();
    let (code, _, _) = call(&["integrability", "--equation", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OBSTRUCTION);
}

#[test]
fn integrability_usage_errors() {
    for args in [
        &["integrability", "--equation", "u_t = u*("][..],
        &["integrability", "--equation", "u_t = u_t"],
        &["integrability", "--equation", "kdv", "--specialize", "u=1"],
        &["integrability", "--equation", "kdv", "--format", "csv"],
        &["integrability"],
        &["frobnicate"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn waves_points() {
    let (code, out, _) = call(&["waves", "--p", "1", "--q", "0"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["report"]["label"], "Region1");
    assert_eq!(v["report"]["fixed_point"], "saddle focus");
    assert!(v["report"]["max_residual"].as_f64().unwrap() < 1e-12);

    let (_, out, _) = call(&["waves", "--beta", "-1", "--gamma", "1", "--c", "0"]);
    let v = json(&out);
    assert_eq!(v["report"]["existence"]["nonexistence_known"], true);
    assert_eq!(v["report"]["label"], "Region3");

    let (_, out, _) = call(&["waves", "--p", "1/4", "--q", "1", "--exact", "--format", "text"]);
    assert!(out.contains("C3"), "{out}");

    let (code, out, _) = call(&["waves", "--p", "0", "--q", "1", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "p,q,label,eigen_structure,existence_flag\n0,1,C0,\"0, 0, ±λ\",exists\n");
}

#[test]
fn waves_scan_rows() {
    let (code, out, _) = call(&["waves", "--scan", "--p", "-1:1", "--q", "-2:2", "--grid", "41x41"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1682);
    assert_eq!(lines[0], "p,q,label,eigen_structure,existence_flag");
    assert!(lines[1].starts_with("-1,-2,Region3,"));
}

#[test]
fn waves_usage_errors() {
    for args in [
        &["waves", "--p", "1", "--q", "0", "--beta", "1"][..],
        &["waves", "--p", "1"],
        &["waves"],
        &["waves", "--scan", "--p", "1", "--q", "0:1"],
        &["waves", "--scan", "--p", "0:1", "--q", "0:1", "--grid", "1x5"],
        &["waves", "--beta", "0", "--gamma", "1", "--c", "0"],
        &["waves", "--p", "x", "--q", "0"],
    ] {
        assert_eq!(call(args).0, EXIT_USAGE, "{args:?}");
    }
}

fn soliton_config(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("soliton.conf");
    std::fs::write(&path, "profile = kdv-soliton\nn = 256\nL = 50\ndt = 1e-3\nT = 1\nbeta = 1\ngamma = 0\nk = 1\n")
        .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn simulate_soliton() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = soliton_config(&dir);
    let (code, out, err) = call(&["simulate", "--config", &cfg]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("t,I,P,H,maxu\n"));
    assert_eq!(out.lines().count(), 12);
    assert!(err.contains("shape error"), "{err}");

    let (_, out, _) = call(&["simulate", "--config", &cfg, "--format", "json"]);
    let v = json(&out);
    assert!(v["report"]["summary"]["shape_error"].as_f64().unwrap() <= 1e-4);
    assert_eq!(v["report"]["summary"]["variational"]["sign"], -1);
    assert_eq!(v["report"]["summary"]["variational_sign_is_plus"], false);
}

#[test]
fn simulate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = soliton_config(&dir);
    let (code, _, err) = call(&["simulate", "--config", &cfg, "--set", "dt=0.1"]);
    assert_eq!(code, EXIT_DRIFT, "{err}");
    assert!(err.contains("EXCEEDED"));

    let (code, out, _) = call(&["simulate", "--set", "n=64", "--set", "T=0.5", "--set", "dt=0.01"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().skip(1).all(|l| l.split(',').skip(1).take(3).all(|x| x == "0")));

    let blow = [
        "simulate",
        "--set",
        "profile=gaussian-dipole",
        "--set",
        "amplitude=1e80",
        "--set",
        "n=64",
        "--set",
        "dt=0.1",
        "--set",
        "T=10",
    ];
    assert_eq!(call(&blow).0, EXIT_BLOW_UP);

    assert_eq!(call(&["simulate", "--set", "bogus=1"]).0, EXIT_USAGE);
    assert_eq!(call(&["simulate", "--set", "n=10"]).0, EXIT_USAGE);
    assert_eq!(call(&["simulate", "--config", "/nonexistent/file"]).0, EXIT_USAGE);
}

#[test]
fn simulate_seed_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("snap.bin");
    let base = ["simulate", "--set", "profile=random-smooth", "--set", "n=64", "--set", "T=0.1", "--set", "dt=0.01"];
    let with_seed = |seed: &str| {
        let mut a = base.to_vec();
        a.extend(["--seed", seed, "--snapshot", snap.to_str().unwrap()]);
        let (code, out, _) = call(&a);
        assert_eq!(code, EXIT_OK);
        (out, std::fs::read(&snap).unwrap())
    };
    let (a, bytes_a) = with_seed("1");
    let (b, bytes_b) = with_seed("1");
    let (c, _) = with_seed("2");
    assert_eq!(a, b);
    assert_eq!(bytes_a, bytes_b);
    assert_ne!(a, c);
    let state = GridState::from_bytes(&bytes_a).unwrap();
    assert_eq!(state.n(), 64);
    assert!((state.t - 0.1).abs() < 1e-12);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["integrability", "--equation", "ostrovsky"][..],
        &["waves", "--p", "1", "--q", "3"],
        &["waves", "--scan", "--p", "-1:1", "--q", "-1:1", "--grid", "5x5", "--format", "json"],
        &["simulate", "--set", "profile=random-smooth", "--set", "n=64", "--set", "T=0.2", "--set", "dt=0.01", "--format", "json"],
    ] {
        let (_, a, _) = call(args);
        let (_, b, _) = call(args);
        assert_eq!(without_manifest(&a), without_manifest(&b), "{args:?}");
        let ja = json(&a);
        assert_eq!(ja["schema"], 1);
        assert!(ja["manifest"]["timestamp_unix"].as_u64().unwrap() > 0);
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = call(&["waves", "--p", "-1", "--q", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["report"]["label"], "Region3");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ostrovsky");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["integrability", "--equation", "ostrovsky"]), EXIT_OBSTRUCTION);
    assert_eq!(status(&["integrability", "--equation", "kdv"]), EXIT_OK);
    assert_eq!(status(&["integrability", "--equation", "u_t = ("]), EXIT_USAGE);
    assert_eq!(status(&["--version"]), EXIT_OK);
}
