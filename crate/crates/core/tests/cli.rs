use std::path::PathBuf;
use std::process::Command;

use farank::cli::{run, Outcome};
use farank::registry;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn farank(args: &[&str]) -> Outcome {
    run(std::iter::once("farank").chain(args.iter().copied()))
}

fn binary(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_farank"))
        .args(args)
        .envs(envs.iter().copied())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn yang_lee_rank() {
    let (code, stdout, _) = binary(
        &["rank", "--voa", "virasoro:2,5", "--ins", "Wmin^6", "--genus", "0"],
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(stdout, "5\n");
}

#[test]
fn z5_from_file() {
    let sel = format!("pointed:{}", data("z5.json"));
    let out = farank(&["rank", "--voa", &sel, "--ins", "x^5", "--genus", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "25\n"));
    let out = farank(&["rank", "--voa", &sel, "--ins", "x^4", "--genus", "2"]);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn genfunc_matches_rank_calls() {
    let out = farank(&[
        "genfunc", "--voa", "virasoro:2,7", "--step", "Wmin", "--genus", "0", "--coeffs", "8",
    ]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with('(') && lines[0].contains(")/("));
    let coeffs: Vec<&str> = lines[1].split(' ').collect();
    assert_eq!(coeffs.len(), 8);
    for (n, c) in coeffs.iter().enumerate() {
        let ins = format!("Wmin^{}", n + 3);
        let r = farank(&["rank", "--voa", "virasoro:2,7", "--ins", &ins]);
        assert_eq!(r.stdout.trim(), *c, "n = {n}");
    }
}

#[test]
fn genfunc_positive_genus_uses_trace() {
    let out = farank(&[
        "genfunc", "--voa", "sl2:2", "--step", "W1", "--deviation", "W2", "--genus", "2",
        "--coeffs", "6", "--output", "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for (n, c) in v["coefficients"].as_array().unwrap().iter().enumerate() {
        let ins = format!("W2,W1^{}", n + 3);
        let r = farank(&["rank", "--voa", "sl2:2", "--ins", &ins, "--genus", "2"]);
        assert_eq!(r.stdout.trim(), c.to_string());
    }
}

#[test]
fn tensor_verify_passes() {
    let out = farank(&["verify", "--voa", "tensor:(virasoro:2,5,sl2:1)"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    for law in ["kronecker-fusion", "kronecker-fa", "rank-multiplicative", "c1-tensor", "FA1"] {
        assert!(out.stdout.contains(&format!("PASS {law}")), "{law}");
    }
}

#[test]
fn builtin_verify_is_green() {
    for sel in ["virasoro:3,5", "sl2:3", "pointed:Z2xZ2", "lattice:D4"] {
        let out = farank(&["verify", "--voa", sel, "--max-n", "3", "--max-g", "1"]);
        assert_eq!(out.code, 0, "{sel}: {}", out.stdout);
        assert!(!out.stdout.contains("FAIL"));
    }
}

#[test]
fn corrupted_spec_names_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let text = registry::virasoro(2, 5).unwrap().to_json();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Drop the orbit (V, V, V); the vacuum no longer pairs with itself.
    let orbits = v["three_point"].as_array_mut().unwrap();
    orbits.retain(|o| *o != serde_json::json!([1, 1, 1, 1]));
    let path = dir.path().join("broken.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let sel = format!("file:{}", path.display());
    for cmd in ["rank", "verify"] {
        let (code, stdout, stderr) = binary(&[cmd, "--voa", &sel], &[]);
        assert_eq!(code, 2);
        assert!(stdout.is_empty());
        assert!(stderr.contains("vacuum-pairing"), "{stderr}");
    }
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        vec!["rank", "--voa", "virasoro:3,6"],
        vec!["rank", "--voa", "nonsense:1"],
        vec!["rank", "--voa", "virasoro:2,5", "--ins", "Q^2"],
        vec!["rank", "--voa", "virasoro:2,5", "--ins", "[Wmin"],
        vec!["rank", "--voa", "virasoro:2,5", "--frame", "V"],
        vec!["nef", "--voa", "virasoro:2,5"],
        vec!["rank", "--genus", "1"],
    ] {
        assert_eq!(farank(&args).code, 2, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_three() {
    for args in [
        vec!["rank", "--voa", "virasoro:2,5", "--ins", "Wmin^2", "--strict-stability"],
        vec!["rank", "--voa", "sl2:1", "--genus", "1", "--strict-stability"],
        vec!["divisor", "--voa", "virasoro:2,5", "--ins", "[Wmin,Wmin]"],
        vec!["genfunc", "--voa", "virasoro:2,5", "--step", ""],
    ] {
        let out = farank(&args);
        assert_eq!(out.code, 3, "{args:?}: {}", out.stderr);
    }
    // Without the flag, unstable ranks are evaluated formally.
    let out = farank(&["rank", "--voa", "virasoro:2,5", "--ins", "Wmin^2"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1\n"));
}

#[test]
fn json_and_table_agree() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["rank", "--voa", "virasoro:3,5", "--ins", "Wmax^4,Wmin", "--genus", "2"],
        vec!["rank", "--voa", "sl2:4", "--ins", "W1^3", "--frame", "W1,W0", "--genus", "1"],
    ];
    for args in cases {
        let table = farank(&args);
        let mut json_args = args.clone();
        json_args.extend(["--output", "json"]);
        let json: serde_json::Value = serde_json::from_str(&farank(&json_args).stdout).unwrap();
        assert_eq!(json["rank"].to_string(), table.stdout.trim());
    }

    let table = farank(&["fa-matrix", "--voa", "virasoro:2,5", "--ins", "Wmin^3", "--genus", "1"]);
    let json = farank(&[
        "fa-matrix", "--voa", "virasoro:2,5", "--ins", "Wmin^3", "--genus", "1", "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let from_table: Vec<Vec<String>> = table
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().skip(1).map(String::from).collect())
        .collect();
    let from_json: Vec<Vec<String>> = v["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.to_string()).collect())
        .collect();
    assert_eq!(from_table, from_json);

    let table = farank(&["genfunc", "--voa", "virasoro:3,4", "--step", "Wmax"]);
    let json = farank(&["genfunc", "--voa", "virasoro:3,4", "--step", "Wmax", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(table.stdout.lines().next().unwrap(), v["display"].as_str().unwrap());
    assert_eq!(v["display"], "(z)/(1 - z^2)");
}

#[test]
fn divisor_table_and_json() {
    let args = ["divisor", "--voa", "virasoro:3,4", "--ins", "[Wmax,Wmax,Wmax,Wmax]"];
    let table = farank(&args);
    assert_eq!(table.code, 0);
    assert!(table.stdout.contains("degree_on_m04: 2"));
    assert!(table.stdout.contains("genus0: holds"));
    let mut json_args = args.to_vec();
    json_args.extend(["--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&farank(&json_args).stdout).unwrap();
    assert_eq!(v["class"]["g"], 0);
    assert_eq!(v["class"]["psi"][0], "1/2");
    assert_eq!(v["checks"]["degree_on_m04"], "2/1");

    let g1 = farank(&["divisor", "--voa", "lattice:A1", "--ins", "[e]", "--genus", "1"]);
    assert_eq!(g1.code, 0, "{}", g1.stderr);
    assert!(g1.stdout.contains("type1: fails"));
    assert!(g1.stdout.contains("type2: holds"));
}

#[test]
fn nef_report_with_padding() {
    let out = farank(&["nef", "--voa", "lattice:A1", "--holomorphic-c", "8"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("type 1     equivalent-fails"));
    assert!(out.stdout.contains("padding exponent (c_H = 8): 1"));
    let json = farank(&["nef", "--voa", "lattice:E8", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["vacuum_divisor_nef"], true);
}

#[test]
fn registry_lists_builtins() {
    let out = farank(&["registry"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("virasoro:2,5"));
    let json = farank(&["registry", "--voa", "sl2:2", "--output", "json"]);
    let spec = farank::spec::VoaSpec::from_json(&json.stdout).unwrap();
    assert_eq!(spec, registry::affine_sl2(2).unwrap());
}

#[test]
fn output_is_deterministic_across_runs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().display().to_string();
    let args = ["fa-matrix", "--voa", "sl2:4", "--ins", "W1^5,W2", "--genus", "3", "--output", "json"];
    let plain = binary(&args, &[]);
    let cold = binary(&args, &[("FA_RANK_CACHE_DIR", &cache)]);
    let warm = binary(&args, &[("FA_RANK_CACHE_DIR", &cache)]);
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
