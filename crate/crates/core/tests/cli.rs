use std::fs;
use std::path::Path;

use lie_toeplitz::cli::{run, EXIT_DISAGREE, EXIT_ERROR, EXIT_OK};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["lie-toeplitz"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = match fs::read_dir(dir) {
        Ok(rd) => rd.map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect(),
        Err(_) => Vec::new(),
    };
    names.sort();
    names
}

#[test]
fn index_single_character_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let (code, stdout, _) = invoke(&[
        "--out",
        out.to_str().unwrap(),
        "index",
        "--symbol",
        "circle:char:k=1",
        "--bandwidth",
        "32",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("svd=-1"));
    assert_eq!(listing(&out), ["report.csv", "report.json", "singular_values.csv"]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["agreement"], true);
    for m in report["methods"].as_array().unwrap() {
        assert_eq!(m["rounded"], -1);
    }
}

#[test]
fn constant_symbol_has_index_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = invoke(&[
        "--out",
        dir.path().to_str().unwrap(),
        "index",
        "--symbol",
        "circle:const:c=2",
        "--bandwidth",
        "8",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("winding=0") && stdout.contains("svd=0"));
}

#[test]
fn disagreement_exits_with_two() {
    // a truncation too small for the Connes margin makes that method fail
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"group":"circle","symbol":{"builtin":"circle:char:k=3"},"bandwidth":4}"#).unwrap();
    let (code, _, _) = invoke(&["--config", cfg.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap(), "index"]);
    assert_eq!(code, EXIT_DISAGREE);
}

#[test]
fn malformed_coefficients_leave_no_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.json"), r#"{"group":"circle","bandwidth":1,"coeffs":{"1":[[[1,0]]],"q":1}}"#).unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"group":"circle","symbol":{"file":"f.json"},"bandwidth":8}"#).unwrap();
    let out = dir.path().join("o");
    let (code, _, stderr) = invoke(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "index"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(stderr.starts_with("error:"));
    assert!(listing(&out).is_empty());
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":8,"speed":"max"}"#).unwrap();
    let (code, _, stderr) = invoke(&["--config", cfg.to_str().unwrap(), "index"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(stderr.contains("speed"));
}

#[test]
fn inline_coefficients_and_custom_projection() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    // projection onto n >= 1 spelled out per block equals the shifted Hardy space
    let mut blocks = serde_json::Map::new();
    for n in -6..=6i32 {
        let v = if n >= 1 { 1.0 } else { 0.0 };
        blocks.insert(n.to_string(), serde_json::json!([[[v, 0.0]]]));
    }
    let c = serde_json::json!({
        "group": "circle",
        "symbol": { "coefficients": { "group": "circle", "bandwidth": 1, "coeffs": { "-1": [[[1.0, 0.0]]] } } },
        "projection": { "blocks": blocks },
        "bandwidth": 6,
        "m": [1],
    });
    fs::write(&cfg, c.to_string()).unwrap();
    let out = dir.path().join("o");
    let (code, stdout, stderr) = invoke(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "index"]);
    assert_eq!(code, EXIT_OK, "{stdout}{stderr}");
    assert!(stdout.contains("winding=1;"));
}

#[test]
fn fourier_round_trips_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    fs::write(&input, r#"{"group":"su2","bandwidth":1,"coeffs":{"1":[[[0.5,0],[0,0]],[[0,0],[0,0]]]}}"#).unwrap();
    let out = dir.path().join("o");
    let (code, stdout, _) = invoke(&["--out", out.to_str().unwrap(), "fourier", input.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("plancherel defect"));
    let spec = lie_toeplitz::BandlimitedFunction::from_json(&fs::read_to_string(out.join("spectrum.json")).unwrap()).unwrap();
    let orig = lie_toeplitz::BandlimitedFunction::from_json(&fs::read_to_string(&input).unwrap()).unwrap();
    assert!(spec.spectrum().max_abs_diff(orig.spectrum()) < 1e-11);
}

#[test]
fn fourier_rejects_coarse_samples() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.json");
    let values: Vec<[f64; 2]> = vec![[1.0, 0.0]; 5];
    let s = serde_json::json!({"group":"circle","scheme":"circle","exactness":4,"bandwidth":3,"values":values});
    fs::write(&input, s.to_string()).unwrap();
    let out = dir.path().join("o");
    let (code, _, stderr) = invoke(&["--out", out.to_str().unwrap(), "fourier", input.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(stderr.contains("quadrature insufficient"));
    assert!(listing(&out).is_empty());
}

#[test]
fn verify_is_thread_count_independent() {
    let (c1, t1, _) = invoke(&["--threads", "1", "verify", "trace"]);
    let (c8, t8, _) = invoke(&["--threads", "8", "verify", "trace"]);
    assert_eq!((c1, c8), (EXIT_OK, EXIT_OK));
    assert_eq!(t1, t8);
    let (_, other_seed, _) = invoke(&["--seed", "5", "verify", "trace"]);
    assert!(other_seed.ends_with("0 failed\n"));
}

#[test]
fn verify_writes_table_only_with_out() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = invoke(&["--out", dir.path().to_str().unwrap(), "verify", "quadrature"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(fs::read_to_string(dir.path().join("verify_quadrature.txt")).unwrap(), stdout);
}

#[test]
fn plot_is_deterministic_and_rejects_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sv.csv");
    fs::write(&csv, "index,value\n1,1e0\n2,5e-1\n3,2.5e-1\n4,0e0\n").unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(invoke(&["--out", a.to_str().unwrap(), "plot", csv.to_str().unwrap()]).0, EXIT_OK);
    assert_eq!(invoke(&["--out", b.to_str().unwrap(), "plot", csv.to_str().unwrap()]).0, EXIT_OK);
    let sa = fs::read(a.join("singular_values.svg")).unwrap();
    assert_eq!(sa, fs::read(b.join("singular_values.svg")).unwrap());
    assert!(String::from_utf8(sa).unwrap().contains("fit:"));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "index,value\n").unwrap();
    let c = dir.path().join("c");
    assert_eq!(invoke(&["--out", c.to_str().unwrap(), "plot", empty.to_str().unwrap()]).0, EXIT_ERROR);
    assert!(listing(&c).is_empty());
}

#[test]
fn bad_arguments() {
    assert_eq!(invoke(&["verify", "everything"]).0, EXIT_ERROR);
    assert_eq!(invoke(&["--threads", "0", "verify", "quadrature"]).0, EXIT_ERROR);
    assert_eq!(invoke(&["index"]).0, EXIT_ERROR);
    assert_eq!(invoke(&["index", "--symbol", "circle:char:k=1"]).0, EXIT_ERROR);
}
