//! End-to-end checks of the command-line interface: exit codes on a fixture
//! corpus and round-trip agreement with in-process chaining under the same
//! seed.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use geprofi::certify::certify_b2;
use geprofi::field::{split_seed, RandomSource};
use geprofi::ideals::hilbert;
use geprofi::serial;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geprofi"))
}

fn tmpdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geprofi-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn parse_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn construct_certify_verify_round_trip() {
    let dir = tmpdir();
    let cfg_path = dir.join("ten.json");
    let cert_path = dir.join("cert.json");

    let out = run(&[
        "construct",
        "--kind",
        "example_3_2",
        "--out",
        cfg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&cfg_path).unwrap()).unwrap();
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["h_vector"], serde_json::json!([1, 4, 5]));
    assert_eq!(doc["config"]["points"].as_array().unwrap().len(), 10);

    let out = run(&[
        "certify",
        "--mode",
        "b2",
        "--seed",
        "7",
        "--in",
        cfg_path.to_str().unwrap(),
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "certify exits 0 on success");
    let cert_doc: Value = serde_json::from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert_doc["found"], true);
    assert_eq!(cert_doc["b"], 5);
    assert_eq!(cert_doc["d"], 2);
    assert_eq!(cert_doc["seed"], 7);

    let out = run(&["verify", "--in", cert_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "verify exits 0 on a valid certificate"
    );
    assert_eq!(parse_stdout(&out)["verified"], true);
}

#[test]
fn cli_matches_in_process_chaining() {
    let dir = tmpdir();
    let path = dir.join("rnc.json");
    let seed = 311u64;

    let out = run(&[
        "construct",
        "--kind",
        "rnc_points",
        "--count",
        "10",
        "--seed",
        &seed.to_string(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let cfg = serial::config_from_json(&doc["config"]).unwrap();

    // in-process chaining under the same derived seeds
    let mut rs = RandomSource::new(split_seed(seed, "rnc_points"));
    let (cfg2, _, _) = geprofi::constructions::rnc_points_sampled(10, &mut rs).unwrap();
    assert_eq!(cfg, cfg2, "construct output matches in-process sampling");
    assert_eq!(
        doc["h_vector"],
        serde_json::json!(hilbert(&cfg2).unwrap().h_vector)
    );

    let cert_out = run(&[
        "certify",
        "--mode",
        "b2",
        "--seed",
        &seed.to_string(),
        "--in",
        path.to_str().unwrap(),
    ]);
    assert!(cert_out.status.success());
    let cert_doc = parse_stdout(&cert_out);
    let cli_cert = serial::certificate_from_json(&cert_doc["certificate"]).unwrap();

    let mut rs = RandomSource::new(split_seed(seed, "certify/b2/0"));
    let in_process = certify_b2(&cfg2, &mut rs).unwrap().unwrap();
    assert_eq!(cli_cert, in_process, "certificates agree bit for bit");
}

#[test]
fn exit_codes_on_fixture_corpus() {
    let dir = tmpdir();

    // valid certificate: 0 (covered above); tampered certificate: 1
    let cfg_path = dir.join("cfg.json");
    run(&[
        "construct",
        "--kind",
        "example_3_2",
        "--out",
        cfg_path.to_str().unwrap(),
    ]);
    let cert_path = dir.join("c.json");
    run(&[
        "certify",
        "--mode",
        "b2",
        "--in",
        cfg_path.to_str().unwrap(),
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    doc["certificate"]["image"]["points"][0][1] = Value::from("987654");
    let tampered = dir.join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", "--in", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "tampered certificate exits 1");
    let verdict = parse_stdout(&out);
    assert_eq!(verdict["verified"], false);
    assert!(
        verdict["first_failure"].is_string(),
        "failing check is named"
    );

    // malformed JSON: 2 with position diagnostics
    let broken = dir.join("broken.json");
    fs::write(&broken, "{ \"config\": [1, 2,,] }").unwrap();
    let out = run(&["verify", "--in", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("line") && msg.contains("column"),
        "diagnostics: {msg}"
    );

    // precondition violation: 2
    let out = run(&["construct", "--kind", "grid_extension", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2), "d = 2 is excluded");

    // unknown option rejected
    let out = run(&["construct", "--kind", "example_3_2", "--frobnicate", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // lgp: verified-negative exits 1
    let out = run(&["lgp", "--in", cfg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = parse_stdout(&out);
    assert_eq!(doc["lgp"], false);
    assert!(doc["violating_subset"].is_array());
}

#[test]
fn census_and_invariant_commands() {
    let dir = tmpdir();
    let grid_path = dir.join("grid.json");
    let out = run(&[
        "construct",
        "--kind",
        "hypergrid",
        "--b",
        "3",
        "--d",
        "2",
        "--seed",
        "5",
        "--out",
        grid_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "census",
        "--in",
        grid_path.to_str().unwrap(),
        "--b",
        "3",
        "--d",
        "2",
    ]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["census"]["verdict"], "TRIVIAL_WITNESS_FOUND");

    let ten_path = dir.join("ten.json");
    run(&[
        "construct",
        "--kind",
        "example_3_2",
        "--out",
        ten_path.to_str().unwrap(),
    ]);
    let out = run(&[
        "wlp",
        "--in",
        ten_path.to_str().unwrap(),
        "--samples",
        "3",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    assert_eq!(
        parse_stdout(&out)["cokernel_dims"],
        serde_json::json!([1, 1, 1])
    );

    let out = run(&[
        "weddle",
        "--in",
        ten_path.to_str().unwrap(),
        "--samples",
        "2",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    assert_eq!(parse_stdout(&out)["excesses"], serde_json::json!([1, 1]));

    let out = run(&["hvector", "--in", ten_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        parse_stdout(&out)["hilbert"]["h_vector"],
        serde_json::json!([1, 4, 5])
    );
}

#[test]
fn inline_json_input() {
    // --in accepts an inline document instead of a path
    let inline = r#"{"ambient_dim": 4, "field": "Q", "points": [
        ["1","0","0","0","0"], ["0","1","0","0","0"], ["0","0","1","0","0"],
        ["0","0","0","1","0"], ["0","0","0","0","1"], ["1","1","1","1","1"]
    ]}"#;
    let out = run(&["hvector", "--in", inline]);
    assert!(out.status.success());
    assert_eq!(
        parse_stdout(&out)["hilbert"]["h_vector"],
        serde_json::json!([1, 4, 1])
    );
    let out = run(&["lgp", "--in", inline]);
    assert!(out.status.success(), "six general-position points");
}

#[test]
fn cone_and_curve_modes() {
    let dir = tmpdir();

    let grid_path = dir.join("grid.json");
    let out = run(&[
        "construct",
        "--kind",
        "grid_extension",
        "--d",
        "3",
        "--seed",
        "9",
        "--out",
        grid_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "certify",
        "--mode",
        "cone",
        "--seed",
        "9",
        "--in",
        grid_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["b"], 5);
    assert_eq!(doc["d"], 3);
    assert_eq!(doc["certificate"]["curve_witness"]["kind"], "CONE_LINES");

    let rnc_path = dir.join("rnc8.json");
    let out = run(&[
        "construct",
        "--kind",
        "rnc_points",
        "--count",
        "8",
        "--seed",
        "13",
        "--out",
        rnc_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "certify",
        "--mode",
        "curve",
        "--d",
        "2",
        "--seed",
        "13",
        "--in",
        rnc_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["b"], 4);
    assert_eq!(doc["d"], 2);
    assert_eq!(doc["certificate"]["curve_witness"]["kind"], "PARAM_CURVE");
}

#[test]
fn reproduce_suite_is_deterministic_via_cli() {
    let dir = tmpdir();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "reproduce",
            "--suite",
            "weddle_wlp",
            "--seed",
            "12",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "suite passes");
    }
    let strip = |p: &PathBuf| -> Vec<(String, String, u64)> {
        let doc: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
        doc["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                (
                    r["name"].as_str().unwrap().to_string(),
                    r["status"].as_str().unwrap().to_string(),
                    r["seed"].as_u64().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
}
