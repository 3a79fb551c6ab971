//! End-to-end tests driving the `kl` binary.

use std::io::Write;
use std::process::{Command, Output};

fn kl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn compute_uniform_emits_json_with_decimal_strings() {
    let out = kl(&["compute", "uniform:1,8"]);
    let json = stdout_json(&out);
    assert_eq!(json["matroid"], "uniform:1,8");
    assert_eq!(json["rank"], 8);
    assert_eq!(
        json["kl"].as_array().unwrap(),
        &vec!["1", "27", "120", "84"]
    );
    // chi(1) = 0
    let chi: i64 = json["char"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(chi, 0);
}

#[test]
fn compute_output_is_stable_across_runs() {
    let a = kl(&["compute", "braid:9"]);
    let b = kl(&["compute", "braid:9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compute_braid_13_fast_path() {
    let out = kl(&["compute", "braid:13", "--path", "fast"]);
    let json = stdout_json(&out);
    assert_eq!(
        json["kl"].as_array().unwrap(),
        &vec![
            "1",
            "4017",
            "2637206",
            "128172330",
            "864418555",
            "746080335"
        ]
    );
}

#[test]
fn compute_boolean_is_trivial() {
    let out = kl(&["compute", "boolean:5"]);
    let json = stdout_json(&out);
    assert_eq!(json["kl"].as_array().unwrap(), &vec!["1"]);
}

#[test]
fn compute_both_paths_agree_on_families() {
    for spec in [
        "uniform:2,5",
        "uniform:0,5",
        "uniform:0,0",
        "boolean:4",
        "boolean:0",
        "braid:6",
        "braid:1",
        "braid:0",
    ] {
        let out = kl(&["compute", spec, "--path", "both"]);
        assert_eq!(exit_code(&out), 0, "{spec}: {}", stderr(&out));
    }
}

#[test]
fn compute_exit_codes() {
    // parse errors exit 2
    assert_eq!(exit_code(&kl(&["compute", "nonsense"])), 2);
    assert_eq!(exit_code(&kl(&["compute", "uniform:1"])), 2);
    // computation errors exit 3: braid:13 cannot build a lattice
    let out = kl(&["compute", "braid:13", "--path", "generic"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("flat cap"));
    // clap usage errors exit 2
    assert_eq!(exit_code(&kl(&["frobnicate"])), 2);
}

#[test]
fn family_parameter_caps() {
    // unbounded family parameters would walk astronomically many partitions
    assert_eq!(exit_code(&kl(&["compute", "braid:1000", "--path", "fast"])), 2);
    assert_eq!(exit_code(&kl(&["compute", "uniform:1,999"])), 2);
    assert_eq!(
        exit_code(&kl(&["table", "braid", "--nmin", "999", "--nmax", "1000"])),
        2
    );
    // just under the cap still works
    assert_eq!(
        exit_code(&kl(&["table", "braid", "--nmin", "24", "--nmax", "25"])),
        0
    );
}

#[test]
fn flat_cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_kl"))
        .args(["compute", "boolean:10", "--path", "generic"])
        .env("KL_FLAT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_kl"))
        .args(["compute", "boolean:10", "--path", "generic"])
        .env("KL_FLAT_CAP", "2000")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn table_uniform_matches_published_cells() {
    let out = kl(&["table", "uniform", "--m", "1", "--dmax", "15", "--format", "json"]);
    let json = stdout_json(&out);
    let columns = json["columns"].as_array().unwrap();
    assert_eq!(columns.len(), 15);
    let d15 = columns.iter().find(|c| c["index"] == 15).unwrap();
    assert_eq!(d15["kl"].as_array().unwrap().last().unwrap(), "1430");
}

#[test]
fn table_uniform_m3_starts_at_d3() {
    let out = kl(&["table", "uniform", "--m", "3", "--dmax", "3", "--format", "json"]);
    let json = stdout_json(&out);
    let columns = json["columns"].as_array().unwrap();
    assert_eq!(columns.len(), 1, "single published column");
    assert_eq!(columns[0]["kl"].as_array().unwrap(), &vec!["1", "9"]);
}

#[test]
fn table_braid_to_20() {
    let out = kl(&["table", "braid", "--nmax", "20", "--format", "json"]);
    let json = stdout_json(&out);
    let n20 = json["columns"].as_array().unwrap()[19]["kl"]
        .as_array()
        .unwrap()
        .to_owned();
    assert_eq!(n20[7], "11522756204094885750");
    assert_eq!(n20[9], "585243816844111425");
}

#[test]
fn table_formats_render() {
    let text = kl(&["table", "braid", "--nmax", "6"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("t^2"));
    let csv = kl(&["table", "braid", "--nmax", "6", "--format", "csv"]);
    let body = String::from_utf8_lossy(&csv.stdout).into_owned();
    assert!(body.starts_with("power,n=1,n=2"));
    assert!(body.lines().any(|l| l.starts_with("t^2,,,,,,15")));
    assert_eq!(exit_code(&kl(&["table", "frieze", "--nmax", "3"])), 2);
    assert_eq!(exit_code(&kl(&["table", "uniform", "--dmax", "4"])), 2);
}

#[test]
fn algebra_product_on_the_rank_two_uniform() {
    let out = kl(&["algebra", "uniform:1,2", "--product", "", ""]);
    let json = stdout_json(&out);
    let expansion = json["algebra"]["expansion"].as_array().unwrap();
    let top = expansion.iter().find(|t| t["flat"] == "0,1,2").unwrap();
    assert_eq!(
        top["coeff"]["terms"],
        serde_json::json!([[0, "1"], [1, "3"], [2, "4"]])
    );
}

#[test]
fn algebra_braid_partition_names() {
    let out = kl(&["algebra", "braid:4", "--product", "1|2|3|4", "1|2|3|4"]);
    let json = stdout_json(&out);
    let expansion = json["algebra"]["expansion"].as_array().unwrap();
    assert_eq!(expansion.len(), 15);
    let top = expansion.iter().find(|t| t["flat"] == "1234").unwrap();
    assert_eq!(top["coeff"]["pretty"], "1 + 7q + 32q^2 + 38q^3 + 13q^4 + q^5");
    // omitted singletons are implied
    let out = kl(&["algebra", "braid:4", "--product", "12|34", "12|34"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn algebra_scan_finds_the_rank4_counterexample() {
    let out = kl(&["algebra", "uniform:2,4", "--scan"]);
    let json = stdout_json(&out);
    let violations = json["algebra"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    let out = kl(&["algebra", "braid:5", "--scan"]);
    let json = stdout_json(&out);
    assert!(json["algebra"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn algebra_flat_errors_exit_2() {
    assert_eq!(
        exit_code(&kl(&["algebra", "uniform:1,2", "--product", "0,2", ""])),
        2
    );
    assert_eq!(
        exit_code(&kl(&["algebra", "braid:4", "--product", "15|2", ""])),
        2
    );
    assert_eq!(exit_code(&kl(&["algebra", "uniform:1,2"])), 2);
}

#[test]
fn verify_suites_pass() {
    for suite in ["identities", "coefficients", "tables", "algebra"] {
        let out = kl(&["verify", suite]);
        assert_eq!(exit_code(&out), 0, "{suite}: {}", stderr(&out));
        assert!(stderr(&out).contains("checks passed"));
    }
    let out = kl(&["verify", "gf", "--order", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(exit_code(&kl(&["verify", "nonsense"])), 2);
}

#[test]
fn file_based_specs() {
    let dir = tempfile::tempdir().unwrap();

    // K4 as a graph: same polynomial as braid:4
    let graph = dir.path().join("k4.txt");
    writeln!(
        std::fs::File::create(&graph).unwrap(),
        "0 1\n0 2\n0 3\n1 2\n1 3\n2 3"
    )
    .unwrap();
    let out = kl(&["compute", &format!("graph:@{}", graph.display())]);
    let json = stdout_json(&out);
    assert_eq!(json["kl"].as_array().unwrap(), &vec!["1", "1"]);
    assert_eq!(json["rank"], 3);

    // identity matrix over GF(2): boolean
    let matrix = dir.path().join("id3.txt");
    writeln!(
        std::fs::File::create(&matrix).unwrap(),
        "2 3 3\n1 0 0\n0 1 0\n0 0 1"
    )
    .unwrap();
    let out = kl(&["compute", &format!("matrix:@{}", matrix.display())]);
    let json = stdout_json(&out);
    assert_eq!(json["kl"].as_array().unwrap(), &vec!["1"]);

    // zero column: loops, computation error
    let bad = dir.path().join("loop.txt");
    writeln!(std::fs::File::create(&bad).unwrap(), "2 2 2\n1 0\n1 0").unwrap();
    let out = kl(&["compute", &format!("matrix:@{}", bad.display())]);
    assert_eq!(exit_code(&out), 3);

    // explicit flats: the 5-flat rank-2 lattice
    let flats = dir.path().join("flats.json");
    std::fs::write(
        &flats,
        r#"[
            {"members": [], "rank": 0},
            {"members": [0], "rank": 1},
            {"members": [1], "rank": 1},
            {"members": [2], "rank": 1},
            {"members": [0, 1, 2], "rank": 2}
        ]"#,
    )
    .unwrap();
    let out = kl(&["compute", &format!("flats:@{}", flats.display())]);
    let json = stdout_json(&out);
    assert_eq!(json["kl"].as_array().unwrap(), &vec!["1"]);
    assert_eq!(json["char"].as_array().unwrap(), &vec!["2", "-3", "1"]);

    // an invalid lattice is a parse-stage rejection of the input model
    let invalid = dir.path().join("invalid.json");
    std::fs::write(
        &invalid,
        r#"[{"members": [], "rank": 0}, {"members": [0, 1], "rank": 2}]"#,
    )
    .unwrap();
    let out = kl(&["compute", &format!("flats:@{}", invalid.display())]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("geometric"));
}
