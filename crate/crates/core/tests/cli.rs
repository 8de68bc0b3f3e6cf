use std::process::{Command, Output};

use floer::gf2::BitMatrix;
use floer::complex;

fn floer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer"))
        .args(args)
        .env_remove("FLOER_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = floer(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

/// Parses CSV output and checks every record has the header's width.
fn csv_records(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = floer(args);
    assert!(out.status.success(), "{args:?}");
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.expect("well-formed record").iter().map(String::from).collect())
        .collect();
    for row in &rows {
        assert_eq!(row.len(), header.len());
    }
    (header, rows)
}

#[test]
fn homology_output_is_exact() {
    let out = floer(&["homology", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"k\":3,\"rank\":2,\"hf_dim\":4}\n");
}

#[test]
fn obstruction_output_is_exact() {
    let out = floer(&["obstruction", "--k", "4"]);
    assert_eq!(stdout(&out), "{\"k\":4,\"phi_total\":5,\"square_zero\":false}\n");
}

#[test]
fn even_k_is_a_domain_error() {
    let out = floer(&["homology", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("k must be odd"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn capacity_is_a_domain_error() {
    let out = floer(&["homology", "--k", "17"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(floer(&["homology", "--k", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(floer(&["homology"]).status.code(), Some(2));
    assert_eq!(floer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(floer(&["volume", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn json_echoes_parameters() {
    let v = json(&["disks", "winding", "--degrees", "2,1,0,3", "--seed", "7", "--samples", "4096"]);
    assert_eq!(v["degrees"], serde_json::json!([2, 1, 0, 3]));
    assert_eq!(v["seed"], 7);
    assert_eq!(v["samples"], 4096);
    assert_eq!(v["winding_maslov"], 12);
    let v = json(&["disks", "energy", "--k", "1", "--degree", "1", "--region", "full", "--grid", "32"]);
    assert_eq!((v["k"].as_u64(), v["grid"].as_u64()), (Some(1), Some(32)));
    assert!((v["energy"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    let v = json(&["novikov", "--k", "3", "--precision", "2"]);
    assert_eq!((v["k"].as_u64(), v["precision"].as_u64(), v["hf_dim"].as_u64()), (Some(3), Some(2), Some(4)));
    let v = json(&["recursion", "--n", "2"]);
    assert_eq!((v["n"].as_u64(), v["N"].as_u64(), v["holds"].as_bool()), (Some(2), Some(3), Some(true)));
}

#[test]
fn strips_accept_binary_and_decimal_masks() {
    let a = json(&["disks", "strips", "--k", "3", "--point", "0b101"]);
    let b = json(&["disks", "strips", "--k", "3", "--point", "5"]);
    assert_eq!(a, b);
    let ends: Vec<u64> = a["strips"].as_array().unwrap().iter().map(|s| s["end"].as_u64().unwrap()).collect();
    assert_eq!(ends, vec![0b010, 0b100, 0b111, 0b001]);
}

#[test]
fn csv_outputs_parse() {
    let (header, rows) = csv_records(&["volume", "--n-max", "10", "--format", "csv"]);
    assert_eq!(header, ["n", "ratio", "bound", "active"]);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], ["1", "1.0", "1.0", "true"]);
    let (header, rows) = csv_records(&["homology", "--k", "5", "--format", "csv"]);
    assert_eq!(header, ["k", "rank", "hf_dim"]);
    assert_eq!(rows, [["5", "12", "8"]]);
    let (_, rows) = csv_records(&["boundary", "--k", "3", "--format", "csv"]);
    assert_eq!(rows.len(), 32);
    let (header, _) = csv_records(&["disks", "winding", "--degrees", "1,2", "--format", "csv"]);
    assert!(header.contains(&"winding_maslov".to_string()));
    csv_records(&["disks", "strips", "--k", "2", "--point", "3", "--format", "csv"]);
    csv_records(&["recursion", "--n", "1", "--format", "csv"]);
    csv_records(&["novikov", "--k", "5", "--format", "csv"]);
    csv_records(&["obstruction", "--k", "6", "--format", "csv"]);
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["homology", "--k", "11"],
        vec!["disks", "energy", "--k", "3", "--degree", "2", "--grid", "24"],
        vec!["novikov", "--k", "7"],
        vec!["recursion", "--n", "3"],
    ] {
        let reference = stdout(&floer(&args));
        for threads in ["1", "3", "8"] {
            let mut with = vec!["--threads", threads];
            with.extend(&args);
            assert_eq!(stdout(&floer(&with)), reference, "{with:?}");
        }
        let via_env = Command::new(env!("CARGO_BIN_EXE_floer"))
            .args(&args)
            .env("FLOER_THREADS", "2")
            .output()
            .unwrap();
        assert_eq!(stdout(&via_env), reference);
    }
}

#[test]
fn matrix_dump_round_trips() {
    let dir = std::env::temp_dir().join(format!("floer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d5.txt");
    let v = json(&["boundary", "--k", "5", "--dump-matrix", path.to_str().unwrap()]);
    assert_eq!(v["size"], 32);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("gf2 32 32\n"));
    let m = BitMatrix::from_dump_str(&text).unwrap();
    assert_eq!(m, complex::boundary_matrix(5).unwrap());

    let triples = dir.join("n3.json");
    json(&["novikov", "--k", "3", "--dump-matrix", triples.to_str().unwrap()]);
    let entries: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&triples).unwrap()).unwrap();
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 32);
    assert_eq!(entries[0], serde_json::json!({"row": 0, "col": 1, "scalar": "e^1"}));
    std::fs::remove_dir_all(&dir).unwrap();
}
