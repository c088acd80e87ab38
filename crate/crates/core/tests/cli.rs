// Copyright 2026 The tqsf Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! End-to-end runs of the `tqsf` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tqsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqsf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn run_to(dir: &Path, name: &str, extra: &[&str]) -> (Output, Value) {
    let out = dir.join(name);
    let mut args = vec!["run", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let output = tqsf(&args);
    assert_eq!(
        code(&output),
        0,
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    (output, read_json(&out))
}

#[test]
fn binomial_run_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("counts.csv");
    let svg = dir.path().join("plot.svg");
    let (output, doc) = run_to(
        dir.path(),
        "a.json",
        &[
            "--n",
            "4",
            "--state",
            "hadamard",
            "--method",
            "a",
            "--shots",
            "1000",
            "--csv",
            csv.to_str().unwrap(),
            "--plot",
            svg.to_str().unwrap(),
        ],
    );
    assert_eq!(doc["schema"], "tqsf-result/1");
    assert_eq!(doc["tool"]["name"], "tqsf");
    assert_eq!(doc["config"]["n"], 4);
    assert!(doc["timestamp"].as_str().unwrap().contains('T'));

    let registers = doc["layout"]["registers"].as_array().unwrap();
    let sizes: Vec<(String, usize)> = registers
        .iter()
        .map(|r| {
            (
                r["name"].as_str().unwrap().to_string(),
                r["qubits"].as_array().unwrap().len(),
            )
        })
        .collect();
    assert_eq!(sizes, vec![("z".to_string(), 3), ("S".to_string(), 2)]);

    let outcomes = doc["outcomes"].as_array().unwrap();
    let probs: Vec<f64> = outcomes
        .iter()
        .map(|o| o["probability"].as_f64().unwrap())
        .collect();
    let expected = [1.0, 4.0, 6.0, 4.0, 1.0].map(|c| c / 16.0);
    assert_eq!(probs.len(), 5);
    for (p, e) in probs.iter().zip(expected) {
        assert!((p - e).abs() < 1e-10);
    }
    assert!(outcomes.iter().all(|o| o["two_s"] == 4));
    let counts: u64 = outcomes.iter().map(|o| o["count"].as_u64().unwrap()).sum();
    assert_eq!(counts, 1000);
    assert_eq!(doc["totals"]["counts"], 1000);
    assert!((doc["totals"]["probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["label", "raw_bits", "probability", "count"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    for (row, o) in rows.iter().zip(outcomes) {
        assert_eq!(&row[1], o["joint_bits"].as_str().unwrap());
        assert_eq!(row[1].len(), 5);
    }

    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));

    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.lines().count(), 5);
}

#[test]
fn runs_are_deterministic_apart_from_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--n",
        "4",
        "--state",
        "hadamard-x13",
        "--method",
        "c",
        "--shots",
        "500",
        "--seed",
        "9",
    ];
    let (_, mut first) = run_to(dir.path(), "1.json", &args);
    let (_, mut second) = run_to(dir.path(), "2.json", &args);
    first["timestamp"] = Value::Null;
    second["timestamp"] = Value::Null;
    assert_eq!(first, second);

    let (_, mut other) = run_to(
        dir.path(),
        "3.json",
        &[&args[..8], &["--seed", "10"]].concat(),
    );
    other["timestamp"] = Value::Null;
    other["config"]["seed"] = 9.into();
    assert_ne!(first, other, "a different seed should change the counts");
}

#[test]
fn path_rows_carry_both_bit_renderings() {
    let dir = tempfile::tempdir().unwrap();
    let (_, doc) = run_to(
        dir.path(),
        "b.json",
        &["--n", "4", "--state", "hadamard-x13", "--method", "b-hj"],
    );
    let rows = doc["outcomes"].as_array().unwrap();
    let s1_up = rows
        .iter()
        .filter(|o| o["two_s"] == 2 && o["two_m"] == 2)
        .count();
    assert_eq!(s1_up, 3);
    for o in rows {
        let bits = o["path"]["bits"].as_str().unwrap();
        let rtl = o["path"]["bits_right_to_left"].as_str().unwrap();
        let flipped: String = bits
            .chars()
            .rev()
            .map(|c| if c == '1' { '0' } else { '1' })
            .collect();
        assert_eq!(rtl, flipped);
        assert_eq!(o["path"]["two_s_sequence"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn amplitude_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("singlet.txt");
    // unnormalized singlet on two qubits
    std::fs::write(&state, "# index order 00 01 10 11\n0\n1 0\n-1 0\n0 0\n").unwrap();
    let (_, doc) = run_to(
        dir.path(),
        "s.json",
        &[
            "--n",
            "2",
            "--state",
            state.to_str().unwrap(),
            "--method",
            "c-deferred",
        ],
    );
    let rows = doc["outcomes"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["two_s"], 0);
    assert!((rows[0]["probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn invalid_configurations_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    let cases: [&[&str]; 5] = [
        &["run", "--n", "4", "--mode", "trotter", "--out", out],
        &["run", "--n", "0", "--out", out],
        &["run", "--n", "3", "--state", "0101", "--out", out],
        &["run", "--n", "3", "--state", "hadamard-x13", "--out", out],
        &["run", "--n", "3", "--method", "z", "--out", out],
    ];
    for args in cases {
        let o = tqsf(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert!(!Path::new(out).exists());
}

#[test]
fn oversized_circuits_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    for args in [
        [
            "run",
            "--n",
            "25",
            "--method",
            "a",
            "--out",
            out.to_str().unwrap(),
        ],
        [
            "run",
            "--n",
            "6",
            "--method",
            "b-hj",
            "--out",
            out.to_str().unwrap(),
        ],
    ] {
        let o = tqsf(&args);
        assert_eq!(
            code(&o),
            3,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn layout_reports_register_sizes() {
    let o = tqsf(&["layout", "--n", "4", "--method", "a"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert!(rows.iter().any(|r| r[..] == ["z", "3", "4,5,6"]));
    assert!(rows.iter().any(|r| r[..] == ["S", "2", "7,8"]));
    assert!(text.contains("9 qubits"));
}

#[test]
fn rng_demo_writes_one_row_per_shot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rng.csv");
    let o = tqsf(&[
        "rng-demo",
        "--n",
        "6",
        "--shots",
        "2000",
        "--seed",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["shot", "k", "x"]
    );
    let mut rows = 0;
    for r in reader.records() {
        let r = r.unwrap();
        let k: u32 = r[1].parse().unwrap();
        let x: f64 = r[2].parse().unwrap();
        assert!(k <= 6);
        assert!((x - f64::from(k) / 6.0).abs() < 1e-12);
        rows += 1;
    }
    assert_eq!(rows, 2000);
}

#[test]
fn verify_passes_and_rejects_bad_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("verify.json");
    let o = tqsf(&["verify", "--n-max", "3", "--out", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = read_json(&report);
    assert_eq!(doc["passed"], true);
    assert!(!doc["checks"].as_array().unwrap().is_empty());

    assert_eq!(code(&tqsf(&["verify", "--n-max", "9"])), 2);
}
