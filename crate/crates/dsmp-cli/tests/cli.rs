//! End-to-end tests of the batch driver against the shipped problem
//! files: value checks, output determinism, the JSON round-trip and the
//! exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn dsmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsmp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn run_csv(file: &str, extra: &[&str]) -> Vec<Vec<String>> {
    let input = problems().join(file);
    let mut args = vec!["--input", input.to_str().unwrap(), "--format", "csv"];
    args.extend_from_slice(extra);
    let out = dsmp(&args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn cell(rows: &[Vec<String>], transform: &str, column: &str) -> f64 {
    let header = &rows[0];
    let col = header
        .iter()
        .position(|h| h == column)
        .unwrap_or_else(|| panic!("no column {column}"));
    let row = rows
        .iter()
        .find(|r| r[0] == transform)
        .unwrap_or_else(|| panic!("no row {transform}"));
    row[col].parse().unwrap_or(f64::NAN)
}

#[test]
fn general_source_report_matches_the_reference_values() {
    let rows = run_csv("shafer2d_general.json", &["--elements", "A,B"]);
    assert_eq!(rows.len(), 10); // header + 9 ranked transforms
    let expected = [
        ("PrNPl", 0.5625, 0.4375, 0.0113),
        ("BetP", 0.6000, 0.4000, 0.0291),
        ("CuzzP", 0.6000, 0.4000, 0.0291),
        ("PrPl", 0.6375, 0.3625, 0.0553),
        ("PraPl", 0.6375, 0.3625, 0.0553),
        ("PrHyb", 0.6825, 0.3175, 0.0984),
        ("DSmP_0.001", 0.7492, 0.2508, 0.1875),
        ("PrBel", 0.7500, 0.2500, 0.1887),
        ("DSmP_0", 0.7500, 0.2500, 0.1887),
    ];
    for (i, (label, a, b, pic)) in expected.iter().enumerate() {
        assert_eq!(&rows[i + 1][0], label, "row order");
        assert!((cell(&rows, label, "A") - a).abs() < 5e-4);
        assert!((cell(&rows, label, "B") - b).abs() < 5e-4);
        assert!((cell(&rows, label, "PIC") - pic).abs() < 5e-4);
    }
}

#[test]
fn free_model_report_includes_composite_columns() {
    let rows = run_csv("free2d.json", &[]);
    // default columns: the unit element A∩B plus the focal composites
    assert_eq!(rows[0], ["transform", "A∩B", "A", "B", "A∪B", "PIC"]);
    assert!((cell(&rows, "BetP", "A") - 0.85).abs() < 5e-4);
    assert!((cell(&rows, "PrNPl", "A∩B") - 0.5263).abs() < 5e-4);
    assert!((cell(&rows, "DSmP_0.001", "PIC") - 0.9842).abs() < 5e-4);
    // PrBel is undefined on the private atoms
    assert!(cell(&rows, "PrBel", "A").is_nan());
    assert!((cell(&rows, "PrBel", "A∩B") - 1.0).abs() < 5e-4);
    assert!(cell(&rows, "PrBel", "PIC").is_nan());
}

#[test]
fn output_is_deterministic() {
    for format in ["md", "csv", "json"] {
        let input = problems().join("hybrid3d.json");
        let args = ["--input", input.to_str().unwrap(), "--format", format];
        let first = dsmp(&args);
        let second = dsmp(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{format} output must be stable");
    }
}

#[test]
fn json_round_trips_full_precision_values() {
    let input = problems().join("shafer3d_a.json");
    let out = dsmp(&["--input", input.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    // re-serializing the parsed document reproduces the bytes
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, reparsed);

    // and the values equal the library's, bit for bit
    let model = dsmp::FrameModel::shafer(dsmp::Frame::new(["A", "B", "C"]).unwrap());
    let bba = dsmp::MassAssignment::from_exprs(
        model,
        &[
            ("A", 0.35),
            ("B", 0.25),
            ("C", 0.02),
            ("A∪B", 0.2),
            ("A∪C", 0.07),
            ("B∪C", 0.05),
            ("A∪B∪C", 0.06),
        ],
    )
    .unwrap();
    let runs = dsmp::transform_all(&bba, 0.001).unwrap();
    let elements: Vec<String> = report["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap().to_string())
        .collect();
    for row in report["rows"].as_array().unwrap() {
        let label = row["transform"].as_str().unwrap();
        let run = runs.iter().find(|r| r.label() == label).unwrap();
        for (element, value) in elements.iter().zip(row["values"].as_array().unwrap()) {
            let expected = run
                .outcome
                .evaluate(dsmp::parse_expr(element, run.outcome.model()).unwrap())
                .unwrap();
            assert_eq!(
                value.as_f64().unwrap().to_bits(),
                expected.to_bits(),
                "{label}({element}) must round-trip exactly"
            );
        }
        let pic = row["pic"].as_f64().unwrap();
        assert_eq!(pic.to_bits(), run.pic.unwrap().to_bits());
    }
}

#[test]
fn undefined_values_render_as_nan_and_null() {
    let input = problems().join("shafer2d_support.json");
    let csv = dsmp(&["--input", input.to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&csv);
    let prbel = text.lines().find(|l| l.starts_with("PrBel")).unwrap();
    assert!(prbel.contains("NaN"));

    let json = dsmp(&["--input", input.to_str().unwrap(), "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let prbel = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["transform"] == "PrBel")
        .unwrap();
    assert!(prbel["values"].as_array().unwrap().iter().any(|v| v.is_null()));
    assert!(prbel["pic"].is_null());
}

#[test]
fn forcing_prbel_zero_completes_the_row() {
    let rows = run_csv("shafer2d_support.json", &["--force-prbel-zero"]);
    assert!((cell(&rows, "PrBel", "PIC") - 1.0).abs() < 5e-4);
}

#[test]
fn transform_subset_limits_the_rows() {
    let rows = run_csv("shafer2d_general.json", &["--transforms", "betp,dsmp"]);
    let labels: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(labels, ["BetP", "DSmP_0.001", "DSmP_0"]);
}

#[test]
fn qualitative_pipeline_reports_labels_and_pic() {
    let input = problems().join("qualitative3d.json");
    let out = dsmp(&[
        "--input",
        input.to_str().unwrap(),
        "--qualitative",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["labels"], serde_json::json!([1, 2, 2]));
    assert_eq!(report["quasi_normalized_input"], serde_json::json!(true));
    assert_eq!(report["quasi_normalized_output"], serde_json::json!(true));
    assert!((report["pic"].as_f64().unwrap() - 0.0398).abs() < 5e-4);

    let csv = dsmp(&[
        "--input",
        input.to_str().unwrap(),
        "--qualitative",
        "--format",
        "csv",
    ]);
    let text = stdout(&csv);
    assert!(text.contains("qDSmP_0.001,L_1,L_2,L_2"));
}

#[test]
fn validation_errors_exit_one_and_name_the_field() {
    let dir = tempdir();

    let bad_sum = dir.join("bad_sum.json");
    std::fs::write(
        &bad_sum,
        r#"{"frame":["A","B"],"model":{"type":"shafer"},
           "masses":[{"element":"A","mass":0.5},{"element":"B","mass":0.6}]}"#,
    )
    .unwrap();
    let out = dsmp(&["--input", bad_sum.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("masses"));

    let bad_model = dir.join("bad_model.json");
    std::fs::write(
        &bad_model,
        r#"{"frame":["A","B"],"model":{"type":"fuzzy"},
           "masses":[{"element":"A","mass":1.0}]}"#,
    )
    .unwrap();
    let out = dsmp(&["--input", bad_model.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.type"));

    let stray_constraints = dir.join("stray_constraints.json");
    std::fs::write(
        &stray_constraints,
        r#"{"frame":["A","B"],"model":{"type":"free","constraints":["A∩B"]},
           "masses":[{"element":"A","mass":1.0}]}"#,
    )
    .unwrap();
    let out = dsmp(&["--input", stray_constraints.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.constraints"));

    let both_sections = dir.join("both_sections.json");
    std::fs::write(
        &both_sections,
        r#"{"frame":["A","B"],"model":{"type":"shafer"},
           "masses":[{"element":"A","mass":1.0}],
           "qualitative":{"n":4,"masses":[{"element":"A","label_index":5}]}}"#,
    )
    .unwrap();
    let out = dsmp(&["--input", both_sections.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn require_defined_exits_two_on_undefined_rows() {
    let input = problems().join("shafer2d_support.json");
    let out = dsmp(&["--input", input.to_str().unwrap(), "--require-defined"]);
    assert_eq!(out.status.code(), Some(2));
    // the report is still printed
    assert!(stdout(&out).contains("PrBel"));

    // restricting to defined transforms exits 0
    let out = dsmp(&[
        "--input",
        input.to_str().unwrap(),
        "--require-defined",
        "--transforms",
        "betp,prpl",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dsmp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
