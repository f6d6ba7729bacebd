use std::fs;
use std::path::{Path, PathBuf};

use edgebias::io::{load_dataset, parse_report, render_json, render_markdown, write_dataset};
use edgebias::synth::{generate, SbmParams};
use edgebias::{analyze, DecisionConfig, Error, OperatorKind};
use tempfile::TempDir;

fn p4_manifest() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/p4/manifest.json")
}

fn copy_p4(dir: &Path) {
    for f in ["edges.tsv", "features.csv", "labels.txt", "manifest.json"] {
        fs::copy(p4_manifest().with_file_name(f), dir.join(f)).unwrap();
    }
}

#[test]
fn loads_p4_fixture() {
    let d = load_dataset(p4_manifest()).unwrap();
    assert_eq!(d.name, "p4");
    assert_eq!(d.graph.num_nodes(), 4);
    assert_eq!(d.graph.num_edges(), 3);
    assert_eq!(d.graph.labels(), &[0, 0, 1, 1]);
    assert_eq!(d.graph.features()[[1, 1]], 0.2);
}

#[test]
fn missing_labels_file_names_the_path() {
    let dir = TempDir::new().unwrap();
    copy_p4(dir.path());
    fs::remove_file(dir.path().join("labels.txt")).unwrap();
    let err = load_dataset(dir.path().join("manifest.json")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("labels.txt"), "{err}");
}

#[test]
fn bad_feature_token_reports_file_and_line() {
    let dir = TempDir::new().unwrap();
    copy_p4(dir.path());
    fs::write(dir.path().join("edges.tsv"), "0\t1\n1\t2\n2\t3\n3\t4\n4\t5\n5\t6\n6\t7\n").unwrap();
    let rows: Vec<String> = (0..8)
        .map(|i| if i == 6 { "0.5,abc".to_string() } else { format!("{i}.0,1.0") })
        .collect();
    fs::write(dir.path().join("features.csv"), rows.join("\n") + "\n").unwrap();
    fs::write(dir.path().join("labels.txt"), "0\n0\n0\n0\n1\n1\n1\n1\n").unwrap();
    let err = load_dataset(dir.path().join("manifest.json")).unwrap_err();
    assert!(err.to_string().contains("features.csv:7"), "{err}");
}

#[test]
fn count_mismatch_is_an_error() {
    let dir = TempDir::new().unwrap();
    copy_p4(dir.path());
    fs::write(dir.path().join("labels.txt"), "0\n0\n1\n").unwrap();
    let err = load_dataset(dir.path().join("manifest.json")).unwrap_err();
    assert!(err.to_string().contains("labels"), "{err}");
}

#[test]
fn num_nodes_override_adds_isolated_nodes() {
    let dir = TempDir::new().unwrap();
    copy_p4(dir.path());
    fs::write(dir.path().join("features.csv"), "1,0\n0,1\n1,1\n0,0\n2,2\n").unwrap();
    fs::write(dir.path().join("labels.txt"), "0\n0\n1\n1\n1\n").unwrap();
    let manifest = r#"{"name":"p4x","edges":"edges.tsv","features":"features.csv","labels":"labels.txt","num_nodes":5}"#;
    fs::write(dir.path().join("manifest.json"), manifest).unwrap();
    let d = load_dataset(dir.path().join("manifest.json")).unwrap();
    assert_eq!(d.graph.num_nodes(), 5);
    assert_eq!(d.graph.degree(4), 0);
}

#[test]
fn manifest_row_normalization() {
    let dir = TempDir::new().unwrap();
    copy_p4(dir.path());
    let manifest = r#"{"name":"p4","edges":"edges.tsv","features":"features.csv","labels":"labels.txt","preprocessing":{"row_normalize":true}}"#;
    fs::write(dir.path().join("manifest.json"), manifest).unwrap();
    let d = load_dataset(dir.path().join("manifest.json")).unwrap();
    for row in d.graph.features().rows() {
        assert!((row.iter().map(|v| v.abs()).sum::<f64>() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn dataset_write_then_load_is_lossless() {
    let g = generate(&SbmParams {
        num_nodes: 40,
        num_classes: 2,
        class_proportions: None,
        p_in: 0.3,
        p_out: 0.05,
        feat_dim: 3,
        separation: 1.0,
        noise: 0.7,
        seed: 3,
    })
    .unwrap();
    let dir = TempDir::new().unwrap();
    let manifest = write_dataset(dir.path(), "sbm", &g).unwrap();
    let back = load_dataset(manifest).unwrap().graph;
    assert_eq!(back.edges(), g.edges());
    assert_eq!(back.features(), g.features());
    assert_eq!(back.labels(), g.labels());
}

#[test]
fn report_json_round_trip_and_determinism() {
    let d = load_dataset(p4_manifest()).unwrap();
    for operator in [OperatorKind::RenormRwAffinity, OperatorKind::RenormSymAffinity] {
        let config = DecisionConfig {
            operator,
            ..DecisionConfig::default()
        };
        let report = analyze(&d.graph, &d.name, &config).unwrap();
        let json = render_json(&report).unwrap();
        assert_eq!(parse_report(&json).unwrap(), report);
        let again = render_json(&analyze(&d.graph, &d.name, &config).unwrap()).unwrap();
        assert_eq!(json, again);
    }
}

#[test]
fn report_json_layout() {
    let d = load_dataset(p4_manifest()).unwrap();
    let report = analyze(&d.graph, &d.name, &DecisionConfig::default()).unwrap();
    let json = render_json(&report).unwrap();
    let keys: Vec<usize> = ["\"schema_version\"", "\"dataset\"", "\"graph\"", "\"features\"", "\"labels\"", "\"verdict\"", "\"display\""]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    // labels nsv on P4 is 0.25, written with 17 significant digits
    assert!(json.contains("2.5000000000000000e-1"), "{json}");
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let p = value["display"]["labels"]["p_two_sided"].as_f64().unwrap();
    assert_eq!(p, (report.labels.p_two_sided * 1e4).round() / 1e4);
}

#[test]
fn report_with_other_schema_version_is_rejected() {
    let d = load_dataset(p4_manifest()).unwrap();
    let report = analyze(&d.graph, &d.name, &DecisionConfig::default()).unwrap();
    let json = render_json(&report).unwrap().replacen("\"schema_version\": 1", "\"schema_version\": 99", 1);
    assert!(parse_report(&json).is_err());
}

#[test]
fn markdown_mentions_verdict_and_values() {
    let d = load_dataset(p4_manifest()).unwrap();
    let report = analyze(&d.graph, &d.name, &DecisionConfig::default()).unwrap();
    let md = render_markdown(&report);
    assert!(md.contains("p4"));
    assert!(md.contains(&report.verdict.to_string()));
    assert!(md.contains("0.2500"));
}
