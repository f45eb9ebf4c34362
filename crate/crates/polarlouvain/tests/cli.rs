//! End-to-end runs of the batch binary: exit codes, artifact shapes,
//! schema validity, and byte-for-byte reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polarlouvain"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, artifact_path: &Path) {
    let instance: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(artifact_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&instance)
        .map(|e| format!("{e}"))
        .collect();
    assert!(
        errors.is_empty(),
        "{} violates {schema_name}: {errors:?}",
        artifact_path.display()
    );
}

/// Small five-node graph with a crisp 3/2 pole split.
fn write_fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let graph = dir.join("g.csv");
    let membership = dir.join("m.csv");
    fs::write(
        &graph,
        "source,target,weight\na,b,2\nb,c,1\nc,a,1\nc,d,1\nd,e,1\ne,c,1\n",
    )
    .unwrap();
    fs::write(
        &membership,
        "node,eta_a,eta_b\na,1,0\nb,1,0\nc,1,0\nd,0,1\ne,0,1\n",
    )
    .unwrap();
    (graph, membership)
}

#[test]
fn detect_writes_valid_reproducible_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    let out1 = dir.path().join("run1");
    let out2 = dir.path().join("run2");
    for out in [&out1, &out2] {
        let output = run(&[
            "detect",
            "--graph",
            graph.to_str().unwrap(),
            "--membership",
            membership.to_str().unwrap(),
            "--gamma",
            "0.4",
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{output:?}");
    }
    assert_valid("partition.schema.json", &out1.join("partition.json"));
    assert_valid("cohesion.schema.json", &out1.join("cohesion.json"));
    for name in ["partition.json", "cohesion.json", "graph.dot"] {
        assert_eq!(
            fs::read(out1.join(name)).unwrap(),
            fs::read(out2.join(name)).unwrap(),
            "{name} differs between identical runs"
        );
    }
    let partition: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out1.join("partition.json")).unwrap()).unwrap();
    assert_eq!(partition["seed"], 3);
    assert_eq!(partition["gamma"], 0.4);
}

#[test]
fn detect_reports_missing_membership_row() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    fs::write(&membership, "node,eta_a,eta_b\na,1,0\nb,1,0\nc,1,0\nd,0,1\n").unwrap();
    let output = run(&[
        "detect",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("error[label-mismatch]"), "{stderr}");
    assert!(stderr.contains("\"e\""), "should name the offender: {stderr}");
}

#[test]
fn detect_exits_3_on_degenerate_risk_measure() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.csv");
    let membership = dir.path().join("m.csv");
    fs::write(&graph, "source,target\na,b\nb,c\n").unwrap();
    fs::write(&membership, "node,eta_a,eta_b\na,1,0\nb,1,0\nc,1,0\n").unwrap();
    let output = run(&[
        "detect",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--kind",
        "risk",
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("error[degenerate-polarization]"));
}

#[test]
fn sweep_writes_csv_sidecar_and_per_gamma_dirs() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    let out = dir.path().join("sweep");
    let output = run(&[
        "sweep",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--gammas",
        "1,0.5,0",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");

    let csv_text = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv_text.lines().collect();
    assert_eq!(lines[0], "gamma,n_communities_gt1,pol,Q");
    assert_eq!(lines.len(), 5, "baseline + 3 gammas: {csv_text}");
    assert!(lines[1].starts_with("baseline,"));
    // gamma = 1 ignores the attitude data entirely
    let baseline_tail = lines[1].trim_start_matches("baseline,");
    let gamma1_tail = lines[2].trim_start_matches("1,");
    assert_eq!(baseline_tail, gamma1_tail);

    assert_valid("sweep.schema.json", &out.join("sweep.json"));
    for sub in ["baseline", "gamma-1", "gamma-0.5", "gamma-0"] {
        for name in ["partition.json", "cohesion.json", "graph.dot"] {
            assert!(out.join(sub).join(name).exists(), "{sub}/{name} missing");
        }
        assert_valid("partition.schema.json", &out.join(sub).join("partition.json"));
    }
}

#[test]
fn score_round_trips_detect_output() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    let out = dir.path().join("out");
    assert!(run(&[
        "detect",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());

    let output = run(&[
        "score",
        "--partition",
        out.join("partition.json").to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("score prints JSON");
    assert_eq!(report["mode"], "positive-pairs");
    // detect embeds the same pol value it scored
    let partition: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("partition.json")).unwrap()).unwrap();
    assert_eq!(report["pol"], partition["pol"]);

    // coverage mismatch: membership with an extra node
    let bigger = dir.path().join("m2.csv");
    fs::write(
        &bigger,
        "node,eta_a,eta_b\na,1,0\nb,1,0\nc,1,0\nd,0,1\ne,0,1\nf,0,1\n",
    )
    .unwrap();
    let output = run(&[
        "score",
        "--partition",
        out.join("partition.json").to_str().unwrap(),
        "--membership",
        bigger.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn synth_detect_score_pipeline_runs_clean() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let output = run(&[
        "synth",
        "--nodes-per-block",
        "12",
        "--blocks",
        "2",
        "--intra",
        "0.5",
        "--inter",
        "0.1",
        "--sharpness",
        "16",
        "--seed",
        "4",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    // deterministic generation
    let data2 = dir.path().join("data2");
    assert!(run(&[
        "synth",
        "--nodes-per-block",
        "12",
        "--blocks",
        "2",
        "--intra",
        "0.5",
        "--inter",
        "0.1",
        "--sharpness",
        "16",
        "--seed",
        "4",
        "--out",
        data2.to_str().unwrap(),
    ])
    .status
    .success());
    assert_eq!(
        fs::read(data.join("edges.csv")).unwrap(),
        fs::read(data2.join("edges.csv")).unwrap()
    );
    assert_eq!(
        fs::read(data.join("membership.csv")).unwrap(),
        fs::read(data2.join("membership.csv")).unwrap()
    );

    let out = dir.path().join("out");
    let output = run(&[
        "detect",
        "--graph",
        data.join("edges.csv").to_str().unwrap(),
        "--membership",
        data.join("membership.csv").to_str().unwrap(),
        "--gamma",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    assert_valid("partition.schema.json", &out.join("partition.json"));
}

#[test]
fn shapley_oracle_agrees_with_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let membership = dir.path().join("m.csv");
    fs::write(
        &membership,
        "node,eta_a,eta_b\nu,0.9,0.2\nv,0.1,0.8\nw,0.55,0.5\nx,0.3,0.6\n",
    )
    .unwrap();
    let closed = run(&["shapley", "--membership", membership.to_str().unwrap()]);
    assert!(closed.status.success());
    let oracle = run(&[
        "shapley",
        "--membership",
        membership.to_str().unwrap(),
        "--oracle",
    ]);
    assert!(oracle.status.success());

    let parse = |out: &Output| -> serde_json::Value { serde_json::from_slice(&out.stdout).unwrap() };
    let (c, o) = (parse(&closed), parse(&oracle));
    assert_eq!(c["method"], "closed-form");
    assert_eq!(o["method"], "brute-force");
    for label in ["u", "v", "w", "x"] {
        let a = c["values"][label].as_f64().unwrap();
        let b = o["values"][label].as_f64().unwrap();
        assert!((a - b).abs() < 1e-12, "{label}: {a} vs {b}");
    }

    let schema_file = dir.path().join("shapley.json");
    fs::write(&schema_file, &closed.stdout).unwrap();
    assert_valid("shapley.schema.json", &schema_file);
}

#[test]
fn export_writes_dot_and_valid_node_link_json() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, _) = write_fixture(dir.path());
    let out = dir.path().join("export");
    let output = run(&[
        "export",
        "--graph",
        graph.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let dot = fs::read_to_string(out.join("graph.dot")).unwrap();
    assert!(dot.starts_with("graph {"));
    assert!(dot.contains("n0 -- n1 [weight=2];"));
    assert_valid("graph.schema.json", &out.join("graph.json"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        format!(
            "graph = {:?}\nmembership = {:?}\ngamma = 0.9\nseed = 11\nout = {:?}\n",
            graph,
            membership,
            dir.path().join("from-file")
        ),
    )
    .unwrap();

    // flag beats file for gamma; file supplies everything else
    let out = dir.path().join("cli-out");
    let output = run(&[
        "detect",
        "--config",
        config.to_str().unwrap(),
        "--gamma",
        "0.2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let partition: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("partition.json")).unwrap()).unwrap();
    assert_eq!(partition["gamma"], 0.2);
    assert_eq!(partition["seed"], 11);
}

#[test]
fn detect_on_seven_node_fixture_hits_exhaustive_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.csv");
    let membership = dir.path().join("m.csv");
    fs::write(
        &graph,
        "source,target\n1,2\n1,3\n1,5\n1,7\n2,3\n3,4\n3,5\n3,7\n4,5\n5,6\n5,7\n6,7\n",
    )
    .unwrap();
    fs::write(
        &membership,
        "node,eta_a,eta_b\n1,0.022,0.878\n2,0.756,0.144\n3,0.751,0.099\n4,0.5,0.5\n\
         5,0.001,0.989\n6,0.102,0.888\n7,0.889,0.112\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let output = run(&[
        "detect",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--gamma",
        "1",
        "--seed",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let partition: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("partition.json")).unwrap()).unwrap();
    // exhaustive maximum over all 877 partitions of these 7 nodes
    let q = partition["Q"].as_f64().unwrap();
    assert!((q - 23.0 / 288.0).abs() <= 1e-9, "Q = {q}");
}

#[test]
fn unparsable_gammas_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, membership) = write_fixture(dir.path());
    let output = run(&[
        "sweep",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--gammas",
        "",
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&[
        "sweep",
        "--graph",
        graph.to_str().unwrap(),
        "--membership",
        membership.to_str().unwrap(),
        "--gammas",
        "0.5,1.7",
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("error[config]"));
}
