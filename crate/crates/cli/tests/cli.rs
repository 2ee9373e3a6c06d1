use std::process::{Command, Output};

use serde_json::Value;

fn factorscan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorscan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_fact_confirms() {
    let out = factorscan(&[
        "verify-fact",
        "--omega",
        "10",
        "--a",
        "0..2,8,9",
        "--b",
        "0,5",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "confirmed");
    assert_eq!(v["payload"]["a"], serde_json::json!([0, 1, 2, 8, 9]));
    assert_eq!(v["counterexamples"], serde_json::json!([]));
}

#[test]
fn verify_fact_refutes_with_duplicate_sum() {
    let out = factorscan(&["verify-fact", "--omega", "4", "--a", "0,1", "--b", "0,1"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["counterexamples"][0]["element"], 1);
    assert_eq!(v["counterexamples"][0]["multiplicity"], 2);
}

#[test]
fn envelope_keys_and_canonical_round_trip() {
    let out = factorscan(&["complements", "--omega", "4", "--a", "0,2", "--all"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "command",
            "counterexamples",
            "payload",
            "tool_version",
            "verdict"
        ]
    );
    assert_eq!(v["verdict"], "value");
    assert_eq!(
        v["payload"]["complements"],
        serde_json::json!([[0, 1], [0, 3], [1, 2], [2, 3]])
    );
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());
}

#[test]
fn value_verbs() {
    let v = json(&factorscan(&["crs", "--a", "0,1,2,8,9", "--n", "5"]));
    assert_eq!(v["payload"]["is_crs"], true);
    let v = json(&factorscan(&["crs", "--a", "0,1,2,6,8", "--n", "5"]));
    assert_eq!(v["payload"]["is_crs"], false);
    let v = json(&factorscan(&[
        "stabilizer",
        "--omega",
        "12",
        "--a",
        "0,1,6,7",
    ]));
    assert_eq!(v["payload"]["stabilizer"], serde_json::json!([0, 6]));
    let v = json(&factorscan(&[
        "chi", "--omega", "4", "--a", "0,2", "--t", "1",
    ]));
    assert_eq!(v["payload"]["is_zero"], true);
    let v = json(&factorscan(&["annihilator", "--omega", "4", "--a", "0,2"]));
    assert_eq!(v["payload"]["annihilator"], serde_json::json!([1, 3]));
    let v = json(&factorscan(&[
        "decompose",
        "--omega",
        "6",
        "--h",
        "0,3",
        "--k",
        "0,2,4",
        "--a",
        "0,3",
    ]));
    assert_eq!(v["payload"]["annihilator_inclusion"], true);
    assert_eq!(v["payload"]["decomposition"]["e"], serde_json::json!([0]));
    let v = json(&factorscan(&["split-search", "--g", "5", "--m", "1,2"]));
    assert_eq!(
        v["payload"]["splitting_sets"],
        serde_json::json!([[1, 4], [2, 3]])
    );
    let v = json(&factorscan(&[
        "dlog-bridge",
        "--p",
        "5",
        "--base",
        "2",
        "--m",
        "1,4",
    ]));
    assert_eq!(v["payload"]["exponent_set"], serde_json::json!([0, 2]));
    assert_eq!(v["payload"]["splits_subgroup"], true);
}

#[test]
fn split_verify_exit_codes() {
    let out = factorscan(&["split-verify", "--g", "5", "--m", "1,4", "--s", "1,2"]);
    assert_eq!(code(&out), 0);
    let out = factorscan(&["split-verify", "--g", "5", "--m", "1,2", "--s", "1,3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "refuted");
}

#[test]
fn tightness_is_confirmed() {
    let out = factorscan(&["tightness", "--k", "1", "--p", "5", "--base", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(
        v["payload"]["witness"]["splitting_set"],
        serde_json::json!([1, 2])
    );
    assert_eq!(v["payload"]["exponent_set_is_crs"], false);
}

#[test]
fn scan_json_confirms_thm5_slice() {
    let out = factorscan(&[
        "scan",
        "--family",
        "prefix_tail",
        "--omega",
        "5..30",
        "--n",
        "5",
        "--k",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "confirmed");
    assert!(v["payload"]["instances_checked"].as_u64().unwrap() > 0);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
}

#[test]
fn scan_counterexamples_replay_through_verify_fact() {
    let out = factorscan(&[
        "scan",
        "--omega",
        "4",
        "--n",
        "2",
        "--k",
        "1",
        "--allow-tight",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    for c in v["counterexamples"].as_array().unwrap() {
        let lit = |s: &Value| {
            s.as_array()
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let omega = c["omega"].to_string();
        let replay = factorscan(&[
            "verify-fact",
            "--omega",
            &omega,
            "--a",
            &lit(&c["a"]),
            "--b",
            &lit(&c["complement"]),
        ]);
        assert_eq!(code(&replay), 0);
    }
}

#[test]
fn scan_config_file_and_csv() {
    let dir = std::env::temp_dir().join(format!("factorscan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("swap.conf");
    std::fs::write(&path, "# swap lemma\nfamily=swap\nomega=10\nn=5\n").unwrap();
    let out = factorscan(&[
        "scan",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,omega,n,k,params,a,complement,holds,reason"
    );
    assert!(text.contains("instance,10,5,1,2 7,0 1 3 4 7,0 5,true,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn majority_scan_is_exploratory() {
    let out = factorscan(&[
        "scan",
        "--family",
        "majority_prefix",
        "--omega",
        "8",
        "--n",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "exploratory");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["verify-fact", "--omega", "4", "--a", "0,1,1", "--b", "0"],
        vec![
            "verify-fact",
            "--omega",
            "4",
            "--a",
            "0,1",
            "--b",
            "0,1",
            "--format",
            "csv",
        ],
        vec!["scan", "--omega", "9..3", "--n", "5", "--k", "2"],
        vec!["scan", "--omega", "4", "--n", "2", "--k", "1"],
        vec!["crs", "--a", "0,1", "--n", "0"],
    ] {
        let out = factorscan(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn table_output_is_aligned() {
    let out = factorscan(&[
        "stabilizer",
        "--omega",
        "8",
        "--a",
        "0,4",
        "--format",
        "table",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("verdict ") && l.ends_with("value")));
    // Values start in one column.
    let starts: Vec<usize> = text
        .lines()
        .map(|l| {
            let key = l.find(' ').unwrap();
            key + l[key..].len() - l[key..].trim_start().len()
        })
        .collect();
    assert!(starts.iter().all(|&c| c == starts[0]), "{text}");
}
