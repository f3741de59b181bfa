use std::process::{Command, Output};

use serde_json::Value;

fn swlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn graph_radius_one() {
    let v = json(&swlab(&[
        "graph", "--p", "7", "--f", "1", "--mu", "4,0", "--radius", "1", "--format", "json",
    ]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn graph_radius_zero_dot() {
    let out = swlab(&[
        "graph", "--p", "7", "--f", "1", "--mu", "4,0", "--radius", "0", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("[label=").count(), 1);
    assert!(!text.contains("--"));
}

#[test]
fn malformed_weight_is_input_error() {
    let out = swlab(&["graph", "--p", "7", "--f", "1", "--mu", "4;0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight"));
}

#[test]
fn weights_split_and_irreducible() {
    let irr = json(&swlab(&[
        "weights", "--p", "7", "--f", "1", "--w", "s", "--mu", "4,0",
    ]));
    let split = json(&swlab(&[
        "weights", "--p", "7", "--f", "1", "--w", "e", "--mu", "4,0",
    ]));
    let a = irr["w_question"].as_array().unwrap();
    let b = split["w_question"].as_array().unwrap();
    assert_eq!(a.len(), 2);
    let common = a.iter().filter(|x| b.contains(x)).count();
    assert_eq!(common, 1);
    assert!(a.contains(&serde_json::json!({"r": [3], "d": 0})));
}

#[test]
fn weights_reject_non_generic() {
    let out = swlab(&[
        "weights", "--p", "7", "--f", "2", "--w", "ee", "--mu", "2,0;2,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 1-generic"));
}

#[test]
fn envelope_dimensions() {
    let v = json(&swlab(&["envelope", "--p", "7", "--f", "1", "--mu", "4,0"]));
    assert_eq!(v["total_dim"], 14);
    let v = json(&swlab(&[
        "envelope", "--p", "5", "--f", "2", "--mu", "2,0;3,0",
    ]));
    assert_eq!(v["total_dim"], 100);
    let labels: usize = v["graded"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["labels"].as_array().unwrap().len())
        .sum();
    assert_eq!(labels, 16);
    let out = swlab(&["envelope", "--p", "7", "--f", "1", "--mu", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

fn constituents(v: &Value) -> Vec<(Vec<i64>, i64)> {
    v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|b| b["constituents"].as_array().unwrap().clone())
        .map(|c| {
            let r = c["r"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect();
            (r, c["d"].as_i64().unwrap())
        })
        .collect()
}

#[test]
fn d0_classical_and_f2() {
    let v = json(&swlab(&[
        "d0", "--p", "7", "--f", "1", "--w", "s", "--mu", "4,0",
    ]));
    let mut cs = constituents(&v);
    assert_eq!(cs.len(), 4);
    cs.sort();
    cs.dedup();
    assert_eq!(cs.len(), 4);

    let v = json(&swlab(&[
        "d0", "--p", "5", "--f", "2", "--w", "es", "--mu", "2,0;3,0",
    ]));
    let mut cs = constituents(&v);
    cs.sort();
    cs.dedup();
    assert_eq!(cs.len(), 16);
    assert_eq!(v["multiplicity_free"], true);
}

#[test]
fn d0_boundary_pairings_are_input_errors() {
    let out = swlab(&["d0", "--p", "5", "--f", "2", "--w", "ss", "--mu", "3,0;3,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn d0_shallow_presentation_is_model_violation() {
    let out = swlab(&["d0", "--p", "5", "--f", "2", "--w", "ee", "--mu", "2,0;3,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 1-deep"));
}

#[test]
fn d0_twist() {
    let a = json(&swlab(&[
        "d0", "--p", "7", "--f", "2", "--w", "se", "--mu", "4,0;3,0",
    ]));
    let b = json(&swlab(&[
        "d0", "--p", "7", "--f", "2", "--w", "se", "--mu", "5,1;3,0",
    ]));
    for ((ra, da), (rb, db)) in constituents(&a).into_iter().zip(constituents(&b)) {
        assert_eq!(ra, rb);
        assert_eq!((da + 1) % 48, db);
    }
}

#[test]
fn d0_dot() {
    let out = swlab(&[
        "d0", "--p", "7", "--f", "1", "--w", "s", "--mu", "4,0", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph d0 {"));
    assert_eq!(text.matches("subgraph").count(), 2);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify", "--p", "7", "--f", "1,3", "--cases", "200", "--seed", "3",
    ];
    let a = swlab(&args);
    let b = swlab(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn verify_small_config_passes() {
    let out = swlab(&["verify", "--p", "7", "--f", "1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn verify_fault_fails_with_counterexample() {
    let out = swlab(&["verify", "--p", "7", "--f", "1", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("graph_injectivity"));
    assert!(text.contains("counterexample:"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_swlab"))
            .args(["verify", "--p", "7", "--f", "2"])
            .env("SWLAB_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
