mod common;

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::process::{Command, Output, Stdio};

use common::{assert_schema, repo_file};
use serde_json::{json, Value};

fn quivercat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivercat"))
        .args(args)
        .current_dir(common::repo_root())
        .env_remove("QUIVERCAT_PORT")
        .output()
        .unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = quivercat(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn validation_error(args: &[&str]) -> Value {
    let out = quivercat(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_schema("error", &v);
    v
}

#[test]
fn mutate_a2_at_first_vertex() {
    let v = json_ok(&["mutate", "--seed", "data/a2.json", "--vertex", "0"]);
    assert_schema("mutate", &v);
    assert_eq!(v["quiver"], json!({ "vertices": ["1", "2"], "arrows": [[1, 0, 1]] }));
    assert_eq!(v["acyclic"], json!(true));
}

#[test]
fn recognize_self_test_file() {
    let v = json_ok(&["recognize", "--model", "golden/selftest-a3.json"]);
    assert_schema("recognition-report", &v);
    assert_eq!(v["verdict"], "accepted");
    assert_eq!(v["witness"]["hom_preserved"], json!(true));
}

#[test]
fn recognize_rejects_cyclic_candidate() {
    let all = json_ok(&["cluster-tilting", "--model", "a3-cluster", "--d", "2"]);
    let cyclic = all["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["summands"]
                .as_array()
                .unwrap()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .find(|s| {
            json_ok(&["endo-quiver", "--model", "a3-cluster", "--d", "2", "--summands", s])["acyclic"] == json!(false)
        })
        .expect("C_A3 has a cluster-tilting object with a cyclic quiver");

    let mut input = common::read_json("golden/selftest-a3.json");
    input["candidate"]["summands"] = serde_json::from_str(&format!("[{cyclic}]")).unwrap();
    let path = std::env::temp_dir().join(format!("quivercat-cyclic-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&input).unwrap()).unwrap();
    let v = json_ok(&["recognize", "--model", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_schema("recognition-report", &v);
    assert_eq!(v["verdict"], "rejected");
    assert_eq!(v["failed"], "acyclicity");
}

#[test]
fn d4_preprojective_search_is_bounded_evidence() {
    let v = json_ok(&[
        "find-acyclic",
        "--seed",
        "builtin:d4-preprojective",
        "--max-nodes",
        "100000",
    ]);
    assert_schema("find-acyclic", &v);
    assert_eq!(v["found"], json!(false));
    // the class has 49 quivers, so the limits never fire
    assert_eq!(v["truncated"], json!(false));
    assert_eq!(v["status"], "exhausted");
    assert_eq!(v["explored"], json!(49));
    let verdict = v["verdict"].as_str().unwrap();
    assert!(verdict.starts_with("bounded-search evidence"), "{verdict}");
    assert!(!verdict.contains("proof"));
}

#[test]
fn a5_preprojective_search_is_truncated() {
    let v = json_ok(&["find-acyclic", "--seed", "builtin:a5-preprojective"]);
    assert_eq!(
        (v["found"].clone(), v["truncated"].clone()),
        (json!(false), json!(true))
    );
    assert!(v["verdict"].as_str().unwrap().starts_with("bounded-search evidence"));
}

#[test]
fn mutation_class_and_limits() {
    let v = json_ok(&["mutation-class", "--seed", "data/a3.json"]);
    assert_schema("mutation-class", &v);
    assert_eq!(v["class_size"], json!(4));
    assert_eq!(v["truncated"], json!(false));
    let v = json_ok(&[
        "mutation-class",
        "--seed",
        "builtin:a5-preprojective",
        "--max-depth",
        "2",
        "--max-nodes",
        "7",
    ]);
    assert_eq!(v["truncated"], json!(true));
    assert_eq!(v["limits"], json!({ "max_depth": 2, "max_nodes": 7 }));
    validation_error(&["mutation-class", "--seed", "data/a3.json", "--max-depth", "0"]);
}

#[test]
fn three_cycle_search_finds_length_one_word() {
    let v = json_ok(&["find-acyclic", "--seed", "data/three-cycle.json"]);
    assert_schema("find-acyclic", &v);
    assert_eq!(v["witness_word"].as_array().unwrap().len(), 1);
}

#[test]
fn model_commands() {
    let v = json_ok(&["build-model", "--model", "a6-tau4"]);
    assert_schema("model", &v);
    assert_eq!(v["objects"].as_array().unwrap().len(), 24);
    let from_seed = json_ok(&["build-model", "--seed", "builtin:a6-alternating", "--tau", "-4"]);
    assert_eq!(from_seed, v);
    let c = json_ok(&["build-model", "--seed", "data/a3.json", "--cluster", "2"]);
    assert_eq!(c["objects"].as_array().unwrap().len(), 9);

    let cy = json_ok(&["cy-check", "--model", "a3-cluster", "--d", "2"]);
    assert_schema("cy-check", &cy);
    assert_eq!(cy["holds"], json!(true));

    let all = json_ok(&["cluster-tilting", "--model", "a3-cluster", "--d", "2"]);
    assert_schema("cluster-tilting", &all);
    assert_eq!(all["count"], json!(14));
    let one = json_ok(&[
        "cluster-tilting",
        "--model",
        "a3-cluster",
        "--d",
        "2",
        "--summands",
        "P1,P2,P3",
    ]);
    assert_schema("cluster-tilting", &one);
    assert_eq!(one["cluster_tilting"], json!(true));

    let neg = json_ok(&[
        "negative-ext",
        "--model",
        "a6-tau4",
        "--d",
        "3",
        "--summands",
        "P1,P2,P3",
    ]);
    assert_schema("negative-ext", &neg);
    assert_eq!(neg["holds"], json!(false));
    assert_eq!(
        (neg["witness"]["from_name"].clone(), neg["witness"]["to_name"].clone()),
        (json!("P3"), json!("S^-1 P3"))
    );

    let endo = json_ok(&[
        "endo-quiver",
        "--model",
        "a6-tau4",
        "--d",
        "3",
        "--summands",
        "P1,P2,P3",
    ]);
    assert_schema("endo-quiver", &endo);
    assert_eq!(endo["quiver"]["arrows"], json!([[0, 1, 1], [2, 1, 1]]));
}

#[test]
fn kronecker_and_ar_window() {
    let v = json_ok(&["kronecker-survey", "--depth", "10"]);
    assert_schema("kronecker-survey", &v);
    assert_eq!(
        (v["all_rigid"].clone(), v["recurrence_holds"].clone()),
        (json!(true), json!(true))
    );
    validation_error(&["kronecker-survey", "--depth", "0"]);

    let w = json_ok(&["ar-window", "--seed", "builtin:a6-alternating", "--slices", "4"]);
    assert_schema("ar-window", &w);
    assert_eq!(w["window"]["vertices"].as_array().unwrap().len(), 24);
}

fn dot(args: &[&str]) -> (usize, usize) {
    let out = quivercat(args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    let edges = text.lines().filter(|l| l.contains("->")).count();
    (nodes, edges)
}

#[test]
fn dot_exports() {
    assert_eq!(dot(&["export-dot", "--seed", "data/a2.json"]), (2, 1));
    assert_eq!(dot(&["export-dot", "--seed", "builtin:kronecker3"]), (2, 3));
    assert_eq!(
        dot(&["export-dot", "--seed", "builtin:a6-alternating", "--slices", "4"]).0,
        24
    );
    assert_eq!(dot(&["export-dot", "--model", "a2-cluster"]).0, 5);
}

#[test]
fn job_files_and_stdin() {
    let req = json!({ "schema": "v1", "kind": "mutate", "payload": { "quiver": "a3", "vertex": 1 } });
    let mut child = Command::new(env!("CARGO_BIN_EXE_quivercat"))
        .args(["job", "--file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(req.to_string().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["acyclic"], json!(false));
}

#[test]
fn exit_codes() {
    let out = quivercat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(quivercat(&["mutate", "--seed", "data/a2.json"]).status.code(), Some(64));
    assert_eq!(quivercat(&["--help"]).status.code(), Some(0));
    assert_eq!(quivercat(&["--version"]).status.code(), Some(0));

    let e = validation_error(&["mutate", "--seed", "data/a2.json", "--vertex", "5"]);
    assert_eq!(e["error"], "validation");
    validation_error(&["mutate", "--seed", "data/missing.json", "--vertex", "0"]);
    validation_error(&["mutate", "--seed", "builtin:nonesuch", "--vertex", "0"]);
    validation_error(&["mutate", "--seed", "Cargo.toml", "--vertex", "0"]);
    let two_cycle = std::env::temp_dir().join(format!("quivercat-two-cycle-{}.json", std::process::id()));
    std::fs::write(
        &two_cycle,
        r#"{"vertices": ["1", "2"], "arrows": [[0, 1, 1], [1, 0, 1]]}"#,
    )
    .unwrap();
    let e = validation_error(&["mutate", "--seed", two_cycle.to_str().unwrap(), "--vertex", "0"]);
    std::fs::remove_file(&two_cycle).unwrap();
    assert!(e["message"].as_str().unwrap().contains("admissible"), "{e}");
    let nf = validation_error(&["build-model", "--model", "z9-cluster"]);
    assert_eq!(nf["error"], "not-found");
    validation_error(&["build-model", "--seed", "builtin:kronecker3", "--cluster", "2"]);
    validation_error(&[
        "cluster-tilting",
        "--model",
        "a2-cluster",
        "--d",
        "2",
        "--summands",
        "99",
    ]);
    validation_error(&["job", "--file", "data/a2.json"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["mutation-class", "--seed", "builtin:d4-preprojective"];
    assert_eq!(quivercat(&args).stdout, quivercat(&args).stdout);
}

#[test]
fn serve_answers_over_tcp() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quivercat"))
        .args(["serve"])
        .env("QUIVERCAT_PORT", "0")
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap())
        .read_line(&mut line)
        .unwrap();
    let addr = line.trim().rsplit("http://").next().unwrap().to_string();

    let body = r#"{"quiver": {"vertices": ["1", "2"], "arrows": [[0, 1, 1]]}, "vertex": 0}"#;
    let mut stream = TcpStream::connect(&addr).unwrap();
    write!(
        stream,
        "POST /api/mutate HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();

    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    let json_body = &response[response.find("\r\n\r\n").unwrap() + 4..];
    let cli = quivercat(&["mutate", "--seed", &repo_file("data/a2.json"), "--vertex", "0"]);
    assert_eq!(json_body.as_bytes(), &cli.stdout[..]);
}
