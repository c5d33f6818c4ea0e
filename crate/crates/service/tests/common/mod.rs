#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn repo_file(rel: &str) -> String {
    repo_root().join(rel).to_string_lossy().into_owned()
}

pub fn read_json(rel: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(repo_root().join(rel)).unwrap()).unwrap()
}

/// Panics unless `instance` validates against `schemas/v1/<name>.schema.json`.
pub fn assert_schema(name: &str, instance: &Value) {
    let schema = read_json(&format!("schemas/v1/{name}.schema.json"));
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}
