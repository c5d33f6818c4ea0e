//! Model dumps compared byte for byte with the files under `golden/`.
//! Set `QUIVERCAT_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use quivercat::builtin::{a_alternating, a_linear};
use quivercat::derived::AutoWord;
use quivercat::orbit::{build_orbit_model, cluster_category, OrbitModel, RecognitionInput};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn check(file: &str, json: String) {
    let path = golden_dir().join(file);
    let json = json + "\n";
    if std::env::var_os("QUIVERCAT_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &json).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == json, "{file} differs from the freshly built model");
}

fn dump(m: &OrbitModel) -> String {
    serde_json::to_string_pretty(&m.dump()).unwrap()
}

#[test]
fn cluster_category_a2() {
    let m = cluster_category(&a_linear(2), 2).unwrap();
    // hand-knitted: P2 -> P1 -> I1 -> P2[1] -> P1[1] -> P2 around the Moebius band,
    // with Hom(X_i, X_j) = k exactly for j = i, i + 1 (mod 5)
    let cycle = ["P2", "P1", "I1", "P2[1]", "P1[1]"];
    let idx = |name: &str| m.names().iter().position(|n| n == name).unwrap();
    for (i, a) in cycle.iter().enumerate() {
        for (j, b) in cycle.iter().enumerate() {
            let expected = u32::from(j == i || j == (i + 1) % 5);
            assert_eq!(m.hom_table()[idx(a)][idx(b)], expected, "hom({a}, {b})");
        }
    }
    check("c_a2.json", dump(&m));
}

#[test]
fn cluster_category_a3() {
    check("c_a3.json", dump(&cluster_category(&a_linear(3), 2).unwrap()));
}

#[test]
fn three_cluster_category_a3() {
    check("c3_a3.json", dump(&cluster_category(&a_linear(3), 3).unwrap()));
}

#[test]
fn alternating_a6_modulo_tau4() {
    let m = build_orbit_model(&a_alternating(6), AutoWord::new(-4, 0)).unwrap();
    check("a6-tau4.json", dump(&m));
}

#[test]
fn recognition_self_test_input() {
    let m = cluster_category(&a_linear(3), 2).unwrap();
    let t = (0..3).map(|v| m.projective(v)).collect();
    let input = RecognitionInput::from_model(&m, t, 2);
    check("selftest-a3.json", serde_json::to_string_pretty(&input).unwrap());
}
