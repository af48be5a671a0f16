//! End-to-end tests of the `tambara` binary: build → check → classify
//! pipelines, exit codes, and byte-identical reports under fixed seeds.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tambara"))
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn c2_group_json() -> Value {
    json!({
        "schema": 1,
        "elements": ["e", "s"],
        "mul": [["e", "s"], ["s", "e"]],
        "id": "e"
    })
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        panic!(
            "stdout is not JSON: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn group_verb_reports_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c2.json", &c2_group_json());
    let out = bin().args(["group", "--input"]).arg(&g).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["order"], 2);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);

    // Permutation input: S3 from a transposition and a 3-cycle.
    let s3 = write(
        dir.path(),
        "s3.json",
        &json!({
            "schema": 1,
            "degree": 3,
            "perm_generators": [[[0, 1]], [[0, 1, 2]]]
        }),
    );
    let out = bin().args(["group", "--input"]).arg(&s3).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn gset_verb_decomposes_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "gs.json",
        &json!({
            "schema": 1,
            "group": c2_group_json(),
            "gset": {
                "points": ["a", "b", "c"],
                "act": {
                    "e": ["a", "b", "c"],
                    "s": ["b", "a", "c"]
                }
            }
        }),
    );
    let out = bin().args(["gset", "--input"]).arg(&file).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["points"], 3);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
}

fn build_functor(dir: &Path, what: &str, ring: &Value) -> PathBuf {
    let g = write(dir, "group.json", &c2_group_json());
    let mut r = ring.clone();
    r["schema"] = json!(1);
    let rpath = write(dir, &format!("ring_{what}.json"), &r);
    let out = bin()
        .args(["build", what, "--group"])
        .arg(&g)
        .arg("--ring")
        .arg(&rpath)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "build failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = dir.join(format!("functor_{what}.json"));
    fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn build_and_check_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let functor = build_functor(dir.path(), "constant", &json!({"kind": "galois", "p": 3, "k": 1}));
    let out = bin()
        .args(["check", "--input"])
        .arg(&functor)
        .args(["--seed", "7", "--budget", "200"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["samples"], 200);
}

#[test]
fn burnside_build_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "group.json", &c2_group_json());
    let out = bin()
        .args(["build", "burnside", "--group"])
        .arg(&g)
        .output()
        .unwrap();
    assert!(out.status.success());
    let functor = dir.path().join("burnside.json");
    fs::write(&functor, &out.stdout).unwrap();
    let out = bin()
        .args(["check", "--input"])
        .arg(&functor)
        .args(["--seed", "11", "--budget", "150"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn classify_coinduced_and_constant() {
    let dir = tempfile::tempdir().unwrap();
    let co = build_functor(dir.path(), "coinduce", &json!({"kind": "galois", "p": 3, "k": 1}));
    let out = bin().args(["classify", "--input"]).arg(&co).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "coinduced_from_field");
    assert_eq!(v["field_size"], 3);
    assert!(v["certificate"]["idempotent_orbit"].is_object());

    // Constant field functor: exit code 1, structured reason.
    let ct = build_functor(dir.path(), "constant", &json!({"kind": "galois", "p": 3, "k": 1}));
    let out = bin().args(["classify", "--input"]).arg(&ct).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "not_coinduced");
}

#[test]
fn fieldlike_z4_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = build_functor(dir.path(), "constant", &json!({"kind": "modular", "n": 4}));
    let out = bin().args(["fieldlike", "--input"]).arg(&z4).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["field_like"], false);
    assert!(v["witness_ideal"]["levels"].is_object());

    let f3 = build_functor(dir.path(), "constant", &json!({"kind": "galois", "p": 3, "k": 1}));
    let out = bin().args(["fieldlike", "--input"]).arg(&f3).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn ideal_close_z4_example() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = build_functor(dir.path(), "constant", &json!({"kind": "modular", "n": 4}));
    let gens = write(
        dir.path(),
        "gens.json",
        &json!({
            "schema": 1,
            "generators": [{"class": "{e}", "value": {"i": 2}}]
        }),
    );
    let out = bin()
        .args(["ideal", "close", "--input"])
        .arg(&z4)
        .arg("--generators")
        .arg(&gens)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let bottom = v["levels"]["{e}"].as_array().unwrap();
    assert_eq!(bottom.len(), 2);
    let top = v["levels"]["{e,s}"].as_array().unwrap();
    assert_eq!(top.len(), 1);
}

#[test]
fn eval_norm_expression() {
    let dir = tempfile::tempdir().unwrap();
    let f3 = build_functor(dir.path(), "constant", &json!({"kind": "galois", "p": 3, "k": 1}));
    let assign = write(
        dir.path(),
        "assign.json",
        &json!({
            "schema": 1,
            "gens": [{"level": "{e,s}", "value": {"i": 2}}]
        }),
    );
    let out = bin()
        .args(["eval", "--input"])
        .arg(&f3)
        .args(["--expr", "(nm {e} {e,s} (res {e} {e,s} x0))", "--assign"])
        .arg(&assign)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    // 2² = 4 = 1 in F3 (table index 1 under the exported enumeration).
    assert_eq!(v["value"], json!({"i": 1}));
}

#[test]
fn bispan_compose_via_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let free = json!({
        "points": ["p0", "p1"],
        "act": {"e": ["p0", "p1"], "s": ["p1", "p0"]}
    });
    let pt = json!({
        "points": ["p0"],
        "act": {"e": ["p0"], "s": ["p0"]}
    });
    // first = T_π : free → pt; then = R_π : pt → free.
    let file = write(
        dir.path(),
        "compose.json",
        &json!({
            "schema": 1,
            "group": c2_group_json(),
            "first": {
                "x": free,
                "y": pt,
                "pieces": [
                    {"stab": ["e"], "y": "p0", "fiber": [{"stab": ["e"], "x": "p0"}]}
                ]
            },
            "then": {
                "x": pt,
                "y": free,
                "pieces": [
                    {"stab": ["e"], "y": "p0", "fiber": [{"stab": ["e"], "x": "p0"}]}
                ]
            }
        }),
    );
    let out = bin()
        .args(["bispan", "compose", "--input"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    // R_π ∘ T_π over C2 has middle object C2/e × C2/e = two free orbits.
    assert_eq!(v["composed"]["pieces"].as_array().unwrap().len(), 2);
    assert!(v["pretty"].as_str().unwrap().contains("<-h-"));
}

#[test]
fn closure_map_and_module_check() {
    let dir = tempfile::tempdir().unwrap();
    let co = build_functor(dir.path(), "coinduce", &json!({"kind": "galois", "p": 2, "k": 1}));
    let out = bin()
        .args(["closure-map", "--input"])
        .arg(&co)
        .args(["--degree", "1", "--cap", "3"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["fixed_field_size"], 2);
    assert!(v["factoring"].as_array().unwrap().iter().all(|f| f["all_factor"] == true));

    let text = fs::read_to_string(&co).unwrap();
    let module = write(
        dir.path(),
        "module.json",
        &json!({
            "schema": 1,
            "green": serde_json::from_str::<Value>(&text).unwrap(),
            "module": "self_square"
        }),
    );
    let out = bin()
        .args(["module-check", "--input"])
        .arg(&module)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let co = build_functor(dir.path(), "coinduce", &json!({"kind": "galois", "p": 2, "k": 1}));
    let run = || {
        bin()
            .args(["check", "--input"])
            .arg(&co)
            .args(["--seed", "99", "--budget", "120"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
    let classify_run = || {
        bin()
            .args(["classify", "--input"])
            .arg(&co)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(classify_run(), classify_run());
}

#[test]
fn unknown_schema_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = c2_group_json();
    g["schema"] = json!(2);
    let path = write(dir.path(), "future.json", &g);
    let out = bin().args(["group", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unknown verbs and missing files are usage errors too.
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["group", "--input", "/nonexistent/nо.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tambara_table_roundtrips_through_import() {
    // Export → import → check: the tabulated form is self-contained.
    let dir = tempfile::tempdir().unwrap();
    let f4 = build_functor(dir.path(), "coinduce", &json!({"kind": "galois", "p": 2, "k": 2}));
    let out = bin()
        .args(["check", "--input"])
        .arg(&f4)
        .args(["--seed", "3", "--budget", "150"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verified"], true);
}
