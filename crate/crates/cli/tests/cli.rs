use std::process::{Command, Output};

use serde_json::Value;

const DL: &str = "a->ababac,b->ababa,c->ab";
const TETRA: &str = "a->ab,b->ac,c->ad,d->a";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_episturm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn class_table() {
    let out = stdout(&["class", "a->ababa,b->ababac,c->ab", "--format", "tsv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "0\t-\ta->ababa,b->ababac,c->ab",
            "1\ta\ta->babaa,b->babaca,c->ba",
            "2\tab\ta->abaab,b->abacab,c->ab",
            "3\taba\ta->baaba,b->bacaba,c->ba",
            "4\tabab\ta->aabab,b->acabab,c->ab",
            "5\tababa\ta->ababa,b->cababa,c->ba",
        ]
    );
}

#[test]
fn returns_both_methods_match() {
    let out = stdout(&["returns", DL, "acababab", "--method", "both", "--side", "left"]);
    assert!(out.lines().any(|l| l == "MATCH"));
    assert!(out.contains("closed\tleft\tacabababacababaababacababaabab\n"));

    let v = json(&["returns", DL, "acababab", "--method", "both", "--format", "json"]);
    assert_eq!(v["d"], "abbcaab");
    assert_eq!(v["ell"], 26);
    assert_eq!(v["verdict"], "MATCH");
    assert_eq!(v["closed_form"]["left"], v["oracle"]["left"]);
    assert_eq!(v["closed_form"]["right"].as_array().unwrap().len(), 3);
}

#[test]
fn rauzy_dot_and_annotations() {
    let dot = stdout(&["rauzy", TETRA, "--n", "4", "--format", "dot"]);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 13);
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 16);
    assert!(dot.contains("style=bold"));
    assert!(dot.contains("left=\"") && dot.contains("right=\""));

    let v = json(&["rauzy", DL, "--n", "8", "--annotate-dl", "--format", "json"]);
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 17);
    let find = |w: &str| vertices.iter().find(|x| x["word"] == w).unwrap();
    assert_eq!((&find("ababacab")["d"], &find("ababacab")["ell"]), (&"abbc".into(), &0.into()));
    assert_eq!((&find("acababac")["d"], &find("acababac")["ell"]), (&"abbcaabc".into(), &56.into()));
}

#[test]
fn pal_commands() {
    assert_eq!(json(&["pal", "abc", "--format", "json"])["pal"], "abacaba");
    assert_eq!(stdout(&["pal-inverse", "abacaba"]), "abc\n");
    assert!(stdout(&["pal-inverse", "abca"]).starts_with("not a palindromic closure"));
    let tree = json(&["standard-tree", "--depth", "1", "--format", "json"]);
    assert_eq!(tree["nodes"][1]["u"], "a");
    assert_eq!(tree["nodes"][1]["images"], serde_json::json!(["a", "ab", "ac"]));
}

#[test]
fn expected_negatives_exit_zero() {
    assert!(stdout(&["decompose", "a->ab,b->ba"]).starts_with("not episturmian"));
    let v = json(&["check-p", "a->ab,b->a", "ab", "--cross-check", "oracle", "--format", "json"]);
    assert_eq!(v["holds_p"], false);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["class", "a->ab,b"]).status.code(), Some(2));
    assert_eq!(run(&["returns", DL]).status.code(), Some(2));
    assert_eq!(run(&["class", DL, "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["language", "a->ab,b->ba", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn morphism_from_json_file() {
    let path = std::env::temp_dir().join(format!("episturm-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"alphabet":["a","b"],"rules":{"a":"ab","b":"a"}}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["index", "--file", p, "--format", "json"]);
    assert_eq!(v["index"], 0);
    let out = stdout(&["returns", "--file", p, "aba", "--method", "both"]);
    assert!(out.ends_with("MATCH\n"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn obstructions_report() {
    let v = json(&["obstructions", DL, "--n-max", "12", "--format", "json", "--lemmas", "6"]);
    assert_eq!(v["a_min"], "c");
    assert_eq!(v["case"], "two");
    assert!(v["words"].as_array().unwrap().iter().all(|w| w["holds_p"] == false));
    assert_eq!(v["lemmas"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["language", TETRA, "--n", "6", "--strict", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["count"], 19);
}

#[test]
fn verify_quick_passes() {
    let out = run(&["verify", "--quick", "--seed", "11"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.ends_with("12 of 12 checks passed\n"));
}
