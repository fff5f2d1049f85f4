use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn vgit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vgit")).args(args).env_remove("VGIT_CAP").output().expect("run vgit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> Value {
    serde_json::from_str(&std::fs::read_to_string(data("records.schema.json")).unwrap()).unwrap()
}

/// Fields the schema requires for one record kind, following one `$ref`.
fn required(schema: &Value, kind: &str) -> Vec<String> {
    let mut out = Vec::new();
    for rule in schema["allOf"].as_array().unwrap() {
        if rule["if"]["properties"]["kind"]["const"] != kind {
            continue;
        }
        let mut then = &rule["then"];
        if let Some(r) = then["$ref"].as_str() {
            then = &schema["$defs"][r.trim_start_matches("#/$defs/")];
        }
        for f in then["required"].as_array().into_iter().flatten() {
            out.push(f.as_str().unwrap().to_string());
        }
    }
    out
}

fn owned(args: &[&str]) -> Vec<String> {
    args.iter().map(|a| a.to_string()).collect()
}

fn records(args: &[&str]) -> Vec<Value> {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = vgit(&all);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(!text.trim().is_empty(), "{args:?} printed nothing");
    text.lines().map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{args:?}: {e}: {l}"))).collect()
}

#[test]
fn every_record_matches_the_schema() {
    let schema = schema();
    let kinds: BTreeSet<String> =
        schema["properties"]["kind"]["enum"].as_array().unwrap().iter().map(|k| k.as_str().unwrap().to_string()).collect();
    let (fp, fm) = (data("flip_plus.toml"), data("flip_minus.toml"));
    let runs: Vec<Vec<String>> = vec![
        owned(&["sigma", "--lin", &fp]),
        owned(&["sigma", "--symmetric", "--d", "5", "--n", "19", "--gamma", "4009/9000", "--size", "7"]),
        owned(&["walls", "--d", "3", "--n", "6"]),
        owned(&["walls", "--d", "5", "--n", "19", "--symmetric"]),
        owned(&["scan", "--symmetric", "--d", "9", "--n", "9", "--gamma-from", "3/10", "--gamma-to", "999/1000", "--models"]),
        owned(&["scan", "--from", &fm, "--to", &fp]),
        owned(&["signature", "--lin", &data("generic_d2_n5.toml")]),
        owned(&["classify-wall", "--d", "5", "--n", "19", "--subset", "13-19", "--k", "1"]),
        owned(&["contract", "--tree", &data("caterpillar.toml"), "--lin", &fp]),
        owned(&["stable", "--curve", &data("triple.toml"), "--lin", &data("triple_chamber.toml")]),
        owned(&["check-extremal", "--assignment", &data("pairs.toml")]),
        owned(&["realize", "--assignment", &data("pairs.toml"), "--d", "3"]),
        owned(&["identify", "--symmetric", "--d", "9", "--n", "9", "--gamma", "2/5"]),
        owned(&["hassett-degree", "--weights", &data("hassett_8.toml")]),
        owned(&["boggi", "--n", "6"]),
        owned(&["preset", "flip-5-19", "--verify"]),
        owned(&["preset", "vgit-9-9", "--verify"]),
        owned(&["preset", "hassett-9-9", "--verify"]),
        owned(&["preset", "mbar-6", "--verify"]),
        owned(&["preset", "boggi-9", "--verify"]),
        owned(&["preset", "triple-9-9", "--verify"]),
        owned(&["preset", "mod-not-git", "--verify"]),
    ];
    let mut seen = BTreeSet::new();
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        for r in records(&args) {
            assert_eq!(r["schema_version"], 1, "{args:?}");
            let kind = r["kind"].as_str().unwrap_or_else(|| panic!("{args:?}: no kind in {r}")).to_string();
            assert!(kinds.contains(&kind), "{args:?}: kind {kind} not in the schema");
            for f in required(&schema, &kind) {
                assert!(r.get(&f).is_some(), "{args:?}: {kind} record lacks {f}: {r}");
            }
            seen.insert(kind);
        }
    }
    for k in ["sigma", "wall", "wall_class", "crossing", "model_crossing", "signature", "crossing_report", "check"] {
        assert!(seen.contains(k), "no {k} record produced");
    }
}

#[test]
fn table_output_is_readable() {
    let o = vgit(&["sigma", "--symmetric", "--d", "5", "--n", "19", "--gamma", "4009/9000", "--subset", "8-19"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
    let o = vgit(&["preset", "flip-5-19", "--verify"]);
    let text = stdout(&o);
    assert!(text.contains("[pass] label is Flip"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| vgit(args).status.code();
    assert_eq!(code(&["boggi", "--n", "5"]), Some(0));
    // on a wall
    let o = vgit(&["signature", "--symmetric", "--d", "5", "--n", "19", "--gamma", "4/9"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    // malformed input
    assert_eq!(code(&["sigma", "--symmetric", "--d", "5", "--n", "19", "--gamma", "0.4"]), Some(2));
    assert_eq!(code(&["no-such-command"]), Some(2));
    assert_eq!(code(&["preset", "no-such-preset"]), Some(2));
    // missing file
    assert_eq!(code(&["contract", "--tree", "/nonexistent.toml", "--lin", &data("flip_plus.toml")]), Some(1));
    // enumeration cap
    let o = Command::new(env!("CARGO_BIN_EXE_vgit"))
        .args(["check-extremal", "--assignment", &data("pairs.toml")])
        .env("VGIT_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn help_lists_every_subcommand() {
    let text = stdout(&vgit(&["--help"]));
    for c in [
        "sigma", "walls", "scan", "signature", "classify-wall", "contract", "stable", "check-extremal", "realize", "identify",
        "hassett-degree", "boggi", "preset",
    ] {
        assert!(text.contains(c), "{c} missing from help");
    }
}
