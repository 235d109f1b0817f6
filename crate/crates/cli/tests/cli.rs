use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_congrusep");
const U: &str = "[[[1,1],[0,1]]]";
const MINUS_I: &str = "[[-1,0],[0,-1]]";
const KLEIN: &str = r#"{"m":2,"generators":[{"t":["1/2","0"],"S":[[1,0],[0,-1]]}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(BIN).args(args).env(key, value).output().unwrap()
}

fn ok_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_exit(out: &Output, code: i32, message: &str) {
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(code), "stderr: {stderr}");
    assert!(stderr.contains(message), "stderr {stderr:?} lacks {message:?}");
}

fn entries(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v["entries"].clone()).unwrap()
}

fn strings(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[test]
fn jordan_examples() {
    let v = ok_json(&run(&["jordan", "[[-1,1],[0,-1]]"]));
    assert_eq!(entries(&v["semisimple"]), strings(&[&["-1", "0"], &["0", "-1"]]));
    assert_eq!(entries(&v["unipotent"]), strings(&[&["1", "-1"], &["0", "1"]]));
    assert_eq!(v["is_semisimple"], false);
    assert!(v.get("torsion_order").is_none());

    let v = ok_json(&run(&["jordan", "[[1,0],[0,1]]"]));
    assert_eq!(entries(&v["semisimple"]), entries(&v["unipotent"]));
    assert_eq!(v["torsion_order"], 1);

    let v = ok_json(&run(&["jordan", "[[0,-1],[1,-1]]"]));
    assert_eq!(v["torsion_order"], 3);
    assert_eq!(v["is_semisimple"], true);

    assert_exit(&run(&["jordan", "[[1,1],[1,1]]"]), 3, "singular");
    assert_exit(&run(&["jordan", "[[1,2,3]]"]), 2, "");
    assert_exit(&run(&["jordan", "no-such-file.json"]), 2, "cannot read");
}

#[test]
fn avoid_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let out = run(&["avoid", U, MINUS_I, "--output", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["m"], 3);
    assert_eq!(v["kind"], "separation");

    let verified = run(&["avoid", "--verify-only", cert.to_str().unwrap()]);
    assert_eq!(verified.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&verified.stdout).trim(), "verified");

    for (field, value) in [("m", Value::from(2)), ("image_size", Value::from(4)), ("disjoint", Value::from(false))] {
        let mut bad = v.clone();
        bad[field] = value;
        let path = dir.path().join(format!("bad-{field}.json"));
        std::fs::write(&path, bad.to_string()).unwrap();
        assert_exit(&run(&["avoid", "--verify-only", path.to_str().unwrap()]), 5, "verification failed");
    }
    let mut bad = v.clone();
    bad["image_digest"] = Value::from("00");
    let path = dir.path().join("bad-digest.json");
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_exit(&run(&["verify", path.to_str().unwrap()]), 5, "verification failed");

    std::fs::write(&path, "{not json").unwrap();
    assert_exit(&run(&["verify", path.to_str().unwrap()]), 2, "malformed");
}

#[test]
fn avoid_flags() {
    let v = ok_json(&run(&["avoid", U, MINUS_I, "--modulus-schedule", "5,7"]));
    assert_eq!(v["m"], 5);
    assert_exit(&run(&["avoid", U, MINUS_I, "--modulus-schedule", "3,2"]), 2, "strictly increasing");
    assert_exit(&run(&["avoid", U, MINUS_I, "--modulus-schedule", "1,3"]), 2, "invalid modulus");
    assert_exit(&run(&["avoid", U, MINUS_I, "--modulus-schedule", "2"]), 4, "largest modulus tried: 2");
    assert_exit(&run(&["avoid", U, "[[1,1],[0,1]]"]), 3, "not semisimple");
    assert_exit(&run(&["avoid", "[[[2,0],[0,1]]]", MINUS_I]), 3, "determinant 2");
    assert_exit(&run(&["avoid", U, "[[1,0,0],[0,1,0],[0,0,1]]"]), 2, "");
    // Empty generator list: the trivial group.
    let v = ok_json(&run(&["avoid", "[]", MINUS_I]));
    assert_eq!(v["m"], 3);
    // A tiny element cap runs out of budget.
    assert_exit(&run(&["avoid", U, "[[0,-1],[1,0]]", "--element-cap", "1"]), 4, "budget");
}

#[test]
fn torsion_free_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("tf.json");
    let out = run(&["torsion-free", U, "--output", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["table"], "builtin-gl2-v1");
    assert_eq!(v["torsion_reps"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["torsion-free", "--verify-only", cert.to_str().unwrap()]).status.code(), Some(0));

    let i4 = "[[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]]";
    assert_exit(&run(&["torsion-free", i4]), 2, "no builtin torsion table");
    assert_exit(&run(&["torsion-free", U, "--reps", "[[[2,1],[1,1]]]"]), 2, "infinite order");

    // A custom table in dimension 4: -I and a block rotation.
    let reps = "[[[-1,0,0,0],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1]],[[0,-1,0,0],[1,0,0,0],[0,0,1,0],[0,0,0,1]]]";
    let v = ok_json(&run(&["torsion-free", i4, "--reps", reps]));
    assert_eq!(v["table"], "custom");
    assert_eq!(v["m"], 3);

    let v = ok_json(&run(&["torsion-free", "[]", "--dim", "1"]));
    assert_eq!(v["m"], 3);
    assert_exit(&run(&["torsion-free", "[]"]), 2, "--dim");
}

#[test]
fn semifactor_examples() {
    let v = ok_json(&run(&["semifactors", KLEIN]));
    assert_eq!(v["holonomy_order"], 2);
    assert_eq!(v["total"], 3);
    let reflection = v["components"].as_array().unwrap().iter().find(|c| c["w_s_dim"] == 1).unwrap();
    assert_eq!(reflection["invariant_factors"], serde_json::json!([2]));
    assert_eq!(reflection["count"], 2);
    assert!(reflection.get("representatives").is_none());

    let full = ok_json(&run(&["semifactors", KLEIN, "--full"]));
    let reps: usize = full["components"].as_array().unwrap().iter().map(|c| c["representatives"].as_array().unwrap().len()).sum();
    assert_eq!(reps, 3);

    let v = ok_json(&run(&["semifactors", r#"{"m":2,"generators":[]}"#]));
    assert_eq!(v["total"], 1);

    let heis = r#"{"m":3,"generators":[{"t":[0,0,0],"S":[[1,1,0],[0,1,0],[0,0,1]]}]}"#;
    assert_exit(&run(&["semifactors", heis]), 2, "base case only");
    let anosov = r#"{"m":2,"generators":[{"t":[0,0],"S":[[2,1],[1,1]]}]}"#;
    assert_exit(&run(&["semifactors", anosov]), 2, "holonomy not finite");
}

#[test]
fn bit_bound_variable() {
    assert_exit(&run_env(&["semifactors", KLEIN], "CONGRUSEP_BIT_BOUND", "zero"), 2, "CONGRUSEP_BIT_BOUND");
    let v: Value = serde_json::from_slice(&run_env(&["semifactors", KLEIN], "CONGRUSEP_BIT_BOUND", "64").stdout).unwrap();
    assert_eq!(v["total"], 3);
    assert_exit(&run_env(&["semifactors", KLEIN], "CONGRUSEP_BIT_BOUND", "1"), 4, "bits");
}

#[test]
fn embed_feeds_torsion_free() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    assert_eq!(run(&["embed", KLEIN, "--output", gens.to_str().unwrap()]).status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&gens).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(entries(&v[0]), strings(&[&["1", "0", "1"], &["0", "-1", "0"], &["0", "0", "1"]]));
    let cert = ok_json(&run(&["torsion-free", gens.to_str().unwrap()]));
    assert_eq!(cert["table"], "builtin-gl3-v1");
}

#[test]
fn witness_prime_examples() {
    let v = ok_json(&run(&["witness-prime", r#"[["1/2",0],[0,2]]"#, U]));
    assert_eq!((v["p"].clone(), v["level"].clone(), v["reason"].clone()), (2.into(), 1.into(), "denominator".into()));
    let v = ok_json(&run(&["witness-prime", MINUS_I, U]));
    assert_eq!((v["p"].clone(), v["reason"].clone()), (3.into(), "image-escape".into()));
    assert_exit(&run(&["witness-prime", "[[1,0],[0,1]]", U, "--primes", "2,3", "--max-level", "2"]), 4, "largest modulus tried: 9");
    assert_exit(&run(&["witness-prime", "[[1,1],[0,1]]", U]), 3, "not semisimple");
}

#[test]
fn image_and_scan() {
    let v = ok_json(&run(&["image", U, "--modulus", "8"]));
    assert_eq!(v["size"], 8);
    assert!(v.get("elements").is_none());
    let v = ok_json(&run(&["image", U, "--modulus", "8", "--full"]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_exit(&run(&["image", U, "--modulus", "1"]), 2, "invalid modulus");

    let v = ok_json(&run(&["scan", U, "--word-length", "5"]));
    assert_eq!(v["verdict"], "consistent up to word length 5");
    let v = ok_json(&run(&["scan", "[[[2,1],[1,1]]]", "--word-length", "1"]));
    assert_eq!(v["consistent"], false);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["avoid", U, "[[0,-1],[1,0]]"],
        vec!["torsion-free", U],
        vec!["semifactors", KLEIN, "--full"],
        vec!["image", U, "--modulus", "12", "--full"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
