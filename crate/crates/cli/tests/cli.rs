use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sympal::fixture::GroupFixture;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympal"))
        .args(args)
        .env_remove("SYMPAL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn classify_cases() {
    let o = run(&["classify", "--input", &fixture("reducible_sp4_f5.json"), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["case"], "reducible");

    let o = run(&["classify", "--input", &fixture("induced_sp4_f5.json"), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["case"], "induced");
    assert_eq!(v["block_count"], 2);
    assert_eq!(v["block_dim"], 2);

    let o = run(&["classify", "--input", &fixture("sp2_f25.json"), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["transvection_subgroup_order"], 15600);
}

#[test]
fn classify_failures() {
    let o = run(&["classify", "--input", &fixture("char3.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("CharTooSmall"));

    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("t.json");
    let text = std::fs::read_to_string(fixture("sp2_f7.json")).unwrap();
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&run(&["classify", "--input", truncated.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["classify", "--input", "/nonexistent/file.json"])), 1);

    let o = run(&["classify", "--input", &fixture("sp2_f25.json"), "--cap", "100"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["classify", "--input", &fixture("sp2_f7.json"), "--cap", "0"])), 2);
}

#[test]
fn verdict_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_sympal"))
            .args(["classify", "--input", &fixture("induced_sp4_f5.json"), "--json"])
            .env("SYMPAL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = go();
    assert_eq!(code(&first), 0);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = go();
    assert_eq!(json(&first), json(&second));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn np_group_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("np.json");
    let o = run(&[
        "np-group", "--n", "2", "--q", "5", "--p", "3", "--ell", "7", "--classify", "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NoTransvection"));
    let text = std::fs::read_to_string(&out).unwrap();
    let fx = GroupFixture::from_json(&text).unwrap();
    assert_eq!(fx.metadata.as_ref().unwrap()["order"], 12);
    // the emitted document re-parses to an equal value
    assert_eq!(GroupFixture::from_json(&fx.to_json()).unwrap(), fx);
    let g = fx.to_group().unwrap();
    assert_eq!(g.enumerate(1000).unwrap().len(), 12);

    let o = run(&["classify", "--input", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NoTransvection"));

    // p does not divide q^n - 1
    assert_eq!(code(&run(&["np-group", "--n", "2", "--q", "5", "--p", "7", "--ell", "11"])), 2);
    assert_eq!(
        code(&run(&["np-group", "--n", "2", "--q", "5", "--p", "3", "--ell", "7", "--n1", "4", "--n2", "6"])),
        2
    );
    let o = run(&["np-group", "--n", "2", "--q", "5", "--p", "3", "--ell", "7", "--twist", "3"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn find_primes_table() {
    let o = run(&["find-primes", "--n", "2", "--q-max", "50", "--json"]);
    assert_eq!(code(&o), 0);
    let pairs = json(&o)["pairs"].as_array().unwrap().clone();
    assert!(pairs.iter().any(|p| p["q"] == 5 && p["p"] == 3));
    assert_eq!(code(&run(&["find-primes", "--n", "3", "--q-max", "50"])), 2);
    let o = run(&["find-primes", "--n", "4", "--q-max", "2", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn regularity_verdicts() {
    let o = run(&["regularity", "--input", &fixture("profile_distinct.json"), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "distinct");

    let o = run(&["regularity", "--input", &fixture("profile_collision.json"), "--json"]);
    assert_eq!(code(&o), 4);
    let v = json(&o);
    assert_eq!(v["verdict"], "collision");
    assert_eq!(v["pair"], serde_json::json!([0, 1]));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ell": 6, "n": 2, "parts": []}"#).unwrap();
    assert_eq!(code(&run(&["regularity", "--input", bad.to_str().unwrap()])), 1);
    std::fs::write(&bad, r#"{"ell": 7"#).unwrap();
    assert_eq!(code(&run(&["regularity", "--input", bad.to_str().unwrap()])), 1);
}

#[test]
fn mackey_sweeps() {
    let o = run(&["mackey", "--input", &fixture("mackey_f21.json"), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["counterexamples"], 0);
    assert_eq!(v["prop"]["qualifying"], 8);
    assert_eq!(v["lemma"]["trivial_restrictions"], 0);

    let o = run(&["mackey", "--input", &fixture("mackey_skip.json"), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    // with p = 3 only N = G qualifies; C7 of index 3 is skipped
    assert!(v["prop"]["skipped"].as_u64().unwrap() > 0);
    assert_eq!(v["counterexamples"], 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"group": {"table": [[0, 0], [0, 1]]}}"#).unwrap();
    assert_eq!(code(&run(&["mackey", "--input", bad.to_str().unwrap()])), 1);
}
