use std::path::PathBuf;
use std::process::{Command, Output};

fn rbl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbl")).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    rbl(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(rbl(args).stdout).unwrap()
}

const FIX: &str = "tests/fixtures";

fn fixture(name: &str) -> String {
    format!("{FIX}/{name}")
}

#[test]
fn prove_exit_codes() {
    assert_eq!(code(&["prove", "top |- p -> p"]), 0);
    assert!(stdout(&["prove", "top |- p -> p"]).starts_with("proved\n(RImpR"));
    assert_eq!(code(&["prove", "--profile", "lj", "p & (p -> q) |- q"]), 0);
    assert_eq!(code(&["prove", "--profile", "top-imp", "p & (p -> q) |- q"]), 0);
    assert_eq!(code(&["prove", "top |- p & (p -> q) -> q"]), 1);
    // with no room to search and no room for countermodels
    assert_eq!(code(&["prove", "--depth", "0", "--max-size", "1", "top |- (p -> q) | (q -> p)"]), 2);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&["prove", "p |-"]), 3);
    assert_eq!(code(&["prove", "--profile", "classical", "p |- p"]), 3);
    assert_eq!(code(&["check-proof", "no/such/file"]), 3);
    assert_eq!(code(&["enumerate-algebras", "--max-size", "9"]), 3);
    assert_eq!(code(&["frobnicate"]), 3);
    let out = rbl(&["parse", "p & "]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn countermodel_for_ddagger() {
    let out = rbl(&["countermodel", "top |- p & (p -> q) -> q", "--max-size", "4", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["countermodel"]["kind"], "relational");
    assert!(v["countermodel"]["model"]["states"].as_u64().unwrap() <= 4);
    assert_eq!(code(&["countermodel", "top |- p -> p"]), 2);
}

#[test]
fn proof_files() {
    assert_eq!(code(&["check-proof", &fixture("meet_cut.proof")]), 0);
    assert_eq!(code(&["check-proof", &fixture("bad.proof")]), 1);
    let out = stdout(&["eliminate-mix", &fixture("meet_cut.proof")]);
    assert!(!out.contains("Cut"));
    let dir = tempfile::tempdir().unwrap();
    let cut_free = dir.path().join("out.proof");
    let cut_free = cut_free.to_str().unwrap();
    assert_eq!(code(&["eliminate-mix", &fixture("meet_cut.proof"), "--out", cut_free]), 0);
    assert_eq!(code(&["check-proof", cut_free]), 0);
    assert_eq!(code(&["eliminate-mix", &fixture("bad.proof")]), 3);
}

#[test]
fn models_and_algebras() {
    assert_eq!(code(&["check-model", &fixture("chain.json")]), 0);
    assert_eq!(code(&["check-model", &fixture("not_persistent.json")]), 1);
    assert_eq!(code(&["check-model", &fixture("chain.json"), "--formula", "q", "--world", "1"]), 0);
    assert_eq!(code(&["check-model", &fixture("chain.json"), "--formula", "q", "--world", "0"]), 1);
    assert_eq!(code(&["check-model", &fixture("chain.json"), "--formula", "q", "--world", "7"]), 3);

    let dir = tempfile::tempdir().unwrap();
    let lifted = dir.path().join("lift.json");
    let lifted = lifted.to_str().unwrap();
    assert_eq!(code(&["lift", &fixture("chain.json"), "--out", lifted]), 0);
    assert_eq!(code(&["check-ternary", lifted]), 0);
    // ← is not persistent in the lift: p <- q holds at 0 but not at 2
    assert_eq!(code(&["check-ternary", lifted, "--formula", "p <- q", "--state", "0"]), 0);
    assert_eq!(code(&["check-ternary", lifted, "--formula", "p <- q", "--state", "4"]), 1);

    assert_eq!(code(&["validate-algebra", &fixture("two_chain_meet.json")]), 0);
    assert_eq!(code(&["validate-algebra", &fixture("broken_prod.json")]), 1);
    assert_eq!(stdout(&["enumerate-algebras", "--max-size", "3"]), "size 1: 1\nsize 2: 2\nsize 3: 6\ntotal: 9\n");
}

#[test]
fn simple_and_hilbert() {
    assert_eq!(code(&["check-simple", &fixture("wl.simple")]), 0);
    assert_eq!(code(&["check-simple", "--system", "srbl", &fixture("wl.simple")]), 1);
    assert_eq!(code(&["check-hilbert", &fixture("identity.hilbert")]), 0);
    assert_eq!(code(&["check-hilbert", &fixture("identity.hilbert"), "--goal", "q -> q"]), 1);
}

#[test]
fn corpus_tsv() {
    let out = stdout(&["corpus", FIX]);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0], ["name", "verdict", "time_ms", "proof_size"]);
    let summary: Vec<(&str, &str)> = rows[1..].iter().map(|r| (r[0], r[1])).collect();
    assert_eq!(summary, [("separation:2", "proved"), ("separation:3", "proved"), ("separation:4", "refuted")]);
    assert_eq!(rows[3][3], "-");
}

/// `--json` output is compared byte for byte. `UPDATE_GOLDEN=1` rewrites.
#[test]
fn json_is_stable() {
    let cases: [(&str, Vec<String>); 6] = [
        ("parse_sequent", vec!["parse".into(), "p , (q ; r) |- p * q".into()]),
        ("prove_identity", vec!["prove".into(), "top |- p -> p".into()]),
        ("prove_ddagger", vec!["prove".into(), "top |- p & (p -> q) -> q".into()]),
        ("check_bad_proof", vec!["check-proof".into(), fixture("bad.proof")]),
        ("eliminate_meet_cut", vec!["eliminate-mix".into(), fixture("meet_cut.proof")]),
        ("algebras_2", vec!["enumerate-algebras".into(), "--max-size".into(), "2".into()]),
    ];
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, mut args) in cases {
        args.push("--json".into());
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = stdout(&args);
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(got, want, "{name}");
        assert_eq!(stdout(&args), got, "{name} is not deterministic");
    }
}
