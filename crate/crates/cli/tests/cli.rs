use graypol::catalog::get_builtin;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("graypol").chain(args.iter().copied());
    let code = graypol_cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn critical_pairs_of_the_pseudomonoid() {
    let (code, out, _) = run(&["critical-pairs", "builtin:pseudomonoid", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["class"] == "critical"));
    let (_, out, _) = run(&["critical-pairs", "builtin:pseudomonoid", "--format", "json", "--include-symmetric"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn critical_pair_counts_in_text() {
    for (name, n) in [("pseudoadjunction", 2), ("frobenius", 19)] {
        let (code, out, _) = run(&["critical-pairs", &format!("builtin:{name}")]);
        assert_eq!(code, 0);
        assert!(out.starts_with(&format!("{n} critical branchings")), "{out}");
    }
}

#[test]
fn termination_outcomes() {
    let (code, out, _) = run(&["check-termination", "builtin:frobenius"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("refused"));
    let (code, out, _) = run(&["check-termination", "builtin:pseudomonoid", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tag"], "interpretation+intnorm");
    let (code, _, _) = run(&["check-termination", "builtin:pseudoadjunction", "--strategy", "interp"]);
    assert_eq!(code, 1);
}

#[test]
fn normalize_identity_and_redex() {
    let (code, out, _) = run(&["normalize", "builtin:pseudomonoid", "--cell", "id(a)"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("id(a)"));
    let (code, out, _) = run(&["normalize", "builtin:pseudomonoid", "--cell", "[.|mu|a];[.|mu|.]"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("[a|mu|.];[.|mu|.]"));
    let (code, out, _) = run(&["--max-steps", "0", "normalize", "builtin:pseudomonoid", "--cell", "[.|mu|a];[.|mu|.]"]);
    assert_eq!(code, 1);
    assert!(out.contains("no normal form"));
}

#[test]
fn report_verdicts() {
    let (code, out, _) = run(&["report", "builtin:pseudomonoid"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: coherent-by-squier"), "{out}");
    let (code, out, _) = run(&["report", "builtin:frobenius", "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["critical_count"], 19);
}

#[test]
fn complete_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("graypol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bare = dir.join("bare.gp");
    let mut p = get_builtin("pseudomonoid").unwrap().presentation;
    p.tiles.clear();
    std::fs::write(&bare, graypol::text::serialize_presentation(&p)).unwrap();
    let done = dir.join("done.gp");
    let (code, _, _) = run(&["complete", bare.to_str().unwrap(), "-o", done.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["report", done.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&done).unwrap();
    assert_eq!(graypol_cli::parse_presentation(&text).unwrap(), get_builtin("pseudomonoid").unwrap().presentation);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn shipped_files_match_the_builtins() {
    for name in graypol::catalog::list_builtins() {
        let path = format!("{}/../core/examples/{name}.gp", env!("CARGO_MANIFEST_DIR"));
        let p = graypol_cli::load_presentation(&path).unwrap();
        assert_eq!(p, get_builtin(name).unwrap().presentation, "{name}");
    }
}

#[test]
fn validate_and_render() {
    let (code, out, _) = run(&["validate", "builtin:selfduality"]);
    assert_eq!(code, 0);
    assert!(out.contains("positive: false"));
    let (code, out, _) = run(&["render", "builtin:pseudomonoid", "--cell", "[.|mu|a];[.|mu|.]", "--style", "tikz"]);
    assert_eq!(code, 0);
    assert!(out.contains("mu"));
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["critical-pairs", "builtin:nope"]).0, 2);
    assert_eq!(run(&["critical-pairs", "/nonexistent/file.gp"]).0, 2);
    assert_eq!(run(&["normalize", "builtin:pseudomonoid", "--cell", "[.|nu|.]"]).0, 2);
    assert_eq!(run(&["check-termination", "builtin:pseudomonoid", "--strategy", "magic"]).0, 2);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_graypol");
    let ok = Command::new(bin).args(["critical-pairs", "builtin:pseudomonoid"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let refused = Command::new(bin).args(["check-termination", "builtin:frobenius"]).output().unwrap();
    assert_eq!(refused.status.code(), Some(1));
    let bad = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
