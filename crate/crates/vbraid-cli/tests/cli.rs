use std::process::{Command, Output};

fn vbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbraid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = vbraid(args);
    assert!(
        out.status.success(),
        "`vbraid {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn exit_code_of(args: &[&str]) -> i32 {
    vbraid(args).status.code().expect("exit code")
}

#[test]
fn golden_outputs() {
    assert_eq!(stdout_of(&["fpoly", "2 | s1"]), "1\n");
    assert_eq!(stdout_of(&["close", "2 | v1"]), "\n");
    assert_eq!(
        stdout_of(&["move", r#"{"move":"thread_right","eps":1}"#, "2 | s1"]),
        "3 | s1 s2 v1 s2'\n"
    );
    assert_eq!(stdout_of(&["perm", "3 | s1 s2"]), "3 1 2\n");
    assert_eq!(stdout_of(&["render", "2 | s1"]), "2 strands\nO u  s1\n");
}

#[test]
fn normalize_and_writhe() {
    assert_eq!(stdout_of(&["normalize", "2 | s1 s1' v1 v1 s1"]), "2 | s1\n");
    assert_eq!(stdout_of(&["parse", "3 | s2 v1"]), "3 | s2 v1\n");
    assert_eq!(stdout_of(&["writhe", "3 | s1 s2' v1"]), "0\n");
    assert_eq!(stdout_of(&["oddwrithe", "--code", "O1+,O2+,U1+,U2+"]), "2\n");
}

#[test]
fn moves_via_flags() {
    assert_eq!(
        stdout_of(&["lmove", "--p", "0", "--j", "1", "--flavor", "over", "3 | v2 s1"]),
        "4 | s1 v3 s2\n"
    );
    assert_eq!(
        stdout_of(&["stab", "--flavor", "real", "--eps", "-1", "2 | s1"]),
        "3 | s1 s2'\n"
    );
    assert_eq!(stdout_of(&["destab", "3 | s1 s2"]), "2 | s1\n");
    assert_eq!(
        stdout_of(&["thread-right", "--eps", "1", "2 | s1"]),
        "3 | s1 s2 v1 s2'\n"
    );
}

#[test]
fn gauss_move_record() {
    assert_eq!(
        stdout_of(&[
            "gmove",
            r#"{"move":"forbidden_over","comp":0,"pos":0}"#,
            "O1+,O2+,U1+,U2+",
        ]),
        "O1+,U1+,U2+,O2+\n"
    );
}

#[test]
fn morse_evaluation_and_braiding() {
    assert_eq!(stdout_of(&["eval-morse", "cup1 x1+ cap1"]), "O1-,U1-\n");
    assert_eq!(stdout_of(&["braid", "cup1 x1+ cap1"]), "2 | v1 s1' v1\n");
    // Braiding a diagram never changes its closure.
    assert_eq!(
        stdout_of(&["close", "2 | v1 s1' v1"]),
        stdout_of(&["eval-morse", "cup1 x1+ cap1"])
    );
}

#[test]
fn json_mode() {
    assert_eq!(stdout_of(&["--json", "fpoly", "2 | s1"]), "{\"0\":\"1\"}\n");
    assert_eq!(
        stdout_of(&["--json", "normalize", "2 | s1 s1' v1"]),
        "{\"strands\":2,\"word\":[\"v1\"]}\n"
    );
    let braid: serde_json::Value =
        serde_json::from_str(&stdout_of(&["--json", "braid", "cup1 cap1"])).unwrap();
    assert_eq!(braid["stats"]["crossingless"], 1);
    assert_eq!(braid["word"]["strands"], 1);
}

#[test]
fn equiv_verdicts() {
    let ok = vbraid(&["equiv", "2 | s1", "2 | v1 s1 v1 v1 v1"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&ok.stdout).expect("equiv prints json");
    assert_eq!(report["verdict"], "equivalent");

    let no = vbraid(&["equiv", "2 | s1", "2 | s1 s1"]);
    assert_eq!(no.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(report["verdict"], "not-found-within-budget");
    assert_eq!(report["distinguished_by_invariant"], "closure component count");
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code_of(&["parse", "2 | s9"]), 2);
    assert_eq!(exit_code_of(&["move", "{not json", "2 | s1"]), 2);
    assert_eq!(exit_code_of(&["destab", "2 | s1 v1"]), 3);
    assert_eq!(exit_code_of(&["lmove", "--p", "0", "--j", "3", "--flavor", "over", "3 | v2 s1"]), 3);
    assert_eq!(exit_code_of(&["bracket", "--max-crossings", "1", "2 | s1 s1"]), 5);
    assert_eq!(exit_code_of(&["no-such-command"]), 1);
    assert_eq!(exit_code_of(&["--help"]), 0);
}

#[test]
fn random_is_seeded() {
    let a = stdout_of(&["random", "--n", "3", "--len", "8", "--seed", "42"]);
    let b = stdout_of(&["random", "--n", "3", "--len", "8", "--seed", "42"]);
    assert_eq!(a, b);
    let c = stdout_of(&["random", "--n", "3", "--len", "8", "--seed", "43"]);
    assert_ne!(a, c);
}

#[test]
fn errors_go_to_stderr() {
    let out = vbraid(&["parse", "2 | s9"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}
