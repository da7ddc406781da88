use std::process::{Command, Output};

fn twosilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twosilt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn explore_prints_the_verdict() {
    let o = twosilt(&["explore", "--example", "a2-path"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Finite, 5 nodes, 5 edges"), "{}", stdout(&o));
}

#[test]
fn partial_exploration_exits_with_budget_code() {
    let o = twosilt(&["explore", "--example", "sym-local", "--budget", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("BudgetExhausted, 8 nodes"));
}

#[test]
fn report_json_is_byte_deterministic() {
    let a = twosilt(&["report", "--example", "a3-rel", "--json"]);
    let b = twosilt(&["report", "--example", "a3-rel", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["nodes"], 12);
}

#[test]
fn artifacts_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("a3");
    let prefix = prefix.to_str().unwrap();
    for cmd in ["explore", "delta", "fan"] {
        let o = twosilt(&[cmd, "--example", "a3-rel", "--out", prefix]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
    for suffix in ["graph.json", "hasse.dot", "delta.json", "dual.dot", "fan.json", "fan.off"] {
        assert!(dir.path().join(format!("a3.{suffix}")).exists(), "{suffix}");
    }
    let off = std::fs::read_to_string(dir.path().join("a3.fan.off")).unwrap();
    assert!(off.starts_with("OFF\n8 12 0"));
}

#[test]
fn spec_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3-linear.json");
    std::fs::write(
        &path,
        r#"{"vertices": ["1", "2", "3"], "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "3"}]}"#,
    )
    .unwrap();
    let o = twosilt(&["explore", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Finite, 14 nodes"), "{}", stdout(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(twosilt(&["explore"]).status.code(), Some(2));
    assert_eq!(twosilt(&["explore", "--example", "nope"]).status.code(), Some(2));
    assert_eq!(twosilt(&["frobnicate"]).status.code(), Some(2));
}
