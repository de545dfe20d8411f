use std::process::Command;

fn retract(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_retract"))
        .args(args)
        .output()
        .expect("retract binary runs")
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn analyze_e1_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "e1.txt", "ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1\n");
    let out = retract(&["analyze", "--json", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["r"], 1);
    assert_eq!(v["classification"]["tag"], "PureLaurent");
    assert_eq!(v["yVariables"], serde_json::json!(["x1*x2", "x2"]));

    let dest = dir.path().join("report.json");
    let out = retract(&["analyze", "--json", "--out", dest.to_str().unwrap(), &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&dest).unwrap(), retract(&["analyze", "--json", &f]).stdout);

    let text = retract(&["analyze", &f]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("classification: PureLaurent(r=1)"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "ring QQ[x1^±,x2]\nx1 -> x1\nx2 -> x2^-1\n");
    let out = retract(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt:3:10: negative exponent on polynomial variable x2"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_map_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u.txt", "ring QQ[x^±]\nx -> x + 1\n");
    assert_eq!(retract(&["check", &f]).status.code(), Some(1));
    assert_eq!(retract(&["analyze", &f]).status.code(), Some(1));
    assert_eq!(retract(&["check", "/nonexistent/problem.txt"]).status.code(), Some(2));
}

#[test]
fn gen_writes_checkable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("gen");
    let args = [
        "--threads", "2", "gen", "--n", "4", "--d", "2", "--r", "1", "--seed", "11",
        "--complexity", "2", "--count", "4", "--out-dir", out_dir.to_str().unwrap(),
    ];
    let out = retract(&args);
    assert_eq!(out.status.code(), Some(0));
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed.len(), 4);
    for path in &listed {
        assert_eq!(retract(&["check", path]).status.code(), Some(0), "{path}");
        let rep = retract(&["analyze", "--json", path]);
        let v: serde_json::Value = serde_json::from_slice(&rep.stdout).unwrap();
        assert_eq!(v["r"], 1);
    }
    let first = std::fs::read_to_string(&listed[0]).unwrap();
    let again = retract(&["gen", "--n", "4", "--d", "2", "--r", "1", "--seed", "11", "--complexity", "2"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), first);
}

#[test]
fn gen_over_prime_field() {
    let out = retract(&["gen", "--n", "3", "--d", "3", "--r", "2", "--seed", "5", "--domain", "GF(5)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ring GF(5)[x1^±,x2^±,x3^±]"), "{text}");
}

#[test]
fn selftest_single_criterion() {
    let out = retract(&["selftest", "--criterion", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS criterion 6"));
}
