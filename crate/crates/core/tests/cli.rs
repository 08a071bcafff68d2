use std::process::{Command, Output};

use serde_json::Value;

fn tilecoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn space() {
    let o = tilecoh(&["space", "tm:2,1"]);
    assert_eq!(o.status.code(), Some(0));
    // Repeated free summands print as one power.
    assert_eq!(stdout(&o).trim(), "H^0 = Z; H^1 = Z[1/3] + Z^2");
}

#[test]
fn quotient() {
    let o = tilecoh(&["quotient", "tm:1,1", "pd:1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "H^0_Q = 0; H^1_Q = Z_2");
}

#[test]
fn path() {
    let o = tilecoh(&["path", "chair:X,+", "ABAC"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "H^1_Q = Z^2; H^2_Q = Z_3 + Z[1/2]^4 + Z");
    let o = tilecoh(&["path", "tm:3,1", "phi"]);
    assert_eq!(stdout(&o).trim(), "H^1_Q = Z_2 + Z[1/2]");
}

#[test]
fn dump() {
    let o = tilecoh(&["dump", "sol:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("sol:2\n"), "{}", stdout(&o));
    let o = tilecoh(&["dump", "chair:0,0", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["space"], "chair:0,0");
}

#[test]
fn json_matches_text() {
    for args in [&["space", "chair:/,+"][..], &["quotient", "tm:3,1", "sol:4"], &["path", "chair:/,-", "AC"]] {
        let text = stdout(&tilecoh(args));
        let mut with_json = args.to_vec();
        with_json.push("--json");
        let v: Value = serde_json::from_str(&stdout(&tilecoh(&with_json))).unwrap();
        let from_json: Vec<String> =
            v["degrees"].as_array().unwrap().iter().map(|d| d["expr"].as_str().unwrap().to_string()).collect();
        let from_text: Vec<String> =
            text.trim().split("; ").map(|s| s.split_once(" = ").unwrap().1.to_string()).collect();
        assert_eq!(from_json, from_text, "{args:?}");
        assert!(v["runtime_ms"].is_u64());
        for d in v["degrees"].as_array().unwrap() {
            assert!(d["torsion"].is_array() && d["localizations"].is_array() && d["free_rank"].is_u64());
        }
    }
}

#[test]
fn verify_exit_codes() {
    let o = tilecoh(&["verify", "1d", "--grid", "1,1;2,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().contains("0 failed"));
    // The closed form for the Thue-Morse hull is not an abstract isomorphism here.
    let o = tilecoh(&["verify", "1d", "--grid", "1,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL space tm:1,4 [1]"), "{}", stdout(&o));
}

#[test]
fn verify_json() {
    let o = tilecoh(&["verify", "1d", "--grid", "2,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn usage_errors() {
    for (args, token) in [
        (&["space", "tm:1"][..], "tm:1"),
        (&["space", "chair:Y,+"], "chair:Y,+"),
        (&["quotient", "pd:1,1", "sol:7"], "sol:7"),
        (&["path", "chair:0,0", "A"], "A"),
        (&["path", "pd:1,1", "phi"], "phi"),
        (&["verify", "3d"], "3d"),
        (&["verify", "--grid", "1;2"], "1"),
        (&["space", "sol:2", "--collar", "thick"], "thick"),
    ] {
        let o = tilecoh(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(token), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(tilecoh(&[]).status.code(), Some(2));
    assert_eq!(tilecoh(&["--help"]).status.code(), Some(0));
    assert_eq!(tilecoh(&["--version"]).status.code(), Some(0));
}

#[test]
fn computation_errors() {
    let o = tilecoh(&["space", "tm:1,1", "--collar", "off"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("border"), "{}", stderr(&o));
}
