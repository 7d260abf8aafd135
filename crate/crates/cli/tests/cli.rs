use std::io::Write;
use std::process::{Command, Output};

fn orbitcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcat"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_doc(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("orbitcat-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn validate_fixtures() {
    for f in ["fixtures/j.json", "fixtures/c2.json"] {
        let o = orbitcat(&["validate", f]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn decompose_t() {
    let o = orbitcat(&["decompose", "fixtures/j.json", "--dset", "T"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("{a, x} label [1]"), "{s}");
    assert!(s.contains("{y} label [0]"), "{s}");
}

#[test]
fn pi0_json() {
    let o = orbitcat(&["pi0", "fixtures/j.json", "--dspace", "X", "--family", "free", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["values"]["[0]"], 1);
    assert_eq!(v["data"]["values"]["[1]"], 2);
}

#[test]
fn orbit_enumeration_counts() {
    let o = orbitcat(&["orbits", "enumerate", "fixtures/c2.json", "--category", "C2", "--max-size", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["orbits"].as_array().unwrap().len(), 2, "{v}");
}

#[test]
fn elmendorf_check_passes() {
    let o = orbitcat(&["elmendorf", "check", "fixtures/c2.json", "--category", "C2", "--family", "F"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(orbitcat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(orbitcat(&["validate", "fixtures/missing.json"]).status.code(), Some(1));
    assert_eq!(orbitcat(&["decompose", "fixtures/j.json", "--dset", "nope"]).status.code(), Some(1));
    assert_eq!(orbitcat(&["decompose", "fixtures/j.json", "--dset", "line"]).status.code(), Some(3));
    assert_eq!(
        orbitcat(&["cells", "build", "fixtures/j.json", "--script", "foreign", "--check-type", "free"]).status.code(),
        Some(4)
    );
    assert_eq!(
        orbitcat(&["elmendorf", "check", "fixtures/j.json", "--category", "J", "--family", "F", "--budget", "5"])
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn parse_errors_exit_2() {
    let bad = temp_doc("syntax", "{\"version\": \"orbitcat/1\",");
    assert_eq!(orbitcat(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    let wrong = temp_doc("version", "{\"version\": \"orbitcat/9\"}");
    assert_eq!(orbitcat(&["validate", wrong.to_str().unwrap()]).status.code(), Some(2));
}
