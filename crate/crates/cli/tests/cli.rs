use std::path::PathBuf;
use std::process::{Command, Output};

fn maxarc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxarc")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("maxarc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn denniston_round_trip() {
    let path = tmp("d1.json");
    let p = path.to_str().unwrap();
    let o = maxarc(&["construct", "denniston", "--h", "5", "--subgroup", "0,1,w,w+1", "-o", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["schema"], "maxarc/1");
    assert_eq!(cert["points"].as_array().unwrap().len(), 100);
    let v = maxarc(&["verify", p]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("0:232 4:825"));
}

#[test]
fn mathon_exponent_arc_histogram() {
    let path = tmp("m.json");
    let p = path.to_str().unwrap();
    assert_eq!(maxarc(&["construct", "mathon-exp", "--h", "5", "--klm", "6,19,8", "-o", p]).status.code(), Some(0));
    let v = maxarc(&["--format", "json", "verify", p]);
    assert_eq!(v.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(r["stats"]["degree"], 8);
    assert!(stdout(&maxarc(&["verify", p])).contains("0:100 8:957"));
    assert_eq!(stdout(&maxarc(&["isomorphic", p, p])).trim(), "isomorphic");
}

#[test]
fn deleted_point_fails_with_witness() {
    let path = tmp("m2.json");
    let p = path.to_str().unwrap();
    maxarc(&["construct", "mathon-exp", "--h", "5", "--klm", "12,15,4", "-o", p]);
    let mut cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert["points"].as_array_mut().unwrap().pop();
    cert.as_object_mut().unwrap().remove("conics");
    let bad = tmp("bad.json");
    std::fs::write(&bad, cert.to_string()).unwrap();
    let v = maxarc(&["verify", bad.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&v.stderr).contains("line ["));
}

#[test]
fn point_list_input() {
    let path = tmp("d1.csv");
    let p = path.to_str().unwrap();
    let o = maxarc(&["--format", "csv", "construct", "denniston", "--h", "5", "--subgroup", "0,1,w,w+1", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(maxarc(&["verify", p, "--h", "5"]).status.code(), Some(0));
    assert_eq!(maxarc(&["verify", p]).status.code(), Some(2));
    let empty = tmp("empty.txt");
    std::fs::write(&empty, "# nothing\n").unwrap();
    assert_eq!(maxarc(&["verify", empty.to_str().unwrap(), "--h", "5"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(maxarc(&["construct", "denniston", "--h", "5", "--subgroup", "0,1,w"]).status.code(), Some(2));
    assert_eq!(maxarc(&["census", "mathon8", "--h", "2"]).status.code(), Some(2));
    assert_eq!(maxarc(&["census", "mathon8", "--h", "7"]).status.code(), Some(2));
    assert_eq!(maxarc(&["construct", "mathon-exp", "--h", "5", "--klm", "1,2"]).status.code(), Some(2));
}

#[test]
fn extend_and_dual() {
    let base = tmp("base.json");
    let b = base.to_str().unwrap();
    maxarc(&["construct", "denniston", "--h", "5", "--subgroup", "0,1,w,w+1", "-o", b]);
    let ext = tmp("ext.json");
    let o = maxarc(&["construct", "extend", "--cert", b, "--conic", "w^12,1,w^21", "-o", ext.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&maxarc(&["verify", ext.to_str().unwrap()])).contains("0:100 8:957"));
    let dual = tmp("dual.json");
    assert_eq!(maxarc(&["construct", "dual", "--cert", b, "-o", dual.to_str().unwrap()]).status.code(), Some(0));
    assert!(stdout(&maxarc(&["verify", dual.to_str().unwrap()])).contains("degree 8"));
}

#[test]
fn census_denniston4_q32() {
    let o = maxarc(&["--format", "json", "census", "denniston4", "--h", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["arcs"], 155);
    assert_eq!(r["classes"], 1);
}

#[test]
fn reproduce_pg32_is_green() {
    let o = maxarc(&["reproduce-pg32"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all values match"));
    let csv = maxarc(&["--format", "csv", "reproduce-pg32"]);
    assert!(stdout(&csv).starts_with("case,form,sigma,t1"));
}

#[test]
fn field_info_respects_relation() {
    let o = maxarc(&["field-info", "--h", "5", "--relation", "w^18+w+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generator w = 0x2"));
}
