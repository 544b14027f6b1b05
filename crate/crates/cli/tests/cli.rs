use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use ybe_core::brace::{almost_trivial_brace, trivial_brace, z2n_brace};
use ybe_core::groups::{FiniteGroup, Perm};
use ybe_core::union::{enumerate_2reductive, AbelianUnion};
use ybe_core::FiniteSolution;

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).output().expect("binary runs")
}

fn ybe_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).env(key, val).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_projection() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", &FiniteSolution::projection(3).to_json());
    let out = ybe(&["verify", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["multipermutation_level"], serde_json::json!({"level": 1}));
    assert_eq!(r["two_reductive"], true);
}

#[test]
fn verify_z6_solution_is_irretractable() {
    let dir = TempDir::new().unwrap();
    let sol = z2n_brace(3).unwrap().associated_solution();
    let f = write(&dir, "z6.json", &sol.to_json());
    let out = ybe(&["verify", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["multipermutation_level"]["irretractable"]["size"], 6);
    assert_eq!(r["left_distributive"], true);
    assert_eq!(r["right_distributive"], false);
}

#[test]
fn verify_text_format() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", &FiniteSolution::projection(2).to_text());
    let out = ybe(&["verify", s(&f), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_violations() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"n":2,"sigma":[[0,1],[1,1]],"tau":[[0,1],[0,1]]}"#);
    let out = ybe(&["verify", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["violation"]["violation"], "not_permutation");
    assert_eq!(r["violation"]["row"], 1);

    let braid = write(&dir, "braid.json", r#"{"n":2,"sigma":[[1,0],[1,0]],"tau":[[0,1],[1,0]]}"#);
    assert_eq!(ybe(&["verify", s(&braid)]).status.code(), Some(1));

    let garbled = write(&dir, "garbled.json", r#"{"n":2,"sigma":[[0,1],"#);
    let out = ybe(&["verify", s(&garbled)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let unknown = write(&dir, "unknown.json", r#"{"x":1}"#);
    assert_eq!(ybe(&["verify", s(&unknown)]).status.code(), Some(2));
}

#[test]
fn verify_union_and_brace() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", r#"{"groups":[[2],[]],"C":[[0,0],[0,0]],"D":[[0,0],[1,0]]}"#);
    let out = ybe(&["verify", s(&u)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["injectivity_necessary_checks"]["order_ok"], false);

    let nongen = write(&dir, "ng.json", r#"{"groups":[[2]],"C":[[0]],"D":[[0]]}"#);
    assert_eq!(ybe(&["verify", s(&nongen)]).status.code(), Some(1));

    let z4 = FiniteGroup::cyclic(4).unwrap();
    let b = write(&dir, "b.json", &serde_json::to_string(&trivial_brace(&z4)).unwrap());
    let out = ybe(&["verify", s(&b)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kind"], "brace");
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().map(String::from).collect()
}

#[test]
fn enumerate_small() {
    let out = ybe(&["enumerate", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["count"], 1);

    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c3.jsonl");
    let out = ybe(&["enumerate", "3", "--out", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    let expected = enumerate_2reductive(3).unwrap();
    assert_eq!(summary["summary"]["count"], expected.len());
    let l = lines(&p);
    assert_eq!(l.len(), expected.len() + 1);
    for (line, u) in l.iter().zip(&expected) {
        let parsed: AbelianUnion = serde_json::from_str(line).unwrap();
        assert_eq!(&parsed, u);
    }
}

#[test]
fn enumerate_guards() {
    assert_eq!(ybe(&["enumerate", "0"]).status.code(), Some(2));
    assert_eq!(ybe(&["enumerate", "7"]).status.code(), Some(2));
    assert_eq!(ybe_env(&["enumerate", "3"], "YBE_ENUM_CAP", "2").status.code(), Some(2));
    assert_eq!(ybe_env(&["enumerate", "2"], "YBE_ENUM_CAP", "2").status.code(), Some(0));
    assert_eq!(ybe_env(&["enumerate", "2"], "YBE_ENUM_CAP", "two").status.code(), Some(2));
    assert_eq!(ybe(&["enumerate", "2", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_is_deterministic_across_jobs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert!(ybe(&["enumerate", "4", "--jobs", "1", "--out", s(&a)]).status.success());
    assert!(ybe(&["enumerate", "4", "--jobs", "3", "--out", s(&b)]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn census_entries_reverify() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c3.jsonl");
    assert!(ybe(&["enumerate", "3", "--out", s(&p)]).status.success());
    let l = lines(&p);
    for (k, line) in l[..l.len() - 1].iter().enumerate() {
        let f = write(&dir, &format!("u{k}.json"), line);
        let out = ybe(&["verify", s(&f)]);
        assert_eq!(out.status.code(), Some(0), "entry {k}");
        assert_eq!(json(&out)["two_reductive"], true);
    }
}

#[test]
fn classify_unions() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"groups":[[3]],"C":[[0]],"D":[[1]]}"#);
    let b = write(&dir, "b.json", r#"{"groups":[[3]],"C":[[1]],"D":[[0]]}"#);
    let out = ybe(&["classify", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["isomorphic"], false);

    let out = ybe(&["classify", s(&a), s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["witness"]["pi"], serde_json::json!([0]));
    assert_eq!(r["carrier_map"], serde_json::json!([0, 1, 2]));

    let p = write(&dir, "p.json", r#"{"groups":[[3]],"C":[[1]],"D":[[1]]}"#);
    let q = write(&dir, "q.json", r#"{"groups":[[3]],"C":[[2]],"D":[[2]]}"#);
    let out = ybe(&["classify", s(&p), s(&q)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness"]["psi"], serde_json::json!([[0, 2, 1]]));
}

#[test]
fn classify_scrambled_census_entry() {
    let dir = TempDir::new().unwrap();
    let u = enumerate_2reductive(4).unwrap().into_iter().find(|u| u.orbit_type() == "Z2+Z1+Z1").unwrap();
    let s1 = u.to_solution();
    let s2 = s1.relabel(&Perm::new(vec![3, 1, 0, 2]).unwrap()).unwrap();
    let a = write(&dir, "a.json", &s1.to_json());
    let b = write(&dir, "b.json", &s2.to_json());
    let out = ybe(&["classify", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let map: Vec<usize> = serde_json::from_value(r["carrier_map"].clone()).unwrap();
    assert!(s1.is_isomorphism(&s2, &map));

    let c = write(&dir, "c.json", &serde_json::to_string(&u).unwrap());
    assert_eq!(ybe(&["classify", s(&c), s(&b)]).status.code(), Some(0));
}

#[test]
fn classify_general_solutions() {
    let dir = TempDir::new().unwrap();
    let z6 = z2n_brace(3).unwrap().associated_solution();
    let moved = z6.relabel(&Perm::new(vec![1, 2, 3, 4, 5, 0]).unwrap()).unwrap();
    let a = write(&dir, "a.json", &z6.to_json());
    let b = write(&dir, "b.json", &moved.to_json());
    let out = ybe(&["classify", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["method"], "search");

    let proj = write(&dir, "p.json", &FiniteSolution::projection(6).to_json());
    assert_eq!(ybe(&["classify", s(&a), s(&proj)]).status.code(), Some(1));

    let big = z2n_brace(5).unwrap().associated_solution();
    let c = write(&dir, "c.json", &big.to_json());
    assert_eq!(ybe(&["classify", s(&c), s(&c)]).status.code(), Some(2));

    let brace = write(&dir, "br.json", &serde_json::to_string(&z2n_brace(3).unwrap()).unwrap());
    assert_eq!(ybe(&["classify", s(&brace), s(&a)]).status.code(), Some(2));
}

#[test]
fn brace_reports() {
    let dir = TempDir::new().unwrap();
    let z4 = write(&dir, "z4.json", &serde_json::to_string(&trivial_brace(&FiniteGroup::cyclic(4).unwrap())).unwrap());
    let out = ybe(&["brace", s(&z4)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["nilpotency"]["class"], 1);
    assert_eq!(r["biskew"], true);

    let z6 = write(&dir, "z6.json", &serde_json::to_string(&z2n_brace(3).unwrap()).unwrap());
    let sol = dir.path().join("z6sol.json");
    let out = ybe(&["brace", s(&z6), "--solution-out", s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["biskew"], true);
    assert_eq!(r["nilpotency"]["nilpotent"], false);
    assert_eq!(r["socle"], serde_json::json!([0]));
    assert_eq!(r["kernel_ideals"]["ker_rho"], serde_json::json!([0, 3]));
    assert_eq!(ybe(&["verify", s(&sol)]).status.code(), Some(0));

    let q8 = write(&dir, "q8.json", &serde_json::to_string(&almost_trivial_brace(&FiniteGroup::quaternion())).unwrap());
    let out = ybe(&["brace", s(&q8), "--report", "summary"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["nilpotency"]["class"], 2);
    assert!(r.get("reductivity_profile").is_none());
    let r = json(&ybe(&["brace", s(&q8)]));
    for key in ["red1", "red2", "red3", "red4"] {
        assert_eq!(r["reductivity_profile"][key], true, "{key}");
    }
}

#[test]
fn brace_violation() {
    let dir = TempDir::new().unwrap();
    // Z4 against a relabeled copy of Z4
    let bad = r#"{"n":4,"dot":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],"circle":[[0,1,2,3],[1,0,3,2],[2,3,1,0],[3,2,0,1]]}"#;
    let f = write(&dir, "bad.json", bad);
    let out = ybe(&["brace", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["violation"]["violation"], "brace_law");
    let sol = write(&dir, "sol.json", &FiniteSolution::projection(2).to_json());
    assert_eq!(ybe(&["brace", s(&sol)]).status.code(), Some(2));
}
