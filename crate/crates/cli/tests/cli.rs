use parityhom::graph::{cycle, is_isomorphic, parse_graph6};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parityhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn lift_of_five_cycle_is_ten_cycle() {
    let dir = TempDir::new().unwrap();
    let c5 = file(&dir, "c5.g6", "Dhc\n");
    let prefix = dir.path().join("lift");
    let o = run(&["construct", "gu", "--g", s(&c5), "--u", "0", "--out-prefix", s(&prefix)]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_graph6(&stdout(&o)).unwrap();
    assert!(is_isomorphic(&g, &cycle(10).unwrap()).is_some());
    let labels: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(prefix.with_extension("json")).unwrap()).unwrap();
    assert_eq!(labels["vertices"].as_array().unwrap().len(), 10);
}

#[test]
fn odd_star_lift_has_isolated_vertex() {
    let o = run(&["construct", "star-simple", "--d", "3", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_graph6(&stdout(&o)).unwrap();
    assert!((0..g.n()).any(|v| g.degree(v) == 0));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.g6");
    assert_eq!(run(&["construct", "gu", "--g", s(&missing)]).status.code(), Some(2));
    let bad = file(&dir, "bad.g6", "Bw!\n");
    assert_eq!(run(&["hom", s(&bad), s(&bad)]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "zero-iso", "--nmax", "3", "--workers", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn guard_refusal_exits_3() {
    assert_eq!(run(&["enumerate", "--nmax", "9"]).status.code(), Some(3));
}

#[test]
fn certificates_round_trip_and_tampering_fails() {
    let dir = TempDir::new().unwrap();
    let c7 = file(&dir, "c7.txt", "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n0 6\n");
    let c5 = file(&dir, "c5.g6", "Dhc\n");
    let cert = dir.path().join("cert.json");
    let o = run(&["oddo", "find", s(&c7), s(&c5), "--weak", "--out", s(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["oddo", "verify", s(&cert)]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "pass"));

    let o = run(&["cycles", "extract", s(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    let cyc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cyc["cycle"].as_array().unwrap().len(), 7);

    let mut data: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    data["psi"][0] = serde_json::json!(2);
    let tampered = file(&dir, "bad.json", &data.to_string());
    let o = run(&["oddo", "verify", s(&tampered)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fail"));

    let c4 = file(&dir, "c4.g6", "Cr\n");
    let o = run(&["oddo", "find", s(&c4), s(&c5), "--weak"]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn suites_pass_and_reports_are_reproducible() {
    assert_eq!(run(&["verify", "zero-iso", "--nmax", "5"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "main-dual", "--gmax", "5", "--fmax", "5"])
            .status
            .code(),
        Some(0)
    );
    let a = run(&["verify", "winding", "--count", "8", "--seed", "7"]);
    let b = run(&["verify", "winding", "--count", "8", "--seed", "7", "--workers", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn probe_and_indist() {
    let dir = TempDir::new().unwrap();
    let c5 = file(&dir, "c5.g6", "Dhc\n");
    let o = run(&["families", "probe", "--g", s(&c5), "--family", "forests", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);

    let p4 = file(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let k3k1 = file(&dir, "k3k1.txt", "4 3\n0 1\n0 2\n1 2\n");
    let o = run(&["families", "indist", s(&p4), s(&k3k1), "--family", "all", "--nmax", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "distinguished");
    assert_eq!(v["counterexample"]["hom_h"], "10");
    assert_eq!(v["counterexample"]["hom_h_prime"], "12");
}

#[test]
fn homvec_and_enumerate() {
    let dir = TempDir::new().unwrap();
    let c5 = file(&dir, "c5.g6", "Dhc\n");
    let o = run(&["homvec", s(&c5), "--len", "5"]);
    assert_eq!(stdout(&o).trim(), r#"["0","30","10"]"#);
    let o = run(&["enumerate", "--nmax", "4", "--connected"]);
    assert_eq!(stdout(&o).lines().count(), 10);
}
