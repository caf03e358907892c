use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_combichannel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("combichannel-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Field `col` of the CSV row whose `name` column equals `method`.
fn field(csv: &str, method: &str, col: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == col).unwrap();
    let row =
        lines.find(|l| l.split(',').nth(1) == Some(method)).unwrap_or_else(|| panic!("no {method} row in\n{csv}"));
    row.split(',').nth(idx).unwrap().to_owned()
}

#[test]
fn fig1_lp_and_code() {
    let o = run(&["bounds", "--gen", "fig1", "--methods", "lp,ilp,mdu,mdl"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert_eq!(field(&csv, "lp", "exact"), "2");
    assert_eq!(field(&csv, "ilp", "exact"), "2");
    assert_eq!(field(&csv, "ilp", "params"), "proved=true");
    assert_eq!(field(&csv, "mdu", "exact"), "3");
    assert_eq!(field(&csv, "lp", "direction"), "upper-on-p");
}

#[test]
fn second_iterate_sits_between_lp_and_closed_form() {
    let o = run(&["bounds", "--gen", "deletion:8", "--methods", "lp,ldu:2"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let lp: u64 = field(&csv, "lp", "floor").parse().unwrap();
    let ldu2: u64 = field(&csv, "ldu:2", "floor").parse().unwrap();
    assert_eq!(lp, 30);
    assert!(lp <= ldu2 && ldu2 <= 35, "ldu:2 floor {ldu2}");
    assert_eq!(field(&csv, "ldu:2", "iterations"), "2");
}

#[test]
fn grain_first_iterate_dominates_lp() {
    let csv = stdout(&run(&["bounds", "--gen", "grain:6", "--methods", "lp,ldu:1"]));
    let lp: u64 = field(&csv, "lp", "floor").parse().unwrap();
    let ldu: u64 = field(&csv, "ldu:1", "floor").parse().unwrap();
    assert_eq!(lp, 17);
    assert!(ldu >= lp);
}

#[test]
fn deletion_table_rows() {
    let o = run(&["deletion-table", "--n-min", "5", "--n-max", "9", "--pstar-cap", "7"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,vt0,p_star,thm1,fvy,kk,thm2");
    assert_eq!(lines[1], "5,6,6,7,7,7,12");
    assert_eq!(lines[3], "7,16,17,20,20,21,25");
    assert_eq!(lines[5], "9,52,—,61,61,63,69");
}

#[test]
fn deletion_table_to_file() {
    let dir = scratch("table");
    let path = dir.join("t.csv");
    let o = run(&["deletion-table", "--n-min", "20", "--n-max", "20", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "20,49940,—,52719,53202,55188,53348");
}

#[test]
fn binary_family_has_no_gain() {
    let csv = stdout(&run(&["family", "--q", "2", "--n", "9"]));
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[3], f[5], "hamming vs optimized in {line}");
        assert_eq!(f[6], f[8]);
    }
}

#[test]
fn family_rejects_bad_alphabet() {
    let o = run(&["family", "--q", "1", "--n", "5"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn grain_cover_certificate_verifies_and_tampering_is_caught() {
    let dir = scratch("cert");
    let cert = dir.join("thm4.json");
    assert!(run(&["cover", "--kind", "thm4", "--n", "10", "--out", cert.to_str().unwrap()]).status.success());
    let ok = run(&["verify", "--gen", "grain:10", "--certificate", cert.to_str().unwrap()]);
    assert!(ok.status.success());
    assert!(stdout(&ok).starts_with("pass: Cover"));

    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let values = json["values"].as_array_mut().unwrap();
    let den = values[0][1].as_i64().unwrap();
    values[0][1] = (den * 2).into();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, json.to_string()).unwrap();
    let o = run(&["verify", "--gen", "grain:10", "--certificate", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("fail: "), "{text}");
    assert!(text.contains("input"), "{text}");
}

#[test]
fn all_ones_cover_passes() {
    let dir = scratch("ones");
    let path = dir.join("ones.json");
    let values: Vec<serde_json::Value> = (0..3).map(|_| serde_json::json!([1, 1])).collect();
    let cert = serde_json::json!({"kind": "cover", "side": "output", "values": values, "value": [3, 1]});
    std::fs::write(&path, cert.to_string()).unwrap();
    let o = run(&["verify", "--gen", "fig1", "--certificate", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn emitted_certificates_land_in_json() {
    let dir = scratch("json");
    let path = dir.join("b.json");
    let o = run(&[
        "bounds",
        "--gen",
        "fig1",
        "--methods",
        "lp,dsu",
        "--emit-certificates",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["channel"] == "fig1" && r["certificate"].is_object()));
}

#[test]
fn gen_round_trips_through_channel_files() {
    let dir = scratch("gen");
    let ch = dir.join("e.txt");
    assert!(run(&["gen", "erasure-sub:3:3:1:0", "--out", ch.to_str().unwrap()]).status.success());
    let from_file = stdout(&run(&["bounds", "--channel", ch.to_str().unwrap(), "--methods", "lp,mdu,mdl"]));
    let from_gen = stdout(&run(&["bounds", "--gen", "erasure-sub:3:3:1:0", "--methods", "lp,mdu,mdl"]));
    let strip = |s: &str| s.lines().skip(1).map(|l| l.split_once(',').unwrap().1.to_owned()).collect::<Vec<_>>();
    assert_eq!(strip(&from_file), strip(&from_gen));
    assert_eq!(field(&from_gen, "lp", "exact"), "9");
}

#[test]
fn output_is_deterministic() {
    let args = ["bounds", "--gen", "random:9:8:0.4", "--seed", "5", "--methods", "lp,ldu:fix,dsu,dsl,caro-wei,turan"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run(&["bounds", "--gen", "fig1", "--methods", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--methods", "lp"]).status.code(), Some(2));
    let o = run(&["bounds", "--gen", "deletion:0", "--methods", "lp"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", "--gen", "fig1", "--certificate", "/nonexistent/cert.json"]);
    assert_eq!(o.status.code(), Some(1));
}
