mod common;

use std::io::Cursor;
use std::process::Command;

use common::{LEFT_TREFOIL, TREFOIL, VIRTUAL_TREFOIL};
use serde_json::Value;
use vknot::cli::run;
use vknot::cli::table::{tabulate, Invariant, TableOptions};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn cli_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("vknot").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn cli(args: &[&str]) -> Outcome {
    cli_with_stdin(args, "")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("vknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn jsonl(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn trefoil_f() {
    let o = cli(&["invariant", "f", TREFOIL]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out, "A^-4 + A^-12 - A^-16\n");
}

#[test]
fn left_trefoil_v3() {
    let o = cli(&["invariant", "v3", LEFT_TREFOIL]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out, "-1\n");
}

#[test]
fn missing_under_is_a_domain_error() {
    let o = cli(&["parse", "(o1+)(o1+)"]);
    assert_eq!(o.code, 1);
    assert!(o.out.is_empty());
    assert!(o.err.contains("no undercrossing"), "{}", o.err);
    assert!(o.err.contains("label 1"), "{}", o.err);
}

#[test]
fn bad_token_is_named() {
    let o = cli(&["parse", "(o1+)(x1+)"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains('x'), "{}", o.err);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["invariant", "alexander", TREFOIL]).code, 2);
    assert_eq!(cli(&["--format", "csv", "invariant", "f", TREFOIL]).code, 2);
    assert_eq!(cli(&["table", "-", "--invariants", "f,nope"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_vknot");
    let ok = Command::new(bin).args(["invariant", "f", TREFOIL]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "A^-4 + A^-12 - A^-16\n");
    let bad = Command::new(bin).args(["parse", "(o1+)(o1+)"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).args(["nonsense"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn bracket_json_fields() {
    let o = cli(&["--format", "json", "invariant", "bracket", TREFOIL]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(o.out.trim()).unwrap();
    assert_eq!(v["input"], TREFOIL);
    assert_eq!(v["writhe"], 3);
    assert_eq!(v["bracket"], "-A^5 - A^-3 + A^-7");
    assert_eq!(v["f"], "A^-4 + A^-12 - A^-16");
    assert!(v["jones"].is_string());
}

#[test]
fn stdin_dash() {
    let o = cli_with_stdin(&["invariant", "f", "-"], &format!("{TREFOIL}\n"));
    assert_eq!(o.out, "A^-4 + A^-12 - A^-16\n");
    let p = cli_with_stdin(&["parse", "-"], "X[1,5,2,4] X[5,1,6,8] X[3,6,4,7] X[7,2,8,3]");
    assert_eq!(p.code, 0, "{}", p.err);
}

#[test]
fn crossing_guard() {
    let o = cli(&["--max-crossings", "2", "invariant", "f", TREFOIL]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("limit"), "{}", o.err);
}

#[test]
fn gpoly_and_quaternionic_json() {
    let o = cli(&["--format", "json", "invariant", "gpoly", VIRTUAL_TREFOIL]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(o.out.trim()).unwrap();
    assert!(v["determinant"].is_string() && v["G"].is_string());
    assert_ne!(v["G"], "0");
    let q = cli(&["--format", "json", "invariant", "quaternionic", VIRTUAL_TREFOIL]);
    assert_eq!(q.code, 0, "{}", q.err);
    let v: Value = serde_json::from_str(q.out.trim()).unwrap();
    for k in ["raw_determinant", "determinant", "codim1_gcd"] {
        assert!(v[k].is_string(), "{k}");
    }
}

#[test]
fn v3_from_config_file() {
    let builtin = cli(&["invariant", "v3", TREFOIL]).out;
    let path = temp_file("configs.txt", "# one chord, signed\no1+ u1+ @ 1\n");
    let o = cli(&["invariant", "v3", TREFOIL, "--configs", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out, "3\n");
    assert_eq!(builtin, "1\n");
}

#[test]
fn moves_are_seeded() {
    let a = cli(&["--seed", "7", "moves", "shuffle", TREFOIL]);
    let b = cli(&["--seed", "7", "moves", "shuffle", TREFOIL]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let s = cli(&["moves", "simplify", a.out.trim()]);
    assert_eq!(s.code, 0);
    let f_before = cli(&["invariant", "f", TREFOIL]).out;
    assert_eq!(cli(&["invariant", "f", a.out.trim()]).out, f_before);
    assert_eq!(cli(&["invariant", "f", s.out.trim()]).out, f_before);
}

#[test]
fn tl_commands() {
    assert_eq!(cli(&["tl", "mult", "1-2,1'-2'", "1-2,1'-2'"]).out, "1-2,1'-2' loops=1\n");
    assert_eq!(cli(&["tl", "factor", "1-1',2-2',3-3'"]).out, "1\n");
    assert_eq!(cli(&["tl", "enum", "4"]).out.lines().count(), 14);
    let bad = cli(&["tl", "mult", "1-2,1'-2'", "1-2"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn virt_construct_has_trivial_f() {
    let o = cli(&["--format", "json", "virt", "construct", TREFOIL]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(o.out.trim()).unwrap();
    let code = v["gauss_code"].as_str().unwrap();
    assert!(!v["subset"].as_array().unwrap().is_empty());
    assert_eq!(cli(&["invariant", "f", code]).out, "1\n");
    assert_ne!(cli(&["invariant", "gpoly", code]).out, "0\n");
}

#[test]
fn table_three_rows() {
    let path = temp_file("three.txt", &format!("()\n{TREFOIL}\n{VIRTUAL_TREFOIL}\n"));
    let o = cli(&["table", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let rows = jsonl(&o.out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["f"], "1");
    assert_eq!(rows[1]["bracket"], "-A^5 - A^-3 + A^-7");
    assert_eq!(rows[1]["f"], "A^-4 + A^-12 - A^-16");
    assert_eq!(rows[1]["writhe"], 3);
    assert_eq!(rows[2]["input"], VIRTUAL_TREFOIL);
    assert!(rows.iter().all(|r| r.get("error").is_none()));
}

#[test]
fn table_empty_input() {
    let path = temp_file("empty.txt", "");
    for fmt in ["jsonl", "csv"] {
        let o = cli(&["--format", fmt, "table", path.to_str().unwrap()]);
        assert_eq!(o.code, 0);
        assert!(o.out.is_empty());
    }
}

#[test]
fn table_malformed_row() {
    let path = temp_file("bad.txt", &format!("{TREFOIL}\n(o1+)(o1+)\n{VIRTUAL_TREFOIL}\n"));
    let o = cli(&["table", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let rows = jsonl(&o.out);
    assert_eq!(rows.len(), 3);
    let errors: Vec<&Value> = rows.iter().filter(|r| r.get("error").is_some()).collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0]["line"], 2);
    assert!(errors[0]["error"].as_str().unwrap().contains("undercrossing"));
}

#[test]
fn table_unreadable_path() {
    let o = cli(&["table", "/nonexistent/vknot/input.txt"]);
    assert_eq!(o.code, 1);
}

#[test]
fn table_fields_present_iff_requested() {
    let o = cli_with_stdin(&["table", "-", "--invariants", "f,v3"], &format!("{TREFOIL}\n"));
    let rows = jsonl(&o.out);
    let keys: Vec<&str> = rows[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, ["f", "input", "line", "v3"]);
}

#[test]
fn table_failed_invariant_is_null() {
    let o = cli_with_stdin(&["--max-crossings", "2", "table", "-", "--invariants", "f,writhe"], &format!("{TREFOIL}\n"));
    let rows = jsonl(&o.out);
    assert!(rows[0]["f"].is_null());
    assert_eq!(rows[0]["writhe"], 3);
    assert!(rows[0]["errors"]["f"].as_str().unwrap().contains("limit"));
}

#[test]
fn table_csv_columns() {
    let o = cli_with_stdin(&["--format", "csv", "table", "-"], &format!("{TREFOIL}\n(o1+)(o1+)\n"));
    let lines: Vec<&str> = o.out.lines().collect();
    assert_eq!(lines[0], "line,input,status,writhe,bracket,f,jones,v3,G,quaternionic,error");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with(&format!("1,{TREFOIL},ok,3,-A^5 - A^-3 + A^-7,A^-4 + A^-12 - A^-16,")));
    assert!(lines[2].starts_with("2,(o1+)(o1+),error,"));
}

#[test]
fn table_output_is_byte_identical() {
    let mut text = String::new();
    for code in common::mixed_corpus() {
        text.push_str(&code.to_gauss());
        text.push('\n');
    }
    text.push_str("garbage\n");
    let path = temp_file("corpus.txt", &text);
    for fmt in ["jsonl", "csv"] {
        let a = cli(&["--format", fmt, "table", path.to_str().unwrap()]);
        let b = cli(&["--format", fmt, "table", path.to_str().unwrap()]);
        assert_eq!(a.code, 0);
        assert_eq!(a.out, b.out);
    }
}

#[test]
fn table_matches_library() {
    let text = format!("{TREFOIL}\n{LEFT_TREFOIL}\n");
    let opts = TableOptions { invariants: vec![Invariant::F, Invariant::V3], ..TableOptions::default() };
    let recs = tabulate(&text, &opts);
    for r in &recs {
        let d = vknot::diagram::parse_gauss(&r.input).unwrap();
        assert_eq!(r.f.clone().unwrap().unwrap(), vknot::bracket::f_poly(&d).unwrap().render());
        assert_eq!(r.v3.clone().unwrap().unwrap(), vknot::vassiliev::v3(&d).unwrap().to_string());
    }
}

#[test]
fn table_writes_file() {
    let input = temp_file("in.txt", &format!("{TREFOIL}\n"));
    let out = input.with_file_name("out.jsonl");
    let o = cli(&["table", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.out.is_empty());
    assert_eq!(jsonl(&std::fs::read_to_string(out).unwrap()).len(), 1);
}

#[test]
fn thistle_generate_jsonl() {
    let o = cli(&["thistle", "generate", "-k", "1", "--out", "jsonl"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let rows = jsonl(&o.out);
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!(r["index"], 1);
    assert_eq!(r["f"], "-A^2 - A^-2");
    let code = r["gauss_code"].as_str().unwrap();
    let d = vknot::diagram::parse_gauss(code).unwrap();
    assert_eq!(r["crossings"], d.num_crossings());
    assert!(r.get("G").is_some());
    let over = cli(&["thistle", "generate", "-k", "4"]);
    assert_eq!(over.code, 1);
}
