use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftcat")).args(args).output().expect("spawn shiftcat")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn numbers(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn golden_blocks_up_to_two() {
    let r = json(&["blocks", &data("golden.json"), "--bound", "2"]);
    assert_eq!(strings(&r["blocks"]), ["a", "b", "aa", "ab", "ba"]);
}

#[test]
fn even_blocks_exclude_odd_runs_between_a() {
    let blocks = strings(&json(&["blocks", &data("even.json"), "--bound", "3"])["blocks"]);
    assert!(!blocks.contains(&"aba".to_string()));
    assert!(blocks.contains(&"abb".to_string()));
    assert_eq!(blocks.len(), 2 + 4 + 7);
}

#[test]
fn empty_shift_exits_2() {
    let out = run(&["blocks", &data("empty.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn zeta_reports() {
    let g = json(&["zeta", &data("golden.json"), "--order", "5"]);
    assert_eq!(numbers(&g["coefficients"]), [1, 1, 2, 3, 5, 8]);
    let f = json(&["zeta", &data("fixedpoint.json"), "--order", "6"]);
    assert_eq!(numbers(&f["coefficients"]), [1; 7]);
    let full = json(&["zeta", &data("full2.json"), "--order", "3"]);
    let oracle: Vec<u64> = (0..4).map(|n| 1 << n).collect();
    assert_eq!(numbers(&full["coefficients"]), oracle);
}

#[test]
fn periodic_counts_and_orbits() {
    let r = json(&["periodic", &data("golden.json"), "--order", "6", "--bound", "3"]);
    assert_eq!(numbers(&r["p"]), [1, 3, 4, 7, 11, 18]);
    let orbits = [1, 1, 1, 1, 2, 2];
    let q: Vec<u64> = orbits.iter().enumerate().map(|(i, o)| (i as u64 + 1) * o).collect();
    assert_eq!(numbers(&r["q"]), q);
    assert_eq!(strings(&r["orbits"][2]["representatives"]), ["aab"]);
}

#[test]
fn periodic_ab_zero_minimal_class() {
    let r = json(&["karoubi", &data("periodic-ab.json")]);
    let z = &r["zero_minimal_ideals"][0];
    let got: Vec<u64> = ["r_classes", "l_classes", "h_classes", "idempotents"].iter().map(|k| z[k].as_u64().unwrap()).collect();
    assert_eq!(got, [2, 2, 4, 2]);
    assert_eq!(r["comparison"]["accept"]["verdict"], "Iso");
}

#[test]
fn trivial_semigroup_has_one_object() {
    let r = json(&["karoubi", &data("trivial.json")]);
    assert_eq!(r["census"]["objects"], 1);
    assert_eq!(r["census"]["arrows"], 1);
}

#[test]
fn karoubi_even_matches_archived_report() {
    let text = stdout(&["karoubi", &data("even.json")]);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/karoubi_even.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    assert_eq!(text, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["karoubi".to_string(), data("four-letter.json")],
        vec!["check".into(), "census-coherence".into(), "--seed".into(), "3".into()],
        vec!["flowcheck".into(), data("golden.json"), "--letter".into(), "a".into(), "--tests".into(), "2".into(), "--seed".into(), "5".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn lu_poset_dot_is_a_hasse_diagram() {
    let dot = stdout(&["lu-poset", &data("even.json"), "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 1);
    assert!(dot.contains("C2"));
}

#[test]
fn green_accepts_tables() {
    let r = json(&["green", &data("trivial.json")]);
    assert_eq!(r["size"], 1);
    assert_eq!(r["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn check_suites() {
    let r = json(&["check", "word-code-identities", "--seed", "7"]);
    assert_eq!(r["passed"], true);
    let n = json(&["check", "flow-naturality", "--seed", "7"]);
    assert_eq!(n["passed"], true);
    assert!(strings(&n["log"]).iter().all(|l| l.contains("[e:")));
    assert_eq!(code(&["check", "no-such-suite", "--seed", "1"]), 64);
    assert_eq!(code(&["check", "word-code-identities"]), 64);
}

#[test]
fn terms() {
    let four = data("four-letter.json");
    assert_eq!(json(&["member", &four, "(a)^w b (a)^w c (a)^w"])["closure"], true);
    assert_eq!(json(&["member", &four, "c (a)^w b (a)^w c (a)^w"])["closure"], false);
    let e = json(&["term", "eval", &data("even.json"), "(a)^w (b)^(w+1) (a)^w"]);
    assert_eq!(e["closure"], false);
    assert_eq!(e["idempotent"], true);
    let f = json(&["term", "factors", &data("golden.json"), "(ab)^w", "--bound", "2"]);
    assert_eq!(strings(&f["factors"]), ["a", "ab", "b", "ba"]);
    let c = stdout(&["term", "code", &data("second-letter.json"), "a (b)^w", "--format", "text"]);
    assert_eq!(c.trim(), "(b)^w");
}

#[test]
fn codes() {
    let xor = data("xor.json");
    assert_eq!(stdout(&["code", "apply", &xor, "--point", "01", "--format", "text"]).trim(), "1");
    assert_eq!(stdout(&["code", "apply", &xor, "--word", "0110", "--format", "text"]).trim(), "101");
    let c = json(&["code", "centralize", &xor]);
    assert_eq!((c["memory"].as_u64(), c["anticipation"].as_u64()), (Some(1), Some(1)));
    let comp = json(&["code", "compose", &xor, &xor]);
    assert_eq!(comp["window"], 5);
    // x0 ^ x2, with x0 at index 2 of the window x-2..x2
    for w in ["00000", "00100", "00101", "11011", "01000"] {
        let b: Vec<u8> = w.bytes().map(|c| c - b'0').collect();
        assert_eq!(comp["table"][w], (b[2] ^ b[4]).to_string(), "{w}");
    }
}

#[test]
fn recoding_preserves_zeta() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("image.json");
    std::fs::write(&image, stdout(&["code", "apply", &data("upsilon2.json"), "--shift", &data("golden.json")])).unwrap();
    let a = json(&["zeta", &data("golden.json"), "--order", "10"]);
    let b = json(&["zeta", image.to_str().unwrap(), "--order", "10"]);
    assert_eq!(a["coefficients"], b["coefficients"]);
}

#[test]
fn flow_commands() {
    let even = data("even.json");
    let x = json(&["expand", &even, "--letter", "a"]);
    assert!(strings(&x["alphabet"]).contains(&"o".to_string()));
    let t = json(&["classify", &even, "o (bb)^w a", "--letter", "a"]);
    assert_eq!(t["type"], "oE.alpha");
    let r = json(&["flowcheck", &even, "--letter", "a", "--tests", "2", "--seed", "1"]);
    assert_eq!(r["passed"], true);
    assert!(!r["arrows"].as_array().unwrap().is_empty());
    assert_eq!(code(&["expand", &even, "--letter", "a", "--diamond", "b"]), 65);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"sft\",\n  \"alphabet\": [\"a\"\n}\n").unwrap();
    let out = run(&["blocks", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(code(&["blocks", "/nonexistent/shift.json"]), 66);
    assert_eq!(code(&["zeta", &data("golden.json"), "--format", "dot"]), 64);
    assert_eq!(code(&["blocks"]), 64);
    assert_eq!(code(&["flowcheck", &data("even.json"), "--letter", "a", "--tests", "3"]), 64);
}
