use std::path::PathBuf;
use std::process::{Command, Output};

use hbch::hermitian::BoundReport;
use hbch::quantum::{PipelineReport, QuantumParams};
use hbch::{CosetListing, LinearCode};
use serde_json::Value;

fn hbch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbch")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hbch(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn round_trips<T>(text: &str)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let parsed: T = serde_json::from_str(text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
}

#[test]
fn cosets_of_91_under_64() {
    let out = stdout(&["cosets", "--n", "91", "--q", "8"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "0: {0}");
    assert_eq!(lines[2], "1: {1, 64}");
    assert_eq!(lines[4], "3: {3, 10}");
}

#[test]
fn cosets_edge_cases() {
    assert_eq!(stdout(&["cosets", "--n", "1", "--q", "2"]).lines().skip(1).collect::<Vec<_>>(), ["0: {0}"]);
    let text = stdout(&["cosets", "--n", "1023", "--q", "2", "--format", "json"]);
    round_trips::<CosetListing>(&text);
    let listing: CosetListing = serde_json::from_str(&text).unwrap();
    let mut all: Vec<u32> = listing.cosets.concat();
    all.sort_unstable();
    assert_eq!(all, (0..1023).collect::<Vec<_>>());
    assert_eq!(hbch(&["cosets", "--n", "10", "--q", "2"]).status.code(), Some(2));
    assert!(stdout(&["cosets", "--n", "15", "--q", "2", "--format", "csv"]).starts_with("representative,size,elements\n0,1,0\n1,2,1 4\n"));
}

#[test]
fn bound_table() {
    let row = |args: &[&str]| stdout(args).lines().nth(1).unwrap().to_string();
    assert!(row(&["bound", "--q", "2", "--s", "5", "--n1", "93"]).starts_with("2 5 93 3 10 10 "));
    assert!(row(&["bound", "--q", "5", "--s", "2", "--n1", "48"]).starts_with("5 2 48 3a0 7 7 "));
    assert!(row(&["bound", "--q", "8", "--s", "2", "--n1", "91"]).starts_with("8 2 91 - - 10 "));
    let json = stdout(&["bound", "--q", "4", "--s", "3", "--n1", "315", "--format", "json"]);
    round_trips::<BoundReport>(&json);
    assert_eq!(hbch(&["bound", "--q", "2", "--s", "5", "--n1", "94"]).status.code(), Some(2));
}

#[test]
fn construct_reference_codes() {
    let first = |args: &[&str]| stdout(args).lines().next().unwrap().to_string();
    assert_eq!(
        first(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "2", "--cosets", "1,2,3,5,6,7"]),
        "[[186,126,>=9]]_2"
    );
    assert_eq!(first(&["construct", "--q", "5", "--s", "2", "--n1", "48", "--lambda", "2", "--tau", "7"]), "[[96,68,>=8]]_5");
    assert_eq!(first(&["construct", "--q", "5", "--s", "2", "--n1", "48", "--lambda", "2", "--tau", "6"]), "[[96,72,>=7]]_5");
    assert_eq!(first(&["construct", "--q", "8", "--s", "2", "--n1", "91", "--tau", "9"]), "[[91,55,>=11]]_8");
}

#[test]
fn construct_lengthens_and_dumps() {
    let dump = scratch("binary.code");
    let out = stdout(&[
        "construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "2", "--tau", "6", "--lengthen", "3", "--dump",
        dump.to_str().unwrap(),
    ]);
    let tail: Vec<&str> = out.lines().rev().take(3).collect();
    assert_eq!(tail, ["[[189,126,>=9]]_2", "[[188,126,>=9]]_2", "[[187,126,>=9]]_2"]);
    let text = std::fs::read_to_string(&dump).unwrap();
    let field = std::sync::Arc::new(hbch::FieldCtx::new(2, 2, None).unwrap());
    let code = LinearCode::from_text(field, &text).unwrap();
    assert_eq!((code.len(), code.dim()), (186, 30));
}

#[test]
fn construct_json_round_trips() {
    let text = stdout(&["construct", "--q", "5", "--s", "2", "--n1", "48", "--lambda", "2", "--tau", "7", "--lengthen", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    round_trips::<PipelineReport>(&v["report"].to_string());
    let rows: Vec<QuantumParams> = serde_json::from_value(v["lengthened"].clone()).unwrap();
    assert_eq!(rows[0].to_string(), "[[97,68,>=8]]_5");
}

#[test]
fn construct_rejects_bad_input() {
    let code = |args: &[&str]| hbch(args).status.code();
    // λ·n₁ = 1023 divides 2^10 − 1
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "11", "--tau", "1"]), Some(2));
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "2", "--tau", "9"]), Some(2));
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "2"]), Some(2));
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--tau", "1", "--cosets", "1"]), Some(2));
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "3", "--tau", "1", "--zero"]), Some(2));
    assert_eq!(code(&["construct", "--q", "2", "--s", "5", "--n1", "93", "--lambda", "2", "--tau", "1", "--lengthen", "0"]), Some(2));
}

#[test]
fn examples_pass_on_the_bundled_table() {
    let out = stdout(&["examples"]);
    assert!(out.lines().count() >= 17);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    let json: Value = serde_json::from_str(&stdout(&["examples", "--json", "--seed", "7"])).unwrap();
    let list = json.as_array().unwrap();
    assert!(list.iter().all(|v| {
        v["claim"].is_string() && v["pass"] == Value::Bool(true) && v["detail"].is_string() && v.as_object().unwrap().len() == 3
    }));
}

#[test]
fn examples_fail_on_a_corrupted_table() {
    let bundled = include_str!("../../core/data/conway.txt");
    // x^10 + 1 is reducible over GF(2)
    let corrupted: String = bundled
        .lines()
        .map(|l| if l.starts_with("2 10 ") { "2 10 1 0 0 0 0 0 0 0 0 0 1".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let path = scratch("corrupted_conway.txt");
    std::fs::write(&path, corrupted).unwrap();
    let out = hbch(&["examples", "--conway", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL ")).collect();
    assert!(failing.iter().any(|l| l.starts_with("FAIL [[186,126,>=9]]_2: field construction failed")), "{text}");
    assert!(text.contains("PASS [[96,68,>=8]]_5"));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn scan_pinned_and_budget() {
    let out = stdout(&["scan", "--pinned"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("2 186 126 9 construction=homothetic q=2 s=5 n1=93 lambda=2 cosets=[1,2,3,5,6,7] zero=false"));
    assert!(lines[3].starts_with("8 91 55 11 construction=bch"));
    assert_eq!(stdout(&["scan", "--pinned", "--budget", "0"]), "");
    assert_eq!(hbch(&["scan", "--pinned", "--budget", "2"]).status.code(), Some(2));
    let json = stdout(&["scan", "--pinned", "--format", "json"]);
    round_trips::<Vec<QuantumParams>>(&json);
}

#[test]
fn scan_is_deterministic() {
    let args = ["scan", "--q", "2,3", "--s", "2,3", "--lambda-max", "4", "--tau-max", "4", "--zero"];
    let one = stdout(&[&args[..], &["--jobs", "1"]].concat());
    let four = stdout(&[&args[..], &["--jobs", "4"]].concat());
    assert!(!one.is_empty());
    assert_eq!(one, four);
    assert_eq!(one, stdout(&[&args[..], &["--jobs", "1"]].concat()));
}
