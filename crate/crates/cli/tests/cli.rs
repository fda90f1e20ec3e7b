use std::path::PathBuf;
use std::process::{Command, Output};

use marks::document::PatternDocument;
use marks::tom::{compare_patterns, compare_tables, TableOfMarks};

fn marks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_marks"))
        .args(args)
        .env_remove("MARKS_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn marks_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_marks"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn read(path: &PathBuf) -> String {
    std::fs::read_to_string(path).unwrap()
}

/// Timings vary from run to run; everything else is deterministic.
fn without_millis(text: &str) -> String {
    text.lines()
        .map(|l| match l.strip_prefix("# stats ") {
            Some(rest) => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                format!("# stats {} millis 0", words[..words.len() - 2].join(" "))
            }
            None => l.to_string(),
        })
        .map(|l| l + "\n")
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("marks-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// A hand-transcribed triangle from the core fixtures: label, optional
/// color letter, then marks with "." for zero.
fn transcription(name: &str) -> TableOfMarks {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name);
    let rows = read(&path)
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .skip(1)
                .filter(|w| *w != "b" && *w != "r")
                .map(|w| if w == "." { 0 } else { w.parse().unwrap() })
                .collect()
        })
        .collect();
    TableOfMarks::from_rows(rows).unwrap()
}

#[test]
fn subgroup_listings() {
    let o = marks(&["subgroups", "S4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 11);
    assert_eq!(stdout(&marks(&["subgroups", "GL23"])).lines().count(), 16);
    let o = marks(&["subgroups", "--gens", "(1,2,3)", "3"]);
    let lines: Vec<Vec<String>> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    assert_eq!(lines, [["1", "1", "1", "3"], ["2", "3", "1", "3"]]);
    let o = marks(&["subgroups", "A5", "--via", "oracle"]);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(marks(&["subgroups", "M24"]).status.code(), Some(2));
    assert_eq!(marks(&["subgroups", "--gens", "(1,2", "3"]).status.code(), Some(2));
    assert_eq!(marks(&["tom", "A5"]).status.code(), Some(3));
    assert_eq!(marks(&["subgroups", "S5"]).status.code(), Some(3));
    assert_eq!(
        marks_env(&["tom", "A5", "--via", "oracle"], "MARKS_MAX_ORDER", "10")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        marks_env(&["tom", "A5", "--via", "oracle"], "MARKS_MAX_ORDER", "ten")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(marks(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn a5_text_matches_golden() {
    let o = marks(&["tom", "A5", "--via", "oracle", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(without_millis(&stdout(&o)), read(&golden("a5.txt")));
}

#[test]
fn s5_text_matches_golden() {
    let base = golden("a5.json");
    let o = marks(&["tom", "S5", "--via", "extension", "--base", base.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("# stats probes 0 max_probe 0"));
    assert_eq!(without_millis(&text), read(&golden("s5.txt")));
}

#[test]
fn golden_files_agree_with_the_transcriptions() {
    let a5 = PatternDocument::from_text(&read(&golden("a5.txt"))).unwrap();
    assert_eq!(a5.to_pattern().unwrap().table, transcription("a5_table.txt"));
    let s5 = PatternDocument::from_text(&read(&golden("s5.txt"))).unwrap();
    assert!(compare_tables(&transcription("s5_table.txt"), &s5.to_pattern().unwrap().table).matched());
    let json = PatternDocument::from_json(&read(&golden("a5.json"))).unwrap();
    assert_eq!(json, a5);
}

#[test]
fn gl23_extension_equals_oracle() {
    let ext = PatternDocument::from_json(&stdout(&marks(&["tom", "GL23", "--format", "json"]))).unwrap();
    let brute =
        PatternDocument::from_json(&stdout(&marks(&["tom", "GL23", "--via", "oracle", "--format", "json"]))).unwrap();
    assert_eq!(ext.marks.len(), 16);
    assert!(compare_patterns(&ext.to_pattern().unwrap(), &brute.to_pattern().unwrap()).matched());
}

#[test]
fn inconsistent_base_is_rejected() {
    let mut doc = PatternDocument::from_json(&read(&golden("a5.json"))).unwrap();
    doc.marks[5][1] += 2;
    let bad = temp_file("bad-a5.json", &doc.to_json());
    let o = marks(&["tom", "S5", "--base", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let s4 = temp_file("s4.json", &stdout(&marks(&["tom", "S4", "--format", "json"])));
    assert_eq!(
        marks(&["tom", "S5", "--base", s4.to_str().unwrap()]).status.code(),
        Some(4)
    );
}

#[test]
fn verify_reports() {
    let s5 = marks(&[
        "tom",
        "S5",
        "--base",
        golden("a5.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let good = temp_file("s5.json", &stdout(&s5));
    let o = marks(&["verify", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));

    let mut doc = PatternDocument::from_json(&stdout(&s5)).unwrap();
    let row = doc.marks.len() - 3;
    doc.marks[row][1] += 1;
    let bad = temp_file("s5-bad.json", &doc.to_json());
    let o = marks(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("congruence at U = class"), "{}", stdout(&o));

    let trivial = temp_file(
        "trivial.json",
        r#"{"group":"trivial","degree":1,"classes":[{"order":1,"length":1,"normalizer":1,"generators":[]}],"marks":[[1]],"stats":{"probes":0,"max_probe":0,"millis":0}}"#,
    );
    assert!(marks(&["verify", trivial.to_str().unwrap()]).status.success());
    let garbage = temp_file("garbage.json", "{ not json");
    assert_eq!(marks(&["verify", garbage.to_str().unwrap()]).status.code(), Some(2));
    let text = temp_file("a5.txt", &read(&golden("a5.txt")));
    assert!(marks(&["verify", text.to_str().unwrap()]).status.success());
}

#[test]
fn round_trips_through_both_formats() {
    let json = stdout(&marks(&["tom", "D12", "--format", "json"]));
    let text = stdout(&marks(&["tom", "D12", "--format", "text"]));
    let a = PatternDocument::from_json(&json).unwrap();
    let b = PatternDocument::from_text(&text).unwrap();
    assert_eq!(a.marks, b.marks);
    assert_eq!(a.classes, b.classes);
    assert_eq!(PatternDocument::from_json(&a.to_json()).unwrap(), a);
    assert_eq!(PatternDocument::from_text(&b.to_text()).unwrap(), b);
}

#[test]
fn bench_rows() {
    let o = marks(&["bench", "C2", "S5", "S6"]);
    assert!(o.status.success());
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(
        rows[0],
        ["group", "classes_in", "classes_out", "probes", "max_probe", "millis"]
    );
    assert_eq!(rows[1][..5], ["C2", "1", "2", "0", "0"]);
    assert_eq!(rows[2][..5], ["S5", "9", "19", "0", "0"]);
    assert_eq!(rows[3][..5], ["S6", "22", "56", "2", "4"]);
    assert_eq!(marks(&["bench", "M24"]).status.code(), Some(2));
}
