use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ambrep::dsl::{parse, render_item, Item};
use ambrep::laws::LawReport;
use ambrep::resolve::{load, ResolveOptions};

const SAMPLE: &str = include_str!("../../../docs/samples/basics.amb");

fn ambrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambrep"))
        .args(args)
        .env_remove("AMBREP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn sample(dir: &Path) -> String {
    write(dir, "basics.amb", SAMPLE).to_str().unwrap().to_owned()
}

#[test]
fn parse_prints_canonical_text() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let o = ambrep(&["parse", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(parse(&text).unwrap(), parse(SAMPLE).unwrap());
    let again = write(dir.path(), "again.amb", &text);
    assert_eq!(stdout(&ambrep(&["parse", again.to_str().unwrap()])), text);
}

#[test]
fn check_reports_every_object() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let o = ambrep(&["check", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("rep R : C3 => D4: valid, pseudo-invertible"), "{text}");
    assert!(text.contains("rep W : C3 => D4: valid, not pseudo-invertible"), "{text}");
    assert!(text.contains("poset V3: 3 elements, meet-semilattice with zero"), "{text}");
    assert!(text.contains("quantale Min: unit 1"), "{text}");
}

#[test]
fn dual_iterates_back_to_the_start() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let o = ambrep(&["dual", &f, "--object", "D4", "--iterate", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("poset ^D4 {"), "{text}");
    assert!(text.contains("poset ^^D4 {"), "{text}");
    assert!(text.ends_with("# after 2 step(s): isomorphic to D4: true\n"), "{text}");
    let doc = parse(&text).unwrap();
    assert_eq!(doc.items.len(), 2);
}

#[test]
fn pinv_twice_restores_a_pseudo_invertible_rep() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let once = ambrep(&["pinv", &f, "--rep", "R"]);
    assert_eq!(once.status.code(), Some(0), "{}", stderr(&once));
    let g = write(dir.path(), "once.amb", &stdout(&once));
    let twice = ambrep(&["pinv", g.to_str().unwrap(), "--rep", "^R"]);
    assert_eq!(twice.status.code(), Some(0), "{}", stderr(&twice));
    let back = parse(&stdout(&twice)).unwrap();
    let orig = parse(SAMPLE).unwrap();
    for name in ["C3", "D4", "R"] {
        let (a, b) = (back.get(name).unwrap(), orig.get(name).unwrap());
        assert_eq!(render_item(a), render_item(b), "{name}");
    }
}

#[test]
fn pinv_twice_trims_the_zero_row() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let g = write(dir.path(), "once.amb", &stdout(&ambrep(&["pinv", &f, "--rep", "W"])));
    let back = parse(&stdout(&ambrep(&["pinv", g.to_str().unwrap(), "--rep", "^W"]))).unwrap();
    let Some(Item::Rep(w)) = back.get("W") else { panic!("no rep W") };
    let pairs: Vec<(&str, &str)> = w.pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    assert_eq!(pairs, vec![("m", "a"), ("1", "a")]);
}

#[test]
fn fuzzy_pinv_emits_the_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let o = ambrep(&["pinv", &f, "--rep", "F"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("fuzzyrep ^F : ^D4 => ^C3 over L {"), "{text}");
    let (_, r) = load(&text, ResolveOptions::default()).unwrap();
    assert!(r.fuzzy["^F"].is_pseudo_invertible());
}

#[test]
fn compose_crisp_and_fuzzy() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(dir.path());
    let o = ambrep(&["compose", &f, "--reps", "R,Q"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "rep R.Q : C3 => V3 {\n  m |> a;\n  1 |> a;\n}\n");
    let o = ambrep(&["compose", &f, "--reps", "F,G", "--quantale", "Min"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "fuzzyrep F.G : C3 => V3 over L {\n  (m, a) = h;\n  (1, a) = 1;\n}\n");
    let o = ambrep(&["compose", &f, "--reps", "Q,R"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn laws_json_matches_the_schema() {
    let o = ambrep(&["laws", "--suite", "dual", "--seed", "3", "--cases", "20", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: LawReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((report.suite.as_str(), report.seed, report.cases), ("dual", 3, 20));
    assert!(report.laws.iter().all(|l| l.id.starts_with("LAW-DUAL") && l.failed == 0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["id", "passed", "failed", "witnesses"] {
        assert!(v["laws"][0].get(key).is_some(), "{key}");
    }
}

#[test]
fn laws_output_is_deterministic() {
    let args = ["laws", "--suite", "all", "--seed", "11", "--cases", "30"];
    let (a, b) = (ambrep(&args), ambrep(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_ambrep"))
        .args(["laws", "--suite", "all", "--cases", "30"])
        .env("AMBREP_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn mutated_pinv_is_caught_and_replayable() {
    let o = ambrep(&["laws", "--suite", "crisp", "--seed", "5", "--cases", "30", "--json", "--mutate-pinv"]);
    assert_eq!(o.status.code(), Some(1));
    let report: LawReport = serde_json::from_slice(&o.stdout).unwrap();
    let inv = report.law("LAW-INV").unwrap();
    assert!(inv.failed > 0);
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "witness.amb", &inv.witnesses[0].dsl);
    let w = w.to_str().unwrap();
    let replay = ambrep(&["check", w, "--law", "LAW-INV", "--mutate-pinv"]);
    assert_eq!(replay.status.code(), Some(1), "{}", stdout(&replay));
    let honest = ambrep(&["check", w, "--law", "LAW-INV"]);
    assert_eq!(honest.status.code(), Some(0), "{}", stderr(&honest));
}

#[test]
fn demos_match_the_golden_files() {
    let o = ambrep(&["demo", "segments"]);
    assert_eq!(stdout(&o), include_str!("../../../docs/demos/segments.txt"));
    let o = ambrep(&["demo", "duals"]);
    assert_eq!(stdout(&o), include_str!("../../../docs/demos/duals.txt"));
    let o = ambrep(&["demo", "segments", "--n", "12"]);
    assert!(stdout(&o).starts_with("Seg12: 91 segments"), "{}", stdout(&o));
    assert_eq!(ambrep(&["demo", "segments", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.amb");
    assert_eq!(ambrep(&["parse", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ambrep(&["laws", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ambrep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ambrep(&["--help"]).status.code(), Some(0));

    let unknown = write(dir.path(), "unknown.amb", "rep R : A => B { }");
    let o = ambrep(&["check", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:"), "{}", stderr(&o));

    let bad = "poset C2 { elements: 0 1; order: 0 < 1; }\nrep R : C2 => C2 { 1 |> 1; 0 |> 1; }\n";
    let bad = write(dir.path(), "bad.amb", bad);
    let bad = bad.to_str().unwrap();
    assert_eq!(ambrep(&["check", bad]).status.code(), Some(0));
    let o = ambrep(&["pinv", bad, "--rep", "R"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let lower = "poset C3 { elements: 0 m 1; order: 0 < m, m < 1; }\nrep R : C3 => C3 { 1 |> 1; }\n";
    let lower = write(dir.path(), "lower.amb", lower);
    let lower = lower.to_str().unwrap();
    let o = ambrep(&["check", lower]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stderr(&o).contains("2:1:"), "{}", stderr(&o));
    assert_eq!(ambrep(&["check", lower, "--normalize"]).status.code(), Some(0));
}
