use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patlang"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn setup(files: &[(&str, &str)]) -> TempDir {
    let dir = TempDir::new().unwrap();
    for (name, content) in files {
        fs::write(dir.path().join(name), content).unwrap();
    }
    dir
}

#[test]
fn match_prints_morphism() {
    let d = setup(&[("p.txt", "a a\n"), ("w.txt", "0 1 0 1\n")]);
    let o = run(d.path(), &["match", "--pattern", "p.txt", "--word", "w.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "yes\na = 0 1\n");
}

#[test]
fn match_without_witness_exits_one() {
    let d = setup(&[("p.txt", "a a\n"), ("w.txt", "0 1 1\n")]);
    let o = run(d.path(), &["match", "--pattern", "p.txt", "--word", "w.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no\n");
}

#[test]
fn match_factor_reports_position() {
    let d = setup(&[("p.txt", "x x\n"), ("w.txt", "0 1 1 0\n")]);
    let o = run(d.path(), &["match-factor", "--pattern", "p.txt", "--word", "w.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("yes\nword: 0 1 1 0\nfactor: 1 2\n"), "{out}");
}

#[test]
fn squarefree_grammar_has_no_square() {
    let d = setup(&[("g.cfg", "start S\nterminals 0 1\nS -> 0 1 0\n")]);
    let o = run(d.path(), &["cfg-square", "--cfg", "g.cfg"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no\n");
}

#[test]
fn square_found_in_grammar() {
    let d = setup(&[("g.cfg", "start S\nterminals a b\nS -> A A\nA -> a | b\n")]);
    let o = run(d.path(), &["cfg-square", "--cfg", "g.cfg"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out == "yes\nword: a a\n" || out == "yes\nword: b b\n", "{out}");
}

#[test]
fn tiny_config_cap_is_a_resource_failure() {
    let d = setup(&[("g.cfg", "start S\nterminals a b\nS -> A A\nA -> a | b\n")]);
    let o = run(d.path(), &["--max-configs", "1", "cfg-square", "--cfg", "g.cfg"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn infinite_grammar_square_search_is_a_domain_error() {
    let d = setup(&[("g.cfg", "start S\nterminals a\nS -> a S | a\n")]);
    let o = run(d.path(), &["cfg-square", "--cfg", "g.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn parse_errors_name_the_line() {
    let d = setup(&[("g.cfg", "start S\nterminals a\nS => a\n")]);
    let o = run(d.path(), &["cfg-square", "--cfg", "g.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    let d = setup(&[]);
    let o = run(d.path(), &["match", "--pattern", "nope.txt", "--word", "nope.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(d.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["match", "--pattern", "x"]).status.code(), Some(2));
    let o = run(d.path(), &["nfa-pattern", "--nfa", "m.nfa"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nfa_pattern_with_power_shorthand() {
    let nfa = "states 3\nalphabet a b\nstart 0\naccept 2\ntrans 0 a 1\ntrans 0 b 1\ntrans 1 a 2\n";
    let d = setup(&[("m.nfa", nfa), ("loop.nfa", "states 1\nalphabet a\nstart 0\naccept 0\ntrans 0 a 0\n")]);
    let o = run(d.path(), &["nfa-pattern", "--nfa", "m.nfa", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "yes\nword: a a\na = a\n");
    let o = run(d.path(), &["nfa-pattern", "--nfa", "loop.nfa", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(d.path(), &["nfa-pattern-factor", "--nfa", "loop.nfa", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn angluin_bundle_for_single_clause() {
    let d = setup(&[("f.cnf", "p cnf 1 1\n1 1 1 0\n")]);
    let o = run(d.path(), &["reduce-sat-angluin", "--cnf", "f.cnf", "--out", "b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("yes\nlength 34\n"), "{}", stdout(&o));
    for f in ["pattern.txt", "word.txt", "machine.dfa"] {
        assert!(d.path().join("b").join(f).exists());
    }
    let o = run(d.path(), &["match", "--pattern", "b/pattern.txt", "--word", "b/word.txt"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn kpower_reduction_needs_two_clauses() {
    let d = setup(&[("f.cnf", "p cnf 1 1\n1 1 1 0\n")]);
    let o = run(d.path(), &["reduce-sat-kpower", "--cnf", "f.cnf", "--out", "b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let d = setup(&[("f.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")]);
    let a = run(d.path(), &["reduce-sat-kpower", "--cnf", "f.cnf", "--out", "x"]);
    let _b = run(d.path(), &["reduce-sat-kpower", "--cnf", "f.cnf", "--out", "y"]);
    assert_eq!(a.status.code(), Some(0));
    for f in ["machine.dfa", "pattern.txt"] {
        let x = fs::read_to_string(d.path().join("x").join(f)).unwrap();
        let y = fs::read_to_string(d.path().join("y").join(f)).unwrap();
        assert_eq!(x, y);
    }
    let s1 = run(d.path(), &["gen-squarefree", "--min-len", "50"]);
    let s2 = run(d.path(), &["gen-squarefree", "--min-len", "50"]);
    assert_eq!(stdout(&s1), stdout(&s2));
}

#[test]
fn intersect_dfa_reports_common_word() {
    let even = "states 2\nalphabet a\nstart 0\naccept 0\ntrans 0 a 1\ntrans 1 a 0\n";
    let three = "states 3\nalphabet a\nstart 0\naccept 0\ntrans 0 a 1\ntrans 1 a 2\ntrans 2 a 0\n";
    let d = setup(&[("e.dfa", even), ("t.dfa", three)]);
    let o = run(d.path(), &["intersect-dfa", "--dfa", "e.dfa", "--dfa", "t.dfa"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "yes\nword: \n");
}
