use std::process::Command;

use munn::format::element_from_json_str;
use munn::words::Alphabet;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_munn"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn multiply_two_generators() {
    let (code, out, _) = run(&["element", "mul", "({e,x},x)", "({e,x},x)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "({e,x,xx},xx)");
}

#[test]
fn json_product_parses_back() {
    let (code, out, _) = run(&[
        "--format",
        "json",
        "element",
        "mul",
        "({e,x},x)",
        "({e,y},y)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"flavor":"FLA","point":"xy","set":["e","x","xy"]}"#
    );
    let m = element_from_json_str(out.trim(), &Alphabet::parse_list("x,y").unwrap()).unwrap();
    assert_eq!(m.weight(), 4);
}

#[test]
fn inverse_needs_free_inverse_monoid() {
    let (code, out, _) = run(&["--flavor", "fi", "element", "inverse", "({e,x,xy},xy)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "({e,y^-1,y^-1x^-1},y^-1x^-1)");
    let (code, _, err) = run(&["element", "inverse", "({e,x},x)"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn dot_output() {
    let (code, out, _) = run(&["--format", "dot", "element", "dot", "({e,x,y},y)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph munn {"));
    assert!(out.contains("\"e\" -> \"x\" [label=\"x\"];"));
    assert!(out.contains("\"y\" [peripheries=2];"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["element", "mul", "({e,xx},xx)"]).0, 1);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(
        run(&["--format", "dot", "element", "weight", "({e},e)"]).0,
        2
    );
    assert_eq!(run(&["--help"]).0, 0);
    let capped = run(&[
        "--max-nodes",
        "5",
        "congruence",
        "relate",
        "--pair",
        "({e,x},x);({e},e)",
        "({e},e)",
        "({e,y},y)",
    ]);
    assert_eq!(capped.0, 3, "{capped:?}");
}

#[test]
fn relate_finds_a_sequence() {
    let (code, out, _) = run(&[
        "congruence",
        "relate",
        "--pair",
        "({e,x,xx},xx);({e,x},x)",
        "({e,x,xx,xxx},xxx)",
        "({e,x},x)",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.is_empty());
}

#[test]
fn counterexample_is_refuted() {
    let (code, out, _) = run(&["counterexample", "--k", "6", "--max-h-weight", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("REFUTED"), "{out}");
}

#[test]
fn repeated_runs_agree() {
    let args = [
        "--format",
        "json",
        "finitary",
        "--condition",
        "R",
        "--a",
        "({e,x},x)",
        "--b",
        "({e,x,y},x)",
    ];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(run(&args), first);
}
