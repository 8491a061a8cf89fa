use std::path::PathBuf;

use germlab::cli::run;
use germlab::dsl::{format_germ_file, parse_germ_file};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn germlab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("germlab".to_string()).chain(args.iter().map(|a| a.to_string()));
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn compare_reports_the_witness() {
    let f = data("order.germ");
    let (code, out, _) = germlab(&["compare", &f, "a", "b", "--horizon", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(out, "VERDICT kind=HOLDS_UPTO_LT witness=3 horizon=1000 lhs=a rhs=b\n");
    let (_, out, _) = germlab(&["compare", &f, "a", "b", "--mode", "auto"]);
    assert!(out.starts_with("VERDICT kind=CERTIFIED_LT witness=3 "), "{out}");
}

#[test]
fn table_germs_evaluate_exactly() {
    let (code, out, _) = germlab(&["eval", &data("order.germ"), "t", "--range", "2..6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "j,num,den\n2,1,3\n3,1,5\n4,1,12\n5,1,15\n6,1,18\n");
}

#[test]
fn classes_and_triage() {
    let f = data("order.germ");
    let (_, out, _) = germlab(&["class", &f, "a", "e"]);
    assert!(out.starts_with("CLASS kind=SAME_CLASS n=4 "), "{out}");
    let (_, out, _) = germlab(&["triage", &f, "a", "b", "--prefix", "100"]);
    assert!(out.starts_with("TRIAGE kind=ALL_FREE_ULTRAFILTERS cofinite_from=3 "), "{out}");
}

#[test]
fn nets_report_each_test() {
    let (code, out, _) = germlab(&["converge", &data("shrink.net"), "--horizon", "300"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict=FAILS"), "{out}");
    assert!(out.ends_with("OVERALL verdict=FAILS tests=1 horizon=300\n"), "{out}");
    let (_, out, _) = germlab(&["converge", &data("battery.net"), "--horizon", "300"]);
    assert!(out.contains("OVERALL verdict=CONVERGES"), "{out}");
}

#[test]
fn continuity_of_samples() {
    let (_, out, _) = germlab(&["continuity", &data("jump.csv")]);
    assert!(out.starts_with("CONTINUITY kind=DISCONTINUOUS"), "{out}");
    let (_, out, _) = germlab(&["continuity", &data("square.csv")]);
    assert!(out.starts_with("CONTINUITY kind=CONTINUOUS"), "{out}");
}

#[test]
fn exit_codes() {
    let f = data("order.germ");
    assert_eq!(germlab(&["validate", &f, "x", "--horizon", "100"]).0, 1);
    assert_eq!(germlab(&["eval", &f, "nope"]).0, 1);
    assert_eq!(germlab(&["eval", &data("missing.germ"), "a"]).0, 1);
    let (code, _, err) = germlab(&["eval", &data("bad.germ"), "a"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:19"), "{err}");
    assert_eq!(germlab(&["compare", &f]).0, 2);
}

#[test]
fn formatting_is_a_fixed_point() {
    let text = std::fs::read_to_string(data("order.germ")).unwrap();
    let once = format_germ_file(&parse_germ_file(&text).unwrap());
    let twice = format_germ_file(&parse_germ_file(&once).unwrap());
    assert_eq!(once, twice);
    let (_, out, _) = germlab(&["format", &data("order.germ")]);
    assert_eq!(out, once);
}
