use std::io::Write;
use std::path::PathBuf;
use std::process::Command as Process;

use redop_cli::report::Report;
use redop_cli::run;

fn problem(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_problem(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn redop(args: &[&str]) -> (i32, String) {
    run(std::iter::once("redop").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Report, String) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out) = redop(&all);
    let report: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad json ({e}):\n{out}"));
    (code, report, out)
}

#[test]
fn standard_basis_example() {
    let (code, out) = redop(&["check-standard-basis", &problem("standard-basis.prob")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("standard basis up to degree 8\n"), "{out}");
}

#[test]
fn dropped_generator_is_refuted() {
    let (code, report, _) = json(&["check-standard-basis", &problem("dropped-generator.prob")]);
    assert_eq!(code, 1);
    assert_eq!(report.exit, 1);
    assert_eq!(report.obstructions, ["y"]);
    assert_eq!(report.witnesses[0].monomial, "y");
    assert_eq!(report.witnesses[0].series, "y - x");
}

#[test]
fn pair_binary_word() {
    let (code, out) = redop(&["pair", "--series", "val", "--word", "110"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("6"));
    let (_, out) = redop(&["pair", "--poly", "x1*x0 + 2*x1*x1 - 1/2"]);
    assert_eq!(out.lines().next(), Some("8"));
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: Vec<Vec<String>> = vec![
        vec!["check-standard-basis".into(), problem("dropped-generator.prob")],
        vec!["trace".into(), problem("standard-basis.prob"), "--epsilon".into(), "2^-5".into()],
        vec!["joinable".into(), problem("standard-basis.prob"), "--epsilon".into(), "2^-6".into()],
        vec!["meet".into(), problem("discrete-pair.prob")],
        vec!["dual".into(), problem("discrete-pair.prob")],
        vec!["verify-groebner".into(), problem("binary-value.prob")],
        vec!["check-syntactic".into(), problem("two-letter-words.prob")],
        vec!["pair".into(), "--word".into(), "1011".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, report, out) = json(&args);
        let mut again = serde_json::to_string_pretty(&report).unwrap();
        again.push('\n');
        assert_eq!(again, out, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let two = problem("two-letter-words.prob");
    let args = ["check-syntactic", two.as_str(), "--seed", "7", "--json"];
    assert_eq!(redop(&args), redop(&args));
    let sb = problem("standard-basis.prob");
    let args = ["joinable", sb.as_str(), "--epsilon", "2^-8"];
    assert_eq!(redop(&args), redop(&args));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 12] = [
        (&["obstructions", &problem("discrete-pair.prob")], 1),
        (&["joinable", &problem("discrete-pair.prob")], 1),
        (&["compare", &problem("discrete-pair.prob")], 1),
        (&["meet", &problem("discrete-pair.prob")], 0),
        (&["join", &problem("discrete-pair.prob")], 0),
        (&["reduce", &problem("standard-basis.prob"), "--poly", "x + y + z"], 0),
        (&["represent", &problem("binary-value.prob")], 0),
        (&["verify-groebner", &problem("binary-value.prob")], 0),
        (&["check-syntactic", &problem("binary-value.prob")], 0),
        (&["greatest-ideal", &problem("binary-value.prob")], 0),
        (&["check-syntactic", &problem("two-letter-words.prob")], 1),
        (&["obstructions", &problem("standard-basis.prob")], 0),
    ];
    for (args, expected) in cases {
        let (code, out) = redop(args);
        assert_eq!(code, expected, "{args:?}\n{out}");
    }
}

#[test]
fn syntactic_reports() {
    let (_, out) = redop(&["represent", &problem("binary-value.prob")]);
    assert!(out.starts_with("represented up to length 6: S' = x1\n"), "{out}");
    let (_, out) = redop(&["greatest-ideal", &problem("binary-value.prob")]);
    assert!(out.starts_with("greatest ideal in ker(s): span{x1 - x0}"), "{out}");
    let (_, report, _) = json(&["check-syntactic", &problem("two-letter-words.prob")]);
    assert!(report.verdict.starts_with("not syntactic"), "{}", report.verdict);
    assert!(report.verdict.contains("dimension 2"));
}

#[test]
fn trace_prints_symbolic_distances() {
    let (code, report, _) = json(&["trace", &problem("standard-basis.prob"), "--epsilon", "2^-5"]);
    assert_eq!(code, 0);
    let results: Vec<&str> = report.trace.iter().map(|s| s.result.as_str()).collect();
    assert_eq!(results, ["y", "y^2", "y^3", "y^4", "y^5"]);
    assert_eq!(report.trace.last().unwrap().distance, "2^-5");
}

#[test]
fn positioned_parse_errors() {
    let f = temp_problem("mode: adic\nvars: x > y\ngenerators:\n  x^-1\n");
    let path = f.path().to_str().unwrap();
    let (code, out) = redop(&["check-standard-basis", path]);
    assert_eq!(code, 2);
    assert!(out.contains("line 4, column 5"), "{out}");

    let f = temp_problem("mode: adic\nvars: x\ngenerators:\n  x + 1/0\n");
    let (code, out) = redop(&["check-standard-basis", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line 4"), "{out}");

    let f = temp_problem("vars: x\n");
    let (code, report, _) = json(&["obstructions", f.path().to_str().unwrap()]);
    assert_eq!((code, report.exit, report.verdict.as_str()), (2, 2, "error"));
}

#[test]
fn invalid_invocations() {
    let sb = problem("standard-basis.prob");
    let cases: [&[&str]; 6] = [
        &["frobnicate", &sb],
        &["check-standard-basis"],
        &["pair", "--word", "110", "--poly", "x1"],
        &["check-standard-basis", &sb, "--word", "110"],
        &["trace", &sb, "--epsilon", "0.001"],
        &["pair", "--word", "12"],
    ];
    for args in cases {
        let (code, out) = redop(args);
        assert_eq!(code, 2, "{args:?}\n{out}");
    }
}

#[test]
fn binary_exit_status_and_streams() {
    let bin = env!("CARGO_BIN_EXE_redop");
    let out = Process::new(bin).args(["check-standard-basis", &problem("dropped-generator.prob")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("not a standard basis"));
    let out = Process::new(bin).args(["check-standard-basis", "/nonexistent/file"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
