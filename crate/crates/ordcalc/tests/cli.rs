use std::path::PathBuf;
use std::process::{Command, Output};

fn ordcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
        .to_string()
}

fn repo_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

#[test]
fn order_of_dihedral_pairs() {
    let o = ordcalc(&["order", "--group", "D4", "--a", "(1 2 3 4)", "--b", "(1 3)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "o(a,b)"), "4");
    assert_eq!(field(&out, "o(ab)"), "2");
    assert_eq!(field(&out, "ratio"), "1/2");
    assert_eq!(field(&out, "case"), "R_EVEN_Q_EVEN_HALF");

    let o = ordcalc(&["order", "--group", "D4", "--a", "[2,1,4,3]", "--b", "#2"]);
    let out = stdout(&o);
    assert_eq!((field(&out, "o(a,b)"), field(&out, "o(ab)")), ("2".into(), "4".into()));
}

#[test]
fn order_outside_class_two_has_no_verdict() {
    let o = ordcalc(&["order", "--group", "S4", "--a", "(1 2 3 4)", "--b", "(1 2)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "o(a,b)"), "4");
    assert_eq!(field(&out, "o(ab)"), "3");
    assert!(!out.contains("case"));
}

#[test]
fn hall_class_two() {
    let out = stdout(&ordcalc(&["hall", "--class", "2"]));
    assert!(out.contains("c2 [b,a] lambda 0 1"));
    assert!(out.lines().any(|l| l.starts_with("B 16 ")));
    assert!(out.lines().any(|l| l.starts_with("C 16 ")));
    assert!(out.lines().any(|l| l.starts_with("A 8 ")));
    assert_eq!(stdout(&ordcalc(&["hall", "--class", "2", "--format", "tsv"])), "2\t2\t2\t0\t1\n");
}

#[test]
fn golden_file_matches_every_class() {
    let golden = repo_file("golden/hall_lambda.tsv");
    for gamma in 2..=6 {
        let o = ordcalc(&["hall", "--class", &gamma.to_string(), "--golden", golden.to_str().unwrap()]);
        assert!(o.status.success(), "class {gamma}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn golden_mismatch_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tsv");
    std::fs::write(&path, "3\t2\t2\t0\t1\n3\t3\t3\t0\t0\t1\n3\t4\t3\t0\t2\t1\n").unwrap();
    let o = ordcalc(&["hall", "--class", "3", "--golden", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(7));
    std::fs::write(&path, "3\t2\t2\t0\n").unwrap();
    assert_eq!(ordcalc(&["hall", "--class", "3", "--golden", path.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| ordcalc(args).status.code();
    assert_eq!(code(&["verify", "--group", "D4"]), Some(0));
    assert_eq!(code(&["verify"]), Some(2));
    assert_eq!(code(&["hall", "--class", "7"]), Some(2));
    assert_eq!(code(&["verify", "--group", "S4", "--checks", "class2"]), Some(2));
    assert_eq!(code(&["verify", "--group", "ut4_2", "--checks", "class2"]), Some(2));
    assert_eq!(code(&["verify", "--group", "D4", "--workers", "0"]), Some(2));
    assert_eq!(code(&["verify", "--group", "nosuchgroup"]), Some(3));
    assert_eq!(code(&["order", "--group", "D4", "--a", "(1 2 3 5)", "--b", "(1 3)"]), Some(4));
    assert_eq!(code(&["order", "--group", "D4", "--a", "(1 2)", "--b", "(1 3)"]), Some(4));
    assert_eq!(code(&["order", "--group", "D4", "--a", "#8", "--b", "(1 3)"]), Some(4));
    assert_eq!(code(&["--cap", "100", "verify", "--group", "heis9"]), Some(5));
    assert_eq!(code(&["verify", "--group", "D4", "--output", "/nonexistent/dir/report.txt"]), Some(1));
    assert_eq!(code(&["verify", "--group", "/nonexistent/spec.toml"]), Some(1));
}

#[test]
fn diagnostics_are_one_line() {
    let o = ordcalc(&["verify", "--group", "nosuchgroup"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("nosuchgroup"));
}

#[test]
fn shipped_spec_files() {
    for (file, order, class) in [("D4.toml", "8", "2"), ("heis3.toml", "27", "2"), ("ut4_2.toml", "64", "3")] {
        let path = repo_file(&format!("groups/{file}"));
        let o = ordcalc(&["verify", "--group", path.to_str().unwrap()]);
        assert!(o.status.success(), "{file}");
        let out = stdout(&o);
        assert_eq!(field(&out, "  order"), order);
        assert_eq!(field(&out, "  class"), class);
        assert_eq!(field(&out, "  violations"), "0");
    }
}

#[test]
fn malformed_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.toml");
    std::fs::write(&path, "name = \"g\"\nkind = \"unitriangular\"\ndimension = 3\ngenerators = [\"[1,1,0,0,1,0,0,0,1]\"]\n").unwrap();
    assert_eq!(ordcalc(&["verify", "--group", path.to_str().unwrap()]).status.code(), Some(4));
    std::fs::write(&path, "name = \"g\"\nkind = \"permutation\"\ndegree = 3\ngenerators = [\"(1 2 3)\"]\nexpected_class = 2\n").unwrap();
    assert_eq!(ordcalc(&["verify", "--group", path.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn tsv_reports_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.tsv");
    let o = ordcalc(&["verify", "--group", "Q8", "--format", "tsv", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::ReaderBuilder::new().delimiter(b'\t').flexible(true).from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "summary");
    assert_eq!(&rows[0][5], "64");
    assert_eq!(&rows[0][7], "0");
}

#[test]
fn reports_do_not_depend_on_workers() {
    let run = |w: &str| stdout(&ordcalc(&["verify", "--group", "dih16xZ3", "--workers", w, "--format", "tsv"]));
    assert_eq!(run("1"), run("5"));
}

#[test]
fn catalog_lists_entries() {
    let out = stdout(&ordcalc(&["catalog"]));
    assert!(out.lines().any(|l| l == "D4\t8\t2\t2\tall"));
    assert!(out.lines().any(|l| l.starts_with("heis27\t19683\t2\t3\tsample")));
    assert!(out.lines().any(|l| l == "S4\t24\t-\t-\tall"));
}
