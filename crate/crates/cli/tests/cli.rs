use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cellform"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cellform-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_reference_file() {
    let o = run(&["solve", data("king-nakornchai-5x7.txt").to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("efficacy 73.68\n"));
    assert!(out.contains("machine cells m1,m4 | m2,m3,m5\n"));
}

#[test]
fn solve_fixed_three_cells() {
    let o = run(&[
        "solve",
        "--k",
        "3",
        data("king-nakornchai-5x7.txt").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("machine cells m1,m4 | m2,m3 | m5\n"), "{out}");
    assert!(out.contains("efficacy 75.00\n"), "{out}");
}

#[test]
fn solve_json_to_file() {
    let dir = scratch("json");
    let target = dir.join("report.json");
    let o = run(&[
        "solve",
        "--format",
        "json",
        "-o",
        target.to_str().unwrap(),
        data("king-nakornchai-5x7.txt").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let body = fs::read_to_string(target).unwrap();
    assert!(body.contains("\"percent\": \"73.68\""));
}

#[test]
fn error_exit_codes_are_distinct() {
    let dir = scratch("errors");
    let bad = dir.join("bad.txt");
    fs::write(&bad, "2 3\n1 0 1\n1 0 0\n").unwrap();
    let o = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("part 2 visits no machines"));

    let o = run(&["solve", dir.join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let reference = data("king-nakornchai-5x7.txt");
    let o = run(&["solve", "--k", "9", reference.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let o = run(&["solve", "--patience", "200", reference.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));

    let o = run(&["solve"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dendro_tables() {
    let o = run(&["dendro", data("king-nakornchai-5x7.txt").to_str().unwrap()]);
    assert_eq!(stdout(&o), "1 4 0.857\n2 3 0.667\n5 7 0.319\n6 8 -0.259\n");

    let dir = scratch("dendro");
    let two = dir.join("two.txt");
    fs::write(&two, "2 2\n1 0\n1 1\n").unwrap();
    let o = run(&["dendro", two.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 1);

    let three = dir.join("three.txt");
    fs::write(&three, "3 2\n1 0\n0 1\n1 1\n").unwrap();
    let o = run(&["dendro", "--precision", "4", three.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1 3 0.6667\n2 4 0.1667\n");
}

#[test]
fn bench_bundled_manifest() {
    let o = run(&["bench", "--data-dir", data("").to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("king-nakornchai-5x7 5x7 73.68 73.68 73.68 +0.00 match\n"),
        "{out}"
    );
    assert_eq!(out.matches("SKIPPED").count(), 9);
    assert!(out.contains("summary solved=1 matched=1 improved=0 worse=0 skipped=9\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("timing king-nakornchai-5x7"));
}

#[test]
fn bench_empty_manifest() {
    let dir = scratch("empty");
    let manifest = dir.join("empty.manifest");
    fs::write(&manifest, "# nothing listed\n").unwrap();
    let o = run(&["bench", manifest.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "name size literature-best reported-hybrid this-run delta status\n\
         summary solved=0 matched=0 improved=0 worse=0 skipped=0\n"
    );
}

#[test]
fn bench_bad_manifest() {
    let dir = scratch("badmanifest");
    let manifest = dir.join("bad.manifest");
    fs::write(&manifest, "x 5by7 x.txt 1 1\n").unwrap();
    let o = run(&["bench", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["bench", dir.join("absent.manifest").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
