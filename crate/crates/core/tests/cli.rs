use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitcoset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn bounds_line() {
    let o = run(&["bounds", "--n", "2", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "theorem=3 corollary=3 degenerate_subsets=0\n");
    let o = run(&["bounds", "--n", "3", "--r", "1"]);
    assert_eq!(stdout(&o), "theorem=8 corollary=11 degenerate_subsets=3\n");
}

#[test]
fn classic_search_table() {
    let o = run(&[
        "search",
        "--file",
        data("classic.json").to_str().unwrap(),
        "--box",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("rank=4 bound=81 box=3 cosets=7 nondegenerate=7 within_bound=true\n"));
    assert_eq!(out.lines().count(), 9);
    assert!(out.contains("(1,0,0,1)"));
    assert!(stderr(&o).is_empty());
}

#[test]
fn dependent_generators_exit_3() {
    let o = run(&[
        "search",
        "--file",
        data("dependent-gens.json").to_str().unwrap(),
        "--box",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("g1^2 * g2^-1"), "{}", stderr(&o));
}

#[test]
fn malformed_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"v":1,"n":2,"coefficients":[{"num":["1"],"den":["0"]}],"generators":[]}"#,
    )
    .unwrap();
    let o = run(&["search", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
    let o = run(&["bounds", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_round_trip_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let file = data("classic.json");
    let mut reports = Vec::new();
    for t in ["1", "3"] {
        let out = dir.path().join(format!("r{t}.json"));
        let o = run(&[
            "search",
            "--file",
            file.to_str().unwrap(),
            "--box",
            "2",
            "--threads",
            t,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        reports.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let parsed = unitcoset::format::ReportFile::parse(&reports[0]).unwrap();
    assert_eq!(parsed.to_json(), reports[0]);
    assert_eq!(parsed.cosets.len(), 7);
}

#[test]
fn member_and_rank() {
    let toy = data("toy-system.json");
    let o = run(&["member", "--file", toy.to_str().unwrap(), "--u", "1"]);
    assert_eq!(stdout(&o), "member=true\nrelation=(1, 1, 2)\n");
    let o = run(&["member", "--file", toy.to_str().unwrap(), "--u", "1/2"]);
    assert_eq!(stdout(&o), "member=false\n");
    let o = run(&["member", "--file", toy.to_str().unwrap(), "--u", "1,2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["rank", "--file", data("family.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("rank_exact=2\nrank_series=2 certified=true"),
        "{out}"
    );
}

#[test]
fn power_line() {
    let o = run(&["power", "--num", "1,1", "--u", "1/2", "--order", "4"]);
    assert_eq!(
        stdout(&o),
        "lead=1\nunit^u=1 + 1/2*z - 1/8*z^2 + 1/16*z^3 + O(z^4)\n"
    );
}
