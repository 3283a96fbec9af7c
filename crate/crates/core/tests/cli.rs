use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use modgeom::harness::{parse_point_set, Report};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn experiment_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t2.json");
    let out = run(&[
        "experiment",
        "--kind",
        "t2",
        "--p",
        "3",
        "--l",
        "1",
        "--set",
        "full",
        "--out",
        path(&json),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(report.records[0].statistic, 21);
    assert!(report
        .records
        .iter()
        .all(|r| r.pass == (r.statistic >= r.bound)));

    let csv = dir.path().join("t2.csv");
    let out = run(&[
        "experiment",
        "--kind",
        "t2",
        "--p",
        "3",
        "--l",
        "1",
        "--set",
        "full",
        "--out",
        path(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&csv).unwrap(),
        "trial,set_size,statistic,bound,pass\n0,9,21,14,true\n"
    );
}

#[test]
fn usage_and_config_errors_exit_2() {
    for args in [
        &[
            "experiment",
            "--kind",
            "t2",
            "--p",
            "4",
            "--l",
            "1",
            "--set",
            "full",
        ][..],
        &[
            "experiment",
            "--kind",
            "t2",
            "--p",
            "3",
            "--l",
            "1",
            "--set",
            "nope",
        ],
        &[
            "experiment",
            "--kind",
            "v2",
            "--p",
            "3",
            "--l",
            "1",
            "--set",
            "random:10",
        ],
        &[
            "experiment",
            "--kind",
            "t2",
            "--p",
            "3",
            "--l",
            "1",
            "--d",
            "3",
            "--set",
            "full",
        ],
        &[
            "experiment",
            "--kind",
            "dotprod",
            "--p",
            "3",
            "--l",
            "1",
            "--set",
            "full",
        ],
        &[
            "experiment",
            "--kind",
            "t2",
            "--p",
            "3",
            "--l",
            "1",
            "--set",
            "file:/nonexistent",
        ],
        &["verify-lemmas", "--p", "3"],
        &["verify-lemmas", "--p", "1009", "--l", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn undersized_set_warns_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("line.txt");
    fs::write(&file, "q=3 d=2\n0,0\n1,0\n2,0\n").unwrap();
    let set = format!("file:{}", path(&file));
    let out = run(&[
        "experiment",
        "--kind",
        "v2",
        "--p",
        "3",
        "--l",
        "1",
        "--set",
        &set,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("below the size threshold"));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(!r.records[0].meets_threshold);
    assert_eq!(r.records[0].statistic, 0);
}

#[test]
fn gen_set_feeds_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("e.txt");
    let out = run(&[
        "gen-set",
        "--p",
        "3",
        "--l",
        "2",
        "--set",
        "random:47",
        "--seed",
        "9",
        "--out",
        path(&pts),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let e = parse_point_set(&fs::read_to_string(&pts).unwrap()).unwrap();
    assert_eq!(e.len(), 47);

    let report = dir.path().join("r.json");
    let set = format!("file:{}", path(&pts));
    let out = run(&[
        "experiment",
        "--kind",
        "v2",
        "--p",
        "3",
        "--l",
        "2",
        "--set",
        &set,
        "--out",
        path(&report),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_json(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.records[0].set_size, 47);

    // wrong modulus for the file
    let out = run(&[
        "experiment",
        "--kind",
        "v2",
        "--p",
        "5",
        "--l",
        "1",
        "--set",
        &set,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_file() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("a.txt");
    fs::write(&base, "# A\nq=9 d=1\n0\n1\n2\n3\n4\n5\n6\n").unwrap();
    let out = run(&[
        "experiment",
        "--kind",
        "dotprod",
        "--p",
        "3",
        "--l",
        "2",
        "--set",
        &format!("product:{}", path(&base)),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "trial,set_size,statistic,bound,pass\n0,49,9,5,true\n"
    );
}

#[test]
fn lemma_report_csv() {
    let out = run(&["verify-lemmas", "--p", "5", "--l", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,statistic,relation,bound,status\n"));
    assert!(text.contains("stabilizer_zero_norm,0,==,0,skipped"));
}
