use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-identities"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_modular_torus() {
    let o = bin(&[
        "verify",
        "--identity",
        "thm12",
        "--traces",
        "3,3,3",
        "--cutoff",
        "25",
        "--tol",
        "1e-5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["target"].as_f64().unwrap(), PI * PI / 2.0);
    assert_eq!(v["kind"], "thm12");
    assert!(v["defect"].as_f64().unwrap().abs() <= 1e-5);
    assert_eq!(
        v["parameters"]["k"].as_f64().unwrap().to_bits(),
        0.0_f64.to_bits()
    );
}

#[test]
fn verify_mcshane() {
    let o = bin(&[
        "verify",
        "--identity",
        "mcshane",
        "--traces",
        "3,3,3",
        "--cutoff",
        "25",
        "--tol",
        "1e-5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["target"].as_f64().unwrap(), 0.5);
}

#[test]
fn verify_every_bordered_kind() {
    for kind in ["thm11", "thm31", "four", "four-simple"] {
        let o = bin(&[
            "verify",
            "--identity",
            kind,
            "--fn",
            "1.3,0.4,1.1",
            "--cutoff",
            "25",
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
    for kind in ["thm12", "thm15", "four-cusped", "mcshane"] {
        let o = bin(&[
            "verify",
            "--identity",
            kind,
            "--fn",
            "1.3,0.4,0",
            "--cutoff",
            "25",
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
}

#[test]
fn verify_fails_with_short_cutoff() {
    let o = bin(&[
        "verify",
        "--identity",
        "thm12",
        "--traces",
        "3,3,3",
        "--cutoff",
        "5",
        "--tol",
        "1e-8",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_csv_rows() {
    let o = bin(&[
        "spectrum", "--traces", "3,3,3", "--cutoff", "4", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,q,trace,length");
    assert_eq!(lines.len(), 7);
    assert!(!text.contains('\r'));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let csv = stdout(&bin(&[
        "terms",
        "--identity",
        "thm11",
        "--fn",
        "1,0.2,0.7",
        "--cutoff",
        "8",
        "--format",
        "csv",
    ]));
    let json: Value = serde_json::from_str(&stdout(&bin(&[
        "terms",
        "--identity",
        "thm11",
        "--fn",
        "1,0.2,0.7",
        "--cutoff",
        "8",
    ])))
    .unwrap();
    let rows = json.as_array().unwrap();
    let lines: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), lines.len());
    for (row, line) in rows.iter().zip(lines) {
        let cells: Vec<&str> = line.split(',').collect();
        for (i, key) in [(2, "length"), (3, "term"), (4, "partial_sum")] {
            let from_csv: f64 = cells[i].parse().unwrap();
            assert_eq!(from_csv.to_bits(), row[key].as_f64().unwrap().to_bits());
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sweep",
        "--identity",
        "thm11",
        "--vary",
        "k=0.2:2:0.2",
        "--fn",
        "1.1,0.3,_",
        "--cutoff",
        "18",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(
        text.lines().next().unwrap(),
        "param_name,param_value,cutoff,term_count,partial_sum,defect,tail_estimate"
    );
    assert_eq!(text.lines().count(), 11);
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sweep_writes_file() {
    let dir = std::env::temp_dir().join(format!("torus-identities-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = bin(&[
        "sweep",
        "--identity",
        "four",
        "--vary",
        "b=0.5:1.5:0.5",
        "--fn",
        "_,0,1",
        "--cutoff",
        "15",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let o = bin(&["selftest", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[
            "verify",
            "--identity",
            "thm12",
            "--traces",
            "3,3",
            "--cutoff",
            "5",
        ][..],
        &[
            "verify",
            "--identity",
            "thm12",
            "--traces",
            "3,3,3",
            "--cutoff",
            "5",
            "--bogus",
        ],
        &["verify", "--identity", "thm12", "--traces", "3,3,3"],
        &[
            "verify",
            "--identity",
            "thm12",
            "--fn",
            "1,0,1",
            "--cutoff",
            "5",
        ],
        &["spectrum", "--traces", "1,1,1", "--cutoff", "5"],
        &[
            "sweep",
            "--identity",
            "thm11",
            "--vary",
            "k=1:0:0.1",
            "--fn",
            "1,0,_",
            "--cutoff",
            "5",
        ],
        &[
            "sweep",
            "--identity",
            "thm11",
            "--vary",
            "k=0:1:0.1",
            "--fn",
            "1,0,_",
            "--cutoff",
            "5",
        ],
        &["selftest", "--seed", "-1"],
        &[],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
}
