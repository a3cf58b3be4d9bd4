use std::process::{Command, Output};

fn asdcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asdcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["eval", "--series", "s", "--m", "1", "--N", "5"], "99"),
        (&["eval", "--series", "apery", "--index", "4"], "33001"),
        (
            &["eval", "--series", "lucas", "--m", "3", "--index", "4"],
            "-1",
        ),
        (&["eval", "--series", "s", "--m", "3", "--N", "5"], "319/81"),
        (
            &[
                "eval",
                "--series",
                "s",
                "--m",
                "1",
                "--N",
                "5",
                "--variant",
                "literal",
            ],
            "55",
        ),
        (
            &["eval", "--series", "lucas", "--m", "5", "--index", "-4"],
            "-21",
        ),
        // 315/128 = 5 * 63/128 and 63 * 128^-1 ≡ 21 (mod 5^3).
        (
            &[
                "eval", "--series", "s", "--m", "4", "--N", "5", "--mod", "5^4",
            ],
            "21 * 5^1 mod 5^4",
        ),
        (
            &["eval", "--series", "apery", "--index", "4", "--mod", "5^3"],
            "1 * 5^0 mod 5^3",
        ),
    ];
    for (args, want) in cases {
        let o = asdcheck(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim(), *want, "{args:?}");
    }
}

#[test]
fn eval_residue_with_positive_valuation() {
    // 15/8 ≡ 3 (mod 9)
    let o = asdcheck(&[
        "eval", "--series", "s", "--m", "4", "--N", "3", "--mod", "3^2",
    ]);
    assert_eq!(stdout(&o).trim(), "1 * 3^1 mod 3^2");
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &[
            "eval", "--series", "s", "--m", "1", "--N", "5", "--mod", "5x3",
        ][..],
        &[
            "eval", "--series", "s", "--m", "1", "--N", "5", "--mod", "4^3",
        ][..],
        &["eval", "--series", "s", "--m", "0", "--N", "5"][..],
        &["eval", "--series", "q", "--N", "5"][..],
        &["verify", "--suite", "nope"][..],
        &["verify", "--primes", "3..x"][..],
        &["verify", "--bogus"][..],
    ] {
        assert_eq!(asdcheck(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let ok = asdcheck(&[
        "verify", "--suite", "thm-main", "--primes", "3..13", "--m", "1,2,3", "--n", "1..2",
        "--alpha", "1..2",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert!(report["summary"]["ill_posed"].as_u64().unwrap() > 0);

    let literal = asdcheck(&[
        "verify",
        "--suite",
        "thm-main",
        "--variant",
        "literal",
        "--primes",
        "5..5",
        "--m",
        "1",
        "--n",
        "1..1",
        "--alpha",
        "1..1",
    ]);
    assert_eq!(literal.status.code(), Some(1));

    let identity = asdcheck(&[
        "verify",
        "--suite",
        "lemma-2-2",
        "--m",
        "-5..5",
        "--n",
        "1..50",
    ]);
    assert_eq!(identity.status.code(), Some(0));
}

#[test]
fn report_schema_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = asdcheck(&[
        "verify",
        "--suite",
        "eq-apery",
        "--primes",
        "5..5",
        "--n",
        "1..1",
        "--alpha",
        "1..1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let case = &v["cases"][0];
    assert_eq!(case["suite"], "eq-apery");
    assert_eq!(case["params"]["p"], 5);
    assert_eq!(case["required_exponent"], 3);
    assert_eq!(case["achieved_valuation"], 3);
    assert_eq!(case["pass"], true);
    assert_eq!(case["lhs"], "33001");
    assert!(case["error"].is_null());
    assert_eq!(v["meta"]["tool"], "asdcheck");
    assert_eq!(v["summary"]["total"], 1);
}

#[test]
fn reports_identical_across_job_counts() {
    let run = |jobs: &str| {
        stdout(&asdcheck(&[
            "verify",
            "--suite",
            "lemma-2-4,lemma-2-5,eq-sun-asd",
            "--primes",
            "3..7",
            "--trials",
            "5",
            "--seed",
            "17",
            "--jobs",
            jobs,
        ]))
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));
}

#[test]
fn scan_outputs() {
    let literal = asdcheck(&[
        "scan",
        "--suite",
        "thm-main",
        "--variant",
        "literal",
        "--primes",
        "3..20",
    ]);
    assert_eq!(literal.status.code(), Some(1));
    let text = stdout(&literal);
    assert!(
        text.contains("thm-main p=5 m=1 n=1 alpha=1 variant=literal: fail, achieved 0, required 2")
    );

    let limited = asdcheck(&[
        "scan",
        "--suite",
        "thm-main",
        "--variant",
        "literal",
        "--primes",
        "3..20",
        "--stop-after",
        "3",
    ]);
    assert_eq!(stdout(&limited).lines().count(), 3);

    let corrected = asdcheck(&[
        "scan",
        "--suite",
        "thm-main",
        "--primes",
        "3..50",
        "--max-index",
        "100000",
    ]);
    assert_eq!(corrected.status.code(), Some(0));
    assert!(stdout(&corrected).is_empty());

    let empty = asdcheck(&["scan", "--suite", "thm-main", "--primes", "24..28"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).is_empty());
}

#[test]
fn exit_code_tracks_summary() {
    // Mix of passing, failing (literal variant) and ill-posed (p | m)
    // fixtures: exit 1 exactly when the report has failures or errors.
    let fixtures: &[(&str, &str, &str)] = &[
        ("corrected", "3..3", "3"),
        ("corrected", "3..7", "1,2,3"),
        ("literal", "3..3", "3"),
        ("literal", "5..7", "2"),
        ("literal", "3..13", "1"),
    ];
    for &(variant, primes, m) in fixtures {
        let o = asdcheck(&[
            "verify",
            "--suite",
            "thm-main",
            "--variant",
            variant,
            "--primes",
            primes,
            "--m",
            m,
            "--n",
            "1..1",
            "--alpha",
            "1..2",
        ]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let bad =
            v["summary"]["failed"].as_u64().unwrap() + v["summary"]["errored"].as_u64().unwrap();
        let expected = if bad > 0 { 1 } else { 0 };
        assert_eq!(o.status.code(), Some(expected), "{variant} {primes} {m}");
    }
}

#[test]
fn modular_only_run_passes() {
    let o = asdcheck(&[
        "verify",
        "--suite",
        "thm-main,thm-m4,eq-sun-asd",
        "--primes",
        "3..7",
        "--n",
        "1..2",
        "--alpha",
        "1..2",
        "--oracle-cutoff",
        "0",
        "--crosscheck-cutoff",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cases = v["cases"].as_array().unwrap();
    assert!(cases
        .iter()
        .filter(|c| c["status"] != "ill-posed")
        .all(|c| c["path"] == "modular"));
}
