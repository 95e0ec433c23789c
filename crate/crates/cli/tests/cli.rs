use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoclosure")).args(args).env_remove("MONOCLOSURE_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a markdown table, cells trimmed.
fn markdown_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| l.starts_with('|') && !l.starts_with("|---"))
        .map(|l| l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect())
        .collect()
}

/// Minimal CSV reader: quoted cells with doubled quotes, no embedded newlines.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|line| {
            let (mut cells, mut cell, mut quoted) = (Vec::new(), String::new(), false);
            let mut chars = line.chars().peekable();
            while let Some(c) = chars.next() {
                match (c, quoted) {
                    ('"', true) if chars.peek() == Some(&'"') => {
                        cell.push('"');
                        chars.next();
                    }
                    ('"', _) => quoted = !quoted,
                    (',', false) => cells.push(std::mem::take(&mut cell)),
                    _ => cell.push(c),
                }
            }
            cells.push(cell);
            cells
        })
        .collect()
}

#[test]
fn closure_prints_generators() {
    let o = run(&["closure", "(x^2,y^3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x^2, x*y^2, y^3\n");
    let o = run(&["closure", "(x^2,y^3)", "--format", "csv"]);
    assert_eq!(stdout(&o), "generator,degree\nx^2,2\nx*y^2,3\ny^3,3\n");
}

#[test]
fn member_reports_dual_witness() {
    let o = run(&["member", "(x^2,y^3)", "x*y"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| in_closure | false |"), "{text}");
    assert!(text.contains("| separating_normal | 3 2 |"));
    assert!(text.contains("| separating_level | 6 |"));
    assert!(text.contains("| certificate_valid | true |"));

    let o = run(&["member", "(x^2,y^3)", "x*y^2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["outcome"]["kind"], "feasible");
    assert_eq!(v["power_witness"]["k"], 2);
    assert_eq!(v["certificate_valid"], true);
}

#[test]
fn growth_x2_verifies_39_rows() {
    for dim in [None, Some("2")] {
        let mut args = vec!["growth", "(x^2)", "--n", "2..40", "--c", "2", "--format", "csv"];
        if let Some(d) = dim {
            args.extend(["--dim", d]);
        }
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        let rows = csv_rows(&stdout(&o));
        assert_eq!(rows[0], ["n", "f_n", "floor_n_over_c", "verified"]);
        assert_eq!(rows.len(), 40);
        assert!(rows[1..].iter().all(|r| r[3] == "true"));
    }
}

#[test]
fn growth_inf_and_blank_constant() {
    let o = run(&["growth", "(x^2,y^2)", "--n", "4..5", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,f_n,floor_n_over_c,verified\n4,inf,,\n5,inf,,\n");
}

#[test]
fn csv_and_markdown_carry_the_same_cells() {
    let cases: &[&[&str]] = &[
        &["growth", "(x^2, y^3)", "--dim", "3", "--n", "6..20", "--c", "6"],
        &["growth", "(x1^3)", "--dim", "3", "--modulus", "m_{2,3}", "--n", "3..12", "--c", "3"],
        &["verify", "counterexample", "--n", "6..14"],
        &["verify", "rees", "(x*y, y*z)", "--n", "2..12"],
        &["verify", "intersection", "(x)", "(y)", "--n", "1..10"],
        &["verify", "radical-swap", "(x^2)", "m^2", "--dim", "2", "--n", "1..8"],
        &["member", "(x^2,y^3)", "x*y"],
        &["oracle-check", "--cases", "10", "--seed", "4"],
    ];
    for args in cases {
        let md = run(args);
        let csv = run(&[*args, &["--format", "csv"][..]].concat());
        assert_eq!(md.status.code(), csv.status.code(), "{args:?}");
        assert_eq!(markdown_rows(&stdout(&md)), csv_rows(&stdout(&csv)), "{args:?}");
    }
}

#[test]
fn failing_verification_exits_1_with_offender() {
    let o = run(&["growth", "(x^2)", "--dim", "2", "--n", "8..10", "--c", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("n=8") && err.contains("x*y^4"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["closure", "(x^2, y"][..],
        &["growth", "(x^2)", "--n", "5..2"],
        &["closure", "(x4)", "--dim", "3"],
        &["verify", "counterexample", "--n", "10", "--k", "5"],
        &["verify", "constant", "(x^2*y)", "--n", "2..5"],
        &["closure", "(x)", "--workers", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn workers_from_env_and_flag() {
    let args = ["growth", "(x^2, y^3)", "--dim", "3", "--n", "6..18", "--c", "6", "--format", "json"];
    let base = run(&args);
    let env =
        Command::new(env!("CARGO_BIN_EXE_monoclosure")).args(args).env("MONOCLOSURE_WORKERS", "3").output().unwrap();
    let flag = Command::new(env!("CARGO_BIN_EXE_monoclosure"))
        .args(args)
        .args(["--workers", "1"])
        .env("MONOCLOSURE_WORKERS", "bogus")
        .output()
        .unwrap();
    assert_eq!(base.stdout, env.stdout);
    assert_eq!(base.stdout, flag.stdout);
    assert_eq!(flag.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_monoclosure"))
        .args(args)
        .env("MONOCLOSURE_WORKERS", "bogus")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_growth_embeds_witnesses() {
    let o = run(&["growth", "(x^2)", "--dim", "2", "--n", "10", "--c", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["f_n"], 6);
    assert_eq!(v["rows"][0]["witness"], "x*y^5");
    assert_eq!(v["empirical_c"], 2);
}
