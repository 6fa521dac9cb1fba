use std::process::{Command, Output};

fn pmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args(args)
        .env_remove("PMAT_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pmat(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    pmat(args).status.code().unwrap()
}

#[test]
fn gen_fixtures() {
    assert_eq!(
        stdout(&["gen", "B2", "--what", "pmatrix", "--format", "text"]),
        "[4*p1, 8*p2]\n[8*p2, 4*p1*p2]\n"
    );
    assert_eq!(
        stdout(&["gen", "I2(6)", "--what", "det"]),
        "144*p1^6 - 144*p2^2\n"
    );
    assert_eq!(
        stdout(&["gen", "A3", "--what", "lambda"]),
        "(24, 0, -8*p1)\n"
    );
    assert_eq!(
        stdout(&["gen", "B2", "--what", "lambda", "--active", "short"]),
        "(8, 4*p1)\n"
    );
    assert_eq!(
        stdout(&["gen", "S2", "--what", "invariants"]),
        "p1 = x1 + x2\np2 = x1*x2\n"
    );
    assert_eq!(
        stdout(&["gen", "B3", "--what", "degrees"]),
        "degrees: 2 4 6\norder: 48\nreflections: 9\n"
    );
    assert_eq!(
        stdout(&["gen", "B2", "--what", "roots", "--subset", "short"]),
        "(1, 0)\n(0, 1)\n"
    );
}

#[test]
fn alternate_and_hankel_agree_with_paper_output() {
    let paper = stdout(&["gen", "D5", "--format", "json"]);
    assert_eq!(
        stdout(&["gen", "D5", "--what", "pmatrix-alt", "--format", "json"]),
        paper
    );
    let hankel = stdout(&["gen", "B3", "--what", "hankel"]);
    assert!(hankel.starts_with("H1: 4*p1\n[1, 0, 0]\n"), "{hankel}");
}

#[test]
fn transform_fixtures() {
    let flat = stdout(&["transform", "A3", "--target", "flat"]);
    assert!(flat.contains("q3 = 1/4*p1^2 + p3\n"), "{flat}");
    assert!(flat.ends_with("lambda:\n(24, 0, 4*q1)\n"), "{flat}");
    let a = stdout(&["transform", "A3", "--target", "abasis"]);
    assert!(
        a.contains("q3 = 1/6*p1^2 + p3\n") && a.ends_with("(24, 0, 0)\n"),
        "{a}"
    );
    let c = stdout(&["transform", "A3", "--target", "canonical"]);
    assert!(c.contains("q3 = 1/10*p1^2 + p3\n"), "{c}");
    assert!(
        c.contains("[8*q3, 16/5*q1*q2, 16/25*q1^3 - 24/5*q1*q3 + 3*q2^2]\n"),
        "{c}"
    );
    assert!(c.ends_with("(24, 0, -16/5*q1)\n"), "{c}");
}

#[test]
fn json_round_trip_through_apply() {
    let dir = tempfile::tempdir().unwrap();
    for target in ["flat", "abasis", "canonical"] {
        let full = stdout(&["transform", "B3", "--target", target, "--format", "json"]);
        let path = dir.path().join(format!("{target}.json"));
        std::fs::write(&path, &full).unwrap();
        let again = stdout(&[
            "transform",
            "B3",
            "--apply",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(again, full, "{target}");

        let value: serde_json::Value = serde_json::from_str(&full).unwrap();
        let bare = dir.path().join(format!("{target}-bare.json"));
        std::fs::write(&bare, value["transform"].to_string()).unwrap();
        let from_bare = stdout(&[
            "transform",
            "B3",
            "--apply",
            bare.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(from_bare, full, "{target}");
    }
}

#[test]
fn termcount_from_file_matches_named_basis() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(
        &path,
        stdout(&[
            "transform",
            "B4",
            "--target",
            "canonical",
            "--format",
            "json",
        ]),
    )
    .unwrap();
    let arg = format!("file:{}", path.display());
    assert_eq!(
        stdout(&["termcount", "B4", "--basis", &arg]),
        stdout(&["termcount", "B4", "--basis", "canonical"])
    );
}

#[test]
fn b8_paper_and_flat_tables() {
    let paper = stdout(&["termcount", "B8", "--basis", "paper"]);
    let rows: Vec<&str> = paper.lines().collect();
    assert_eq!(rows[0], "1 1 1 1 1 1 1 1");
    assert_eq!(rows[1], "1 2 2 2 2 2 2 1");
    assert_eq!(rows[3], "1 2 3 4 4 3 2 1");
    let flat = stdout(&["termcount", "B8", "--basis", "flat"]);
    assert_eq!(flat.lines().last().unwrap(), " 1 10 25 39 54 66 79 88");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "A4", "--depth", "full"][..],
        &["gen", "B6", "--format", "json"][..],
        &[
            "transform",
            "D4",
            "--target",
            "canonical",
            "--format",
            "latex",
        ][..],
        &["gen", "A3", "--what", "invariants", "--format", "json"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn verify_reports() {
    let out = stdout(&["verify", "B4", "--depth", "full"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "exact");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));

    let out = stdout(&["verify", "A4", "--samples", "100", "--tol", "1e-9"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["mode"].as_str(), v["samples"].as_u64()),
        (Some("sampled"), Some(100))
    );

    let out = pmat(&["verify", "S6", "--depth", "fast"]);
    assert!(out.status.success());
    assert!(
        !String::from_utf8_lossy(&out.stderr).is_empty(),
        "timings go to stderr"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["gen", "X3"]), 2);
    assert_eq!(code(&["gen", "B3", "--what", "nonsense"]), 2);
    assert_eq!(
        code(&["gen", "B3", "--what", "lambda", "--active", "a+"]),
        2
    );
    assert_eq!(code(&["transform", "S3", "--target", "flat"]), 2);
    assert_eq!(code(&["transform", "B3"]), 2);
    assert_eq!(
        code(&["transform", "B3", "--apply", "/nonexistent/file.json"]),
        2
    );
    assert_eq!(code(&["termcount", "B3", "--basis", "weird"]), 2);
    assert_eq!(code(&["gen", "B70"]), 3);
    assert_eq!(code(&["gen", "B7", "--what", "det"]), 3);
    assert_eq!(code(&["gen", "B5", "--what", "det", "--det-cap", "4"]), 3);
    assert_eq!(code(&["verify", "A3", "--tol", "1e-30"]), 1);
    assert_eq!(code(&["verify", "A3"]), 0);
}

#[test]
fn apply_rejects_a_foreign_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.json");
    std::fs::write(
        &path,
        stdout(&["transform", "B3", "--target", "flat", "--format", "json"]),
    )
    .unwrap();
    assert_eq!(
        code(&["transform", "B4", "--apply", path.to_str().unwrap()]),
        2
    );
}

#[test]
fn env_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args(["gen", "A3", "--what", "lambda"])
        .env("PMAT_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "\\begin{pmatrix} 24 & 0 & -8 p_{1} \\end{pmatrix}\n"
    );
    let out = Command::new(env!("CARGO_BIN_EXE_pmat"))
        .args(["gen", "B5"])
        .env("PMAT_RANK_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
