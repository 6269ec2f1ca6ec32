use std::process::Command;

fn qgcount(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgcount"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .env_remove("QGCOUNT_WORKERS")
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn recurrence_csv_row() {
    let (csv, _, code) = qgcount(&["recur4", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().nth(5), Some("5,201538000,6268637952000"));
    let (full, _, _) = qgcount(&["recur4", "--max-n", "4", "--intermediates"]);
    assert_eq!(
        full.lines().nth(4),
        Some("4,2048,58,96,262,576,1836,5508,7132,36972288")
    );
}

#[test]
fn counts_in_text_and_json() {
    assert_eq!(
        qgcount(&["count", "--n", "2", "--k", "5", "--loops"]).0,
        "56\n"
    );
    let (json, _, _) = qgcount(&["count", "--n", "3", "--k", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["count"], "55296");
}

#[test]
fn workers_do_not_change_counts() {
    let one = qgcount(&["count", "--n", "3", "--k", "4", "--workers", "1"]).0;
    let four = qgcount(&["count", "--n", "3", "--k", "4", "--workers", "4"]).0;
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    assert_eq!(qgcount(&["count", "--n", "3"]).2, 2);
    assert_eq!(qgcount(&["--no-such-flag"]).2, 2);
    assert_eq!(qgcount(&["construct", "idempotent", "--m", "2"]).2, 2);
    assert_eq!(qgcount(&["count", "--n", "5", "--k", "9"]).2, 3);
    assert_eq!(
        qgcount(&[
            "construct",
            "big-psi",
            "--n",
            "6",
            "--m",
            "4",
            "--mat-cap",
            "1000"
        ])
        .2,
        3
    );
    assert_eq!(
        qgcount(&["components", "--input", "missing.json", "--pair", "0,1"]).2,
        2
    );
    assert_eq!(
        qgcount(&["bounds", "--n", "2", "--k", "4", "--cell-cap", "0"]).2,
        2
    );
}

#[test]
fn census_report() {
    let (json, _, code) = qgcount(&["census", "--n", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["total"], "64");
    assert_eq!(v["irreducible"], "24");
    assert_eq!(v["violating"], "0");
}

#[test]
fn family_then_switch() {
    let dir = std::env::temp_dir().join(format!("qgcount-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let family = dir.join("family.json");
    let (_, _, code) = qgcount(&[
        "family",
        "--input",
        "fixtures/psi9.json",
        "--strategy",
        "pair_partition",
        "--output",
        family.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&family).unwrap()).unwrap();
    let size = report["components"].as_array().unwrap().len();
    assert_eq!(size, 16);
    let none = "0".repeat(size);
    let (same, _, _) = qgcount(&[
        "switch",
        "--input",
        "fixtures/psi9.json",
        "--family",
        family.to_str().unwrap(),
        "--mask",
        &none,
    ]);
    assert_eq!(
        same,
        std::fs::read_to_string("../../fixtures/psi9.json").unwrap()
    );
    let one = format!("1{}", "0".repeat(size - 1));
    let (switched, _, code) = qgcount(&[
        "switch",
        "--input",
        "fixtures/psi9.json",
        "--family",
        family.to_str().unwrap(),
        "--mask",
        &one,
    ]);
    assert_eq!(code, 0);
    assert_ne!(switched, same);
    let (_, _, code) = qgcount(&[
        "switch",
        "--input",
        "fixtures/psi9.json",
        "--family",
        family.to_str().unwrap(),
        "--mask",
        "1",
    ]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bounds_json_and_grid() {
    let (json, _, code) = qgcount(&["bounds", "--n", "2", "--k", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["lower_log2_exponent"], "9");
    assert_eq!(v["trd_upper"], "12");
    let (csv, _, _) = qgcount(&["bounds", "--n", "2..3", "--k", "4..6", "--grid"]);
    assert_eq!(csv.lines().count(), 7);
    assert_eq!(qgcount(&["bounds", "--n", "2..3", "--k", "5"]).2, 2);
}

#[test]
fn outputs_are_reproducible() {
    let args = ["construct", "big-psi", "--n", "3", "--m", "3"];
    assert_eq!(qgcount(&args).0, qgcount(&args).0);
    let args = ["verify-paper", "--skip", "slow", "--seed", "7"];
    let strip = |s: String| -> String {
        s.lines()
            .map(|l| l.split(", ").next().unwrap_or("").to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(qgcount(&args).0), strip(qgcount(&args).0));
}

#[test]
fn verify_paper_detects_corruption() {
    let dir = std::env::temp_dir().join(format!("qgcount-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["phi4.json", "psi9.json"] {
        std::fs::copy(format!("../../fixtures/{name}"), dir.join(name)).unwrap();
    }
    let values = std::fs::read_to_string("../../fixtures/q4_values.json").unwrap();
    std::fs::write(dir.join("q4_values.json"), values.replace("7132", "7133")).unwrap();
    let (text, _, code) = qgcount(&[
        "verify-paper",
        "--skip",
        "slow",
        "--fixtures",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(text.contains("FAIL criterion  1"));
    let (_, _, code) = qgcount(&["verify-paper", "--skip", "slow"]);
    assert_eq!(code, 0);
    std::fs::remove_dir_all(dir).unwrap();
}
