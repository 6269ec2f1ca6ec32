//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Lines are written straight to the process's stdout so they show up even
//! when the harness captures test output.

use std::io::Write;
use std::process::Command;

use quasigroups_cli::verify::{criteria, Check, Fixtures, Outcome, VerifyOptions};

fn qgcount(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgcount"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("qgcount runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

/// End-to-end checks through the binary for the criteria that name a command.
fn binary_checks(id: u8, fixtures: &Fixtures) -> Vec<Check> {
    match id {
        1 => {
            let (csv, code) = qgcount(&["recur4", "--max-n", "8"]);
            let mut checks = vec![Check::eq("recur4 exit code", 0, code)];
            let rows: Vec<Vec<String>> = csv
                .lines()
                .skip(1)
                .map(|l| l.split(',').map(str::to_string).collect())
                .collect();
            checks.push(Check::eq("recur4 rows", 8, rows.len()));
            for (i, row) in rows.iter().enumerate() {
                checks.push(Check::eq(
                    format!("recur4 Q'({},4)", i + 1),
                    fixtures.q4_loops[i].to_string(),
                    row[1].clone(),
                ));
                checks.push(Check::eq(
                    format!("recur4 Q({},4)", i + 1),
                    fixtures.q4_quasigroups[i].to_string(),
                    row[2].clone(),
                ));
            }
            checks
        }
        2 => {
            let (text, code) = qgcount(&["count", "--n", "3", "--k", "4"]);
            vec![
                Check::eq("count exit code", 0, code),
                Check::eq("count --n 3 --k 4", "55296", text.trim()),
            ]
        }
        6 => {
            let (text, code) = qgcount(&[
                "construct",
                "psi",
                "--m",
                "4",
                "--phi",
                "fixtures/phi4.json",
            ]);
            vec![
                Check::eq("construct exit code", 0, code),
                Check::holds(
                    "construct psi bytes",
                    "identical to psi9.json",
                    text == fixtures.psi9_text,
                    text.len(),
                ),
            ]
        }
        _ => Vec::new(),
    }
}

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut stdout = std::io::stdout().lock();
    for criterion in criteria() {
        let mut outcome = criterion.run(&opts);
        outcome
            .checks
            .extend(binary_checks(outcome.id, &opts.fixtures));
        let timing = if outcome.within_budget() {
            ""
        } else {
            " [over time budget]"
        };
        writeln!(stdout, "{outcome}{timing}").unwrap();
        outcomes.push(outcome);
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed() || !o.within_budget())
        .map(|o| o.id)
        .collect();
    writeln!(
        stdout,
        "acceptance: {} of {} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    )
    .unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
