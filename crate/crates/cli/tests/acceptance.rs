//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::{Command, ExitCode};

use serde_json::Value;

fn report_all() -> (Vec<u8>, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_grpd")).arg("report-all").output().expect("grpd runs");
    (out.stdout, out.status.success())
}

fn detail(criteria: &[Value], id: u64) -> &Value {
    &criteria.iter().find(|c| c["id"] == id).expect("criterion present")["detail"]
}

/// Values computed by hand and frozen here, checked against the report.
fn frozen(criteria: &[Value]) -> Vec<(&'static str, bool)> {
    let sweep = |name: &str, t: u64| {
        detail(criteria, 2)
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["instance"] == name && r["sweep"]["grid"] == t)
            .map(|r| r["sweep"].clone())
            .unwrap()
    };
    // Every step of a path on a cycle has 3 choices, so |X|·3^T paths. A
    // two-piece G-path is a cut c in 0..=T, a first piece (|X|·3^c), a
    // connector (2) and a second piece from a fixed point (3^(T-c)):
    // (1 + 2(T+1))·|X|·3^T in all.
    let refl = sweep("reflection-c4", 3);
    let c6 = sweep("free-rotation-c6", 3);
    let y = detail(criteria, 4).as_array().unwrap();
    let morita = detail(criteria, 5)["induced"].as_array().unwrap();
    vec![
        ("reflection T=3 has 972 G-paths", refl["gpaths"] == 972),
        ("reflection T=3 compares 944784 pairs", refl["pairs"] == 944_784),
        ("free C6 T=3 has 1458 G-paths", c6["gpaths"] == 1458),
        (
            "50 Y_alpha samples per instance",
            y.iter().all(|r| r["sweep"]["samples"] == 50 && r["sweep"]["certified"] == 50),
        ),
        ("hexagon T=3 has 6·3^3 paths over 3·3^3", morita[3]["source_paths"] == 162 && morita[3]["target_paths"] == 81),
    ]
}

fn main() -> ExitCode {
    let (first, ok1) = report_all();
    let (second, ok2) = report_all();
    let report: Value = serde_json::from_slice(&first).expect("report is JSON");
    let criteria = report["result"]["criteria"].as_array().expect("criteria list").clone();
    let mut failed = 0;
    for id in 1..=11u64 {
        let c = criteria.iter().find(|c| c["id"] == id);
        let pass = c.is_some_and(|c| c["pass"] == true);
        let name = c.and_then(|c| c["name"].as_str()).unwrap_or("missing");
        println!("criterion {id:>2}: {} {name}", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    let same = first == second && !first.is_empty();
    println!("criterion 12: {} report-all is byte-identical across runs", if same { "PASS" } else { "FAIL" });
    failed += usize::from(!same);
    for (what, holds) in frozen(&criteria) {
        println!("  frozen: {} {what}", if holds { "ok  " } else { "FAIL" });
        failed += usize::from(!holds);
    }
    if !(ok1 && ok2) {
        println!("report-all exited with failure");
        failed += 1;
    }
    println!("acceptance: {} failure(s)", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
