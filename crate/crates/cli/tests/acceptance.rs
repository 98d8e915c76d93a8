//! Acceptance criteria, one pass/fail line each. Tolerances are exact
//! equality; runtimes are reported against their budgets.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polarcg_cli::verify::{self, VerifySuiteResult};

struct Line {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn summary(results: &[VerifySuiteResult]) -> String {
    results
        .iter()
        .map(|r| {
            format!(
                "{}: {}/{} exact, {} magnitude-only, {} failures, {} flagged",
                r.suite,
                r.exact,
                r.cases,
                r.magnitude_only,
                r.failures.len(),
                r.flagged.len()
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn suite_line(
    id: u32,
    name: &'static str,
    budget_secs: u64,
    run: impl FnOnce() -> Vec<VerifySuiteResult>,
    extra: impl FnOnce(&[VerifySuiteResult]) -> (bool, String),
) -> Line {
    let (results, elapsed) = timed(run);
    let (ok, note) = extra(&results);
    let mut detail = summary(&results);
    if !note.is_empty() {
        detail.push_str("; ");
        detail.push_str(&note);
    }
    for r in &results {
        for f in r.failures.iter().take(3) {
            let vals: Vec<String> = f.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            detail.push_str(&format!("; failure {}: {}", f.key, vals.join(", ")));
        }
    }
    Line {
        id,
        name,
        passed: ok && results.iter().all(|r| r.passed()),
        detail,
        elapsed,
        budget: Duration::from_secs(budget_secs),
    }
}

fn none(_: &[VerifySuiteResult]) -> (bool, String) {
    (true, String::new())
}

fn polarcg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_polarcg")).args(args).output().expect("run polarcg")
}

fn main() -> ExitCode {
    let mut lines = Vec::new();

    lines.push(suite_line(
        1,
        "closed 3F2 pipeline equals the oracle on mapped keys, 2j1, 2j2 <= 8",
        30,
        || vec![verify::verify_hypergeometric(8)],
        |r| {
            let flagged = &r[0].flagged;
            let listed = if flagged.is_empty() { "none".to_string() } else { flagged.join(", ") };
            (true, format!("flagged keys: {listed}"))
        },
    ));
    lines.push(suite_line(
        2,
        "calibrated theta-integral pipeline equals the oracle, 2j <= 6",
        30,
        || vec![verify::verify_gaunt(6)],
        none,
    ));
    lines.push(suite_line(
        3,
        "integral representation equals the oracle in magnitude, l1, l2 <= 2",
        10,
        || vec![verify::verify_laguerre_integral(4)],
        none,
    ));
    lines.push(suite_line(
        4,
        "sign-flip images share |3j|, 2j <= 8",
        60,
        || vec![verify::verify_symmetry(8)],
        |r| (true, r[0].notes.join("; ")),
    ));
    lines.push(suite_line(
        5,
        "generating functions: Laguerre n <= 6, a <= 4; 3j at order 8 for 2j <= 4; CG to degree 6",
        120,
        || verify::gf(4),
        none,
    ));
    lines.push(suite_line(
        6,
        "radial selection keeps only i = j = 0, 2j <= 6",
        10,
        || vec![verify::verify_radial(6)],
        none,
    ));
    lines.push(suite_line(
        7,
        "CG blocks orthogonal for 2j1, 2j2 <= 8; recoupling matrices orthogonal for 2j <= 3",
        60,
        || verify::orthogonality(8),
        none,
    ));
    lines.push(suite_line(
        8,
        "recoupling from generating functions equals the contraction in magnitude, 2j <= 3",
        300,
        || verify::recoupling(3),
        |r| {
            let n = r[0].nontrivial.unwrap_or(0);
            (n >= 20, format!("{n} nontrivial configurations (need >= 20)"))
        },
    ));

    let (out, elapsed) = timed(|| polarcg(&["verify", "reconcile", "--format", "json"]));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    let rows = rows.as_array().cloned().unwrap_or_default();
    let has = |formula: &str, variant: &str| {
        rows.iter()
            .any(|r| r["formula"] == formula && r["variant"] == variant && r["cases"].as_u64().unwrap_or(0) > 0)
    };
    let ok = out.status.code() == Some(0)
        && has("finite mu-sum", "as printed")
        && has("absolute-value map phase", "mapped-j2")
        && has("absolute-value map phase", "literal-j2");
    lines.push(Line {
        id: 9,
        name: "reconciliation report runs and exits 0",
        passed: ok,
        detail: format!("exit {:?}, {} rows", out.status.code(), rows.len()),
        elapsed,
        budget: Duration::from_secs(60),
    });

    let (outs, elapsed) = timed(|| {
        vec![
            polarcg(&["table", "--max-2j", "6"]),
            polarcg(&["table", "--max-2j", "6"]),
            polarcg(&["--workers", "1", "table", "--max-2j", "6"]),
            polarcg(&["--workers", "4", "table", "--max-2j", "6"]),
        ]
    });
    let first = &outs[0].stdout;
    let ok = outs.iter().all(|o| o.status.code() == Some(0) && &o.stdout == first) && !first.is_empty();
    lines.push(Line {
        id: 10,
        name: "table --max-2j 6 byte-identical across runs and worker counts",
        passed: ok,
        detail: format!("{} bytes, {} rows", first.len(), first.iter().filter(|b| **b == b'\n').count().saturating_sub(1)),
        elapsed,
        budget: Duration::from_secs(60),
    });

    let mut all = true;
    for l in &lines {
        let within = l.elapsed <= l.budget;
        println!(
            "{} criterion {:>2}: {} [{:.2}s, budget {}s{}] {}",
            if l.passed { "PASS" } else { "FAIL" },
            l.id,
            l.name,
            l.elapsed.as_secs_f64(),
            l.budget.as_secs(),
            if within { "" } else { ", over budget" },
            l.detail
        );
        all &= l.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
