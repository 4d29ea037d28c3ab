//! Full acceptance run: every criterion at its stated tolerance, one summary
//! line per criterion, failing if any check fails.

use spgraph_core::verify::{run_suite, Suite, VerifyConfig};

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    let report = run_suite(Suite::Full, &cfg, |checks| {
        for c in checks {
            println!(
                "  [{}] {:<55} expected {:<22} got {:<22} {}",
                c.criterion,
                c.name,
                c.expected,
                c.got,
                if c.passed { "ok" } else { "FAIL" }
            );
        }
    })
    .expect("suite runs");

    for census in &report.archived {
        println!("census: {}", census.to_json());
    }
    println!();
    for (criterion, ok) in report.by_criterion() {
        let label = if criterion == "clt" {
            "census mean property".to_string()
        } else {
            format!("criterion {criterion}")
        };
        println!("{label}: {}", if ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<String> = report
        .failures()
        .map(|c| format!("[{}] {}: expected {}, got {}", c.criterion, c.name, c.expected, c.got))
        .collect();
    assert!(failed.is_empty(), "failing checks:\n{}", failed.join("\n"));
}
