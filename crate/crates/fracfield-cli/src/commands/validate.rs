//! `fracfield validate <suite> [--seed N] [--out DIR]`: run a module's
//! invariant suite and emit a machine-readable report. The report carries
//! no timing, so identical seeds give byte-identical reports.

use std::path::Path;
use std::time::Instant;

use fracfield::validate::run_suite;

pub fn run(suite: &str, seed: u64, out: Option<&Path>) -> anyhow::Result<bool> {
    let started = Instant::now();
    let report = run_suite(suite, seed)?;
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {}: measured {:e} vs bound {:e} ({})",
            c.name, c.measured, c.bound, c.detail
        );
    }
    println!(
        "suite {}: {} passed, {} failed (seed {})",
        report.suite, report.passed, report.failed, seed
    );
    let out_dir = super::resolve_out_dir(out.and_then(|p| p.to_str()));
    std::fs::create_dir_all(&out_dir)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    let path = out_dir.join(format!("validate_{}.json", report.suite));
    std::fs::write(&path, text)?;
    eprintln!(
        "report written to {} in {:.1}s",
        path.display(),
        started.elapsed().as_secs_f64()
    );
    Ok(report.all_passed())
}
