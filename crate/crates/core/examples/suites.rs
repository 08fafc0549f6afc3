//! The verification suites behind `bsinterp check`, run from code.

use bsinterp::suites::{run_suites, Suite, SuiteConfig};

fn main() -> bsinterp::Result<()> {
    let cfg = SuiteConfig {
        ks: vec![2, 3],
        samples: 200,
        mr_samples: 50,
        ..SuiteConfig::default()
    };
    let reports = run_suites(&[Suite::Facts, Suite::Group, Suite::Nonstd], &cfg)?;
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!("{:>7} k={}: {:>6} checked, {} skipped, {status}", r.suite, r.k, r.checked, r.skipped);
        for (check, n) in &r.counts {
            println!("          {check}: {n}");
        }
    }
    Ok(())
}
