//! One line per acceptance criterion, with the default tolerances and
//! sample counts. Exits nonzero if any criterion fails or overruns its
//! time budget.

use qsets::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for &(id, ..) in CRITERIA.iter() {
        let c = run_criterion(id, &cfg).expect("listed criterion");
        println!("{}", c.line());
        if !(c.passed && c.within_budget()) {
            println!("{}", c.report);
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
