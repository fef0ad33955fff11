use arithzeta::suites::{self, SuiteConfig};
fn main() {
    let cfg = SuiteConfig::default();
    for name in ["classical", "quadfield", "variety", "global", "witt"] {
        let t = std::time::Instant::now();
        let report = suites::run_suite(name, &cfg).unwrap();
        let fails: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.status == arithzeta::report::Status::Fail)
            .map(|e| format!("{} [{}]", e.id, e.params))
            .collect();
        println!(
            "{name}: {} entries, {} failures {:?} in {:?}",
            report.entries.len(),
            fails.len(),
            fails,
            t.elapsed()
        );
    }
}
