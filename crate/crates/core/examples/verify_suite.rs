//! Runs the consistency laws on every built-in spec.

use farank::fusion::RankEngine;
use farank::registry::builtin_specs;
use farank::verify::verify_fa_properties;

fn main() {
    for (name, spec) in builtin_specs() {
        let report = verify_fa_properties(&RankEngine::new(spec), 3, 2);
        let cases: usize = report.laws.iter().map(|l| l.cases).sum();
        let status = if report.passed() { "ok" } else { "FAILED" };
        println!("{name:<34} {status:<6} {cases} cases");
        if !report.passed() {
            print!("{report}");
        }
    }
}
