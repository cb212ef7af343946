//! Runs the axiom checks on every built-in fixture and on one broken table.

use homcolor::testkit::fixtures;
use homcolor::GradedVector;

fn main() {
    for (name, a) in fixtures::corpus() {
        let r = a.validate();
        println!("{name:32} dim {}  {}", a.dim(), if r.passed() { "ok" } else { "FAIL" });
    }

    // Break skew symmetry of [e,f] in sl2.
    let sl2 = fixtures::sl2();
    let broken = sl2.with_table_entry(1, 2, GradedVector::new());
    println!("\nsl2 with [e,f] = 0 on one side:\n{}", broken.check_skew());
}
