//! Cohomology of the corpus with trivial coefficients.

use homcolor::cochains::{cohomology_space, Connection};
use homcolor::testkit::fixtures;

fn main() {
    for (name, g) in fixtures::corpus() {
        let conn = Connection::trivial(&g);
        let w = g.group().zero();
        let dims: Vec<String> = (0..=3)
            .map(|p| match cohomology_space(&conn, p, &w) {
                Ok(h) => h.dim().to_string(),
                Err(_) => "-".into(),
            })
            .collect();
        println!("{name:32} H^0..H^3 = {}", dims.join(" "));
    }
}
