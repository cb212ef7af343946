//! Twisted derivation spaces, inner derivations and outer quotients.

use homcolor::derivations::{candidate_degrees, derivation_space, inner_space, outer_quotient};
use homcolor::testkit::fixtures;

fn main() {
    for (name, a) in [("heisenberg", fixtures::heisenberg()), ("klein", fixtures::klein_color_algebra())] {
        for k in 0..2 {
            for d in candidate_degrees(&a) {
                let all = derivation_space(&a, k, &d).unwrap();
                if all.dim() == 0 {
                    continue;
                }
                let inner = inner_space(&a, k, &d).unwrap();
                let outer = outer_quotient(&a, k, &d).unwrap();
                println!("{name} k={k} degree {d}: dim Der {}, inner {}, outer {}", all.dim(), inner.dim(), outer.dim());
            }
        }
    }
}
