//! Shifts a generated datum by a linear map and verifies the equivalence.

use homcolor::extensions::{build_extension, check_extension_equivalence, equivalence_map, transform_data_by_b};
use homcolor::testkit::datagen;

fn main() {
    for seed in 0..4 {
        let gd = datagen::generate(seed);
        let d = &gd.data;
        let shifted = transform_data_by_b(d, &gd.b).unwrap();
        let e1 = build_extension(d).unwrap();
        let e2 = build_extension(&shifted).unwrap();
        let f = equivalence_map(d.h.dim(), d.g.dim(), &gd.b);
        let r = check_extension_equivalence(&e1, &e2, &f);
        println!("seed {seed} ({:?}): equivalence {}", gd.regime, if r.passed() { "verified" } else { "FAILED" });
    }
}
