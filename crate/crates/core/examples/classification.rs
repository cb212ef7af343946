//! Extensions of small abelian algebras by a line, one per cohomology class.

use homcolor::extensions::{build_extension, describe_rho, parameterize_extensions};
use homcolor::testkit::fixtures;
use homcolor::Matrix;

fn main() {
    for n in 1..=3 {
        let g = fixtures::abelian(n);
        let h = fixtures::abelian(1);
        let c = parameterize_extensions(&g, &h, 1, &vec![Matrix::zeros(1, 1); n]).unwrap();
        println!("abelian({n}) by a line: dim H^2 = {}", c.cohomology.dim());
        for d in &c.data {
            let e = build_extension(d).unwrap().e;
            let terms: Vec<String> = describe_rho(d).iter().map(|(t, v)| format!("{t:?} -> {v}")).collect();
            println!("  rho: {}  center of e has dim {}", terms.join(", "), e.center().len());
        }
    }
}
