//! The obstruction class of a pair (phi, rho) and its witness.

use homcolor::cochains::GradedCochain;
use homcolor::extensions::obstruction_class;
use homcolor::testkit::fixtures;
use homcolor::{GradedVector, Matrix};

fn main() {
    let g = fixtures::heisenberg();
    let h = fixtures::abelian(1);
    let phi = vec![Matrix::zeros(1, 1); 3];
    let mut rho = GradedCochain::zero(2, g.group().zero(), 1);
    rho.set(vec![0, 2], GradedVector::basis(0));
    let o = obstruction_class(&g, &h, 1, &phi, &rho).unwrap();
    println!("lambda zero: {}", o.lambda.is_zero());
    println!("class trivial: {}", o.trivial);
    println!("{}", o.preconditions);
}
