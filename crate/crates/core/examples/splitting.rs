//! Looks for a splitting of extensions with abelian kernel.

use homcolor::cochains::GradedCochain;
use homcolor::extensions::{split_solve, split_verify, ExtensionData};
use homcolor::scalar::q;
use homcolor::testkit::fixtures;
use homcolor::{GradedVector, Matrix};

fn main() {
    let g = fixtures::sl2();
    let h = fixtures::abelian(1);
    let phi = vec![Matrix::zeros(1, 1); 3];
    // A coboundary on sl2: rho(x,y) = -c([x,y]) for c = h*.
    let mut rho = GradedCochain::zero(2, g.group().zero(), 1);
    rho.set(vec![1, 2], GradedVector::term(0, q(-1)));
    let d = ExtensionData::new(g, h, 1, phi, rho).unwrap();
    match split_solve(&d).unwrap() {
        Some(b) => {
            let row: Vec<String> = b.row(0).iter().map(|x| x.to_string()).collect();
            println!("splits with b = [{}]; verified {}", row.join(", "), split_verify(&d, &b).unwrap());
        }
        None => println!("does not split"),
    }

    let plane = fixtures::abelian(2);
    let mut rho = GradedCochain::zero(2, plane.group().zero(), 1);
    rho.set(vec![0, 1], GradedVector::basis(0));
    let d = ExtensionData::new(plane, fixtures::abelian(1), 1, vec![Matrix::zeros(1, 1); 2], rho).unwrap();
    println!("plane by the line with rho = e1* ^ e2*: splits {}", split_solve(&d).unwrap().is_some());
}
