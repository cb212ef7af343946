//! Builds the extension of the plane by a cocycle and extracts the data back.

use homcolor::cochains::GradedCochain;
use homcolor::extensions::{build_extension, check_sequence, extract_data, ExtensionData};
use homcolor::testkit::fixtures;
use homcolor::{GradedVector, Matrix};

fn main() {
    let g = fixtures::abelian(2);
    let h = fixtures::abelian(1);
    let mut rho = GradedCochain::zero(2, g.group().zero(), 1);
    rho.set(vec![0, 1], GradedVector::basis(0));
    let data = ExtensionData::new(g, h, 1, vec![Matrix::zeros(1, 1); 2], rho).unwrap();

    let seq = build_extension(&data).unwrap();
    println!("middle algebra:");
    for (i, j, v) in seq.e.canonical_brackets() {
        println!("  [{}, {}] = {v}", seq.e.name_of(i), seq.e.name_of(j));
    }
    println!("{}", check_sequence(&seq));

    let (back, report) = extract_data(&seq, seq.s.as_ref().unwrap(), 1).unwrap();
    println!("{report}");
    println!("recovered the same data: {}", back == data);
}
