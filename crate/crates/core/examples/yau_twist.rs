//! Twists sl2 by the Chevalley involution and checks the result.

use homcolor::testkit::fixtures;

fn main() {
    let sl2 = fixtures::sl2();
    let beta = fixtures::chevalley_involution();
    let t = sl2.yau_twist(&beta).expect("beta is an automorphism");
    println!("twisted brackets:");
    for (i, j, v) in t.canonical_brackets() {
        println!("  [{}, {}] = {v}", t.name_of(i), t.name_of(j));
    }
    println!("{}", t.validate());
    println!("multiplicative: {}", t.check_multiplicative().passed());
}
