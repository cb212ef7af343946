//! Seeded extension data from the test generators, serialized.

use homcolor::extensions::check_data;
use homcolor::io;
use homcolor::testkit::datagen;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let gd = datagen::generate(seed);
    println!("regime {:?}, k = {}", gd.regime, gd.data.k);
    println!("checks pass: {}", check_data(&gd.data).unwrap().passed());
    print!("{}", io::serialize_extension(&io::ExtensionDocument::inline(gd.data.clone())));
}
