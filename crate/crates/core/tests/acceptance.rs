//! Acceptance criteria 1 to 9, one line each.

mod common;

use common::Outcome;

fn line(id: &str, title: &str, o: &Outcome) -> bool {
    println!("[{}] criterion {id}: {title} -- {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    o.passed
}

#[test]
fn acceptance() {
    let results = [
        line("1", "axiom validation and located perturbations", &common::criterion_1()),
        line("2", "extracted data satisfy the curvature and Bianchi identities", &common::criterion_2(100)),
        line("3", "delta_phi delta_phi psi = [rho, psi]", &common::criterion_3(50)),
        line("4", "flatness on center-valued cochains and classical reduction", &common::criterion_4(40)),
        line("5", "round trips and equivalences by b", &common::criterion_5(60)),
        line("6", "second cohomology values against the oracle", &common::criterion_6()),
        line("7a", "valid data have trivial obstruction and build", &common::criterion_7a()),
        line("7b", "nonzero classes admit no nu", &common::criterion_7b()),
        line("7c", "obstruction class independent of the lift", &common::criterion_7c()),
        line("8", "extensions of the plane by the line", &common::criterion_8()),
        line("9", "canonical formats and deterministic CLI", &common::criterion_9()),
    ];
    assert!(results.iter().all(|&r| r), "some acceptance criteria failed");
}
