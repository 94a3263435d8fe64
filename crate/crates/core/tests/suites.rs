mod common;

use common::suites;

fn pass(outcome: suites::Outcome) {
    if let Err(e) = outcome {
        panic!("{e}");
    }
}

#[test]
fn characters_are_homomorphisms() {
    pass(suites::homomorphy(120, 11));
}

#[test]
fn conjugate_sign_laws() {
    pass(suites::conjugate_sign_laws(60, 12));
}

#[test]
fn self_dual_characters_are_hilbert_pairings() {
    pass(suites::hilbert_pairing_law(60, 13));
}

#[test]
fn consistency_checks_pass_and_detect_faults() {
    pass(suites::consistency(40, 14));
}

#[test]
fn unramified_closed_form() {
    pass(suites::unramified_prop(8));
}

#[test]
fn classification_round_trip() {
    pass(suites::classification_round_trip(8));
}

#[test]
fn coherence_parity() {
    pass(suites::coherence_parity(500, 15));
}

#[test]
fn axiom_fixtures_are_isolated() {
    pass(suites::axiom_detector());
}
