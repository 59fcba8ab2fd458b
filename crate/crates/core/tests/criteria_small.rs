//! The acceptance checks at reduced sizes, so regressions surface in the
//! ordinary test run of this crate.

use dfan_core::grammar::parse_element;
use dfan_core::{HomogenizedModule, ShiftMatrix};
use dfan_testkit::criteria;

fn module(gens: &[&str], n: usize) -> HomogenizedModule {
    let gens = gens
        .iter()
        .map(|g| parse_element(g, n, 1).unwrap())
        .collect();
    HomogenizedModule::new(gens, ShiftMatrix::zero(2, 1)).unwrap()
}

#[test]
fn fiber_example() {
    println!("{}", criteria::fiber_example().unwrap());
}

#[test]
fn ring_axioms() {
    println!("{}", criteria::ring_axioms(60, 11).unwrap());
}

#[test]
fn symbols_multiply() {
    println!("{}", criteria::symbol_multiplicativity(20, 3, 12).unwrap());
}

#[test]
fn division_contract() {
    println!("{}", criteria::divisions(30, 13).unwrap());
}

#[test]
fn euler_fan_is_one_cone() {
    println!(
        "{}",
        criteria::fan_matches_grid(&module(&["x1 d1 + x2 d2"], 2), Some(1)).unwrap()
    );
}

#[test]
fn three_cone_fan() {
    println!(
        "{}",
        criteria::fan_matches_grid(&module(&["d1 + x1 d2^2"], 2), Some(3)).unwrap()
    );
}

#[test]
fn iv_isomorphism() {
    println!("{}", criteria::iv_isomorphism(40, 14).unwrap());
}

#[test]
fn kernel_normalization() {
    println!("{}", criteria::kernel_normalizations(20, 15).unwrap());
}

#[test]
fn monomial_chains() {
    println!("{}", criteria::monomial_chains(10, 5, 16).unwrap());
}

#[test]
fn euler_flatness_small() {
    let r = criteria::euler_flatness(2).unwrap();
    println!(
        "{} degrees, {} elements, corrupted {}/{}",
        r.degrees, r.elements, r.corrupted_rejected, r.corrupted_total
    );
    assert!(r.elements > 0);
    assert!(r.corrupted_rejected > 0);
}
