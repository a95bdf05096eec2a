//! Dual space of the 3-chain and of the diamond, with β.
//!
//!     cargo run --example dual_space

use slata::duality::dual_space;
use slata::semilattice::FiniteSemilattice;

fn show(name: &str, a: &FiniteSemilattice) {
    let d = dual_space(a);
    println!(
        "{name}: {} elements, {} irreducible filters",
        a.size(),
        d.points()
    );
    for (k, f) in d.filters.iter().enumerate() {
        println!("  P{k} = {f}");
    }
    for (x, b) in d.beta.iter().enumerate() {
        println!("  beta({x}) = {b}");
    }
    let closed: Vec<String> = d
        .space
        .subbasic_closed()
        .iter()
        .map(|u| u.to_string())
        .collect();
    println!("  S(X) = {}", closed.join(" "));
    println!("  beta is an isomorphism: {}", d.beta_report().passed());
}

fn main() {
    show("3-chain", &FiniteSemilattice::chain(3));
    show("diamond", &FiniteSemilattice::diamond());
    show("one element", &FiniteSemilattice::one_element());
}
