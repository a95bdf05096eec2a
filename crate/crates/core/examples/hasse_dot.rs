//! Graphviz output for a poset, a dual space and a relation. Pipe into `dot -Tsvg`.

use slata::dot;
use slata::duality::{dual_space, functor_m};
use slata::fixtures::chain3_slata;
use slata::order::FinitePoset;
use slata::semilattice::FiniteSemilattice;

fn main() -> slata::Result<()> {
    print!("{}", dot::hasse(&FinitePoset::chain(3)));
    print!(
        "{}",
        dot::space(&dual_space(&FiniteSemilattice::diamond()).space)?
    );
    let image = functor_m(&chain3_slata())?;
    print!("{}", dot::relation(image.relspace.relation()));
    Ok(())
}
