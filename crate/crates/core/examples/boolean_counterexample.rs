//! A homomorphism that commutes with the modal operator but not with its
//! left adjoint, on the four-element Boolean algebra.

use slata::fixtures::boolean_example;
use slata::semilattice::{check_hom, slata_hom_criterion, HomKind};

fn main() -> slata::Result<()> {
    let ex = boolean_example();
    let s = &ex.slata;
    println!("i = {:?}, d = {:?}, h = {:?}", s.i, s.d, ex.hom.map);

    let modal = check_hom(&ex.hom, HomKind::Modal, &[&s.d], &[&s.d])?;
    println!("modal hom: {}", modal.holds);

    let full = check_hom(&ex.hom, HomKind::Slata, &[&s.i, &s.d], &[&s.i, &s.d])?;
    println!("Slata hom: {}", full.holds);
    for w in &full.operator_failures {
        println!("  {w}");
    }
    println!("criterion: {}", slata_hom_criterion(&ex.hom, s, s)?);
    Ok(())
}
