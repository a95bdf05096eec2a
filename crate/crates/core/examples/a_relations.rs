//! The functor M on a random Slata: N_d is an A-relation whose box operators
//! recover d and i.

use slata::duality::{functor_m, functor_r, slata_iso_report};
use slata::generate::{instance_rng, random_slata};

fn main() -> slata::Result<()> {
    // First instance with a non-trivial d on at least five elements.
    let s = (0..)
        .map(|k| random_slata(&mut instance_rng(5, k), 6))
        .find(|s| s.algebra.size() >= 5 && s.d.iter().enumerate().any(|(x, &y)| x != y))
        .unwrap();
    println!(
        "A has {} elements, i = {:?}, d = {:?}",
        s.algebra.size(),
        s.i,
        s.d
    );

    let image = functor_m(&s)?;
    let t = image.relspace.relation();
    println!("N_d pairs = {:?}", t.pairs());
    println!(
        "A-relation: {}, meet-relation: {}",
        t.is_a_relation()?,
        t.is_meet_relation()?
    );
    println!("box  = {:?}", t.box_table()?);
    println!("box* = {:?}", t.box_star_table()?);

    let report = slata_iso_report(&s, &image);
    println!("beta preserves i and d: {}", report.passed());
    let back = functor_r(&image.relspace)?;
    println!("R(M(A)) has {} elements", back.algebra.size());
    Ok(())
}
