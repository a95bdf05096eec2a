//! Meet-relations between dual spaces: N_h for homomorphisms, composition
//! by ∗, and the box operators.

use slata::duality::{dual_space, relation_of_hom_between};
use slata::generate::{instance_rng, random_hom, random_semilattice};
use slata::relations::{star_compose, BinaryRelation};
use slata::semilattice::SemilatticeHom;

fn main() -> slata::Result<()> {
    // First pair of algebras with at least four elements each and a hom between them.
    let (a, b, map) = (0..)
        .find_map(|k| {
            let mut rng = instance_rng(3, k);
            let a = random_semilattice(&mut rng, 6);
            let b = random_semilattice(&mut rng, 6);
            if a.size() < 4 || b.size() < 4 {
                return None;
            }
            random_hom(&mut rng, &a, &b, &[])
                .filter(|m| m.iter().collect::<std::collections::BTreeSet<_>>().len() > 2)
                .map(|m| (a, b, m))
        })
        .unwrap();
    let (da, db) = (dual_space(&a), dual_space(&b));
    let h = SemilatticeHom::new(a.clone(), b.clone(), map)?;
    let n = relation_of_hom_between(&h, &da, &db)?;
    println!("h = {:?}", h.map);
    println!("N_h pairs = {:?}", n.pairs());
    println!("meet-relation: {}", n.is_meet_relation()?);

    // ⊒ is the identity for ∗.
    let sq_b = BinaryRelation::specialization(db.space.clone())?;
    let sq_a = BinaryRelation::specialization(da.space.clone())?;
    println!("N_h * ⊒ = N_h: {}", star_compose(&n, &sq_b)? == n);
    println!("⊒ * N_h = N_h: {}", star_compose(&sq_a, &n)? == n);
    println!("box table S(A-side) <- S(B-side): {:?}", n.box_table()?);
    Ok(())
}
