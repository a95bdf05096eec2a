//! Monotone operators as multirelations. R_m is normal exactly when m is
//! modal, provided every (x] lies in Z(X). M3 shows the proviso is needed.

use slata::duality::{dual_space, multirel_of_monotone};
use slata::generate::{instance_rng, random_monotone, random_semilattice};
use slata::multirel::{check_ms_space, is_normal};
use slata::semilattice::{is_modal_operator, FiniteSemilattice};
use slata::BitSet;

fn main() -> slata::Result<()> {
    let mut rng = instance_rng(8, 0);
    let mut shown = 0;
    while shown < 5 {
        let a = random_semilattice(&mut rng, 6);
        let d = dual_space(&a);
        if !d.space.down_sets_saturated() {
            continue;
        }
        let m = random_monotone(&mut rng, &a);
        let r = multirel_of_monotone(&d, &m)?;
        println!(
            "|A| = {}, m = {:?}: mS-space {}, normal {}, modal {}",
            a.size(),
            m,
            check_ms_space(&r)?.passed(),
            is_normal(&r)?.passed(),
            is_modal_operator(&a, &m)
        );
        shown += 1;
    }

    let set = |xs: &[usize]| xs.iter().copied().collect::<BitSet>();
    let m3 = FiniteSemilattice::from_family(&[
        set(&[]),
        set(&[0]),
        set(&[1]),
        set(&[2]),
        set(&[0, 1, 2]),
    ])?;
    let d = dual_space(&m3);
    let id: Vec<usize> = (0..m3.size()).collect();
    let r = multirel_of_monotone(&d, &id)?;
    println!(
        "M3: (x] of point {:?} is not in Z; identity is modal {}, normal {}",
        d.space.unsaturated_down_set(),
        is_modal_operator(&m3, &id),
        is_normal(&r)?.passed()
    );
    Ok(())
}
