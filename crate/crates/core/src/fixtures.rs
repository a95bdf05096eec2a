//! Small named instances used by tests, examples and the self-test goldens.

use crate::semilattice::{FiniteSemilattice, SemilatticeHom, Slata};

/// `0 < 1 < 2` with `i ≡ 0` and `d ≡ 2`.
pub fn chain3_slata() -> Slata {
    Slata::new(FiniteSemilattice::chain(3), vec![0, 0, 0], vec![2, 2, 2])
        .expect("constant adjunction")
}

/// `i = d = id` on the diamond.
pub fn identity_slata() -> Slata {
    let a = FiniteSemilattice::diamond();
    let id: Vec<usize> = (0..a.size()).collect();
    Slata::new(a, id.clone(), id).expect("identity adjunction")
}

/// The Boolean counterexample: `A = P({0,1})` with elements numbered by bit
/// mask, `r ≡ 0` on `{0,1}`, `f_* = r[-]`, `f^* = r⁻¹[-]` and `h = r⁻¹`.
///
/// `h` preserves `f^*` but not `f_*`: at `Z = {1}` (element 2),
/// `h(f_*(Z)) = {0,1}` while `f_*(h(Z)) = ∅`.
#[derive(Clone, Debug)]
pub struct BooleanExample {
    pub slata: Slata,
    pub hom: SemilatticeHom,
}

pub const BOOLEAN_F_LOWER: [usize; 4] = [0, 1, 1, 1];
pub const BOOLEAN_F_UPPER: [usize; 4] = [0, 3, 0, 3];

pub fn boolean_example() -> BooleanExample {
    let a = FiniteSemilattice::powerset(2);
    let slata = Slata::new(
        a.clone(),
        BOOLEAN_F_LOWER.to_vec(),
        BOOLEAN_F_UPPER.to_vec(),
    )
    .expect("f_* ⊣ f^*");
    let hom = SemilatticeHom::new(a.clone(), a, BOOLEAN_F_UPPER.to_vec())
        .expect("r⁻¹ preserves ∩ and top");
    BooleanExample { slata, hom }
}
