//! P and Q between RelS-spaces and SlataSpaces are mutually inverse on the
//! nose. Compares canonical JSON encodings.

use slata::duality::{functor_p, functor_q};
use slata::generate::{instance_rng, random_relspace};

fn main() -> slata::Result<()> {
    let (mut checked, mut equal) = (0, 0);
    for k in 0..40 {
        let rs = random_relspace(&mut instance_rng(13, k), 7)?;
        if !rs.space().down_sets_saturated() {
            continue;
        }
        let p = functor_p(&rs)?;
        let q = functor_q(&p)?;
        let same_rel = serde_json::to_string(&q.relation().to_json()).unwrap()
            == serde_json::to_string(&rs.relation().to_json()).unwrap();
        let same_ss = serde_json::to_string(&functor_p(&q)?.to_json()).unwrap()
            == serde_json::to_string(&p.to_json()).unwrap();
        checked += 1;
        equal += usize::from(same_rel && same_ss);
    }
    println!("Q(P(x)) = x and P(Q(P(x))) = P(x) on {equal} of {checked} spaces");
    Ok(())
}
