//! Seeded random structures. Every generator is deterministic in its RNG
//! state; callers derive one stream per instance with [`instance_rng`].

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::relations::{BinaryRelation, RelSpace};
use crate::semilattice::{is_modal_operator, FiniteSemilattice, SemilatticeJson, Slata};
use crate::sspace::FiniteSpace;

pub const RNG_NAME: &str = "ChaCha8Rng";

/// Independent stream `index` of the generator seeded by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn close_under_meet(family: &mut Vec<BitSet>) {
    let mut k = 0;
    while k < family.len() {
        for j in 0..k {
            let m = family[j] & family[k];
            if !family.contains(&m) {
                family.push(m);
            }
        }
        k += 1;
    }
}

/// A random semilattice with `1..=max_size` elements, built as an
/// ∩-closed family of subsets of a small ground set, with shuffled labels.
pub fn random_semilattice<R: Rng>(rng: &mut R, max_size: usize) -> FiniteSemilattice {
    let max_size = max_size.max(1);
    let target = rng.gen_range(1..=max_size);
    let mut ground = 0;
    while (1usize << ground) < target {
        ground += 1;
    }
    ground = (ground + rng.gen_range(0..=2)).min(6);
    let full = BitSet::full(ground);
    let mut family = vec![full];
    let mut tries = 0;
    while family.len() < target && tries < 64 {
        tries += 1;
        let candidate = BitSet::from_bits(rng.gen_range(0..=full.bits()));
        if family.contains(&candidate) {
            continue;
        }
        let mut next = family.clone();
        next.push(candidate);
        close_under_meet(&mut next);
        if next.len() <= max_size {
            family = next;
        }
    }
    family.shuffle(rng);
    FiniteSemilattice::from_family(&family).expect("∩-closed family with greatest member")
}

/// Relabels the elements of `a` by `perm`.
pub fn relabel(a: &FiniteSemilattice, perm: &[usize]) -> FiniteSemilattice {
    let n = a.size();
    let mut meet = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            meet[perm[x]][perm[y]] = perm[a.meet(x, y)];
        }
    }
    FiniteSemilattice::new(&SemilatticeJson {
        size: n,
        meet,
        top: perm[a.top()],
    })
    .expect("relabelled semilattice")
}

/// Randomised backtracking over maps `A → B` (every element's candidates in
/// shuffled order), accepting the first map that satisfies `consistent` on
/// every prefix. `None` once `budget` nodes have been explored.
fn search_map<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    fixed: &[(usize, usize)],
    budget: usize,
    consistent: &dyn Fn(&[Option<usize>]) -> bool,
) -> Option<Vec<usize>> {
    let mut assign = vec![None; n];
    for &(a, b) in fixed {
        assign[a] = Some(b);
    }
    if !consistent(&assign) {
        return None;
    }
    let order: Vec<usize> = (0..n).filter(|a| assign[*a].is_none()).collect();
    let mut candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|_| {
            let mut c: Vec<usize> = (0..m).collect();
            c.shuffle(rng);
            c
        })
        .collect();
    let mut cursor = vec![0usize; order.len()];
    let mut depth = 0;
    let mut explored = 0;
    loop {
        if depth == order.len() {
            return Some(assign.into_iter().map(|v| v.expect("complete")).collect());
        }
        if cursor[depth] == m {
            assign[order[depth]] = None;
            cursor[depth] = 0;
            if depth == 0 {
                return None;
            }
            depth -= 1;
            continue;
        }
        explored += 1;
        if explored > budget {
            return None;
        }
        assign[order[depth]] = Some(candidates[depth][cursor[depth]]);
        cursor[depth] += 1;
        if consistent(&assign) {
            depth += 1;
            if depth < order.len() {
                candidates[depth].shuffle(rng);
            }
        } else {
            assign[order[depth]] = None;
        }
    }
}

const SEARCH_BUDGET: usize = 200_000;

fn monotone_ok(a: &FiniteSemilattice, f: &[Option<usize>]) -> bool {
    (0..a.size()).all(|x| {
        let Some(fx) = f[x] else { return true };
        a.up(x).iter().all(|y| f[y].is_none_or(|fy| a.leq(fx, fy)))
    })
}

/// Meet preservation on the assigned part, with `h(top) = top` fixed by the caller.
fn hom_ok(a: &FiniteSemilattice, b: &FiniteSemilattice, h: &[Option<usize>]) -> bool {
    (0..a.size()).all(|x| {
        let Some(hx) = h[x] else { return true };
        (0..a.size()).all(|y| match (h[y], h[a.meet(x, y)]) {
            (Some(hy), Some(hxy)) => b.meet(hx, hy) == hxy,
            _ => true,
        })
    })
}

/// `h(src(a)) = tgt(h(a))` wherever both sides are assigned.
fn commutes(h: &[Option<usize>], src: &[usize], tgt: &[usize]) -> bool {
    (0..h.len()).all(|a| match (h[a], h[src[a]]) {
        (Some(ha), Some(hsa)) => tgt[ha] == hsa,
        _ => true,
    })
}

pub fn random_monotone<R: Rng>(rng: &mut R, a: &FiniteSemilattice) -> Vec<usize> {
    search_map(rng, a.size(), a.size(), &[], SEARCH_BUDGET, &|f| {
        monotone_ok(a, f)
    })
    .expect("constant maps are monotone")
}

/// A random operator preserving meets and top. Each one has a left adjoint.
pub fn random_modal<R: Rng>(rng: &mut R, a: &FiniteSemilattice) -> Vec<usize> {
    search_map(
        rng,
        a.size(),
        a.size(),
        &[(a.top(), a.top())],
        SEARCH_BUDGET,
        &|f| hom_ok(a, a, f),
    )
    .expect("the constant-top map is modal")
}

/// A monotone operator that fails to be modal, by rejection.
pub fn random_non_modal<R: Rng>(
    rng: &mut R,
    a: &FiniteSemilattice,
    attempts: usize,
) -> Result<Vec<usize>> {
    for _ in 0..attempts {
        let m = random_monotone(rng, a);
        if !is_modal_operator(a, &m) {
            return Ok(m);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no non-modal monotone operator in {attempts} attempts"
    )))
}

/// A random Slata: a random modal `d` with its computed left adjoint.
pub fn random_slata<R: Rng>(rng: &mut R, max_size: usize) -> Slata {
    let a = random_semilattice(rng, max_size);
    let d = random_modal(rng, &a);
    Slata::from_right_adjoint(a, d)
        .expect("modal operators on finite semilattices have left adjoints")
}

/// A random poset on `n` points: a random DAG on a shuffled linear order,
/// transitively closed.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinitePoset {
    let mut lin: Vec<usize> = (0..n).collect();
    lin.shuffle(rng);
    let mut up: Vec<BitSet> = (0..n).map(BitSet::singleton).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                up[lin[i]].insert(lin[j]);
            }
        }
    }
    for _ in 0..n {
        for x in 0..n {
            let reach = up[x].iter().fold(up[x], |acc, y| acc | up[y]);
            up[x] = reach;
        }
    }
    FinitePoset::from_upsets(up).expect("transitive closure of a DAG")
}

/// `⟨Up(P), ∩, P⟩` with `i(U) = ↑f[U]` and `d(V) = f⁻¹[V]` for a monotone
/// `f : P → P`. `None` when `Up(P)` exceeds `max_size`.
pub fn upset_slata<R: Rng>(rng: &mut R, points: usize, max_size: usize) -> Option<Slata> {
    let p = random_poset(rng, points);
    let ups = p.upsets();
    if ups.len() > max_size {
        return None;
    }
    let f = search_map(rng, points, points, &[], SEARCH_BUDGET, &|f| {
        (0..points).all(|x| {
            let Some(fx) = f[x] else { return true };
            p.principal_upset(x)
                .unwrap()
                .iter()
                .all(|y| f[y].is_none_or(|fy| p.leq(fx, fy)))
        })
    })?;
    let index = |s: BitSet| ups.iter().position(|&u| u == s).expect("upset");
    let algebra = FiniteSemilattice::from_family(&ups).ok()?;
    let i = ups
        .iter()
        .map(|&u| index(p.upward_closure(u.map(|x| f[x]))))
        .collect();
    let d = ups
        .iter()
        .map(|&v| index((0..points).filter(|&x| v.contains(f[x])).collect()))
        .collect();
    Slata::new(algebra, i, d).ok()
}

/// A random semilattice homomorphism `A → B`, optionally also commuting with
/// the given operator pairs `(op_A, op_B)`.
pub fn random_hom<R: Rng>(
    rng: &mut R,
    a: &FiniteSemilattice,
    b: &FiniteSemilattice,
    ops: &[(&[usize], &[usize])],
) -> Option<Vec<usize>> {
    search_map(
        rng,
        a.size(),
        b.size(),
        &[(a.top(), b.top())],
        SEARCH_BUDGET,
        &|h| hom_ok(a, b, h) && ops.iter().all(|(s, t)| commutes(h, s, t)),
    )
}

/// A random S-space: the dual of a random semilattice, with shuffled points.
pub fn random_space<R: Rng>(rng: &mut R, max_size: usize) -> FiniteSpace {
    let a = random_semilattice(rng, max_size);
    let dual = crate::duality::dual_space(&a);
    let mut perm: Vec<usize> = (0..dual.points()).collect();
    perm.shuffle(rng);
    dual.space.permuted(&perm).expect("permutation")
}

/// Relabels the points of a RelS-space by `perm`.
pub fn permute_relspace(rs: &RelSpace, perm: &[usize]) -> Result<RelSpace> {
    let space = Arc::new(rs.space().permuted(perm)?);
    let t = rs.relation();
    let mut rows = vec![BitSet::EMPTY; perm.len()];
    for (x, &row) in t.rows().iter().enumerate() {
        rows[perm[x]] = row.map(|y| perm[y]);
    }
    RelSpace::new(BinaryRelation::new(space.clone(), space, rows)?)
}

/// A random RelS-space: `M` applied to a random Slata, with shuffled points.
pub fn random_relspace<R: Rng>(rng: &mut R, max_size: usize) -> Result<RelSpace> {
    let slata = random_slata(rng, max_size);
    let image = crate::duality::functor_m(&slata)?;
    let mut perm: Vec<usize> = (0..image.bundle.points()).collect();
    perm.shuffle(rng);
    permute_relspace(&image.relspace, &perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{is_monotone_operator, validate_slata};

    #[test]
    fn generators_respect_bounds() {
        let mut rng = instance_rng(7, 0);
        for _ in 0..50 {
            let a = random_semilattice(&mut rng, 6);
            assert!(a.size() <= 6);
            let d = random_modal(&mut rng, &a);
            assert!(is_modal_operator(&a, &d));
            let m = random_monotone(&mut rng, &a);
            assert!(is_monotone_operator(&a, &m));
        }
    }

    #[test]
    fn streams_are_deterministic() {
        let a = random_semilattice(&mut instance_rng(3, 5), 7);
        let b = random_semilattice(&mut instance_rng(3, 5), 7);
        assert_eq!(a, b);
    }

    #[test]
    fn upset_slatas_validate() {
        let mut rng = instance_rng(11, 0);
        let mut made = 0;
        for _ in 0..40 {
            if let Some(s) = upset_slata(&mut rng, 3, 8) {
                assert!(validate_slata(&s.algebra, &s.i, &s.d).passed());
                made += 1;
            }
        }
        assert!(made > 0);
    }

    #[test]
    fn random_spaces_are_verified() {
        let mut rng = instance_rng(5, 1);
        for _ in 0..20 {
            assert!(random_space(&mut rng, 6).is_verified());
        }
    }

    #[test]
    fn random_relspaces_certify() {
        let mut rng = instance_rng(9, 2);
        for _ in 0..20 {
            random_relspace(&mut rng, 6).unwrap();
        }
    }
}
