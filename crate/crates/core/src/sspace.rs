//! Finite S-spaces: a point count plus a subbase `𝒦` of point-sets.
//!
//! Derived families are kept in canonical order (ascending packed value):
//! `S(X)` the complements of subbase members, `𝒞` the closure system they
//! generate, and `𝒵` the saturated subbasic sets.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bitset::{all_subsets, BitSet, CAPACITY};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::report::{Check, Report};
use crate::semilattice::FiniteSemilattice;

pub const DEFAULT_S4_LIMIT: usize = 12;

/// Largest subbase for which `𝒵` is recomputed from its definition and
/// compared against the subbase on construction.
const LITERAL_SATURATION_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: usize,
    pub subbase: Vec<Vec<usize>>,
}

#[derive(Debug)]
struct Derived {
    closed: Vec<BitSet>,
    closure_system: Vec<BitSet>,
    saturated: Vec<BitSet>,
}

#[derive(Debug)]
pub struct FiniteSpace {
    points: usize,
    subbase: Vec<BitSet>,
    derived: OnceLock<Derived>,
    verification: OnceLock<SpaceReport>,
}

impl Clone for FiniteSpace {
    fn clone(&self) -> Self {
        FiniteSpace::canonical(self.points, self.subbase.clone())
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.subbase == other.subbase
    }
}

impl Eq for FiniteSpace {}

/// Per-axiom results. `s4_skipped` is set when `|S(X)|` exceeded the limit;
/// such a space is never accepted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceReport {
    pub report: Report,
    pub s4_skipped: bool,
}

impl SpaceReport {
    pub fn accepted(&self) -> bool {
        self.report.passed()
    }
}

impl FiniteSpace {
    pub fn new(points: usize, subbase: Vec<BitSet>) -> Result<Self> {
        if points > CAPACITY {
            return Err(Error::Capacity {
                what: "points",
                needed: points,
                capacity: CAPACITY,
            });
        }
        let carrier = BitSet::full(points);
        if let Some(u) = subbase.iter().find(|u| !u.is_subset(carrier)) {
            return Err(Error::InvalidSpace(format!(
                "subbase member {u} exceeds {points} points"
            )));
        }
        let mut subbase = subbase;
        subbase.sort();
        subbase.dedup();
        if subbase.first() != Some(&BitSet::EMPTY) {
            return Err(Error::InvalidSpace(
                "the empty set must belong to the subbase".into(),
            ));
        }
        let cover = subbase.iter().fold(BitSet::EMPTY, |acc, &u| acc | u);
        if cover != carrier {
            return Err(Error::InvalidSpace(format!(
                "subbase does not cover the space; missing {}",
                carrier - cover
            )));
        }
        if subbase.len() > CAPACITY {
            return Err(Error::Capacity {
                what: "subbase",
                needed: subbase.len(),
                capacity: CAPACITY,
            });
        }
        Ok(Self::canonical(points, subbase))
    }

    fn canonical(points: usize, subbase: Vec<BitSet>) -> Self {
        FiniteSpace {
            points,
            subbase,
            derived: OnceLock::new(),
            verification: OnceLock::new(),
        }
    }

    /// The empty space, dual of the one-element semilattice.
    pub fn empty() -> Self {
        Self::canonical(0, vec![BitSet::EMPTY])
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self> {
        let mut subbase = Vec::with_capacity(json.subbase.len());
        for member in &json.subbase {
            if let Some(&p) = member.iter().find(|&&p| p >= json.points) {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    bound: json.points,
                });
            }
            subbase.push(member.iter().copied().collect());
        }
        Self::new(json.points, subbase)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            points: self.points,
            subbase: self.subbase.iter().map(|u| u.to_vec()).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn carrier(&self) -> BitSet {
        BitSet::full(self.points)
    }

    /// `𝒦`, canonically ordered.
    pub fn subbase(&self) -> &[BitSet] {
        &self.subbase
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let n = self.points;
            let mut closed: Vec<_> = self.subbase.iter().map(|u| u.complement(n)).collect();
            closed.sort();

            let mut system: BTreeSet<BitSet> = closed.iter().copied().collect();
            system.insert(self.carrier());
            loop {
                let members: Vec<_> = system.iter().copied().collect();
                let before = system.len();
                for (k, &a) in members.iter().enumerate() {
                    for &b in &members[k + 1..] {
                        system.insert(a & b);
                    }
                }
                if system.len() == before {
                    break;
                }
            }

            // Finite dually directed families have a least member, so every
            // saturated set is already in the subbase.
            let saturated = self.subbase.clone();
            if let Some(literal) = saturated_by_definition(&self.subbase, LITERAL_SATURATION_LIMIT)
            {
                assert_eq!(
                    literal, saturated,
                    "saturated subbasics differ from the subbase"
                );
            }
            Derived {
                closed,
                closure_system: system.into_iter().collect(),
                saturated,
            }
        })
    }

    /// `S(X)`.
    pub fn subbasic_closed(&self) -> &[BitSet] {
        &self.derived().closed
    }

    /// `𝒞`: every intersection of members of `S(X)`, including `X` itself.
    pub fn closure_system(&self) -> &[BitSet] {
        &self.derived().closure_system
    }

    /// `𝒵`: intersections of non-empty dually directed subfamilies of `𝒦`.
    pub fn saturated_subbasics(&self) -> &[BitSet] {
        &self.derived().saturated
    }

    pub fn closed_index(&self, u: BitSet) -> Option<usize> {
        self.subbasic_closed().binary_search(&u).ok()
    }

    pub fn closure_system_index(&self, y: BitSet) -> Option<usize> {
        self.closure_system().binary_search(&y).ok()
    }

    pub fn saturated_index(&self, z: BitSet) -> Option<usize> {
        self.saturated_subbasics().binary_search(&z).ok()
    }

    pub fn is_subbasic_closed(&self, u: BitSet) -> bool {
        self.closed_index(u).is_some()
    }

    fn require_closed(&self, u: BitSet) -> Result<()> {
        if self.is_subbasic_closed(u) {
            Ok(())
        } else {
            Err(Error::NotInFamily(u.to_string(), "S(X)"))
        }
    }

    /// `cl(Y) = ⋂{U ∈ S(X) : Y ⊆ U}`, with the empty intersection being `X`.
    pub fn closure(&self, y: BitSet) -> BitSet {
        self.subbasic_closed()
            .iter()
            .filter(|&&u| y.is_subset(u))
            .fold(self.carrier(), |acc, &u| acc & u)
    }

    pub fn point_closure(&self, x: usize) -> BitSet {
        self.closure(BitSet::singleton(x))
    }

    /// Two distinct points with the same closure, if any.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let cls: Vec<_> = (0..self.points).map(|x| self.point_closure(x)).collect();
        (0..self.points)
            .flat_map(|x| (x + 1..self.points).map(move |y| (x, y)))
            .find(|&(x, y)| cls[x] == cls[y])
    }

    /// `⟨X, ⊒⟩`, where `leq(x, y)` holds iff `y ∈ cl(x)`, so `↑x = cl(x)`.
    pub fn dual_specialization(&self) -> Result<FinitePoset> {
        if let Some((x, y)) = self.t0_witness() {
            return Err(Error::NotT0 { x, y });
        }
        FinitePoset::from_upsets((0..self.points).map(|x| self.point_closure(x)).collect())
    }

    /// `(x] = {y : y ⊒ x}`.
    pub fn down_set(&self, x: usize) -> Result<BitSet> {
        if x >= self.points {
            return Err(Error::IndexOutOfRange {
                index: x,
                bound: self.points,
            });
        }
        if let Some((x, y)) = self.t0_witness() {
            return Err(Error::NotT0 { x, y });
        }
        let down: BitSet = (0..self.points)
            .filter(|&y| self.point_closure(y).contains(x))
            .collect();
        let by_subbase = self
            .subbase
            .iter()
            .filter(|u| u.contains(x))
            .fold(self.carrier(), |acc, &u| acc & u);
        debug_assert_eq!(
            down, by_subbase,
            "(x] differs from the subbase intersection"
        );
        Ok(down)
    }

    /// First point whose `(x]` is not in `𝒵(X)`. On duals of non-distributive
    /// semilattices such points exist: in the dual of `M3`, `(x] = {x}` while
    /// `{U ∈ 𝒦 : x ∈ U}` has no least member.
    pub fn unsaturated_down_set(&self) -> Option<usize> {
        (0..self.points).find(|&x| {
            self.down_set(x)
                .map_or(true, |d| self.saturated_index(d).is_none())
        })
    }

    /// Every `(x]` lies in `𝒵(X)`. The multirelational side of the duality
    /// (normality, `T_R`, the functor `Q`) relies on this.
    pub fn down_sets_saturated(&self) -> bool {
        self.unsaturated_down_set().is_none()
    }

    /// `D_U = {Y ∈ 𝒞 : Y ⊆ U}`.
    pub fn d_family(&self, u: BitSet) -> Result<Vec<BitSet>> {
        self.require_closed(u)?;
        Ok(self
            .closure_system()
            .iter()
            .copied()
            .filter(|y| y.is_subset(u))
            .collect())
    }

    /// `L_U = {Z ∈ 𝒵 : Z ∩ U ≠ ∅}`.
    pub fn l_family(&self, u: BitSet) -> Result<Vec<BitSet>> {
        self.require_closed(u)?;
        Ok(self
            .saturated_subbasics()
            .iter()
            .copied()
            .filter(|z| z.intersects(u))
            .collect())
    }

    /// `D_U` as a set of indices into [`FiniteSpace::closure_system`].
    pub fn d_mask(&self, u: BitSet) -> BitSet {
        self.closure_system()
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_subset(u))
            .map(|(k, _)| k)
            .collect()
    }

    /// `L_U` as a set of indices into [`FiniteSpace::saturated_subbasics`].
    pub fn l_mask(&self, u: BitSet) -> BitSet {
        self.saturated_subbasics()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.intersects(u))
            .map(|(k, _)| k)
            .collect()
    }

    pub fn check_s_axioms(&self, s4_limit: usize) -> SpaceReport {
        let mut report = Report::new("s-space");
        let carrier = self.carrier();
        let cover = self.subbase.iter().fold(BitSet::EMPTY, |acc, &u| acc | u);

        let s1 = if cover != carrier {
            Some(json!({"uncovered": (carrier - cover).to_vec()}))
        } else {
            self.t0_witness().map(|(x, y)| json!({"not_t0": [x, y]}))
        };
        report.push(Check::from_witness("S1", s1));

        let s2 = if !self.subbase.contains(&BitSet::EMPTY) {
            Some(json!({"missing_empty": true}))
        } else {
            self.subbase.iter().enumerate().find_map(|(k, &u)| {
                self.subbase[k + 1..]
                    .iter()
                    .find(|&&v| self.subbase.binary_search(&(u | v)).is_err())
                    .map(|&v| json!({"union_of": [u.to_vec(), v.to_vec()]}))
            })
        };
        report.push(Check::from_witness("S2", s2));

        report.push(Check::from_witness("S3", self.s3_witness()));

        let s_len = self.subbasic_closed().len();
        let s4_skipped = s_len > s4_limit;
        if s4_skipped {
            report.push(Check::skipped(
                "S4",
                json!({"closed_sets": s_len, "limit": s4_limit}),
            ));
        } else {
            report.push(Check::from_witness("S4", self.s4_witness()));
        }
        SpaceReport { report, s4_skipped }
    }

    fn s3_witness(&self) -> Option<serde_json::Value> {
        let k = &self.subbase;
        for x in 0..self.points {
            for &u in k.iter().filter(|u| u.contains(x)) {
                for &v in k.iter().filter(|v| v.contains(x)) {
                    let uv = u & v;
                    let ok = k
                        .iter()
                        .filter(|w| !w.contains(x))
                        .any(|&w| k.iter().any(|&d| d.contains(x) && d.is_subset(uv | w)));
                    if !ok {
                        return Some(json!({"x": x, "U": u.to_vec(), "V": v.to_vec()}));
                    }
                }
            }
        }
        None
    }

    /// Scans every `Y ∈ 𝒞` and every non-empty `𝒥 ⊆ S(X)` of sets not
    /// covering `Y`. The empty family is not scanned.
    fn s4_witness(&self) -> Option<serde_json::Value> {
        let s = self.subbasic_closed();
        let m = s.len();
        for &y in self.closure_system() {
            let hs: Vec<BitSet> = s.iter().copied().filter(|&h| y.is_subset(h)).collect();
            // good[a][b]: members C admitting some H ⊇ Y with A∩H, B∩H ⊆ C.
            let mut good = vec![vec![BitSet::EMPTY; m]; m];
            for a in 0..m {
                for b in a..m {
                    let mask: BitSet = (0..m)
                        .filter(|&c| {
                            hs.iter()
                                .any(|&h| (s[a] & h).is_subset(s[c]) && (s[b] & h).is_subset(s[c]))
                        })
                        .collect();
                    good[a][b] = mask;
                    good[b][a] = mask;
                }
            }
            let candidates: BitSet = (0..m).filter(|&a| !y.is_subset(s[a])).collect();
            let cand = candidates.bits();
            let mut sub = cand;
            while sub != 0 {
                let family = BitSet::from_bits(sub);
                let is_y_family = family
                    .iter()
                    .all(|a| family.iter().all(|b| good[a][b].intersects(family)));
                if is_y_family {
                    let union = family.iter().fold(BitSet::EMPTY, |acc, a| acc | s[a]);
                    if y.is_subset(union) {
                        let members: Vec<_> = family.iter().map(|a| s[a].to_vec()).collect();
                        return Some(json!({"Y": y.to_vec(), "family": members}));
                    }
                }
                sub = (sub - 1) & cand;
            }
        }
        None
    }

    /// Axiom report at [`DEFAULT_S4_LIMIT`], computed once.
    pub fn verification(&self) -> &SpaceReport {
        self.verification
            .get_or_init(|| self.check_s_axioms(DEFAULT_S4_LIMIT))
    }

    pub fn is_verified(&self) -> bool {
        self.verification().accepted()
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.is_verified() {
            Ok(())
        } else {
            Err(Error::UnverifiedSpace(
                self.verification().report.failure_summary(),
            ))
        }
    }

    /// `⟨S(X), ∩, X⟩`, elements numbered as in [`FiniteSpace::subbasic_closed`].
    pub fn closed_semilattice(&self) -> Result<FiniteSemilattice> {
        FiniteSemilattice::from_family(self.subbasic_closed())
    }

    /// Relabels point `x` as `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteSpace> {
        let mut seen = BitSet::EMPTY;
        if perm.len() != self.points
            || perm.iter().any(|&p| {
                p >= self.points || {
                    let dup = seen.contains(p);
                    seen.insert(p);
                    dup
                }
            })
        {
            return Err(Error::InvalidSpace(format!(
                "{perm:?} is not a permutation of {} points",
                self.points
            )));
        }
        FiniteSpace::new(
            self.points,
            self.subbase.iter().map(|u| u.map(|x| perm[x])).collect(),
        )
    }
}

/// `𝒵` straight from its definition: the intersection of every non-empty
/// subfamily `ℒ ⊆ 𝒦` such that any two members of `ℒ` contain a third.
/// `None` when the subbase is larger than `limit`.
pub fn saturated_by_definition(subbase: &[BitSet], limit: usize) -> Option<Vec<BitSet>> {
    let k = subbase.len();
    if k > limit {
        return None;
    }
    let mut out = BTreeSet::new();
    for family in all_subsets(k).filter(|f| !f.is_empty()) {
        let directed = family.iter().all(|a| {
            family.iter().all(|b| {
                let ab = subbase[a] & subbase[b];
                family.iter().any(|c| subbase[c].is_subset(ab))
            })
        });
        if directed {
            out.insert(
                family
                    .iter()
                    .fold(BitSet::full(CAPACITY), |acc, a| acc & subbase[a]),
            );
        }
    }
    Some(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().copied().collect()
    }

    /// Dual of the 3-chain: P₁ = {1} is point 0, P₂ = {1, a} is point 1.
    fn chain3_dual() -> FiniteSpace {
        FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[0, 1])]).unwrap()
    }

    #[test]
    fn subbasic_closed_sets() {
        let x = FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert!(x.is_subbasic_closed(set(&[1])));
        let y = chain3_dual();
        assert_eq!(y.subbasic_closed(), &[set(&[]), set(&[1]), set(&[0, 1])]);
        assert_eq!(FiniteSpace::empty().subbasic_closed(), &[BitSet::EMPTY]);
    }

    #[test]
    fn two_point_complement() {
        let x = FiniteSpace::new(2, vec![set(&[]), set(&[0, 1]), set(&[0])]).unwrap();
        assert_eq!(x.subbasic_closed(), &[set(&[]), set(&[1]), set(&[0, 1])]);
    }

    #[test]
    fn subbase_must_contain_empty_and_cover() {
        assert!(FiniteSpace::new(2, vec![set(&[0, 1])]).is_err());
        assert!(FiniteSpace::new(2, vec![set(&[]), set(&[0])]).is_err());
    }

    #[test]
    fn closure_examples() {
        let x = chain3_dual();
        for &u in x.subbasic_closed() {
            assert_eq!(x.closure(u), u);
        }
        assert_eq!(x.closure(set(&[1])), set(&[1]));
        assert_eq!(x.closure(x.carrier()), x.carrier());
        assert_eq!(x.closure(set(&[0])), x.carrier());
    }

    #[test]
    fn specialization_of_chain_dual() {
        let x = chain3_dual();
        let order = x.dual_specialization().unwrap();
        // P₁ ⊆ P₂ as filters, and ⊒ agrees.
        assert!(order.leq(0, 1));
        assert!(!order.leq(1, 0));
    }

    #[test]
    fn non_t0_rejected() {
        let x = FiniteSpace::new(2, vec![set(&[]), set(&[0, 1])]).unwrap();
        assert!(matches!(x.dual_specialization(), Err(Error::NotT0 { .. })));
        let report = x.check_s_axioms(DEFAULT_S4_LIMIT);
        assert!(!report.report.check("S1").unwrap().passed());
    }

    #[test]
    fn one_point_space() {
        let x = FiniteSpace::new(1, vec![set(&[]), set(&[0])]).unwrap();
        assert_eq!(x.dual_specialization().unwrap().size(), 1);
        assert_eq!(x.down_set(0).unwrap(), set(&[0]));
        assert!(x.is_verified());
    }

    #[test]
    fn closure_systems() {
        let x = chain3_dual();
        assert_eq!(x.closure_system(), x.subbasic_closed());
        // Two singletons: the dual of the diamond.
        let d = FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert_eq!(
            d.closure_system(),
            &[set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]
        );
    }

    #[test]
    fn saturation_collapses_to_subbase() {
        let x = chain3_dual();
        assert_eq!(x.saturated_subbasics(), x.subbase());
        assert_eq!(
            saturated_by_definition(x.subbase(), 12).unwrap(),
            x.subbase()
        );
    }

    #[test]
    fn axioms_of_small_spaces() {
        assert!(chain3_dual().check_s_axioms(DEFAULT_S4_LIMIT).accepted());
        assert!(FiniteSpace::empty()
            .check_s_axioms(DEFAULT_S4_LIMIT)
            .accepted());
        let not_union_closed = FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[1])]).unwrap();
        let report = not_union_closed.check_s_axioms(DEFAULT_S4_LIMIT);
        let s2 = report.report.check("S2").unwrap();
        assert!(!s2.passed());
        assert_eq!(s2.witness.as_ref().unwrap()["union_of"], json!([[0], [1]]));
        let fixed =
            FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert!(fixed.check_s_axioms(DEFAULT_S4_LIMIT).accepted());
    }

    #[test]
    fn s4_guard_marks_unverified() {
        let report = chain3_dual().check_s_axioms(1);
        assert!(report.s4_skipped);
        assert!(!report.accepted());
    }

    #[test]
    fn down_sets() {
        let x = chain3_dual();
        assert_eq!(x.down_set(0).unwrap(), set(&[0]));
        assert_eq!(x.down_set(1).unwrap(), set(&[0, 1]));
        let d = FiniteSpace::new(2, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap();
        assert_eq!(d.down_set(0).unwrap(), set(&[0]));
    }

    #[test]
    fn d_and_l_families() {
        let x = chain3_dual();
        let full = x.carrier();
        assert_eq!(x.d_family(full).unwrap(), x.closure_system());
        assert_eq!(x.l_family(full).unwrap(), vec![set(&[0]), set(&[0, 1])]);
        assert_eq!(x.d_family(BitSet::EMPTY).unwrap(), vec![BitSet::EMPTY]);
        assert!(x.l_family(BitSet::EMPTY).unwrap().is_empty());
        assert_eq!(x.d_family(set(&[1])).unwrap(), vec![set(&[]), set(&[1])]);
        assert_eq!(x.l_family(set(&[1])).unwrap(), vec![set(&[0, 1])]);
        assert!(x.d_family(set(&[0])).is_err());
    }

    #[test]
    fn closed_sets_form_a_semilattice() {
        let x = chain3_dual();
        let s = x.closed_semilattice().unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.top(), 2);
    }

    #[test]
    fn permutation_relabels() {
        let x = chain3_dual();
        let y = x.permuted(&[1, 0]).unwrap();
        assert_eq!(y.subbase(), &[set(&[]), set(&[1]), set(&[0, 1])]);
        assert!(x.permuted(&[0, 0]).is_err());
    }
}
