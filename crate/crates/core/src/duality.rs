//! The bridge between algebras and spaces: dual spaces, `β`, `N_h`, `H_X`,
//! `I_X`, the filter/closed-set correspondence, `R_m`, `G_f`, and the functors
//! `M`, `R`, `P`, `Q`.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::multirel::{self, Multirelation, SigmaRelation, SlataSpace};
use crate::relations::{BinaryRelation, RelSpace, Space};
use crate::report::{Check, Report};
use crate::semilattice::{
    check_hom, is_monotone_operator, FiniteSemilattice, HomKind, SemilatticeHom, SemilatticeJson,
    Slata,
};
use crate::sspace::{FiniteSpace, SpaceJson};

/// `⟨𝒳(A), 𝒦_A⟩` together with `β` and the point/filter correspondence.
#[derive(Clone, Debug)]
pub struct DualSpaceBundle {
    pub algebra: FiniteSemilattice,
    pub space: Space,
    /// Point `k` is the irreducible filter `filters[k]` (an element set).
    pub filters: Vec<BitSet>,
    /// `beta[a] = β(a) = {P : a ∈ P}`.
    pub beta: Vec<BitSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualSpaceJson {
    pub algebra: SemilatticeJson,
    pub space: SpaceJson,
    pub beta: Vec<Vec<usize>>,
    pub filter_index: Vec<Vec<usize>>,
}

pub fn dual_space(a: &FiniteSemilattice) -> DualSpaceBundle {
    let filters = a.irreducible_filters().to_vec();
    let beta: Vec<BitSet> = (0..a.size())
        .map(|x| {
            (0..filters.len())
                .filter(|&k| filters[k].contains(x))
                .collect()
        })
        .collect();
    let n = filters.len();
    let subbase = beta.iter().map(|b| b.complement(n)).collect();
    let space = FiniteSpace::new(n, subbase).expect("dual subbase contains ∅ = β(top)ᶜ and covers");
    DualSpaceBundle {
        algebra: a.clone(),
        space: Arc::new(space),
        filters,
        beta,
    }
}

impl DualSpaceBundle {
    pub fn points(&self) -> usize {
        self.filters.len()
    }

    pub fn point_of_filter(&self, f: BitSet) -> Option<usize> {
        self.filters.binary_search(&f).ok()
    }

    pub fn to_json(&self) -> DualSpaceJson {
        DualSpaceJson {
            algebra: self.algebra.to_json(),
            space: self.space.to_json(),
            beta: self.beta.iter().map(|b| b.to_vec()).collect(),
            filter_index: self.filters.iter().map(|f| f.to_vec()).collect(),
        }
    }

    /// `β` as a map into `⟨S(𝒳(A)), ∩⟩`, numbered canonically.
    pub fn beta_hom(&self) -> Result<SemilatticeHom> {
        let target = self.space.closed_semilattice()?;
        let map = self
            .beta
            .iter()
            .map(|&b| {
                self.space
                    .closed_index(b)
                    .ok_or_else(|| Error::NotInFamily(b.to_string(), "S(X)"))
            })
            .collect::<Result<_>>()?;
        SemilatticeHom::new(self.algebra.clone(), target, map)
    }

    /// S-axioms of the dual space, and `β` an isomorphism onto `S(𝒳(A))`.
    pub fn beta_report(&self) -> Report {
        let mut report = Report::new("dual space");
        let axioms = self.space.verification();
        for check in &axioms.report.checks {
            report.push(check.clone());
        }
        let a = &self.algebra;
        let injective = (0..a.size())
            .flat_map(|x| (x + 1..a.size()).map(move |y| (x, y)))
            .find(|&(x, y)| self.beta[x] == self.beta[y])
            .map(|(x, y)| json!({"a": x, "b": y}));
        report.push(Check::from_witness("beta_injective", injective));
        let mut image: Vec<BitSet> = self.beta.clone();
        image.sort();
        image.dedup();
        let onto = (image != self.space.subbasic_closed())
            .then(|| json!({"image_size": image.len(), "closed_sets": self.space.subbasic_closed().len()}));
        report.push(Check::from_witness("beta_onto", onto));
        let meet = (0..a.size())
            .flat_map(|x| (0..a.size()).map(move |y| (x, y)))
            .find(|&(x, y)| self.beta[a.meet(x, y)] != self.beta[x] & self.beta[y])
            .map(|(x, y)| json!({"a": x, "b": y}));
        report.push(Check::from_witness("beta_meet", meet));
        let top = (self.beta[a.top()] != self.space.carrier())
            .then(|| json!({"beta_top": self.beta[a.top()].to_vec()}));
        report.push(Check::from_witness("beta_top", top));
        report
    }

    /// `φ(F) = {P : F ⊆ P}`.
    pub fn phi(&self, filter: BitSet) -> BitSet {
        (0..self.points())
            .filter(|&k| filter.is_subset(self.filters[k]))
            .collect()
    }

    /// `ψ(Y) = {a : Y ⊆ β(a)}`.
    pub fn psi(&self, y: BitSet) -> BitSet {
        (0..self.algebra.size())
            .filter(|&a| y.is_subset(self.beta[a]))
            .collect()
    }

    /// `I_A(Z) = {a : β(a) ∩ Z = ∅}`.
    pub fn ideal_of(&self, z: BitSet) -> BitSet {
        (0..self.algebra.size())
            .filter(|&a| !self.beta[a].intersects(z))
            .collect()
    }

    /// `m⁻¹[P]` for point `p`.
    fn preimage(&self, op: &[usize], p: usize) -> BitSet {
        (0..op.len())
            .filter(|&a| self.filters[p].contains(op[a]))
            .collect()
    }
}

/// Checks that `φ` and `ψ` are mutually inverse, order-reversing bijections
/// between the filters and `𝒞`.
pub fn filter_closed_correspondence(bundle: &DualSpaceBundle) -> Report {
    let mut report = Report::new("filter/closed correspondence");
    let filters = bundle.algebra.enumerate_filters(false);
    let closed = bundle.space.closure_system();
    let phi_into = filters
        .iter()
        .find(|&&f| bundle.space.closure_system_index(bundle.phi(f)).is_none())
        .map(|f| json!({"F": f.to_vec()}));
    report.push(Check::from_witness("phi_lands_in_C", phi_into));
    let psi_phi = filters
        .iter()
        .find(|&&f| bundle.psi(bundle.phi(f)) != f)
        .map(|f| json!({"F": f.to_vec()}));
    report.push(Check::from_witness("psi_phi_id", psi_phi));
    let phi_psi = closed
        .iter()
        .find(|&&y| bundle.phi(bundle.psi(y)) != y)
        .map(|y| json!({"Y": y.to_vec()}));
    report.push(Check::from_witness("phi_psi_id", phi_psi));
    let reversing = filters
        .iter()
        .flat_map(|&f| filters.iter().map(move |&g| (f, g)))
        .find(|&(f, g)| f.is_subset(g) && !bundle.phi(g).is_subset(bundle.phi(f)))
        .map(|(f, g)| json!({"F": f.to_vec(), "G": g.to_vec()}));
    report.push(Check::from_witness("order_reversing", reversing));
    report
}

/// `N_h ⊆ 𝒳(B) × 𝒳(A)`: `(P, Q) ∈ N_h` iff `h⁻¹[P] ⊆ Q`.
pub fn relation_of_hom_between(
    h: &SemilatticeHom,
    da: &DualSpaceBundle,
    db: &DualSpaceBundle,
) -> Result<BinaryRelation> {
    if h.source != da.algebra || h.target != db.algebra {
        return Err(Error::CarrierMismatch(
            "dual bundles do not match the hom".into(),
        ));
    }
    let check = check_hom(h, HomKind::Plain, &[], &[])?;
    if let Some(w) = check.witness {
        return Err(Error::InvalidHom(w.to_string()));
    }
    let rows = (0..db.points())
        .map(|p| {
            let pre = db.preimage(&h.map, p);
            (0..da.points())
                .filter(|&q| pre.is_subset(da.filters[q]))
                .collect()
        })
        .collect();
    BinaryRelation::new(db.space.clone(), da.space.clone(), rows)
}

pub fn relation_of_hom(h: &SemilatticeHom) -> Result<BinaryRelation> {
    relation_of_hom_between(h, &dual_space(&h.source), &dual_space(&h.target))
}

/// `N_d` for an operator on `A` that preserves meets and top.
pub fn relation_of_operator(bundle: &DualSpaceBundle, d: &[usize]) -> Result<BinaryRelation> {
    let h = SemilatticeHom::new(bundle.algebra.clone(), bundle.algebra.clone(), d.to_vec())?;
    relation_of_hom_between(&h, bundle, bundle)
}

/// `H_X : X → 𝒳(S(X))`, with the dual of `S(X)` it lands in.
#[derive(Clone, Debug)]
pub struct HMap {
    pub closed: FiniteSemilattice,
    pub dual: DualSpaceBundle,
    /// `map[x]` is the point of `dual` equal to `H_X(x)`.
    pub map: Vec<usize>,
}

impl HMap {
    /// `H_X[Y]` for a point-set `Y`.
    pub fn image(&self, ys: BitSet) -> BitSet {
        ys.map(|y| self.map[y])
    }
}

/// `H_X(x) = {U ∈ S(X) : x ∈ U}`, checked to be a bijection onto the
/// irreducible filters of `S(X)`.
pub fn h_map(space: &Space) -> Result<HMap> {
    space.require_verified()?;
    let closed = space.closed_semilattice()?;
    let dual = dual_space(&closed);
    let s = space.subbasic_closed();
    let mut map = Vec::with_capacity(space.points());
    for x in 0..space.points() {
        let hx: BitSet = (0..s.len()).filter(|&k| s[k].contains(x)).collect();
        let p = dual.point_of_filter(hx).ok_or_else(|| {
            Error::InvalidSpace(format!(
                "H_X({x}) = {hx} is not an irreducible filter of S(X)"
            ))
        })?;
        map.push(p);
    }
    let image: BitSet = map.iter().copied().collect();
    if image.len() != space.points() || image != BitSet::full(dual.points()) {
        return Err(Error::InvalidSpace(
            "H_X is not a bijection onto 𝒳(S(X))".into(),
        ));
    }
    Ok(HMap { closed, dual, map })
}

/// `β_{S(X)}(U) = H_X[U]`, `L_{β(U)} = H_X[L_U]` and `(H_X(x)] = H_X[(x]]`.
pub fn h_map_report(space: &Space, h: &HMap) -> Result<Report> {
    let mut report = Report::new("H_X");
    let s = space.subbasic_closed();
    let beta = (0..s.len())
        .find(|&k| h.dual.beta[k] != h.image(s[k]))
        .map(|k| json!({"U": s[k].to_vec()}));
    report.push(Check::from_witness("beta_is_image", beta));
    let l = (0..s.len()).find_map(|k| {
        let mut left: Vec<BitSet> = h.dual.space.l_family(h.dual.beta[k]).ok()?;
        let mut right: Vec<BitSet> = space
            .l_family(s[k])
            .ok()?
            .into_iter()
            .map(|z| h.image(z))
            .collect();
        left.sort();
        right.sort();
        (left != right).then(|| json!({"U": s[k].to_vec()}))
    });
    report.push(Check::from_witness("l_family_image", l));
    let mut down = None;
    for x in 0..space.points() {
        if h.dual.space.down_set(h.map[x])? != h.image(space.down_set(x)?) {
            down = Some(json!({"x": x}));
            break;
        }
    }
    report.push(Check::from_witness("down_set_image", down));
    Ok(report)
}

/// `I_X ⊆ X × 𝒳(S(X))`: `(x, H(y))` iff `H(x) ⊆ H(y)`.
pub fn i_relation(space: &Space, h: &HMap) -> Result<BinaryRelation> {
    let f = &h.dual.filters;
    let rows = (0..space.points())
        .map(|x| {
            (0..space.points())
                .filter(|&y| f[h.map[x]].is_subset(f[h.map[y]]))
                .map(|y| h.map[y])
                .collect()
        })
        .collect();
    BinaryRelation::new(space.clone(), h.dual.space.clone(), rows)
}

/// `I_X⁻¹ ⊆ 𝒳(S(X)) × X`: `(H(y), x)` iff `H(y) ⊆ H(x)`.
pub fn i_inverse_relation(space: &Space, h: &HMap) -> Result<BinaryRelation> {
    let f = &h.dual.filters;
    let mut rows = vec![BitSet::EMPTY; space.points()];
    for y in 0..space.points() {
        rows[h.map[y]] = (0..space.points())
            .filter(|&x| f[h.map[y]].is_subset(f[h.map[x]]))
            .collect();
    }
    BinaryRelation::new(h.dual.space.clone(), space.clone(), rows)
}

/// `R_m(P) = {Z ∈ 𝒵 : m⁻¹[P] ∩ I_A(Z) = ∅}`.
pub fn multirel_of_monotone(bundle: &DualSpaceBundle, m: &[usize]) -> Result<Multirelation> {
    if !is_monotone_operator(&bundle.algebra, m) {
        return Err(Error::InvalidOperator(
            "R_m needs a monotone operator".into(),
        ));
    }
    let zs = bundle.space.saturated_subbasics();
    let ideals: Vec<BitSet> = zs.iter().map(|&z| bundle.ideal_of(z)).collect();
    let fibers = (0..bundle.points())
        .map(|p| {
            let pre = bundle.preimage(m, p);
            (0..zs.len())
                .filter(|&k| !pre.intersects(ideals[k]))
                .collect()
        })
        .collect();
    Multirelation::new(bundle.space.clone(), fibers)
}

/// `G_f(P) = {Y ∈ 𝒞 : ψ(Y) ⊆ f⁻¹[P]}`.
pub fn sigma_of_monotone(bundle: &DualSpaceBundle, f: &[usize]) -> Result<SigmaRelation> {
    if !is_monotone_operator(&bundle.algebra, f) {
        return Err(Error::InvalidOperator(
            "G_f needs a monotone operator".into(),
        ));
    }
    let cs = bundle.space.closure_system();
    let psis: Vec<BitSet> = cs.iter().map(|&y| bundle.psi(y)).collect();
    let fibers = (0..bundle.points())
        .map(|p| {
            let pre = bundle.preimage(f, p);
            (0..cs.len()).filter(|&k| psis[k].is_subset(pre)).collect()
        })
        .collect();
    SigmaRelation::new(bundle.space.clone(), fibers)
}

/// Output of the functor `M` on an object: the dual bundle and the
/// RelS-space `⟨𝒳(A), 𝒦_A, N_d⟩`.
#[derive(Clone, Debug)]
pub struct MImage {
    pub bundle: DualSpaceBundle,
    pub relspace: RelSpace,
}

pub fn functor_m(slata: &Slata) -> Result<MImage> {
    let bundle = dual_space(&slata.algebra);
    bundle.space.require_verified()?;
    let nd = relation_of_operator(&bundle, &slata.d)?;
    Ok(MImage {
        bundle,
        relspace: RelSpace::new(nd)?,
    })
}

/// `β(d(a)) = □_{N_d}(β(a))` and `β(i(a)) = □*_{N_d}(β(a))` for every `a`.
pub fn slata_iso_report(slata: &Slata, image: &MImage) -> Report {
    let mut report = image.bundle.beta_report();
    let beta = &image.bundle.beta;
    let rs = &image.relspace;
    let d = (0..slata.algebra.size())
        .find(|&a| beta[slata.d[a]] != rs.box_op(beta[a]))
        .map(|a| json!({"a": a}));
    report.push(Check::from_witness("beta_preserves_d", d));
    let i = (0..slata.algebra.size())
        .find(|&a| beta[slata.i[a]] != rs.box_star(beta[a]))
        .map(|a| json!({"a": a}));
    report.push(Check::from_witness("beta_preserves_i", i));
    report
}

/// Functor `M` on morphisms: `h ↦ N_h`.
pub fn functor_m_hom(
    h: &SemilatticeHom,
    source: &MImage,
    target: &MImage,
) -> Result<BinaryRelation> {
    relation_of_hom_between(h, &source.bundle, &target.bundle)
}

/// Functor `R` on objects: `⟨S(X), □*_T, □_T⟩`.
pub fn functor_r(rs: &RelSpace) -> Result<Slata> {
    rs.slata()
}

/// Functor `R` on morphisms: `M ⊆ X × Y ↦ □_M : S(Y) → S(X)`.
pub fn functor_r_rel(m: &BinaryRelation) -> Result<SemilatticeHom> {
    let map = m.box_table()?;
    SemilatticeHom::new(
        m.target().closed_semilattice()?,
        m.source().closed_semilattice()?,
        map,
    )
}

/// Functor `P`: `⟨X, 𝒦, T⟩ ↦ ⟨X, 𝒦, R_{G_T}, R_T⟩`.
pub fn functor_p(rs: &RelSpace) -> Result<SlataSpace> {
    let t = rs.relation();
    let i = multirel::multirel_from_sigma(&multirel::sigma_from_meet(t)?)?;
    let e = multirel::multirel_from_meet(t)?;
    SlataSpace::new(i, e)
}

/// Functor `Q`: `⟨X, 𝒦, I, E⟩ ↦ ⟨X, 𝒦, T_E⟩`.
pub fn functor_q(ss: &SlataSpace) -> Result<RelSpace> {
    RelSpace::new(multirel::meet_from_normal(ss.e())?)
}

/// Any functor output, for callers that dispatch on direction.
#[derive(Clone, Debug)]
pub enum FunctorImage {
    RelSpace(RelSpace),
    Slata(Slata),
    SlataSpace(SlataSpace),
    Relation(BinaryRelation),
    Hom(SemilatticeHom),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::star_compose;

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn dual_of_chain3() {
        let a = FiniteSemilattice::chain(3);
        let d = dual_space(&a);
        // P₁ = {1}, P₂ = {a, 1}
        assert_eq!(d.filters, vec![set(&[2]), set(&[1, 2])]);
        assert_eq!(d.beta, vec![set(&[]), set(&[1]), set(&[0, 1])]);
        assert_eq!(d.space.subbase(), &[set(&[]), set(&[0]), set(&[0, 1])]);
        assert!(d.beta_report().passed());
    }

    #[test]
    fn dual_of_diamond() {
        let a = FiniteSemilattice::diamond();
        let d = dual_space(&a);
        assert_eq!(d.points(), 2);
        assert_eq!(d.beta[0], BitSet::EMPTY);
        assert_eq!(d.beta[1].len(), 1);
        assert_eq!(d.beta[2].len(), 1);
        assert_ne!(d.beta[1], d.beta[2]);
        assert!(d.beta_report().passed());
        // ⊒ is an antichain here.
        let order = d.space.dual_specialization().unwrap();
        assert!(!order.leq(0, 1) && !order.leq(1, 0));
    }

    #[test]
    fn dual_of_one_element() {
        let d = dual_space(&FiniteSemilattice::one_element());
        assert_eq!(d.points(), 0);
        assert_eq!(d.beta, vec![BitSet::EMPTY]);
        assert!(d.beta_report().passed());
    }

    #[test]
    fn specialization_matches_filter_inclusion() {
        let a = FiniteSemilattice::powerset(2);
        let d = dual_space(&a);
        let order = d.space.dual_specialization().unwrap();
        for p in 0..d.points() {
            for q in 0..d.points() {
                assert_eq!(order.leq(p, q), d.filters[p].is_subset(d.filters[q]));
            }
        }
    }

    #[test]
    fn identity_hom_gives_specialization() {
        let a = FiniteSemilattice::diamond();
        let n = relation_of_hom(&SemilatticeHom::identity(&a)).unwrap();
        let d = dual_space(&a);
        assert_eq!(n, BinaryRelation::specialization(d.space.clone()).unwrap());
    }

    #[test]
    fn constant_top_operator() {
        let a = FiniteSemilattice::chain(3);
        let d = dual_space(&a);
        let n = relation_of_operator(&d, &[2, 2, 2]).unwrap();
        // h⁻¹[P] = A is never inside a proper filter.
        assert!(n.rows().iter().all(|r| r.is_empty()));
        assert!(n.is_meet_relation().unwrap());
        for x in 0..a.size() {
            assert_eq!(n.box_op(d.beta[x]), d.beta[2]);
        }
    }

    #[test]
    fn composite_hom_relation() {
        let a = FiniteSemilattice::chain(3);
        let d = dual_space(&a);
        let h = SemilatticeHom::new(a.clone(), a.clone(), vec![0, 2, 2]).unwrap();
        let g = SemilatticeHom::new(a.clone(), a.clone(), vec![0, 0, 2]).unwrap();
        let gh = h.then(&g).unwrap();
        let nh = relation_of_hom_between(&h, &d, &d).unwrap();
        let ng = relation_of_hom_between(&g, &d, &d).unwrap();
        assert_eq!(
            relation_of_hom_between(&gh, &d, &d).unwrap(),
            star_compose(&nh, &ng).unwrap()
        );
    }

    #[test]
    fn h_map_of_chain_dual() {
        let d = dual_space(&FiniteSemilattice::chain(3));
        let h = h_map(&d.space).unwrap();
        assert_eq!(h.closed.size(), 3);
        assert!(h_map_report(&d.space, &h).unwrap().passed());
        let one = Arc::new(FiniteSpace::new(1, vec![set(&[]), set(&[0])]).unwrap());
        assert_eq!(h_map(&one).unwrap().map, vec![0]);
    }

    #[test]
    fn phi_and_psi() {
        let a = FiniteSemilattice::diamond();
        let d = dual_space(&a);
        for x in 0..a.size() {
            assert_eq!(d.phi(a.up(x)), d.beta[x]);
        }
        assert_eq!(d.phi(BitSet::singleton(a.top())), d.space.carrier());
        assert_eq!(d.psi(BitSet::EMPTY), a.carrier());
        assert!(filter_closed_correspondence(&d).passed());
    }

    #[test]
    fn ideal_of_down_set_is_complement() {
        let a = FiniteSemilattice::powerset(2);
        let d = dual_space(&a);
        for p in 0..d.points() {
            let down = d.space.down_set(p).unwrap();
            assert_eq!(d.ideal_of(down), d.filters[p].complement(a.size()));
        }
    }

    #[test]
    fn identity_operator_multirelation() {
        let a = FiniteSemilattice::chain(3);
        let d = dual_space(&a);
        let r = multirel_of_monotone(&d, &[0, 1, 2]).unwrap();
        let sq = BinaryRelation::specialization(d.space.clone()).unwrap();
        assert_eq!(r, multirel::multirel_from_meet(&sq).unwrap());
    }

    #[test]
    fn constant_top_sigma_is_total() {
        let a = FiniteSemilattice::diamond();
        let d = dual_space(&a);
        let g = sigma_of_monotone(&d, &[3, 3, 3, 3]).unwrap();
        let all = BitSet::full(d.space.closure_system().len());
        assert!(g.fibers().iter().all(|&f| f == all));
    }

    #[test]
    fn non_modal_monotone_is_not_normal() {
        // m(a) = m(b) = 1 but m(a ∧ b) = 0 on the diamond.
        let a = FiniteSemilattice::diamond();
        let d = dual_space(&a);
        let r = multirel_of_monotone(&d, &[0, 3, 3, 3]).unwrap();
        let report = multirel::is_normal(&r).unwrap();
        assert!(report.check("m1").unwrap().passed() && report.check("m2").unwrap().passed());
        assert!(!report.passed());
        let modal = multirel_of_monotone(&d, &[0, 1, 2, 3]).unwrap();
        assert!(multirel::is_normal(&modal).unwrap().passed());
    }

    #[test]
    fn chain3_slata_pipeline() {
        let a = FiniteSemilattice::chain(3);
        let s = Slata::new(a, vec![0, 0, 0], vec![2, 2, 2]).unwrap();
        let m = functor_m(&s).unwrap();
        assert_eq!(m.bundle.points(), 2);
        assert!(slata_iso_report(&s, &m).passed());
        let back = functor_r(&m.relspace).unwrap();
        let beta = m.bundle.beta_hom().unwrap();
        assert!(
            check_hom(&beta, HomKind::Slata, &[&s.i, &s.d], &[&back.i, &back.d])
                .unwrap()
                .holds
        );
        let p = functor_p(&m.relspace).unwrap();
        assert_eq!(functor_q(&p).unwrap(), m.relspace);
        assert_eq!(functor_p(&functor_q(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn empty_space_is_fixed_by_p_and_q() {
        let s = Slata::new(FiniteSemilattice::one_element(), vec![0], vec![0]).unwrap();
        let m = functor_m(&s).unwrap();
        let p = functor_p(&m.relspace).unwrap();
        assert_eq!(p.space().points(), 0);
        assert_eq!(functor_q(&p).unwrap(), m.relspace);
    }
}
