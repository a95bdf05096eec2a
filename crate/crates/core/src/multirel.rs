//! Multirelations `R ⊆ X × 𝒵(X)`, σ-relations `G ⊆ X × 𝒞(X)`, SLata-spaces,
//! and the conversions between them and binary relations.
//!
//! Fibers store indices into the space's canonical `𝒵` or `𝒞` enumeration,
//! so equality is a plain comparison of index sets.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitset::{BitSet, CAPACITY};
use crate::error::{Error, Result};
use crate::relations::{BinaryRelation, Space};
use crate::report::{Check, Report};
use crate::semilattice::Slata;
use crate::sspace::SpaceJson;

/// Fibers as lists of point lists, each resolved against a canonical family.
pub type FiberJson = Vec<Vec<Vec<usize>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultirelJson {
    pub space: SpaceJson,
    pub fibers: FiberJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlataSpaceJson {
    pub space: SpaceJson,
    #[serde(rename = "I")]
    pub i: FiberJson,
    #[serde(rename = "E")]
    pub e: FiberJson,
}

fn resolve_fibers(
    family: &[BitSet],
    fibers: &FiberJson,
    points: usize,
    name: &'static str,
) -> Result<Vec<BitSet>> {
    if fibers.len() != points {
        return Err(Error::CarrierMismatch(format!(
            "{} fibers for {points} points",
            fibers.len()
        )));
    }
    fibers
        .iter()
        .map(|fiber| {
            fiber
                .iter()
                .map(|members| {
                    if let Some(&p) = members.iter().find(|&&p| p >= points) {
                        return Err(Error::IndexOutOfRange {
                            index: p,
                            bound: points,
                        });
                    }
                    let set: BitSet = members.iter().copied().collect();
                    family
                        .binary_search(&set)
                        .map_err(|_| Error::NotInFamily(set.to_string(), name))
                })
                .collect::<Result<BitSet>>()
        })
        .collect()
}

fn fibers_to_json(family: &[BitSet], fibers: &[BitSet]) -> FiberJson {
    fibers
        .iter()
        .map(|f| f.iter().map(|k| family[k].to_vec()).collect())
        .collect()
}

fn check_fiber_shape(fibers: &[BitSet], points: usize, family_len: usize) -> Result<()> {
    if fibers.len() != points {
        return Err(Error::CarrierMismatch(format!(
            "{} fibers for {points} points",
            fibers.len()
        )));
    }
    let all = BitSet::full(family_len);
    if let Some(f) = fibers.iter().find(|f| !f.is_subset(all)) {
        return Err(Error::IndexOutOfRange {
            index: (*f - all).first().unwrap_or(0),
            bound: family_len,
        });
    }
    Ok(())
}

/// `R ⊆ X × 𝒵(X)`; fiber `x` holds indices into `space.saturated_subbasics()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multirelation {
    space: Space,
    fibers: Vec<BitSet>,
}

impl Multirelation {
    pub fn new(space: Space, fibers: Vec<BitSet>) -> Result<Self> {
        check_fiber_shape(&fibers, space.points(), space.saturated_subbasics().len())?;
        Ok(Multirelation { space, fibers })
    }

    /// From explicit saturated sets per point.
    pub fn from_sets(space: Space, fibers: &[Vec<BitSet>]) -> Result<Self> {
        let idx = fibers
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&z| {
                        space
                            .saturated_index(z)
                            .ok_or_else(|| Error::NotInFamily(z.to_string(), "𝒵(X)"))
                    })
                    .collect::<Result<BitSet>>()
            })
            .collect::<Result<_>>()?;
        Self::new(space, idx)
    }

    pub fn from_fiber_json(space: Space, fibers: &FiberJson) -> Result<Self> {
        let idx = resolve_fibers(space.saturated_subbasics(), fibers, space.points(), "𝒵(X)")?;
        Self::new(space, idx)
    }

    pub fn fiber_json(&self) -> FiberJson {
        fibers_to_json(self.space.saturated_subbasics(), &self.fibers)
    }

    pub fn to_json(&self) -> MultirelJson {
        MultirelJson {
            space: self.space.to_json(),
            fibers: self.fiber_json(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn fibers(&self) -> &[BitSet] {
        &self.fibers
    }

    /// `R(x)` as point-sets.
    pub fn fiber_sets(&self, x: usize) -> Vec<BitSet> {
        self.fibers[x]
            .iter()
            .map(|k| self.space.saturated_subbasics()[k])
            .collect()
    }

    pub fn with_fiber(&self, x: usize, fiber: BitSet) -> Result<Self> {
        let mut fibers = self.fibers.clone();
        fibers[x] = fiber;
        Self::new(self.space.clone(), fibers)
    }

    fn m_unchecked(&self, u: BitSet) -> BitSet {
        let l = self.space.l_mask(u);
        (0..self.fibers.len())
            .filter(|&x| self.fibers[x].is_subset(l))
            .collect()
    }
}

fn require_closed(space: &Space, u: BitSet) -> Result<()> {
    if space.is_subbasic_closed(u) {
        Ok(())
    } else {
        Err(Error::NotInFamily(u.to_string(), "S(X)"))
    }
}

/// `m_R(U) = {x : R(x) ⊆ L_U}`.
pub fn m_of_multirel(r: &Multirelation, u: BitSet) -> Result<BitSet> {
    require_closed(&r.space, u)?;
    Ok(r.m_unchecked(u))
}

/// `m_R` as an index map on `S(X)`, if it stays inside `S(X)`.
pub fn m_table(r: &Multirelation) -> Result<Vec<usize>> {
    r.space
        .subbasic_closed()
        .iter()
        .map(|&u| {
            let m = r.m_unchecked(u);
            r.space
                .closed_index(m)
                .ok_or_else(|| Error::NotInFamily(m.to_string(), "S(X)"))
        })
        .collect()
}

fn ms_checks(r: &Multirelation, prefix: &str, report: &mut Report) {
    let space = &r.space;
    let s = space.subbasic_closed();
    let m1 = s.iter().find_map(|&u| {
        let m = r.m_unchecked(u);
        (!space.is_subbasic_closed(m)).then(|| json!({"U": u.to_vec(), "m_R(U)": m.to_vec()}))
    });
    report.push(Check::from_witness(format!("{prefix}m1"), m1));

    let all = BitSet::full(space.saturated_subbasics().len());
    let ms: Vec<_> = s.iter().map(|&u| (u, r.m_unchecked(u))).collect();
    let m2 = (0..space.points()).find_map(|x| {
        let expected = ms
            .iter()
            .filter(|(_, m)| m.contains(x))
            .fold(all, |acc, &(u, _)| acc & space.l_mask(u));
        (expected != r.fibers[x]).then(|| {
            let names = |set: BitSet| -> Vec<Vec<usize>> {
                set.iter()
                    .map(|k| space.saturated_subbasics()[k].to_vec())
                    .collect()
            };
            json!({"x": x, "fiber": names(r.fibers[x]), "expected": names(expected)})
        })
    });
    report.push(Check::from_witness(format!("{prefix}m2"), m2));
}

/// (m1) and (m2).
pub fn check_ms_space(r: &Multirelation) -> Result<Report> {
    r.space.require_verified()?;
    let mut report = Report::new("mS-space");
    ms_checks(r, "", &mut report);
    Ok(report)
}

/// `□_T ∘ m_{R₂} = m_{R₁} ∘ □_T` on `S(X₂)`, with the first `U` where it fails.
pub fn monotone_meet_witness(
    t: &BinaryRelation,
    r1: &Multirelation,
    r2: &Multirelation,
) -> Result<Option<Value>> {
    if **t.source() != *r1.space || **t.target() != *r2.space {
        return Err(Error::CarrierMismatch(
            "T must go from R₁'s space to R₂'s space".into(),
        ));
    }
    if !t.is_meet_relation()? {
        return Err(Error::Uncertified("T is not a meet-relation".into()));
    }
    for r in [r1, r2] {
        let report = check_ms_space(r)?;
        if !report.passed() {
            return Err(Error::Precondition(report.failure_summary()));
        }
    }
    Ok(r2.space.subbasic_closed().iter().find_map(|&u| {
        let left = t.box_op(r2.m_unchecked(u));
        let right = r1.m_unchecked(t.box_op(u));
        (left != right).then(
            || json!({"U": u.to_vec(), "box_of_m": left.to_vec(), "m_of_box": right.to_vec()}),
        )
    }))
}

pub fn is_monotone_meet_relation(
    t: &BinaryRelation,
    r1: &Multirelation,
    r2: &Multirelation,
) -> Result<bool> {
    Ok(monotone_meet_witness(t, r1, r2)?.is_none())
}

/// Index of `(z]` in `𝒵(X)` for each point, `None` where `(z] ∉ 𝒵(X)`;
/// such a `(z]` is never a member of any fiber.
fn down_indices(space: &Space) -> Result<Vec<Option<usize>>> {
    (0..space.points())
        .map(|z| Ok(space.saturated_index(space.down_set(z)?)))
        .collect()
}

/// (m1), (m2), (N1) and (N2). The space must be a verified S-space.
pub fn is_normal(r: &Multirelation) -> Result<Report> {
    let space = &r.space;
    space.require_verified()?;
    let mut report = Report::new("normal mS-space");
    ms_checks(r, "", &mut report);
    let downs = down_indices(space)?;
    let zs = space.saturated_subbasics();
    let n1 = (0..space.points()).find_map(|x| {
        r.fibers[x].iter().find_map(|k| {
            let ok = zs[k]
                .iter()
                .any(|z| downs[z].is_some_and(|d| r.fibers[x].contains(d)));
            (!ok).then(|| json!({"x": x, "Z": zs[k].to_vec()}))
        })
    });
    report.push(Check::from_witness("N1", n1));
    let empty = space.saturated_index(BitSet::EMPTY).expect("∅ ∈ 𝒦");
    let n2 = (0..space.points())
        .find(|&x| r.fibers[x].contains(empty))
        .map(|x| json!({"x": x}));
    report.push(Check::from_witness("N2", n2));
    Ok(report)
}

/// `⟨X, 𝒦, I, E⟩`, certified by [`check_slata_space`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlataSpace {
    i: Multirelation,
    e: Multirelation,
}

/// (A1) both mS-spaces; (A2) `x ∈ U` and `Z ∈ E(x)` give `w ∈ Z` with
/// `I(w) ⊆ L_U`; (A3) if every `Z ∈ I(x)` meets `{y : E(y) ⊆ L_U}` then `x ∈ U`.
pub fn check_slata_space(i: &Multirelation, e: &Multirelation) -> Result<Report> {
    if *i.space != *e.space {
        return Err(Error::CarrierMismatch(
            "I and E live on different spaces".into(),
        ));
    }
    let space = &i.space;
    space.require_verified()?;
    let mut report = Report::new("SLata-space");
    ms_checks(i, "A1_I_", &mut report);
    ms_checks(e, "A1_E_", &mut report);
    let zs = space.saturated_subbasics();
    let mut a2 = None;
    let mut a3 = None;
    for &u in space.subbasic_closed() {
        let mi = i.m_unchecked(u);
        let me = e.m_unchecked(u);
        if a2.is_none() {
            a2 = u.iter().find_map(|x| {
                e.fibers[x]
                    .iter()
                    .find(|&k| !zs[k].intersects(mi))
                    .map(|k| json!({"U": u.to_vec(), "x": x, "Z": zs[k].to_vec()}))
            });
        }
        if a3.is_none() {
            a3 = (0..space.points())
                .filter(|&x| !u.contains(x))
                .find(|&x| i.fibers[x].iter().all(|k| zs[k].intersects(me)))
                .map(|x| json!({"U": u.to_vec(), "x": x}));
        }
    }
    report.push(Check::from_witness("A2", a2));
    report.push(Check::from_witness("A3", a3));
    Ok(report)
}

impl SlataSpace {
    pub fn new(i: Multirelation, e: Multirelation) -> Result<Self> {
        let report = check_slata_space(&i, &e)?;
        if !report.passed() {
            return Err(Error::Uncertified(report.failure_summary()));
        }
        Ok(SlataSpace { i, e })
    }

    pub fn from_json(json: &SlataSpaceJson) -> Result<Self> {
        let space = Space::new(crate::sspace::FiniteSpace::from_json(&json.space)?);
        Self::new(
            Multirelation::from_fiber_json(space.clone(), &json.i)?,
            Multirelation::from_fiber_json(space, &json.e)?,
        )
    }

    pub fn to_json(&self) -> SlataSpaceJson {
        SlataSpaceJson {
            space: self.space().to_json(),
            i: self.i.fiber_json(),
            e: self.e.fiber_json(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.i.space
    }

    pub fn i(&self) -> &Multirelation {
        &self.i
    }

    pub fn e(&self) -> &Multirelation {
        &self.e
    }

    /// `⟨S(X), m_I, m_E⟩`.
    pub fn induced_slata(&self) -> Result<Slata> {
        Slata::new(
            self.space().closed_semilattice()?,
            m_table(&self.i)?,
            m_table(&self.e)?,
        )
    }
}

/// A meet-relation monotone for both the I and the E structures.
pub fn slata_relation_witness(
    t: &BinaryRelation,
    x: &SlataSpace,
    y: &SlataSpace,
) -> Result<Option<Value>> {
    Ok(monotone_meet_witness(t, &x.i, &y.i)?.or(monotone_meet_witness(t, &x.e, &y.e)?))
}

/// `G ⊆ X × 𝒞(X)`; fiber `x` holds indices into `space.closure_system()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRelation {
    space: Space,
    fibers: Vec<BitSet>,
}

impl SigmaRelation {
    pub fn new(space: Space, fibers: Vec<BitSet>) -> Result<Self> {
        let len = space.closure_system().len();
        if len > CAPACITY {
            return Err(Error::Capacity {
                what: "closure system",
                needed: len,
                capacity: CAPACITY,
            });
        }
        check_fiber_shape(&fibers, space.points(), len)?;
        Ok(SigmaRelation { space, fibers })
    }

    pub fn from_fiber_json(space: Space, fibers: &FiberJson) -> Result<Self> {
        let idx = resolve_fibers(space.closure_system(), fibers, space.points(), "𝒞(X)")?;
        Self::new(space, idx)
    }

    pub fn fiber_json(&self) -> FiberJson {
        fibers_to_json(self.space.closure_system(), &self.fibers)
    }

    pub fn to_json(&self) -> MultirelJson {
        MultirelJson {
            space: self.space.to_json(),
            fibers: self.fiber_json(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn fibers(&self) -> &[BitSet] {
        &self.fibers
    }

    pub fn fiber_sets(&self, x: usize) -> Vec<BitSet> {
        self.fibers[x]
            .iter()
            .map(|k| self.space.closure_system()[k])
            .collect()
    }

    fn m_unchecked(&self, u: BitSet) -> BitSet {
        let d = self.space.d_mask(u);
        (0..self.fibers.len())
            .filter(|&x| self.fibers[x].intersects(d))
            .collect()
    }
}

/// `m_G(U) = {x : some Y ∈ G(x) has Y ⊆ U}`.
pub fn m_of_sigma(g: &SigmaRelation, u: BitSet) -> Result<BitSet> {
    require_closed(&g.space, u)?;
    Ok(g.m_unchecked(u))
}

/// Condition 1: `m_G(U) ∈ S(X)`; condition 2:
/// `G(x) = ⋂{(D_U)ᶜ : x ∉ m_G(U)}`.
pub fn check_sigma_space(g: &SigmaRelation) -> Result<Report> {
    let space = &g.space;
    space.require_verified()?;
    let mut report = Report::new("σmS-space");
    let s = space.subbasic_closed();
    let ms: Vec<_> = s.iter().map(|&u| (u, g.m_unchecked(u))).collect();
    let c1 = ms
        .iter()
        .find(|(_, m)| !space.is_subbasic_closed(*m))
        .map(|(u, m)| json!({"U": u.to_vec(), "m_G(U)": m.to_vec()}));
    report.push(Check::from_witness("sigma1", c1));
    let len = space.closure_system().len();
    let all = BitSet::full(len);
    let c2 = (0..space.points()).find_map(|x| {
        let expected = ms
            .iter()
            .filter(|(_, m)| !m.contains(x))
            .fold(all, |acc, &(u, _)| acc & space.d_mask(u).complement(len));
        (expected != g.fibers[x]).then(|| {
            let names = |set: BitSet| -> Vec<Vec<usize>> {
                set.iter()
                    .map(|k| space.closure_system()[k].to_vec())
                    .collect()
            };
            json!({"x": x, "fiber": names(g.fibers[x]), "expected": names(expected)})
        })
    });
    report.push(Check::from_witness("sigma2", c2));
    Ok(report)
}

/// `Ψ(𝒟) = {Z ∈ 𝒵 : Z meets every Y ∈ 𝒟}`; `d` indexes `closure_system()`.
pub fn psi(space: &Space, d: BitSet) -> Result<BitSet> {
    let cs = space.closure_system();
    if let Some(k) = (d - BitSet::full(cs.len())).first() {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: cs.len(),
        });
    }
    Ok(space
        .saturated_subbasics()
        .iter()
        .enumerate()
        .filter(|(_, z)| d.iter().all(|k| cs[k].intersects(**z)))
        .map(|(k, _)| k)
        .collect())
}

/// `R_G(x) = Ψ(G(x))`.
pub fn multirel_from_sigma(g: &SigmaRelation) -> Result<Multirelation> {
    let report = check_sigma_space(g)?;
    if !report.passed() {
        return Err(Error::Precondition(report.failure_summary()));
    }
    let fibers = g
        .fibers
        .iter()
        .map(|&d| psi(&g.space, d))
        .collect::<Result<_>>()?;
    let r = Multirelation::new(g.space.clone(), fibers)?;
    debug_assert!(
        g.space
            .subbasic_closed()
            .iter()
            .all(|&u| g.m_unchecked(u) == r.m_unchecked(u)),
        "m_G differs from m_(R_G)"
    );
    Ok(r)
}

/// `R_T(x) = {Z ∈ 𝒵 : T(x) ∩ Z ≠ ∅}`.
pub fn multirel_from_meet(t: &BinaryRelation) -> Result<Multirelation> {
    if !t.is_endo() {
        return Err(Error::CarrierMismatch("R_T needs an endo-relation".into()));
    }
    if let Some(w) = t.meet_witness()? {
        return Err(Error::Uncertified(format!("not a meet-relation: {w}")));
    }
    let space = t.source().clone();
    let fibers = (0..space.points())
        .map(|x| space.l_mask(t.fiber(x)))
        .collect();
    Multirelation::new(space, fibers)
}

/// `T_R = {(x, y) : (y] ∈ R(x)}` for normal `R`.
pub fn meet_from_normal(r: &Multirelation) -> Result<BinaryRelation> {
    let report = is_normal(r)?;
    if !report.passed() {
        return Err(Error::NotNormal(report.failure_summary()));
    }
    let space = &r.space;
    let downs = down_indices(space)?;
    let rows = (0..space.points())
        .map(|x| {
            (0..space.points())
                .filter(|&y| downs[y].is_some_and(|d| r.fibers[x].contains(d)))
                .collect()
        })
        .collect();
    BinaryRelation::new(space.clone(), space.clone(), rows)
}

/// `G_T(x) = {Y ∈ 𝒞 : x ∈ ⋂{U ∈ S(X) : Y ⊆ □_T(U)}}`.
pub fn sigma_from_meet(t: &BinaryRelation) -> Result<SigmaRelation> {
    if let Some(w) = t.a_relation_witness()? {
        return Err(Error::Uncertified(format!("not an A-relation: {w}")));
    }
    let space = t.source().clone();
    let boxes: Vec<BitSet> = space
        .subbasic_closed()
        .iter()
        .map(|&u| t.box_op(u))
        .collect();
    let anchors: Vec<BitSet> = space
        .closure_system()
        .iter()
        .map(|&y| {
            space
                .subbasic_closed()
                .iter()
                .zip(&boxes)
                .filter(|(_, b)| y.is_subset(**b))
                .fold(space.carrier(), |acc, (&u, _)| acc & u)
        })
        .collect();
    let fibers = (0..space.points())
        .map(|x| {
            (0..anchors.len())
                .filter(|&k| anchors[k].contains(x))
                .collect()
        })
        .collect();
    SigmaRelation::new(space, fibers)
}
