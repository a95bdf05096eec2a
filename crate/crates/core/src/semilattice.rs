//! Finite meet-semilattices with top, their filters, and the algebras built
//! on them: monotone, modal and adjoint-pair (Slata) expansions.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bitset::{BitSet, CAPACITY};
use crate::error::{Error, Result};
use crate::order::{adjunction_witness, FinitePoset, MonotoneMap};
use crate::report::{Check, Report};

/// JSON shape (and unvalidated form) of a semilattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeJson {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub top: usize,
}

/// Checks every semilattice law on a raw table, reporting one witness per
/// failing law.
pub fn validate_semilattice(raw: &SemilatticeJson) -> Report {
    let mut report = Report::new("semilattice");
    let n = raw.size;
    let shape_ok = (1..=CAPACITY).contains(&n)
        && raw.meet.len() == n
        && raw
            .meet
            .iter()
            .all(|row| row.len() == n && row.iter().all(|&v| v < n))
        && raw.top < n;
    if !shape_ok {
        report.push(Check::fail(
            "shape",
            json!({"size": n, "rows": raw.meet.len(), "top": raw.top, "capacity": CAPACITY}),
        ));
        return report;
    }
    report.push(Check::pass("shape"));
    let m = |a: usize, b: usize| raw.meet[a][b];

    let idem = (0..n)
        .find(|&a| m(a, a) != a)
        .map(|a| json!({"a": a, "a_meet_a": m(a, a)}));
    report.push(Check::from_witness("idempotent", idem));

    let comm = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| m(a, b) != m(b, a))
        .map(|(a, b)| json!({"a": a, "b": b, "a_meet_b": m(a, b), "b_meet_a": m(b, a)}));
    report.push(Check::from_witness("commutative", comm));

    let mut assoc = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = m(m(a, b), c);
                let right = m(a, m(b, c));
                if left != right {
                    assoc = Some(json!({"a": a, "b": b, "c": c, "left": left, "right": right}));
                    break 'outer;
                }
            }
        }
    }
    report.push(Check::from_witness("associative", assoc));

    let top = (0..n)
        .find(|&a| m(a, raw.top) != a)
        .map(|a| json!({"a": a, "a_meet_top": m(a, raw.top)}));
    report.push(Check::from_witness("top_identity", top));
    report
}

/// A validated finite meet-semilattice with greatest element.
#[derive(Clone, Debug)]
pub struct FiniteSemilattice {
    meet: Vec<Vec<usize>>,
    top: usize,
    order: FinitePoset,
    filters: OnceLock<FilterFamily>,
}

#[derive(Clone, Debug)]
struct FilterFamily {
    all: Vec<BitSet>,
    irreducible: Vec<BitSet>,
}

impl PartialEq for FiniteSemilattice {
    fn eq(&self, other: &Self) -> bool {
        self.meet == other.meet && self.top == other.top
    }
}

impl Eq for FiniteSemilattice {}

impl FiniteSemilattice {
    pub fn new(raw: &SemilatticeJson) -> Result<Self> {
        let report = validate_semilattice(raw);
        if !report.passed() {
            return Err(Error::InvalidSemilattice(report.failure_summary()));
        }
        let n = raw.size;
        let up = (0..n)
            .map(|a| (0..n).filter(|&b| raw.meet[a][b] == a).collect())
            .collect();
        let order = FinitePoset::from_upsets(up)?;
        Ok(FiniteSemilattice {
            meet: raw.meet.clone(),
            top: raw.top,
            order,
            filters: OnceLock::new(),
        })
    }

    /// The semilattice `⟨family, ∩, ⋃family⟩`; elements are numbered in the
    /// order given. The family must be closed under intersection and contain
    /// a greatest member.
    pub fn from_family(family: &[BitSet]) -> Result<Self> {
        let n = family.len();
        let index = |s: BitSet| family.iter().position(|&t| t == s);
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = index(family[a] & family[b]).ok_or_else(|| {
                    Error::InvalidSemilattice(format!(
                        "family not closed under intersection: {} ∩ {}",
                        family[a], family[b]
                    ))
                })?;
            }
        }
        let union = family.iter().fold(BitSet::EMPTY, |acc, &s| acc | s);
        let top = index(union)
            .ok_or_else(|| Error::InvalidSemilattice("family has no greatest member".into()))?;
        Self::new(&SemilatticeJson { size: n, meet, top })
    }

    pub fn to_json(&self) -> SemilatticeJson {
        SemilatticeJson {
            size: self.size(),
            meet: self.meet.clone(),
            top: self.top,
        }
    }

    /// `0 < 1 < .. < n-1` with meet = min.
    pub fn chain(n: usize) -> Self {
        let meet = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        Self::new(&SemilatticeJson {
            size: n,
            meet,
            top: n - 1,
        })
        .expect("chain")
    }

    /// `{0, a, b, 1}` numbered `0, 1, 2, 3` with `a ∧ b = 0`.
    pub fn diamond() -> Self {
        Self::from_family(&[
            BitSet::EMPTY,
            BitSet::singleton(0),
            BitSet::singleton(1),
            BitSet::full(2),
        ])
        .expect("diamond")
    }

    /// `⟨P({0..k-1}), ∩, full⟩`, element `s` being the subset with bit mask `s`.
    pub fn powerset(k: usize) -> Self {
        let family: Vec<_> = (0..1u64 << k).map(BitSet::from_bits).collect();
        Self::from_family(&family).expect("powerset")
    }

    pub fn one_element() -> Self {
        Self::chain(1)
    }

    pub fn size(&self) -> usize {
        self.meet.len()
    }

    pub fn carrier(&self) -> BitSet {
        BitSet::full(self.size())
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    /// Meet of a set of elements; the empty meet is `top`.
    pub fn meet_all(&self, set: BitSet) -> usize {
        set.iter().fold(self.top, |acc, a| self.meet(acc, a))
    }

    pub fn bottom(&self) -> usize {
        self.meet_all(self.carrier())
    }

    /// Least upper bound; every finite meet-semilattice with top is a lattice.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let ub = self.up(a) & self.up(b);
        self.meet_all(ub)
    }

    /// `↑a` as an element set.
    pub fn up(&self, a: usize) -> BitSet {
        self.order.principal_upset(a).expect("element in range")
    }

    pub fn down(&self, a: usize) -> BitSet {
        self.order.principal_downset(a).expect("element in range")
    }

    /// Upset containing top and closed under meets.
    pub fn is_filter(&self, set: BitSet) -> bool {
        set.contains(self.top)
            && self.order.is_upset(set)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.meet(a, b))))
    }

    fn filter_family(&self) -> &FilterFamily {
        self.filters.get_or_init(|| {
            // A non-empty meet-closed finite set contains its own meet, so
            // every filter is principal.
            let mut all: Vec<BitSet> = (0..self.size()).map(|a| self.up(a)).collect();
            all.sort();
            let carrier = self.carrier();
            let irreducible = all
                .iter()
                .copied()
                .filter(|&f| f != carrier && is_meet_irreducible_in(f, &all))
                .collect();
            FilterFamily { all, irreducible }
        })
    }

    /// All filters, or with `irreducible_only` the irreducible ones, sorted
    /// by packed element-set value.
    pub fn enumerate_filters(&self, irreducible_only: bool) -> Vec<BitSet> {
        let family = self.filter_family();
        if irreducible_only {
            family.irreducible.clone()
        } else {
            family.all.clone()
        }
    }

    pub fn irreducible_filters(&self) -> &[BitSet] {
        &self.filter_family().irreducible
    }

    /// Non-empty directed downsets, sorted by packed value. In a finite
    /// lattice these are the principal downsets.
    pub fn enumerate_order_ideals(&self) -> Vec<BitSet> {
        let mut ideals: Vec<_> = (0..self.size()).map(|a| self.down(a)).collect();
        ideals.sort();
        ideals
    }

    /// Element-array operator viewed as a map on the underlying poset.
    pub fn operator_map(&self, op: &[usize]) -> Result<MonotoneMap> {
        MonotoneMap::new(self.order.clone(), self.order.clone(), op.to_vec())
    }
}

/// `f` is not `f1 ∩ f2` for any filters `f1, f2` both different from `f`.
fn is_meet_irreducible_in(f: BitSet, filters: &[BitSet]) -> bool {
    filters.iter().all(|&f1| {
        filters
            .iter()
            .all(|&f2| (f1 & f2) != f || f1 == f || f2 == f)
    })
}

fn check_operator_shape(a: &FiniteSemilattice, op: &[usize], name: &str) -> Result<()> {
    if op.len() != a.size() {
        return Err(Error::InvalidOperator(format!(
            "{name} has {} entries, algebra has {} elements",
            op.len(),
            a.size()
        )));
    }
    if let Some(&v) = op.iter().find(|&&v| v >= a.size()) {
        return Err(Error::IndexOutOfRange {
            index: v,
            bound: a.size(),
        });
    }
    Ok(())
}

/// First pair `a <= b` with `m(a) ≰ m(b)`.
pub fn monotone_witness(a: &FiniteSemilattice, m: &[usize]) -> Option<(usize, usize)> {
    (0..a.size())
        .flat_map(|x| a.up(x).iter().map(move |y| (x, y)))
        .find(|&(x, y)| !a.leq(m[x], m[y]))
}

/// Why `d` fails to preserve top and binary meets, if it does.
pub fn modal_witness(a: &FiniteSemilattice, d: &[usize]) -> Option<serde_json::Value> {
    if d[a.top()] != a.top() {
        return Some(json!({"law": "d(top) = top", "d_top": d[a.top()]}));
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            let lhs = d[a.meet(x, y)];
            let rhs = a.meet(d[x], d[y]);
            if lhs != rhs {
                return Some(
                    json!({"law": "d(a ∧ b) = d(a) ∧ d(b)", "a": x, "b": y, "lhs": lhs, "rhs": rhs}),
                );
            }
        }
    }
    None
}

pub fn is_monotone_operator(a: &FiniteSemilattice, m: &[usize]) -> bool {
    m.len() == a.size() && m.iter().all(|&v| v < a.size()) && monotone_witness(a, m).is_none()
}

pub fn is_modal_operator(a: &FiniteSemilattice, d: &[usize]) -> bool {
    d.len() == a.size() && d.iter().all(|&v| v < a.size()) && modal_witness(a, d).is_none()
}

/// `⟨A, m⟩` with `m` order-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneSemilattice {
    pub algebra: FiniteSemilattice,
    pub m: Vec<usize>,
}

impl MonotoneSemilattice {
    pub fn new(algebra: FiniteSemilattice, m: Vec<usize>) -> Result<Self> {
        check_operator_shape(&algebra, &m, "m")?;
        if let Some((x, y)) = monotone_witness(&algebra, &m) {
            return Err(Error::NotMonotone {
                x,
                y,
                fx: m[x],
                fy: m[y],
            });
        }
        Ok(MonotoneSemilattice { algebra, m })
    }

    pub fn is_modal(&self) -> bool {
        modal_witness(&self.algebra, &self.m).is_none()
    }
}

/// `⟨A, d⟩` with `d` preserving top and meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalSemilattice {
    pub algebra: FiniteSemilattice,
    pub d: Vec<usize>,
}

impl ModalSemilattice {
    pub fn new(algebra: FiniteSemilattice, d: Vec<usize>) -> Result<Self> {
        check_operator_shape(&algebra, &d, "d")?;
        if let Some(w) = modal_witness(&algebra, &d) {
            return Err(Error::InvalidOperator(format!("not modal: {w}")));
        }
        Ok(ModalSemilattice { algebra, d })
    }
}

/// Monotonicity of both maps and the biconditional `i(p) <= q  <=>  p <= d(q)`.
pub fn validate_slata(algebra: &FiniteSemilattice, i: &[usize], d: &[usize]) -> Report {
    let mut report = Report::new("slata");
    for (name, op) in [("i", i), ("d", d)] {
        if let Err(e) = check_operator_shape(algebra, op, name) {
            report.push(Check::fail(format!("{name}_shape"), json!(e.to_string())));
            return report;
        }
    }
    report.push(Check::pass("shape"));
    report.push(Check::from_witness(
        "i_monotone",
        monotone_witness(algebra, i).map(|(a, b)| json!({"a": a, "b": b})),
    ));
    report.push(Check::from_witness(
        "d_monotone",
        monotone_witness(algebra, d).map(|(a, b)| json!({"a": a, "b": b})),
    ));
    let n = algebra.size();
    let witness = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .find(|&(p, q)| algebra.leq(i[p], q) != algebra.leq(p, d[q]))
        .map(|(p, q)| json!({"p": p, "q": q, "i_p": i[p], "d_q": d[q]}));
    report.push(Check::from_witness("adjunction", witness));
    report
}

/// `⟨A, i, d⟩` with `i ⊣ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slata {
    pub algebra: FiniteSemilattice,
    pub i: Vec<usize>,
    pub d: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlataJson {
    pub semilattice: SemilatticeJson,
    pub i: Vec<usize>,
    pub d: Vec<usize>,
}

impl Slata {
    pub fn new(algebra: FiniteSemilattice, i: Vec<usize>, d: Vec<usize>) -> Result<Self> {
        let report = validate_slata(&algebra, &i, &d);
        if !report.passed() {
            return Err(Error::InvalidOperator(report.failure_summary()));
        }
        Ok(Slata { algebra, i, d })
    }

    /// Builds the Slata whose right adjoint is `d`, computing the left adjoint.
    pub fn from_right_adjoint(algebra: FiniteSemilattice, d: Vec<usize>) -> Result<Self> {
        check_operator_shape(&algebra, &d, "d")?;
        let map = algebra.operator_map(&d)?;
        let i = crate::order::find_left_adjoint(&map)
            .ok_or_else(|| Error::InvalidOperator("d has no left adjoint".into()))?;
        Slata::new(algebra, i.as_slice().to_vec(), d)
    }

    pub fn from_json(json: &SlataJson) -> Result<Self> {
        Slata::new(
            FiniteSemilattice::new(&json.semilattice)?,
            json.i.clone(),
            json.d.clone(),
        )
    }

    pub fn to_json(&self) -> SlataJson {
        SlataJson {
            semilattice: self.algebra.to_json(),
            i: self.i.clone(),
            d: self.d.clone(),
        }
    }

    pub fn modal_reduct(&self) -> ModalSemilattice {
        ModalSemilattice {
            algebra: self.algebra.clone(),
            d: self.d.clone(),
        }
    }
}

/// A map between semilattice carriers. Preservation laws are checked by
/// [`check_hom`], not at construction, so that failing candidates can be
/// reported with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilatticeHom {
    pub source: FiniteSemilattice,
    pub target: FiniteSemilattice,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: SemilatticeJson,
    pub target: SemilatticeJson,
    pub map: Vec<usize>,
}

impl SemilatticeHom {
    pub fn new(
        source: FiniteSemilattice,
        target: FiniteSemilattice,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::CarrierMismatch(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::IndexOutOfRange {
                index: v,
                bound: target.size(),
            });
        }
        Ok(SemilatticeHom {
            source,
            target,
            map,
        })
    }

    /// Like [`SemilatticeHom::new`] but also requires meet and top preservation.
    pub fn new_checked(
        source: FiniteSemilattice,
        target: FiniteSemilattice,
        map: Vec<usize>,
    ) -> Result<Self> {
        let h = Self::new(source, target, map)?;
        if let Some(w) = h.plain_witness() {
            return Err(Error::InvalidHom(w.to_string()));
        }
        Ok(h)
    }

    pub fn identity(a: &FiniteSemilattice) -> Self {
        SemilatticeHom {
            source: a.clone(),
            target: a.clone(),
            map: (0..a.size()).collect(),
        }
    }

    pub fn from_json(json: &HomJson) -> Result<Self> {
        Self::new(
            FiniteSemilattice::new(&json.source)?,
            FiniteSemilattice::new(&json.target)?,
            json.map.clone(),
        )
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            map: self.map.clone(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SemilatticeHom) -> Result<SemilatticeHom> {
        if self.target != g.source {
            return Err(Error::CarrierMismatch(
                "composite of non-composable homs".into(),
            ));
        }
        Ok(SemilatticeHom {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&b| g.map[b]).collect(),
        })
    }

    fn plain_witness(&self) -> Option<HomWitness> {
        let (a, b) = (&self.source, &self.target);
        if self.map[a.top()] != b.top() {
            return Some(HomWitness::new(
                "h(top) = top",
                vec![a.top()],
                self.map[a.top()],
                b.top(),
            ));
        }
        for x in 0..a.size() {
            for y in 0..a.size() {
                let lhs = self.map[a.meet(x, y)];
                let rhs = b.meet(self.map[x], self.map[y]);
                if lhs != rhs {
                    return Some(HomWitness::new(
                        "h(a ∧ b) = h(a) ∧ h(b)",
                        vec![x, y],
                        lhs,
                        rhs,
                    ));
                }
            }
        }
        None
    }

    /// First `a` with `h(src_op(a)) != tgt_op(h(a))`.
    fn commutation_failures(
        &self,
        name: &str,
        src_op: &[usize],
        tgt_op: &[usize],
    ) -> Vec<HomWitness> {
        (0..self.source.size())
            .filter_map(|a| {
                let lhs = self.map[src_op[a]];
                let rhs = tgt_op[self.map[a]];
                (lhs != rhs).then(|| {
                    HomWitness::new(format!("h({name}(a)) = {name}(h(a))"), vec![a], lhs, rhs)
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomKind {
    Plain,
    Monotone,
    Modal,
    Slata,
}

/// The failing law with its arguments and the two sides that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub law: String,
    pub args: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl HomWitness {
    fn new(law: impl Into<String>, args: Vec<usize>, lhs: usize, rhs: usize) -> Self {
        HomWitness {
            law: law.into(),
            args,
            lhs,
            rhs,
        }
    }
}

impl std::fmt::Display for HomWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at {:?}: {} vs {}",
            self.law, self.args, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub holds: bool,
    pub witness: Option<HomWitness>,
    /// Every failing argument of the first operator law that fails.
    pub operator_failures: Vec<HomWitness>,
}

/// Checks `h` as a homomorphism of the given kind.
///
/// `Monotone` and `Modal` take one operator per side, `Slata` takes `[i, d]`.
/// Operators must themselves be of the declared kind.
pub fn check_hom(
    h: &SemilatticeHom,
    kind: HomKind,
    source_ops: &[&[usize]],
    target_ops: &[&[usize]],
) -> Result<HomCheck> {
    let arity = match kind {
        HomKind::Plain => 0,
        HomKind::Monotone | HomKind::Modal => 1,
        HomKind::Slata => 2,
    };
    if source_ops.len() != arity || target_ops.len() != arity {
        return Err(Error::CarrierMismatch(format!(
            "{kind:?} homomorphism needs {arity} operator(s) per side"
        )));
    }
    for op in source_ops {
        check_operator_shape(&h.source, op, "source operator")?;
    }
    for op in target_ops {
        check_operator_shape(&h.target, op, "target operator")?;
    }
    match kind {
        HomKind::Monotone => {
            if !is_monotone_operator(&h.source, source_ops[0])
                || !is_monotone_operator(&h.target, target_ops[0])
            {
                return Err(Error::InvalidOperator("operator is not monotone".into()));
            }
        }
        HomKind::Modal => {
            if !is_modal_operator(&h.source, source_ops[0])
                || !is_modal_operator(&h.target, target_ops[0])
            {
                return Err(Error::InvalidOperator("operator is not modal".into()));
            }
        }
        HomKind::Slata => {
            for (alg, ops) in [(&h.source, source_ops), (&h.target, target_ops)] {
                if !validate_slata(alg, ops[0], ops[1]).passed() {
                    return Err(Error::InvalidOperator(
                        "operators do not form an adjunction".into(),
                    ));
                }
            }
        }
        HomKind::Plain => {}
    }
    let names: &[&str] = match kind {
        HomKind::Plain => &[],
        HomKind::Monotone => &["m"],
        HomKind::Modal => &["d"],
        HomKind::Slata => &["i", "d"],
    };
    let operator_failures = names
        .iter()
        .zip(source_ops.iter().zip(target_ops))
        .map(|(name, (s, t))| h.commutation_failures(name, s, t))
        .find(|f| !f.is_empty())
        .unwrap_or_default();
    let witness = h
        .plain_witness()
        .or_else(|| operator_failures.first().cloned());
    Ok(HomCheck {
        holds: witness.is_none(),
        witness,
        operator_failures,
    })
}

/// Decides whether a homomorphism that already preserves meets, top and the
/// right adjoints also preserves the left adjoints, using only the right
/// adjoint of the target: `d_B⁻¹[↑h(a)] ⊆ ↑h(i_A(a))` for every `a`.
pub fn slata_hom_criterion(h: &SemilatticeHom, source: &Slata, target: &Slata) -> Result<bool> {
    if h.source != source.algebra || h.target != target.algebra {
        return Err(Error::CarrierMismatch(
            "hom carriers differ from the Slatas".into(),
        ));
    }
    let pre = check_hom(h, HomKind::Modal, &[&source.d], &[&target.d])?;
    if let Some(w) = pre.witness {
        return Err(Error::Precondition(format!(
            "criterion assumes a semilattice hom preserving right adjoints: {w}"
        )));
    }
    let b = &target.algebra;
    let criterion = (0..source.algebra.size()).all(|a| {
        let ha = h.apply(a);
        let pre_image: BitSet = (0..b.size()).filter(|&y| b.leq(ha, target.d[y])).collect();
        pre_image.is_subset(b.up(h.apply(source.i[a])))
    });
    debug_assert_eq!(
        criterion,
        (0..source.algebra.size()).all(|a| h.apply(source.i[a]) == target.i[h.apply(a)]),
        "left-adjoint criterion disagrees with direct i-preservation"
    );
    Ok(criterion)
}

/// Convenience: the adjunction witness for element-array operators.
pub fn operator_adjunction_witness(
    a: &FiniteSemilattice,
    i: &[usize],
    d: &[usize],
) -> Result<Option<(usize, usize)>> {
    adjunction_witness(&a.operator_map(i)?, &a.operator_map(d)?)
}

/// Filters straight from the definition, scanning every subset; irreducible
/// ones are the proper filters that are not `F₁ ∩ F₂` for two other filters.
/// Exponential in the carrier size; an oracle for [`FiniteSemilattice::enumerate_filters`].
pub fn filters_by_definition(a: &FiniteSemilattice, irreducible_only: bool) -> Vec<BitSet> {
    let all: Vec<BitSet> = crate::bitset::all_subsets(a.size())
        .filter(|&s| a.is_filter(s))
        .collect();
    if !irreducible_only {
        return all;
    }
    all.iter()
        .copied()
        .filter(|&f| {
            f != a.carrier()
                && !all
                    .iter()
                    .any(|&f1| all.iter().any(|&f2| f1 & f2 == f && f1 != f && f2 != f))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::all_subsets;

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().copied().collect()
    }

    fn brute_ideals(a: &FiniteSemilattice) -> Vec<BitSet> {
        all_subsets(a.size())
            .filter(|&s| {
                !s.is_empty() && a.order().is_downset(s) && a.order().is_directed(s).unwrap()
            })
            .collect()
    }

    #[test]
    fn chain_validates() {
        let raw = SemilatticeFixture::chain3();
        assert!(validate_semilattice(&raw).passed());
    }

    struct SemilatticeFixture;
    impl SemilatticeFixture {
        fn chain3() -> SemilatticeJson {
            SemilatticeJson {
                size: 3,
                meet: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
                top: 2,
            }
        }
    }

    #[test]
    fn commutativity_violation_reported() {
        let mut raw = SemilatticeFixture::chain3();
        raw.meet[0][1] = 1;
        let report = validate_semilattice(&raw);
        let check = report.check("commutative").unwrap();
        assert!(!check.passed());
        assert_eq!(check.witness.as_ref().unwrap()["a"], 0);
    }

    #[test]
    fn diamond_validates() {
        let d = SemilatticeFixture::chain3();
        assert!(validate_semilattice(&d).passed());
        let diamond = FiniteSemilattice::diamond();
        assert!(validate_semilattice(&diamond.to_json()).passed());
        assert_eq!(diamond.meet(1, 2), 0);
        assert_eq!(diamond.join(1, 2), 3);
    }

    #[test]
    fn filters_of_chain() {
        let a = FiniteSemilattice::chain(3);
        // elements 0 < a=1 < 1=2
        assert_eq!(
            a.enumerate_filters(false),
            vec![set(&[2]), set(&[1, 2]), set(&[0, 1, 2])]
        );
        assert_eq!(a.enumerate_filters(true), vec![set(&[2]), set(&[1, 2])]);
    }

    #[test]
    fn filters_of_diamond() {
        let a = FiniteSemilattice::diamond();
        let proper: Vec<_> = a
            .enumerate_filters(false)
            .into_iter()
            .filter(|&f| f != a.carrier())
            .collect();
        assert_eq!(proper, vec![set(&[3]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(a.enumerate_filters(true), vec![set(&[1, 3]), set(&[2, 3])]);
    }

    #[test]
    fn filters_of_one_element() {
        let a = FiniteSemilattice::one_element();
        assert_eq!(a.enumerate_filters(false), vec![set(&[0])]);
        assert!(a.enumerate_filters(true).is_empty());
    }

    #[test]
    fn filter_enumeration_matches_definition() {
        for a in [
            FiniteSemilattice::chain(1),
            FiniteSemilattice::chain(4),
            FiniteSemilattice::diamond(),
            FiniteSemilattice::powerset(3),
        ] {
            assert_eq!(a.enumerate_filters(false), filters_by_definition(&a, false));
            assert_eq!(a.enumerate_filters(true), filters_by_definition(&a, true));
            assert_eq!(a.enumerate_order_ideals(), brute_ideals(&a));
        }
    }

    #[test]
    fn order_ideals() {
        let chain = FiniteSemilattice::chain(3);
        assert_eq!(
            chain.enumerate_order_ideals(),
            vec![set(&[0]), set(&[0, 1]), set(&[0, 1, 2])]
        );
        let d = FiniteSemilattice::diamond();
        let ideals = d.enumerate_order_ideals();
        assert_eq!(
            ideals,
            vec![set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2, 3])]
        );
        assert!(!ideals.contains(&set(&[0, 1, 2])));
        assert_eq!(
            FiniteSemilattice::one_element().enumerate_order_ideals(),
            vec![set(&[0])]
        );
    }

    #[test]
    fn slata_validation() {
        let a = FiniteSemilattice::chain(3);
        let id = vec![0, 1, 2];
        assert!(validate_slata(&a, &id, &id).passed());
        assert!(validate_slata(&a, &[0, 0, 0], &[2, 2, 2]).passed());
        let report = validate_slata(&a, &[1, 1, 1], &[1, 1, 1]);
        let check = report.check("adjunction").unwrap();
        assert!(!check.passed());
        assert!(check.witness.is_some());
    }

    #[test]
    fn left_adjoint_from_right_adjoint() {
        let a = FiniteSemilattice::chain(3);
        let s = Slata::from_right_adjoint(a, vec![2, 2, 2]).unwrap();
        assert_eq!(s.i, vec![0, 0, 0]);
    }

    #[test]
    fn identity_hom_checks() {
        let a = FiniteSemilattice::diamond();
        let h = SemilatticeHom::identity(&a);
        let d = vec![0, 1, 2, 3];
        assert!(check_hom(&h, HomKind::Plain, &[], &[]).unwrap().holds);
        assert!(check_hom(&h, HomKind::Modal, &[&d], &[&d]).unwrap().holds);
        assert!(
            check_hom(&h, HomKind::Slata, &[&d, &d], &[&d, &d])
                .unwrap()
                .holds
        );
        let s = Slata::new(a, d.clone(), d).unwrap();
        assert!(slata_hom_criterion(&h, &s, &s).unwrap());
    }

    #[test]
    fn hom_operator_arity_enforced() {
        let a = FiniteSemilattice::chain(2);
        let h = SemilatticeHom::identity(&a);
        assert!(check_hom(&h, HomKind::Modal, &[], &[]).is_err());
    }

    #[test]
    fn slata_criterion_on_chain_constant_adjunction() {
        let a = FiniteSemilattice::chain(3);
        let s = Slata::new(a.clone(), vec![0, 0, 0], vec![2, 2, 2]).unwrap();
        assert!(slata_hom_criterion(&SemilatticeHom::identity(&a), &s, &s).unwrap());
    }

    #[test]
    fn criterion_precondition_enforced() {
        let a = FiniteSemilattice::chain(3);
        let s = Slata::new(a.clone(), vec![0, 0, 0], vec![2, 2, 2]).unwrap();
        let t = Slata::new(a.clone(), vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        let h = SemilatticeHom::identity(&a);
        assert!(matches!(
            slata_hom_criterion(&h, &s, &t),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn adjunction_identities() {
        let a = FiniteSemilattice::diamond();
        for d in [vec![0, 1, 2, 3], vec![3, 3, 3, 3], vec![0, 2, 1, 3]] {
            let s = Slata::from_right_adjoint(a.clone(), d).unwrap();
            for x in 0..a.size() {
                assert_eq!(s.i[s.d[s.i[x]]], s.i[x]);
                assert_eq!(s.d[s.i[s.d[x]]], s.d[x]);
            }
        }
    }
}
