//! Finite posets, monotone maps and adjunctions between them.

use serde::{Deserialize, Serialize};

use crate::bitset::{all_subsets, BitSet, CAPACITY};
use crate::error::{Error, Result};

/// A finite partial order on `{0, .., size-1}`.
///
/// Row `x` stores the principal upset `↑x` as a bit set, so `leq(x, y)` is a
/// single bit test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    up: Vec<BitSet>,
}

/// JSON shape of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Validates a boolean matrix (`leq[x][y]` means `x <= y`).
    pub fn new(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if n > CAPACITY {
            return Err(Error::Capacity {
                what: "poset",
                needed: n,
                capacity: CAPACITY,
            });
        }
        let mut up = Vec::with_capacity(n);
        for (x, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidPoset {
                    law: "square matrix",
                    witness: vec![x],
                });
            }
            up.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(y, _)| y)
                    .collect(),
            );
        }
        Self::from_upsets(up)
    }

    /// Validates a family of upset rows (`up[x]` is the set of `y` with `x <= y`).
    pub fn from_upsets(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        if n > CAPACITY {
            return Err(Error::Capacity {
                what: "poset",
                needed: n,
                capacity: CAPACITY,
            });
        }
        let full = BitSet::full(n);
        for (x, row) in up.iter().enumerate() {
            if !row.is_subset(full) {
                return Err(Error::InvalidPoset {
                    law: "entries in range",
                    witness: vec![x],
                });
            }
            if !row.contains(x) {
                return Err(Error::InvalidPoset {
                    law: "reflexive",
                    witness: vec![x],
                });
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::InvalidPoset {
                        law: "antisymmetric",
                        witness: vec![x, y],
                    });
                }
                if let Some(z) = (up[y] - up[x]).first() {
                    return Err(Error::InvalidPoset {
                        law: "transitive",
                        witness: vec![x, y, z],
                    });
                }
            }
        }
        Ok(FinitePoset { up })
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        if json.leq.len() != json.size {
            return Err(Error::InvalidPoset {
                law: "size matches matrix",
                witness: vec![json.leq.len()],
            });
        }
        Self::new(&json.leq)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            size: self.size(),
            leq: self.to_matrix(),
        }
    }

    /// `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        FinitePoset {
            up: (0..n).map(|x| BitSet::full(n) - BitSet::full(x)).collect(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset {
            up: (0..n).map(BitSet::singleton).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn carrier(&self) -> BitSet {
        BitSet::full(self.size())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                bound: self.size(),
            })
        }
    }

    /// `↑x = {y : x <= y}`.
    pub fn principal_upset(&self, x: usize) -> Result<BitSet> {
        self.check_index(x)?;
        Ok(self.up[x])
    }

    /// `↓x = {y : y <= x}`.
    pub fn principal_downset(&self, x: usize) -> Result<BitSet> {
        self.check_index(x)?;
        Ok((0..self.size()).filter(|&y| self.leq(y, x)).collect())
    }

    pub fn is_upset(&self, set: BitSet) -> bool {
        set.iter()
            .all(|x| x < self.size() && self.up[x].is_subset(set))
    }

    pub fn is_downset(&self, set: BitSet) -> bool {
        (0..self.size()).all(|y| !self.up[y].intersects(set) || set.contains(y))
    }

    /// Smallest upset containing `set`.
    pub fn upward_closure(&self, set: BitSet) -> BitSet {
        set.iter().fold(BitSet::EMPTY, |acc, x| acc | self.up[x])
    }

    fn check_subset(&self, subset: BitSet) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        match (subset - self.carrier()).first() {
            Some(i) => Err(Error::IndexOutOfRange {
                index: i,
                bound: self.size(),
            }),
            None => Ok(()),
        }
    }

    /// Every pair of `subset` has a lower bound inside `subset`.
    pub fn is_dually_directed(&self, subset: BitSet) -> Result<bool> {
        self.check_subset(subset)?;
        Ok(subset.iter().all(|x| {
            subset
                .iter()
                .all(|y| subset.iter().any(|z| self.leq(z, x) && self.leq(z, y)))
        }))
    }

    /// Every pair of `subset` has an upper bound inside `subset`.
    pub fn is_directed(&self, subset: BitSet) -> Result<bool> {
        self.check_subset(subset)?;
        Ok(subset.iter().all(|x| {
            subset
                .iter()
                .all(|y| (self.up[x] & self.up[y]).intersects(subset))
        }))
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.up[x] == BitSet::singleton(x)
    }

    /// All upsets, in increasing packed order. Exponential; small posets only.
    pub fn upsets(&self) -> Vec<BitSet> {
        all_subsets(self.size())
            .filter(|&s| self.is_upset(s))
            .collect()
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            let strict = self.up[x] - BitSet::singleton(x);
            for y in strict.iter() {
                let between = (strict - BitSet::singleton(y))
                    .iter()
                    .any(|z| self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The order `y <= x` iff `x <= y` here.
    pub fn dual(&self) -> FinitePoset {
        let n = self.size();
        FinitePoset {
            up: (0..n)
                .map(|x| (0..n).filter(|&y| self.leq(y, x)).collect())
                .collect(),
        }
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinitePoset,
    target: FinitePoset,
    map: Vec<usize>,
}

/// JSON shape of a map; the posets are supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub source_size: usize,
    pub target_size: usize,
    pub map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: FinitePoset, target: FinitePoset, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::CarrierMismatch(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: target.size(),
            });
        }
        for x in 0..source.size() {
            for y in source.up[x].iter() {
                if !target.leq(map[x], map[y]) {
                    return Err(Error::NotMonotone {
                        x,
                        y,
                        fx: map[x],
                        fy: map[y],
                    });
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            map,
        })
    }

    pub fn from_json(json: &MapJson, source: FinitePoset, target: FinitePoset) -> Result<Self> {
        if json.source_size != source.size() || json.target_size != target.size() {
            return Err(Error::CarrierMismatch(
                "declared sizes differ from the posets".into(),
            ));
        }
        Self::new(source, target, json.map.clone())
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            source_size: self.source.size(),
            target_size: self.target.size(),
            map: self.map.clone(),
        }
    }

    pub fn identity(poset: &FinitePoset) -> Self {
        MonotoneMap {
            source: poset.clone(),
            target: poset.clone(),
            map: (0..poset.size()).collect(),
        }
    }

    pub fn constant(source: &FinitePoset, target: &FinitePoset, value: usize) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![value; source.size()])
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse_image(&self, set: BitSet) -> BitSet {
        (0..self.map.len())
            .filter(|&x| set.contains(self.map[x]))
            .collect()
    }
}

/// First `(p, q)` at which `f(p) <= q  <=>  p <= g(q)` fails.
pub fn adjunction_witness(f: &MonotoneMap, g: &MonotoneMap) -> Result<Option<(usize, usize)>> {
    if f.source != g.target || f.target != g.source {
        return Err(Error::CarrierMismatch(
            "adjunction needs f: P -> Q and g: Q -> P".into(),
        ));
    }
    for p in 0..f.source.size() {
        for q in 0..f.target.size() {
            if f.target.leq(f.apply(p), q) != f.source.leq(p, g.apply(q)) {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// Whether `f ⊣ g`.
pub fn check_adjunction(f: &MonotoneMap, g: &MonotoneMap) -> Result<bool> {
    Ok(adjunction_witness(f, g)?.is_none())
}

/// The left adjoint of `d`, if one exists.
///
/// For each `q` the inverse image `d⁻¹[↑q]` must be a principal upset `↑p`;
/// the left adjoint sends `q` to that `p`. An empty inverse image has no
/// generator, so `None` is returned.
pub fn find_left_adjoint(d: &MonotoneMap) -> Option<MonotoneMap> {
    let (p_poset, q_poset) = (d.source(), d.target());
    let mut map = Vec::with_capacity(q_poset.size());
    for q in 0..q_poset.size() {
        let pre = d.inverse_image(q_poset.up[q]);
        let generator = pre.iter().find(|&p| p_poset.up[p] == pre)?;
        map.push(generator);
    }
    let i = MonotoneMap::new(q_poset.clone(), p_poset.clone(), map).ok()?;
    debug_assert!(check_adjunction(&i, d).unwrap_or(false));
    debug_assert!(
        (0..q_poset.size()).all(|q| d.inverse_image(q_poset.up[q]) == p_poset.up[i.apply(q)])
    );
    Some(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `0 < 1, 2 < 3` with 1 and 2 incomparable.
    fn diamond() -> FinitePoset {
        let t = true;
        let f = false;
        FinitePoset::new(&[
            vec![t, t, t, t],
            vec![f, t, f, t],
            vec![f, f, t, t],
            vec![f, f, f, t],
        ])
        .unwrap()
    }

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn principal_upsets() {
        let chain = FinitePoset::chain(3);
        assert_eq!(chain.principal_upset(1).unwrap(), set(&[1, 2]));
        assert_eq!(chain.principal_upset(2).unwrap(), set(&[2]));
        assert!(chain.is_maximal(2));
        assert_eq!(diamond().principal_upset(0).unwrap(), set(&[0, 1, 2, 3]));
        assert!(matches!(
            chain.principal_upset(3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn dual_directedness() {
        let chain = FinitePoset::chain(3);
        for s in all_subsets(3).skip(1) {
            assert!(chain.is_dually_directed(s).unwrap());
        }
        let d = diamond();
        assert!(!d.is_dually_directed(set(&[1, 2])).unwrap());
        assert!(d.is_dually_directed(set(&[0, 1, 2])).unwrap());
        assert!(matches!(
            d.is_dually_directed(BitSet::EMPTY),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn rejects_invalid_matrices() {
        let t = true;
        let f = false;
        let err = FinitePoset::new(&[vec![f, t], vec![f, t]]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPoset {
                law: "reflexive",
                ..
            }
        ));
        let err = FinitePoset::new(&[vec![t, t], vec![t, t]]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidPoset {
                law: "antisymmetric",
                ..
            }
        ));
        let err = FinitePoset::new(&[vec![t, t, f], vec![f, t, t], vec![f, f, t]]).unwrap_err();
        match err {
            Error::InvalidPoset { law, witness } => {
                assert_eq!(law, "transitive");
                assert_eq!(witness, vec![0, 1, 2]);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn adjunction_examples() {
        let chain = FinitePoset::chain(3);
        let id = MonotoneMap::identity(&chain);
        assert!(check_adjunction(&id, &id).unwrap());
        let bottom = MonotoneMap::constant(&chain, &chain, 0).unwrap();
        let top = MonotoneMap::constant(&chain, &chain, 2).unwrap();
        assert!(check_adjunction(&bottom, &top).unwrap());
        let mid = MonotoneMap::constant(&chain, &chain, 1).unwrap();
        assert!(!check_adjunction(&mid, &mid).unwrap());
        assert!(adjunction_witness(&mid, &mid).unwrap().is_some());
        let other = MonotoneMap::identity(&FinitePoset::chain(2));
        assert!(matches!(
            check_adjunction(&id, &other),
            Err(Error::CarrierMismatch(_))
        ));
    }

    #[test]
    fn left_adjoint_examples() {
        let chain = FinitePoset::chain(3);
        let id = MonotoneMap::identity(&chain);
        assert_eq!(find_left_adjoint(&id).unwrap(), id);

        let top = MonotoneMap::constant(&chain, &chain, 2).unwrap();
        let i = find_left_adjoint(&top).unwrap();
        assert_eq!(i.as_slice(), &[0, 0, 0]);

        let d = diamond();
        let const_a = MonotoneMap::constant(&d, &d, 1).unwrap();
        assert!(find_left_adjoint(&const_a).is_none());
    }

    #[test]
    fn monotone_map_rejects_order_reversal() {
        let chain = FinitePoset::chain(2);
        let err = MonotoneMap::new(chain.clone(), chain, vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
    }

    #[test]
    fn covers_of_diamond() {
        assert_eq!(diamond().covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(FinitePoset::chain(3).covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn directedness_for_ideals() {
        let d = diamond();
        assert!(!d.is_directed(set(&[0, 1, 2])).unwrap());
        assert!(d.is_directed(set(&[0, 1, 2, 3])).unwrap());
    }
}
