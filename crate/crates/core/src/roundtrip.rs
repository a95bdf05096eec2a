//! The theorem battery: every duality law evaluated on seeded random
//! instances, merged into one deterministic report.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::duality::{
    dual_space, filter_closed_correspondence, functor_m, functor_p, functor_q, functor_r,
    functor_r_rel, h_map, h_map_report, i_inverse_relation, i_relation, multirel_of_monotone,
    relation_of_hom_between, sigma_of_monotone, slata_iso_report, DualSpaceBundle, HMap,
};
use crate::error::Result;
use crate::generate::{
    instance_rng, permute_relspace, random_hom, random_modal, random_monotone, random_non_modal,
    random_semilattice, random_slata, relabel, upset_slata, RNG_NAME,
};
use crate::multirel::{
    check_ms_space, check_sigma_space, check_slata_space, is_normal, m_of_multirel, m_of_sigma,
    meet_from_normal, multirel_from_meet, multirel_from_sigma, sigma_from_meet,
};
use crate::relations::{
    is_compatible, star_compose, star_compose_literal, BinaryRelation, RelSpace, Space,
};
use crate::semilattice::{
    check_hom, filters_by_definition, is_modal_operator, operator_adjunction_witness,
    slata_hom_criterion, HomKind, SemilatticeHom, Slata,
};
use crate::sspace::DEFAULT_S4_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripConfig {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub s4_limit: usize,
    /// Drop one pair from every `N_h` the battery builds.
    pub corrupt: bool,
}

impl RoundtripConfig {
    pub fn new(seed: u64, count: usize, max_size: usize) -> Self {
        RoundtripConfig {
            seed,
            count,
            max_size,
            s4_limit: DEFAULT_S4_LIMIT,
            corrupt: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub instance: usize,
    pub check: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub rng: &'static str,
    pub config: RoundtripConfig,
    pub instances: usize,
    /// Instances whose dual space was too large for the S4 check.
    pub excluded: usize,
    pub checks: BTreeMap<String, Tally>,
    /// Corpus statistics, e.g. how many sampled operators were non-modal.
    pub stats: BTreeMap<String, usize>,
    pub first_counterexample: Option<Counterexample>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|t| t.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.values().map(|t| t.failed).sum()
    }

    pub fn tally(&self, check: &str) -> Tally {
        self.checks.get(check).copied().unwrap_or_default()
    }

    pub fn stat(&self, name: &str) -> usize {
        self.stats.get(name).copied().unwrap_or(0)
    }
}

#[derive(Default)]
struct Outcome {
    excluded: bool,
    checks: Vec<(String, Option<Value>)>,
    stats: Vec<String>,
    /// Set while evaluating on a space where some `(x]` is not in `𝒵(X)`:
    /// results go to `stats` instead of `checks`.
    gap: bool,
}

impl Outcome {
    fn record(&mut self, name: &str, witness: Option<Value>) {
        if self.gap {
            let verdict = if witness.is_none() { "held" } else { "failed" };
            self.stats.push(format!("gap:{name}:{verdict}"));
        } else {
            self.checks.push((name.to_string(), witness));
        }
    }

    /// Runs a fallible check; an error counts as a failure carrying its message.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<Option<Value>>) {
        let w = f().unwrap_or_else(|e| Some(json!({"error": e.to_string()})));
        self.record(name, w);
    }
}

fn differ<T: PartialEq + std::fmt::Debug>(left: &T, right: &T) -> Option<Value> {
    (left != right).then(|| json!({"left": format!("{left:?}"), "right": format!("{right:?}")}))
}

fn differ_rel(left: &BinaryRelation, right: &BinaryRelation) -> Option<Value> {
    (left != right).then(|| json!({"left": left.pairs(), "right": right.pairs()}))
}

/// `N_h`, minus its first pair when the battery runs corrupted.
fn n_of(
    h: &SemilatticeHom,
    da: &DualSpaceBundle,
    db: &DualSpaceBundle,
    corrupt: bool,
) -> Result<BinaryRelation> {
    let n = relation_of_hom_between(h, da, db)?;
    Ok(match (corrupt, n.pairs().first()) {
        (true, Some(&[x, y])) => n.without_pair(x, y),
        _ => n,
    })
}

fn compose_tables(first: &[usize], then: &[usize]) -> Vec<usize> {
    first.iter().map(|&u| then[u]).collect()
}

/// `□_T`-image relation `N_{□_T}` on `𝒳(S(X))`, for `T ⊆ X × Y`.
fn box_relation(t: &BinaryRelation, hx: &HMap, hy: &HMap) -> Result<BinaryRelation> {
    let boxes = functor_r_rel(t)?;
    relation_of_hom_between(&boxes, &hy.dual, &hx.dual)
}

fn instance(config: &RoundtripConfig, index: usize) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = instance_rng(config.seed, index as u64);
    let slata = if index % 3 == 2 {
        upset_slata(&mut rng, 3, config.max_size)
            .unwrap_or_else(|| random_slata(&mut rng, config.max_size))
    } else {
        random_slata(&mut rng, config.max_size)
    };
    let a = &slata.algebra;
    let bundle = dual_space(a);
    let axioms = bundle.space.check_s_axioms(config.s4_limit);
    // The library certifies spaces at the default guard, so a larger
    // `s4_limit` cannot admit more instances than that.
    if axioms.s4_skipped || bundle.space.subbasic_closed().len() > DEFAULT_S4_LIMIT {
        out.excluded = true;
        return out;
    }
    out.record(
        "s_axioms",
        (!axioms.accepted()).then(|| json!(axioms.report.failure_summary())),
    );
    let corrupt = config.corrupt;

    // Algebra side.
    out.record(
        "filter_oracle",
        differ(&a.enumerate_filters(true), &filters_by_definition(a, true)),
    );
    out.record(
        "beta_iso",
        bundle.beta_report().first_failure().map(|c| json!(c)),
    );
    out.record(
        "filter_closed",
        filter_closed_correspondence(&bundle)
            .first_failure()
            .map(|c| json!(c)),
    );

    // Functors M and R.
    let image = match functor_m(&slata) {
        Ok(m) => m,
        Err(e) => {
            out.record("functor_m", Some(json!({"error": e.to_string()})));
            return out;
        }
    };
    out.record(
        "functor_m",
        slata_iso_report(&slata, &image)
            .first_failure()
            .map(|c| json!(c)),
    );
    out.run("functor_r", || {
        let back = functor_r(&image.relspace)?;
        let beta = image.bundle.beta_hom()?;
        let check = check_hom(
            &beta,
            HomKind::Slata,
            &[&slata.i, &slata.d],
            &[&back.i, &back.d],
        )?;
        Ok(check.witness.map(|w| json!(w)))
    });
    let nd = image.relspace.relation().clone();
    let space = image.bundle.space.clone();
    let sq = match BinaryRelation::specialization(space.clone()) {
        Ok(sq) => sq,
        Err(e) => {
            out.record("specialization", Some(json!({"error": e.to_string()})));
            return out;
        }
    };
    out.run("a_relation_adjunction", || {
        let closed = space.closed_semilattice()?;
        let adj = operator_adjunction_witness(&closed, &nd.box_star_table()?, &nd.box_table()?)?;
        Ok(adj
            .map(|(p, q)| json!({"p": p, "q": q}))
            .or_else(|| (!nd.is_meet_relation().ok()?).then(|| json!("not meet"))))
    });
    out.run("star_oracle", || {
        Ok(differ_rel(
            &star_compose(&nd, &nd)?,
            &star_compose_literal(&nd, &nd),
        ))
    });

    // Morphisms: N_id = ⊒, N_{g∘h} = N_h ∗ N_g, □_⊒ = id, □_{M₂∗M₁} = □_{M₁}∘□_{M₂}.
    out.run("n_identity", || {
        Ok(differ_rel(
            &n_of(&SemilatticeHom::identity(a), &bundle, &bundle, corrupt)?,
            &sq,
        ))
    });
    let b = random_semilattice(&mut rng, config.max_size);
    let db = dual_space(&b);
    let h_ba = random_hom(&mut rng, &b, a, &[])
        .and_then(|m| SemilatticeHom::new(b.clone(), a.clone(), m).ok());
    let d_hom =
        SemilatticeHom::new(a.clone(), a.clone(), slata.d.clone()).expect("d preserves meets");
    if let Some(h) = &h_ba {
        out.run("n_composite", || {
            let gh = h.then(&d_hom)?;
            let left = n_of(&gh, &db, &bundle, corrupt)?;
            let right = star_compose(
                &n_of(h, &db, &bundle, corrupt)?,
                &n_of(&d_hom, &bundle, &bundle, corrupt)?,
            )?;
            Ok(differ_rel(&left, &right))
        });
        out.run("box_composite", || {
            let m1 = &nd;
            let m2 = n_of(h, &db, &bundle, corrupt)?;
            let left = star_compose(&m2, m1)?.box_table()?;
            let right = compose_tables(&m2.box_table()?, &m1.box_table()?);
            Ok(differ(&left, &right))
        });
    }
    out.run("box_identity", || {
        let table = sq.box_table()?;
        Ok(differ(&table, &(0..table.len()).collect::<Vec<_>>()))
    });
    if let Some(m) = random_hom(&mut rng, a, a, &[(&slata.d, &slata.d)]) {
        out.run("compatibility", || {
            let h = SemilatticeHom::new(a.clone(), a.clone(), m)?;
            let n = n_of(&h, &bundle, &bundle, corrupt)?;
            Ok((!is_compatible(&n, &nd, &nd)?).then(|| json!({"h": h.map})))
        });
    }

    // Modal-reduct isomorphisms preserve i.
    let mut perm: Vec<usize> = (0..a.size()).collect();
    perm.shuffle(&mut rng);
    out.run("modal_iso_preserves_i", || {
        let a2 = relabel(a, &perm);
        let mut d2 = vec![0; a.size()];
        for x in 0..a.size() {
            d2[perm[x]] = perm[slata.d[x]];
        }
        let s2 = Slata::from_right_adjoint(a2.clone(), d2)?;
        let h = SemilatticeHom::new(a.clone(), a2, perm.clone())?;
        let modal = check_hom(&h, HomKind::Modal, &[&slata.d], &[&s2.d])?;
        let full = check_hom(&h, HomKind::Slata, &[&slata.i, &slata.d], &[&s2.i, &s2.d])?;
        let criterion = slata_hom_criterion(&h, &slata, &s2)?;
        Ok((!(modal.holds && full.holds && criterion)).then(|| json!({"perm": perm})))
    });

    // A random RelS-space: the M-image with shuffled points.
    let mut pts: Vec<usize> = (0..image.bundle.points()).collect();
    pts.shuffle(&mut rng);
    let rs = match permute_relspace(&image.relspace, &pts) {
        Ok(rs) => rs,
        Err(e) => {
            out.record("relspace", Some(json!({"error": e.to_string()})));
            return out;
        }
    };
    relspace_checks(&mut out, &rs, corrupt);

    // Naturality of I along N_h : 𝒳(A) → 𝒳(B).
    if let Some(h) = &h_ba {
        out.run("i_naturality", || {
            let m = n_of(h, &db, &bundle, corrupt)?;
            let hx = h_map(&bundle.space)?;
            let hy = h_map(&db.space)?;
            let n = box_relation(&m, &hx, &hy)?;
            let left = star_compose(&n, &i_relation(&bundle.space, &hx)?)?;
            let right = star_compose(&i_relation(&db.space, &hy)?, &m)?;
            Ok(differ_rel(&left, &right))
        });
    }

    // Monotone operators: normality iff modality, σ-relations, conversions.
    let m = if rng.gen_bool(0.5) {
        random_non_modal(&mut rng, a, 20).unwrap_or_else(|_| random_monotone(&mut rng, a))
    } else {
        random_monotone(&mut rng, a)
    };
    let modal = is_modal_operator(a, &m);
    let gap = !bundle.space.down_sets_saturated();
    if gap {
        out.stats.push("down_set_gap".into());
    } else {
        out.stats.push(
            if modal {
                "modal_operators"
            } else {
                "non_modal_operators"
            }
            .into(),
        );
    }
    out.run("sigma_of_monotone", || {
        let g = sigma_of_monotone(&bundle, &m)?;
        if let Some(c) = check_sigma_space(&g)?.first_failure() {
            return Ok(Some(json!(c)));
        }
        for (x, &mx) in m.iter().enumerate() {
            if m_of_sigma(&g, bundle.beta[x])? != bundle.beta[mx] {
                return Ok(Some(json!({"a": x})));
            }
        }
        let r = multirel_from_sigma(&g)?;
        for &u in bundle.space.subbasic_closed() {
            if m_of_sigma(&g, u)? != m_of_multirel(&r, u)? {
                return Ok(Some(json!({"U": u.to_vec()})));
            }
        }
        Ok(None)
    });
    out.gap = gap;
    out.run("normal_iff_modal", || {
        let r = multirel_of_monotone(&bundle, &m)?;
        let ms = check_ms_space(&r)?;
        let normal = is_normal(&r)?.passed();
        Ok((!ms.passed() || normal != modal)
            .then(|| json!({"m": m, "modal": modal, "normal": normal})))
    });
    let d2 = random_modal(&mut rng, a);
    out.run("normal_roundtrip", || {
        let r = multirel_of_monotone(&bundle, &d2)?;
        let back = multirel_from_meet(&meet_from_normal(&r)?)?;
        Ok((back != r).then(|| json!({"R": r.fiber_json(), "R_(T_R)": back.fiber_json()})))
    });
    out.gap = false;
    out
}

/// Laws that only need a RelS-space `⟨X, 𝒦, T⟩`.
fn relspace_checks(out: &mut Outcome, rs: &RelSpace, corrupt: bool) {
    let t = rs.relation();
    let space: &Space = rs.space();
    out.run("relation_units", || {
        let sq = BinaryRelation::specialization(space.clone())?;
        let left = star_compose(t, &sq)?;
        let right = star_compose(&sq, t)?;
        Ok(differ_rel(&left, t).or_else(|| differ_rel(&right, t)))
    });
    out.run("h_map", || {
        let h = h_map(space)?;
        Ok(h_map_report(space, &h)?.first_failure().map(|c| json!(c)))
    });
    out.run("i_laws", || {
        let h = h_map(space)?;
        let i = i_relation(space, &h)?;
        let inv = i_inverse_relation(space, &h)?;
        let sq_x = BinaryRelation::specialization(space.clone())?;
        let sq_s = BinaryRelation::specialization(h.dual.space.clone())?;
        let mut n = box_relation(t, &h, &h)?;
        if corrupt {
            if let Some(&[x, y]) = n.pairs().first() {
                n = n.without_pair(x, y);
            }
        }
        Ok(differ_rel(&star_compose(&inv, &i)?, &sq_x)
            .or_else(|| differ_rel(&star_compose(&i, &inv).ok()?, &sq_s))
            .or_else(|| match (star_compose(&n, &i), star_compose(&i, t)) {
                (Ok(left), Ok(right)) => differ_rel(&left, &right),
                (Err(e), _) | (_, Err(e)) => Some(json!({"error": e.to_string()})),
            }))
    });
    out.run("conversion_boxes", || {
        let r_t = multirel_from_meet(t)?;
        for &u in space.subbasic_closed() {
            if m_of_multirel(&r_t, u)? != t.box_op(u) {
                return Ok(Some(json!({"m_(R_T) = box_T": u.to_vec()})));
            }
        }
        let g = sigma_from_meet(t)?;
        let r_g = multirel_from_sigma(&g)?;
        for &u in space.subbasic_closed() {
            if m_of_sigma(&g, u)? != m_of_multirel(&r_g, u)? {
                return Ok(Some(json!({"m_G = m_(R_G)": u.to_vec()})));
            }
        }
        Ok(None)
    });
    out.gap = !space.down_sets_saturated();
    out.run("conversion_t_r_t", || {
        Ok(differ_rel(&meet_from_normal(&multirel_from_meet(t)?)?, t))
    });
    out.run("p_then_q", || {
        let p = functor_p(rs)?;
        if let Some(c) = check_slata_space(p.i(), p.e())?.first_failure() {
            return Ok(Some(json!(c)));
        }
        let q = functor_q(&p)?;
        let back = functor_p(&q)?;
        Ok(differ_rel(q.relation(), rs.relation())
            .or_else(|| (back != p).then(|| json!({"P(Q(P(T)))": back.to_json()}))))
    });
    out.gap = false;
}

/// Runs the battery on `config.count` instances in parallel. The report does
/// not depend on scheduling.
pub fn verify_roundtrips(config: &RoundtripConfig) -> RoundtripReport {
    let outcomes: Vec<Outcome> = (0..config.count)
        .into_par_iter()
        .map(|k| instance(config, k))
        .collect();
    let mut report = RoundtripReport {
        rng: RNG_NAME,
        config: *config,
        instances: config.count,
        excluded: 0,
        checks: BTreeMap::new(),
        stats: BTreeMap::new(),
        first_counterexample: None,
    };
    for (k, out) in outcomes.into_iter().enumerate() {
        if out.excluded {
            report.excluded += 1;
            continue;
        }
        for s in out.stats {
            *report.stats.entry(s).or_default() += 1;
        }
        for (name, witness) in out.checks {
            let tally = report.checks.entry(name.clone()).or_default();
            match witness {
                None => tally.passed += 1,
                Some(w) => {
                    tally.failed += 1;
                    if report.first_counterexample.is_none() {
                        report.first_counterexample = Some(Counterexample {
                            instance: k,
                            check: name,
                            witness: w,
                        });
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let report = verify_roundtrips(&RoundtripConfig::new(1, 24, 5));
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert!(report.tally("p_then_q").passed > 0);
    }

    #[test]
    fn empty_battery() {
        let report = verify_roundtrips(&RoundtripConfig::new(1, 0, 5));
        assert!(report.passed() && report.checks.is_empty());
    }

    #[test]
    fn corruption_is_detected() {
        let config = RoundtripConfig {
            corrupt: true,
            ..RoundtripConfig::new(1, 12, 5)
        };
        let report = verify_roundtrips(&config);
        assert!(!report.passed());
        assert!(report.tally("n_identity").failed > 0);
    }

    #[test]
    fn deterministic() {
        let c = RoundtripConfig::new(9, 10, 5);
        assert_eq!(verify_roundtrips(&c), verify_roundtrips(&c));
    }
}
