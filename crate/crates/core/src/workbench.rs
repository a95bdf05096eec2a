//! Command implementations behind the `slata` binary. Each command takes
//! its input as text and returns the text to print with an exit code:
//! 0 pass, 1 check failure, 2 input or parse error, 3 resource guard.

use serde::Serialize;
use serde_json::{json, Value};

use crate::dot;
use crate::duality::{
    dual_space, functor_m, functor_p, functor_q, multirel_of_monotone, sigma_of_monotone,
    slata_iso_report,
};
use crate::error::{Error, Result};
use crate::fixtures::{boolean_example, chain3_slata};
use crate::generate::{
    instance_rng, random_monotone, random_poset, random_relspace, random_semilattice, random_slata,
    random_space, RNG_NAME,
};
use crate::json::{parse, parse_algebra, render, AlgebraDoc, FiberDoc, RelationDoc, SlataSpaceDoc};
use crate::multirel::{
    check_ms_space, check_sigma_space, check_slata_space, is_normal, meet_from_normal,
    multirel_from_meet, multirel_from_sigma, sigma_from_meet, SlataSpace,
};
use crate::order::{FinitePoset, PosetJson};
use crate::relations::{BinaryRelation, RelSpace};
use crate::report::{Check, Report};
use crate::roundtrip::{verify_roundtrips, RoundtripConfig, RoundtripReport};
use crate::semilattice::{
    check_hom, slata_hom_criterion, validate_semilattice, validate_slata, FiniteSemilattice,
    HomKind, SemilatticeJson, SlataJson,
};
use crate::sspace::{FiniteSpace, SpaceJson, DEFAULT_S4_LIMIT};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Semilattice,
    Slata,
    Poset,
    Space,
    Relation,
    Multirel,
    Sigma,
    Slataspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// meet-relation T to multirelation R_T
    T2r,
    /// normal multirelation R to meet-relation T_R
    R2t,
    /// A-relation T to σ-relation G_T
    T2g,
    /// σ-relation G to multirelation R_G
    G2r,
    /// RelS-space to SlataSpace
    P,
    /// SlataSpace to RelS-space
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WorkbenchConfig {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub s4_limit: usize,
    pub format: Format,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        WorkbenchConfig {
            seed: 1,
            count: 100,
            max_size: 7,
            s4_limit: DEFAULT_S4_LIMIT,
            format: Format::Json,
        }
    }
}

/// What a command prints, and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
}

impl Output {
    fn json<T: Serialize>(code: i32, value: &T) -> Self {
        Output {
            code,
            text: render(value),
        }
    }

    fn verdict<T: Serialize>(passed: bool, value: &T) -> Self {
        Self::json(if passed { EXIT_PASS } else { EXIT_FAIL }, value)
    }

    fn error(e: &Error) -> Self {
        Self::json(exit_code(e), &json!({"error": e.to_string()}))
    }
}

/// Exit code for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Json(_)
        | Error::Io(_)
        | Error::IndexOutOfRange { .. }
        | Error::CarrierMismatch(_)
        | Error::NotInFamily(..)
        | Error::Capacity { .. }
        | Error::EmptySubset => EXIT_INPUT,
        Error::BudgetExhausted(_) => EXIT_GUARD,
        _ => EXIT_FAIL,
    }
}

fn run(f: impl FnOnce() -> Result<Output>) -> Output {
    f().unwrap_or_else(|e| Output::error(&e))
}

/// `None` if the space is a verified S-space, otherwise the output to stop with.
fn space_guard(space: &FiniteSpace) -> Option<Output> {
    let v = space.verification();
    if v.accepted() {
        None
    } else if v.s4_skipped {
        Some(Output::json(
            EXIT_GUARD,
            &json!({"error": "S4 check skipped by the size guard", "report": v.report}),
        ))
    } else {
        Some(Output::json(
            EXIT_FAIL,
            &json!({"error": "not an S-space", "report": v.report}),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCertificate {
    pub meet: bool,
    /// `None` for relations between different spaces.
    pub a_relation: Option<bool>,
    pub witness: Option<Value>,
}

pub fn relation_certificate(t: &BinaryRelation) -> Result<RelationCertificate> {
    let meet_w = t.meet_witness()?;
    let a_w = if t.is_endo() {
        Some(t.a_relation_witness()?)
    } else {
        None
    };
    let witness = meet_w.clone().or_else(|| a_w.clone().flatten());
    Ok(RelationCertificate {
        meet: meet_w.is_none(),
        a_relation: a_w.map(|w| w.is_none()),
        witness,
    })
}

fn certificate_value<T: Serialize>(c: &T) -> Value {
    serde_json::to_value(c).expect("serializable")
}

fn with_certificate<T: Serialize>(artifact: &T, certificate: Value) -> Value {
    let mut v = serde_json::to_value(artifact).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.insert("certificate".into(), certificate);
    }
    v
}

/// Runs the validator or recognizer for `kind` on `input`.
pub fn cmd_validate(input: &str, kind: Kind, config: &WorkbenchConfig) -> Output {
    run(|| match kind {
        Kind::Semilattice => {
            let report = validate_semilattice(&parse::<SemilatticeJson>(input)?);
            Ok(Output::verdict(report.passed(), &report))
        }
        Kind::Slata => {
            let raw: SlataJson = parse(input)?;
            let base = validate_semilattice(&raw.semilattice);
            if !base.passed() {
                return Ok(Output::verdict(false, &base));
            }
            let report = validate_slata(&FiniteSemilattice::new(&raw.semilattice)?, &raw.i, &raw.d);
            Ok(Output::verdict(report.passed(), &report))
        }
        Kind::Poset => {
            let raw: PosetJson = parse(input)?;
            let check = match FinitePoset::from_json(&raw) {
                Ok(_) => Check::pass("partial_order"),
                Err(e @ Error::InvalidPoset { .. }) => {
                    Check::fail("partial_order", json!(e.to_string()))
                }
                Err(e) => return Err(e),
            };
            let report = Report::new("poset").with(check);
            Ok(Output::verdict(report.passed(), &report))
        }
        Kind::Space => {
            let space = FiniteSpace::from_json(&parse::<SpaceJson>(input)?)?;
            let v = space.check_s_axioms(config.s4_limit);
            let code = if v.s4_skipped {
                EXIT_GUARD
            } else if v.accepted() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            Ok(Output::json(code, &v.report))
        }
        Kind::Relation => {
            let t = parse::<RelationDoc>(input)?.load()?;
            if let Some(out) = space_guard(t.source()).or_else(|| space_guard(t.target())) {
                return Ok(out);
            }
            let cert = relation_certificate(&t)?;
            Ok(Output::verdict(cert.meet, &cert))
        }
        Kind::Multirel => {
            let r = parse::<FiberDoc>(input)?.load_multirel()?;
            if let Some(out) = space_guard(r.space()) {
                return Ok(out);
            }
            let ms = check_ms_space(&r)?;
            let normal = is_normal(&r)?;
            Ok(Output::verdict(
                ms.passed(),
                &json!({"ms_space": ms, "normal": normal}),
            ))
        }
        Kind::Sigma => {
            let g = parse::<FiberDoc>(input)?.load_sigma()?;
            if let Some(out) = space_guard(g.space()) {
                return Ok(out);
            }
            let report = check_sigma_space(&g)?;
            Ok(Output::verdict(report.passed(), &report))
        }
        Kind::Slataspace => {
            let (i, e) = parse::<SlataSpaceDoc>(input)?.load_pair()?;
            if let Some(out) = space_guard(i.space()) {
                return Ok(out);
            }
            let report = check_slata_space(&i, &e)?;
            Ok(Output::verdict(report.passed(), &report))
        }
    })
}

#[derive(Serialize)]
struct Dualized {
    bundle: crate::duality::DualSpaceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_d: Option<Vec<[usize; 2]>>,
    report: Report,
}

/// Dual space of a semilattice or Slata; for a Slata also `N_d`.
pub fn cmd_dualize(input: &str, config: &WorkbenchConfig) -> Output {
    run(|| {
        let (algebra, slata) = match parse_algebra(input)? {
            AlgebraDoc::Semilattice(raw) => {
                let report = validate_semilattice(&raw);
                if !report.passed() {
                    return Ok(Output::verdict(false, &report));
                }
                (FiniteSemilattice::new(&raw)?, None)
            }
            AlgebraDoc::Slata(raw) => {
                let base = validate_semilattice(&raw.semilattice);
                if !base.passed() {
                    return Ok(Output::verdict(false, &base));
                }
                let a = FiniteSemilattice::new(&raw.semilattice)?;
                let report = validate_slata(&a, &raw.i, &raw.d);
                if !report.passed() {
                    return Ok(Output::verdict(false, &report));
                }
                (
                    a.clone(),
                    Some(crate::semilattice::Slata::new(a, raw.i, raw.d)?),
                )
            }
        };
        let bundle = dual_space(&algebra);
        if let Some(out) = space_guard(&bundle.space) {
            return Ok(out);
        }
        if config.format == Format::Dot {
            return Ok(Output {
                code: EXIT_PASS,
                text: dot::space(&bundle.space)?,
            });
        }
        let (n_d, report) = match &slata {
            Some(s) => {
                let image = functor_m(s)?;
                let report = slata_iso_report(s, &image);
                (Some(image.relspace.relation().pairs()), report)
            }
            None => (None, bundle.beta_report()),
        };
        let passed = report.passed();
        Ok(Output::verdict(
            passed,
            &Dualized {
                bundle: bundle.to_json(),
                n_d,
                report,
            },
        ))
    })
}

/// One conversion step between the relational presentations.
pub fn cmd_convert(input: &str, direction: Direction) -> Output {
    run(|| {
        let guarded = |t: &BinaryRelation| space_guard(t.source());
        match direction {
            Direction::T2r => {
                let t = parse::<RelationDoc>(input)?.load()?;
                if let Some(out) = guarded(&t) {
                    return Ok(out);
                }
                let r = multirel_from_meet(&t)?;
                let cert = check_ms_space(&r)?;
                Ok(Output::verdict(
                    cert.passed(),
                    &FiberDoc {
                        body: r.to_json(),
                        certificate: Some(certificate_value(&cert)),
                    },
                ))
            }
            Direction::R2t => {
                let r = parse::<FiberDoc>(input)?.load_multirel()?;
                if let Some(out) = space_guard(r.space()) {
                    return Ok(out);
                }
                let t = meet_from_normal(&r)?;
                let cert = relation_certificate(&t)?;
                Ok(Output::verdict(
                    cert.meet,
                    &RelationDoc::of(&t, Some(certificate_value(&cert))),
                ))
            }
            Direction::T2g => {
                let t = parse::<RelationDoc>(input)?.load()?;
                if let Some(out) = guarded(&t) {
                    return Ok(out);
                }
                let g = sigma_from_meet(&t)?;
                let cert = check_sigma_space(&g)?;
                Ok(Output::verdict(
                    cert.passed(),
                    &FiberDoc {
                        body: g.to_json(),
                        certificate: Some(certificate_value(&cert)),
                    },
                ))
            }
            Direction::G2r => {
                let g = parse::<FiberDoc>(input)?.load_sigma()?;
                if let Some(out) = space_guard(g.space()) {
                    return Ok(out);
                }
                let r = multirel_from_sigma(&g)?;
                let cert = check_ms_space(&r)?;
                Ok(Output::verdict(
                    cert.passed(),
                    &FiberDoc {
                        body: r.to_json(),
                        certificate: Some(certificate_value(&cert)),
                    },
                ))
            }
            Direction::P => {
                let t = parse::<RelationDoc>(input)?.load()?;
                if let Some(out) = guarded(&t) {
                    return Ok(out);
                }
                let ss = functor_p(&RelSpace::new(t)?)?;
                let cert = check_slata_space(ss.i(), ss.e())?;
                Ok(Output::verdict(
                    cert.passed(),
                    &SlataSpaceDoc {
                        body: ss.to_json(),
                        certificate: Some(certificate_value(&cert)),
                    },
                ))
            }
            Direction::Q => {
                let (i, e) = parse::<SlataSpaceDoc>(input)?.load_pair()?;
                if let Some(out) = space_guard(i.space()) {
                    return Ok(out);
                }
                let rs = functor_q(&SlataSpace::new(i, e)?)?;
                let cert = relation_certificate(rs.relation())?;
                Ok(Output::verdict(
                    cert.meet,
                    &RelationDoc::of(rs.relation(), Some(certificate_value(&cert))),
                ))
            }
        }
    })
}

/// Fixed instances with known answers, including the Boolean
/// counterexample and the failure modes recorded against the literal
/// definitions.
pub fn goldens() -> Report {
    let mut report = Report::new("goldens");
    let set = |xs: &[usize]| xs.iter().copied().collect::<crate::BitSet>();

    let chain = dual_space(&FiniteSemilattice::chain(3));
    let ok = chain.filters == vec![set(&[2]), set(&[1, 2])]
        && chain.beta == vec![set(&[]), set(&[1]), set(&[0, 1])];
    report.push(Check::from_witness(
        "chain3_dual",
        (!ok).then(|| json!(chain.to_json())),
    ));

    let diamond = dual_space(&FiniteSemilattice::diamond());
    let antichain = diamond
        .space
        .dual_specialization()
        .map(|o| o.covers().is_empty())
        .unwrap_or(false);
    report.push(Check::from_witness(
        "diamond_dual_antichain",
        (!antichain).then(|| json!(diamond.to_json())),
    ));

    let one = dual_space(&FiniteSemilattice::one_element());
    report.push(Check::from_witness(
        "one_element_dual_empty",
        (one.points() != 0).then(|| json!(one.points())),
    ));

    let chain3 = chain3_slata();
    let pipeline = functor_m(&chain3)
        .map(|m| slata_iso_report(&chain3, &m).passed())
        .unwrap_or(false);
    report.push(Check::from_witness(
        "chain3_slata_pipeline",
        (!pipeline).then_some(json!(false)),
    ));

    let ex = boolean_example();
    let s = &ex.slata;
    let exact = (|| -> Result<Value> {
        let modal = check_hom(&ex.hom, HomKind::Modal, &[&s.d], &[&s.d])?;
        let full = check_hom(&ex.hom, HomKind::Slata, &[&s.i, &s.d], &[&s.i, &s.d])?;
        let at = full
            .operator_failures
            .iter()
            .find(|w| w.args == [2])
            .map(|w| (w.lhs, w.rhs));
        let criterion = slata_hom_criterion(&ex.hom, s, s)?;
        Ok(json!({"modal": modal.holds, "slata": full.holds, "at_{1}": at, "criterion": criterion}))
    })();
    let expected = json!({"modal": true, "slata": false, "at_{1}": [3, 0], "criterion": false});
    let w = match exact {
        Ok(v) if v == expected => None,
        Ok(v) => Some(v),
        Err(e) => Some(json!(e.to_string())),
    };
    report.push(Check::from_witness("boolean_counterexample", w));

    // The diagonal on the 3-chain dual: A-relation, not a meet-relation.
    let diag = BinaryRelation::new(
        chain.space.clone(),
        chain.space.clone(),
        vec![set(&[0]), set(&[1])],
    );
    let gap = diag
        .and_then(|d| Ok(d.is_a_relation()? && !d.is_meet_relation()?))
        .unwrap_or(false);
    report.push(Check::from_witness(
        "a_relation_without_closed_fibers",
        (!gap).then_some(json!(false)),
    ));

    // M3: (x] ∉ 𝒵, and the identity operator is modal with a non-normal R.
    let m3 = FiniteSemilattice::from_family(&[
        set(&[]),
        set(&[0]),
        set(&[1]),
        set(&[2]),
        set(&[0, 1, 2]),
    ])
    .expect("M3");
    let dm3 = dual_space(&m3);
    let id: Vec<usize> = (0..m3.size()).collect();
    let normal = multirel_of_monotone(&dm3, &id)
        .and_then(|r| is_normal(&r))
        .map(|r| r.passed());
    let m3_ok =
        dm3.space.is_verified() && !dm3.space.down_sets_saturated() && matches!(normal, Ok(false));
    report.push(Check::from_witness(
        "m3_down_set_gap",
        (!m3_ok).then(|| json!(dm3.to_json())),
    ));

    let corrupted = verify_roundtrips(&RoundtripConfig {
        corrupt: true,
        ..RoundtripConfig::new(1, 6, 5)
    });
    report.push(Check::from_witness(
        "fault_injection_detected",
        corrupted.passed().then(|| json!(corrupted.checks)),
    ));
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub rng: &'static str,
    pub config: WorkbenchConfig,
    pub passed: bool,
    pub goldens: Report,
    pub battery: RoundtripReport,
}

pub fn selftest(config: &WorkbenchConfig) -> SelftestReport {
    let battery = verify_roundtrips(&RoundtripConfig {
        seed: config.seed,
        count: config.count,
        max_size: config.max_size,
        s4_limit: config.s4_limit,
        corrupt: false,
    });
    let goldens = goldens();
    let passed = goldens.passed() && battery.passed();
    SelftestReport {
        rng: RNG_NAME,
        config: *config,
        passed,
        goldens,
        battery,
    }
}

/// Goldens plus the seeded battery. Guard exclusions exit 3.
pub fn cmd_selftest(config: &WorkbenchConfig) -> Output {
    let report = selftest(config);
    let code = if !report.passed {
        EXIT_FAIL
    } else if report.battery.excluded > 0 {
        EXIT_GUARD
    } else {
        EXIT_PASS
    };
    Output::json(code, &report)
}

const GEN_ATTEMPTS: usize = 64;

/// A seeded random instance of `kind` with its certificate.
pub fn cmd_gen(config: &WorkbenchConfig, kind: Kind) -> Output {
    run(|| {
        let mut rng = instance_rng(config.seed, 0);
        let n = config.max_size;
        let out = match kind {
            Kind::Semilattice => {
                let a = random_semilattice(&mut rng, n);
                if config.format == Format::Dot {
                    return Ok(Output {
                        code: EXIT_PASS,
                        text: dot::semilattice(&a),
                    });
                }
                let raw = a.to_json();
                let cert = validate_semilattice(&raw);
                Output::verdict(cert.passed(), &with_certificate(&raw, json!(cert)))
            }
            Kind::Slata => {
                let s = random_slata(&mut rng, n);
                let cert = validate_slata(&s.algebra, &s.i, &s.d);
                Output::verdict(cert.passed(), &with_certificate(&s.to_json(), json!(cert)))
            }
            Kind::Poset => {
                let p = random_poset(&mut rng, n);
                if config.format == Format::Dot {
                    return Ok(Output {
                        code: EXIT_PASS,
                        text: dot::hasse(&p),
                    });
                }
                Output::verdict(true, &p.to_json())
            }
            Kind::Space => {
                let space = random_space(&mut rng, n);
                let v = space.check_s_axioms(config.s4_limit);
                if v.s4_skipped {
                    return Ok(Output::json(
                        EXIT_GUARD,
                        &json!({"error": "S4 check skipped by the size guard", "space": space.to_json()}),
                    ));
                }
                if config.format == Format::Dot {
                    return Ok(Output {
                        code: EXIT_PASS,
                        text: dot::space(&space)?,
                    });
                }
                Output::verdict(
                    v.accepted(),
                    &with_certificate(&space.to_json(), json!(v.report)),
                )
            }
            Kind::Relation => {
                let rs = random_relspace(&mut rng, n)?;
                let t = rs.relation();
                if config.format == Format::Dot {
                    return Ok(Output {
                        code: EXIT_PASS,
                        text: dot::relation(t),
                    });
                }
                let cert = relation_certificate(t)?;
                Output::verdict(
                    cert.meet,
                    &RelationDoc::of(t, Some(certificate_value(&cert))),
                )
            }
            Kind::Multirel | Kind::Sigma => {
                let s = random_slata(&mut rng, n);
                let bundle = dual_space(&s.algebra);
                if let Some(out) = space_guard(&bundle.space) {
                    return Ok(out);
                }
                let m = random_monotone(&mut rng, &s.algebra);
                if kind == Kind::Multirel {
                    let r = multirel_of_monotone(&bundle, &m)?;
                    if config.format == Format::Dot {
                        return Ok(Output {
                            code: EXIT_PASS,
                            text: dot::multirelation(&r),
                        });
                    }
                    let cert = check_ms_space(&r)?;
                    Output::verdict(
                        cert.passed(),
                        &FiberDoc {
                            body: r.to_json(),
                            certificate: Some(certificate_value(&cert)),
                        },
                    )
                } else {
                    let g = sigma_of_monotone(&bundle, &m)?;
                    if config.format == Format::Dot {
                        return Ok(Output {
                            code: EXIT_PASS,
                            text: dot::sigma_relation(&g),
                        });
                    }
                    let cert = check_sigma_space(&g)?;
                    Output::verdict(
                        cert.passed(),
                        &FiberDoc {
                            body: g.to_json(),
                            certificate: Some(certificate_value(&cert)),
                        },
                    )
                }
            }
            Kind::Slataspace => {
                // Q needs every (x] in 𝒵(X), so sample until that holds.
                let rs = (0..GEN_ATTEMPTS)
                    .map(|_| random_relspace(&mut rng, n))
                    .find(|rs| {
                        rs.as_ref()
                            .map_or(true, |rs| rs.space().down_sets_saturated())
                    })
                    .ok_or_else(|| {
                        Error::BudgetExhausted(format!(
                            "no space with saturated (x] in {GEN_ATTEMPTS} attempts"
                        ))
                    })??;
                let ss = functor_p(&rs)?;
                let cert = check_slata_space(ss.i(), ss.e())?;
                Output::verdict(
                    cert.passed(),
                    &SlataSpaceDoc {
                        body: ss.to_json(),
                        certificate: Some(certificate_value(&cert)),
                    },
                )
            }
        };
        Ok(out)
    })
}

/// DOT rendering of an input document.
pub fn cmd_export_dot(input: &str, kind: Kind) -> Output {
    run(|| {
        let text = match kind {
            Kind::Poset => dot::hasse(&FinitePoset::from_json(&parse(input)?)?),
            Kind::Semilattice => dot::semilattice(&FiniteSemilattice::new(&parse(input)?)?),
            Kind::Slata => dot::semilattice(&FiniteSemilattice::new(
                &parse::<SlataJson>(input)?.semilattice,
            )?),
            Kind::Space => dot::space(&FiniteSpace::from_json(&parse(input)?)?)?,
            Kind::Relation => dot::relation(&parse::<RelationDoc>(input)?.load()?),
            Kind::Multirel => dot::multirelation(&parse::<FiberDoc>(input)?.load_multirel()?),
            Kind::Sigma => dot::sigma_relation(&parse::<FiberDoc>(input)?.load_sigma()?),
            Kind::Slataspace => {
                let (_, e) = parse::<SlataSpaceDoc>(input)?.load_pair()?;
                dot::multirelation(&e)
            }
        };
        Ok(Output {
            code: EXIT_PASS,
            text,
        })
    })
}
