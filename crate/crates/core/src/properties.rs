//! Ring-level predicates with certificates: semicommutative, weakly
//! semicommutative, zero-insertive nil clean (zinc), nil clean, clean,
//! j-clean, weakly clean, plus the auxiliary hypothesis filters.
//!
//! Full mode decides a predicate exactly under the classify gates; the
//! certificate-only entry point checks caller-supplied zero-product
//! candidates on rings too large for a full scan. Semicommutativity and
//! weak semicommutativity are always computed along two routes (the
//! quantifier definition and the zero-insertive characterization) and
//! the routes must agree.

use crate::cert::{Certificate, FailureKind, FailureWitness, WeaklyCleanWitness};
use crate::classify::{self, nilpotency_index, ClassifyError, ElementSet, Gates};
use crate::ring::{ElementId, FiniteRing};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    Semicommutative,
    WeaklySemicommutative,
    Zinc,
    NilClean,
    Clean,
    JClean,
    WeaklyClean,
    OnlyTrivialIdempotents,
    Commutative,
    NoZeroDivisors,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Semicommutative,
        Property::WeaklySemicommutative,
        Property::Zinc,
        Property::NilClean,
        Property::Clean,
        Property::JClean,
        Property::WeaklyClean,
        Property::OnlyTrivialIdempotents,
        Property::Commutative,
        Property::NoZeroDivisors,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Semicommutative => "semicommutative",
            Property::WeaklySemicommutative => "weakly_semicommutative",
            Property::Zinc => "zinc",
            Property::NilClean => "nil_clean",
            Property::Clean => "clean",
            Property::JClean => "j_clean",
            Property::WeaklyClean => "weakly_clean",
            Property::OnlyTrivialIdempotents => "only_trivial_idempotents",
            Property::Commutative => "commutative",
            Property::NoZeroDivisors => "no_zero_divisors",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = PropertyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| PropertyError::UnknownProperty(s.to_string()))
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(
        "route disagreement deciding {property}: direct definition says {direct}, \
         zero-insertive characterization says {via_zi}"
    )]
    RouteDisagreement {
        property: Property,
        direct: bool,
        via_zi: bool,
    },
    #[error("candidate {position} has a nonzero product ab")]
    CandidateInvalid { position: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Full,
    CertificateOnly,
}

/// Outcome of both computation routes for the semicommutativity family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRoute {
    pub direct: bool,
    pub via_zero_insertive: bool,
}

#[derive(Clone, Debug)]
pub struct PropertyVerdict {
    pub ring_label: String,
    pub property: Property,
    pub holds: bool,
    pub mode: CheckMode,
    pub certificate: Option<Certificate>,
    pub routes: Option<DualRoute>,
    pub elapsed: Duration,
}

/// Decides `prop` on `ring` in full mode under the gates.
pub fn check_property(
    ring: &FiniteRing,
    prop: Property,
    gates: &Gates,
) -> Result<PropertyVerdict, PropertyError> {
    let start = Instant::now();
    let mut routes = None;
    let (holds, certificate) = match prop {
        Property::Commutative => commutative(ring),
        Property::NoZeroDivisors => no_zero_divisors(ring),
        Property::OnlyTrivialIdempotents => only_trivial_idempotents(ring, gates)?,
        Property::Semicommutative => {
            let (h, c, r) = semicommutative_family(ring, gates, false)?;
            routes = Some(r);
            (h, c)
        }
        Property::WeaklySemicommutative => {
            let (h, c, r) = semicommutative_family(ring, gates, true)?;
            routes = Some(r);
            (h, c)
        }
        Property::Zinc => zinc(ring, gates)?,
        Property::NilClean => nil_clean(ring, gates)?,
        Property::Clean => clean(ring, gates)?,
        Property::JClean => j_clean(ring, gates)?,
        Property::WeaklyClean => weakly_clean(ring, gates)?,
    };
    Ok(PropertyVerdict {
        ring_label: ring.label().to_string(),
        property: prop,
        holds,
        mode: CheckMode::Full,
        certificate,
        routes,
        elapsed: start.elapsed(),
    })
}

/// Convenience wrapper: full-mode verdict reduced to its boolean.
pub fn holds(ring: &FiniteRing, prop: Property, gates: &Gates) -> Result<bool, PropertyError> {
    Ok(check_property(ring, prop, gates)?.holds)
}

fn commutative(ring: &FiniteRing) -> (bool, Option<Certificate>) {
    for a in ring.elements() {
        for b in ring.elements() {
            if ring.mul(a, b) != ring.mul(b, a) {
                return (
                    false,
                    Some(Certificate::Failure(FailureWitness::new(
                        FailureKind::NonCommuting,
                        vec![a, b],
                    ))),
                );
            }
        }
    }
    (true, None)
}

fn no_zero_divisors(ring: &FiniteRing) -> (bool, Option<Certificate>) {
    for a in ring.elements() {
        if a == ring.zero() {
            continue;
        }
        for b in ring.elements() {
            if b != ring.zero() && ring.mul(a, b) == ring.zero() {
                return (
                    false,
                    Some(Certificate::Failure(FailureWitness::new(
                        FailureKind::ZeroDivisor,
                        vec![a, b],
                    ))),
                );
            }
        }
    }
    (true, None)
}

fn only_trivial_idempotents(
    ring: &FiniteRing,
    gates: &Gates,
) -> Result<(bool, Option<Certificate>), PropertyError> {
    let e = classify::idempotents(ring, gates)?;
    for x in e.members() {
        if x != ring.zero() && x != ring.one() {
            return Ok((
                false,
                Some(Certificate::Failure(FailureWitness::new(
                    FailureKind::NontrivialIdempotent,
                    vec![x],
                ))),
            ));
        }
    }
    Ok((true, None))
}

/// Both routes for semicommutativity (`weak = false`: arb must be zero)
/// and weak semicommutativity (`weak = true`: arb must be nilpotent).
/// The witness is the least (a, b, r) counterexample, presented (a, r, b).
fn semicommutative_family(
    ring: &FiniteRing,
    gates: &Gates,
    weak: bool,
) -> Result<(bool, Option<Certificate>, DualRoute), PropertyError> {
    let zero = ring.zero();
    let nil = if weak {
        Some(classify::nilpotents(ring, gates)?)
    } else {
        None
    };
    let ok = |x: ElementId| match &nil {
        Some(n) => n.contains(x),
        None => x == zero,
    };

    let mut direct_witness: Option<(ElementId, ElementId, ElementId)> = None;
    'outer: for a in ring.elements() {
        for b in ring.elements() {
            if ring.mul(a, b) != zero {
                continue;
            }
            for r in ring.elements() {
                if !ok(ring.mul(ring.mul(a, r), b)) {
                    direct_witness = Some((a, b, r));
                    break 'outer;
                }
            }
        }
    }
    let direct = direct_witness.is_none();

    let zi = classify::zero_insertive(ring, gates)?;
    let target = match nil {
        Some(n) => n,
        None => classify::idempotents(ring, gates)?,
    };
    let via_zi = zi.is_subset(&target);

    if direct != via_zi {
        return Err(PropertyError::RouteDisagreement {
            property: if weak {
                Property::WeaklySemicommutative
            } else {
                Property::Semicommutative
            },
            direct,
            via_zi,
        });
    }

    let certificate = direct_witness.map(|(a, b, r)| {
        Certificate::Failure(FailureWitness::new(
            if weak {
                FailureKind::ProductNotNilpotent
            } else {
                FailureKind::ProductNotZero
            },
            vec![a, r, b],
        ))
    });
    Ok((
        direct,
        certificate,
        DualRoute {
            direct,
            via_zero_insertive: via_zi,
        },
    ))
}

fn zinc(ring: &FiniteRing, gates: &Gates) -> Result<(bool, Option<Certificate>), PropertyError> {
    let zi = classify::zero_insertive(ring, gates)?;
    let e = classify::idempotents(ring, gates)?;
    let n = classify::nilpotents(ring, gates)?;
    for x in zi.members() {
        if !is_nil_clean_element(ring, x, &e, &n) {
            let w = zi.zi_witness(x).expect("member has a stored witness");
            let mut failure =
                FailureWitness::new(FailureKind::ZiMemberNotNilClean, vec![x, w.a, w.r, w.b]);
            failure.idempotents_scanned = Some(e.size() as u64);
            return Ok((false, Some(Certificate::Failure(failure))));
        }
    }
    Ok((true, None))
}

fn nil_clean(
    ring: &FiniteRing,
    gates: &Gates,
) -> Result<(bool, Option<Certificate>), PropertyError> {
    let e = classify::idempotents(ring, gates)?;
    let n = classify::nilpotents(ring, gates)?;
    for x in ring.elements() {
        if !is_nil_clean_element(ring, x, &e, &n) {
            return Ok((
                false,
                Some(Certificate::Failure(FailureWitness::new(
                    FailureKind::NotNilClean,
                    vec![x],
                ))),
            ));
        }
    }
    Ok((true, None))
}

fn clean(ring: &FiniteRing, gates: &Gates) -> Result<(bool, Option<Certificate>), PropertyError> {
    let e = classify::idempotents(ring, gates)?;
    let u = classify::units(ring, gates)?;
    for x in ring.elements() {
        if !e.members().any(|i| u.contains(ring.sub(x, i))) {
            return Ok((
                false,
                Some(Certificate::Failure(FailureWitness::new(
                    FailureKind::NotClean,
                    vec![x],
                ))),
            ));
        }
    }
    Ok((true, None))
}

fn j_clean(ring: &FiniteRing, gates: &Gates) -> Result<(bool, Option<Certificate>), PropertyError> {
    let e = classify::idempotents(ring, gates)?;
    let j = classify::jacobson_radical(ring, gates)?;
    for x in ring.elements() {
        if !e.members().any(|i| j.contains(ring.sub(x, i))) {
            return Ok((
                false,
                Some(Certificate::Failure(FailureWitness::new(
                    FailureKind::NotJClean,
                    vec![x],
                ))),
            ));
        }
    }
    Ok((true, None))
}

fn weakly_clean(
    ring: &FiniteRing,
    gates: &Gates,
) -> Result<(bool, Option<Certificate>), PropertyError> {
    let e = classify::idempotents(ring, gates)?;
    let u = classify::units(ring, gates)?;
    for x in ring.elements() {
        if !is_weakly_clean_element(ring, x, &e, &u) {
            return Ok((
                false,
                Some(Certificate::Failure(FailureWitness::new(
                    FailureKind::NotWeaklyClean,
                    vec![x],
                ))),
            ));
        }
    }
    Ok((true, None))
}

/// Elementwise nil-clean check against precomputed sets.
pub fn is_nil_clean_element(
    ring: &FiniteRing,
    x: ElementId,
    idempotents: &ElementSet,
    nilpotents: &ElementSet,
) -> bool {
    idempotents
        .members()
        .any(|e| nilpotents.contains(ring.sub(x, e)))
}

/// Existence-only test for x = e + u + (1 - e) r x; the clean shortcut
/// (remainder 0 at r = 0) covers almost every element.
pub fn is_weakly_clean_element(
    ring: &FiniteRing,
    x: ElementId,
    idempotents: &ElementSet,
    units: &ElementSet,
) -> bool {
    for e in idempotents.members() {
        if units.contains(ring.sub(x, e)) {
            return true;
        }
    }
    for e in idempotents.members() {
        let lead = ring.sub(ring.one(), e);
        for u in units.members() {
            let lhs = ring.sub(ring.sub(x, e), u);
            for r in ring.elements() {
                if ring.mul(ring.mul(lead, r), x) == lhs {
                    return true;
                }
            }
        }
    }
    false
}

/// The least (e, u, r) in lexicographic index order with e idempotent,
/// u a unit, and x - e - u = (1 - e) r x; None when no triple exists.
pub fn weakly_clean_witness(
    ring: &FiniteRing,
    x: ElementId,
    gates: &Gates,
) -> Result<Option<WeaklyCleanWitness>, PropertyError> {
    ring.check(x).map_err(ClassifyError::Ring)?;
    let e_set = classify::idempotents(ring, gates)?;
    let u_set = classify::units(ring, gates)?;
    for e in e_set.members() {
        let lead = ring.sub(ring.one(), e);
        for u in u_set.members() {
            let lhs = ring.sub(ring.sub(x, e), u);
            for r in ring.elements() {
                if ring.mul(ring.mul(lead, r), x) == lhs {
                    return Ok(Some(WeaklyCleanWitness {
                        element: x,
                        idempotent: e,
                        unit: u,
                        scale: r,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Certificate-only zinc check for rings above the full-scan gate: every
/// candidate (a, r, b) must satisfy ab = 0; the verdict reports the first
/// product arb with no idempotent-plus-nilpotent split. A passing verdict
/// only means "no counterexample among the candidates" and carries the
/// certificate-only mode flag.
pub fn zinc_certificate_check(
    ring: &FiniteRing,
    candidates: &[(ElementId, ElementId, ElementId)],
) -> Result<PropertyVerdict, PropertyError> {
    let start = Instant::now();
    for (pos, (a, r, b)) in candidates.iter().enumerate() {
        ring.check(*a).map_err(ClassifyError::Ring)?;
        ring.check(*r).map_err(ClassifyError::Ring)?;
        ring.check(*b).map_err(ClassifyError::Ring)?;
        if ring.mul(*a, *b) != ring.zero() {
            return Err(PropertyError::CandidateInvalid { position: pos });
        }
    }
    let mut verdict = PropertyVerdict {
        ring_label: ring.label().to_string(),
        property: Property::Zinc,
        holds: true,
        mode: CheckMode::CertificateOnly,
        certificate: None,
        routes: None,
        elapsed: Duration::ZERO,
    };
    for (a, r, b) in candidates {
        let x = ring.mul(ring.mul(*a, *r), *b);
        let mut scanned = 0u64;
        let mut decomposed = false;
        for e in ring.elements() {
            if ring.mul(e, e) != e {
                continue;
            }
            scanned += 1;
            if nilpotency_index(ring, ring.sub(x, e)).is_some() {
                decomposed = true;
                break;
            }
        }
        if !decomposed {
            let mut failure =
                FailureWitness::new(FailureKind::ZiMemberNotNilClean, vec![x, *a, *r, *b]);
            failure.idempotents_scanned = Some(scanned);
            verdict.holds = false;
            verdict.certificate = Some(Certificate::Failure(failure));
            break;
        }
    }
    verdict.elapsed = start.elapsed();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::expr::RingExpr;

    fn ring(expr: RingExpr) -> FiniteRing {
        build(&expr)
            .unwrap()
            .materialized_or_self(Gates::default().materialize)
    }

    fn z(n: u64) -> RingExpr {
        RingExpr::Zn(n)
    }

    fn m2(base: RingExpr) -> RingExpr {
        RingExpr::Matrix(2, Box::new(base))
    }

    #[test]
    fn commutative_rings_are_zinc() {
        let g = Gates::default();
        for expr in [z(4), z(6), RingExpr::Gf(9)] {
            let r = ring(expr);
            assert!(holds(&r, Property::Commutative, &g).unwrap());
            assert!(holds(&r, Property::Zinc, &g).unwrap());
        }
    }

    #[test]
    fn m2z2_is_zinc_but_not_weakly_semicommutative() {
        let g = Gates::default();
        let r = ring(m2(z(2)));
        assert!(holds(&r, Property::Zinc, &g).unwrap());
        let verdict = check_property(&r, Property::WeaklySemicommutative, &g).unwrap();
        assert!(!verdict.holds);
        let routes = verdict.routes.unwrap();
        assert!(!routes.direct);
        assert!(!routes.via_zero_insertive);
        match verdict.certificate.unwrap() {
            Certificate::Failure(f) => {
                assert_eq!(f.kind, FailureKind::ProductNotNilpotent);
                // (a, r, b) = (E11, E12, E21) under the canonical tie-break.
                assert_eq!(f.elements, vec![ElementId(1), ElementId(2), ElementId(4)]);
                Certificate::Failure(f).validate(&r).unwrap();
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn m2z3_is_not_zinc_with_total_evidence() {
        let g = Gates::default();
        let r = ring(m2(z(3)));
        let verdict = check_property(&r, Property::Zinc, &g).unwrap();
        assert!(!verdict.holds);
        match verdict.certificate.unwrap() {
            Certificate::Failure(f) => {
                assert_eq!(f.kind, FailureKind::ZiMemberNotNilClean);
                assert_eq!(f.elements[0], ElementId(2)); // 2 * E11
                assert_eq!(f.idempotents_scanned, Some(14));
                Certificate::Failure(f).validate(&r).unwrap();
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn semicommutative_dual_routes_agree() {
        let g = Gates::default();
        for expr in [z(6), m2(z(2)), RingExpr::UpperTriangular(2, Box::new(z(2)))] {
            let r = ring(expr);
            let verdict = check_property(&r, Property::Semicommutative, &g).unwrap();
            let routes = verdict.routes.unwrap();
            assert_eq!(routes.direct, routes.via_zero_insertive);
            assert_eq!(verdict.holds, routes.direct);
        }
    }

    #[test]
    fn t2z2_is_j_clean() {
        let g = Gates::default();
        let r = ring(RingExpr::UpperTriangular(2, Box::new(z(2))));
        assert!(holds(&r, Property::JClean, &g).unwrap());
    }

    #[test]
    fn z3_is_not_nil_clean() {
        let g = Gates::default();
        let verdict = check_property(&ring(z(3)), Property::NilClean, &g).unwrap();
        assert!(!verdict.holds);
        match verdict.certificate.unwrap() {
            Certificate::Failure(f) => {
                assert_eq!(f.kind, FailureKind::NotNilClean);
                assert_eq!(f.elements, vec![ElementId(2)]);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn weakly_clean_witnesses_are_least() {
        let g = Gates::default();
        let z2 = ring(z(2));
        let w = weakly_clean_witness(&z2, ElementId(1), &g).unwrap().unwrap();
        assert_eq!(
            (w.idempotent, w.unit, w.scale),
            (ElementId(0), ElementId(1), ElementId(0))
        );
        let z6 = ring(z(6));
        let w = weakly_clean_witness(&z6, ElementId(3), &g).unwrap().unwrap();
        assert_eq!(
            (w.idempotent, w.unit, w.scale),
            (ElementId(4), ElementId(5), ElementId(0))
        );
        Certificate::WeaklyClean(w).validate(&z6).unwrap();
    }

    #[test]
    fn certificate_mode_zinc_checks() {
        let r = ring(m2(z(2)));
        let e11 = ElementId(1);
        let e12 = ElementId(2);
        let e21 = ElementId(4);
        let verdict = zinc_certificate_check(&r, &[(e11, e12, e21)]).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.mode, CheckMode::CertificateOnly);

        let empty = zinc_certificate_check(&r, &[]).unwrap();
        assert!(empty.holds);
        assert_eq!(empty.mode, CheckMode::CertificateOnly);

        // ab != 0 is rejected with the candidate position.
        let err = zinc_certificate_check(&r, &[(e11, e12, e12)]).unwrap_err();
        assert_eq!(err, PropertyError::CandidateInvalid { position: 0 });
    }

    #[test]
    fn implication_chain_on_samples() {
        let g = Gates::default();
        for expr in [
            z(2),
            z(3),
            z(4),
            z(6),
            RingExpr::Gf(4),
            m2(z(2)),
            m2(z(3)),
            RingExpr::UpperTriangular(2, Box::new(z(2))),
            RingExpr::Quaternion(Box::new(z(4))),
        ] {
            let r = ring(expr);
            let sc = holds(&r, Property::Semicommutative, &g).unwrap();
            let wsc = holds(&r, Property::WeaklySemicommutative, &g).unwrap();
            let zinc = holds(&r, Property::Zinc, &g).unwrap();
            let nil_clean = holds(&r, Property::NilClean, &g).unwrap();
            let clean = holds(&r, Property::Clean, &g).unwrap();
            if sc {
                assert!(wsc, "{}", r.label());
            }
            if wsc {
                assert!(zinc, "{}", r.label());
            }
            if nil_clean {
                assert!(zinc, "{}", r.label());
            }
            assert!(clean, "{}", r.label());
            assert!(holds(&r, Property::WeaklyClean, &g).unwrap(), "{}", r.label());
        }
    }

    #[test]
    fn unknown_property_name() {
        assert!(matches!(
            "zincy".parse::<Property>(),
            Err(PropertyError::UnknownProperty(_))
        ));
        assert_eq!("zinc".parse::<Property>().unwrap(), Property::Zinc);
    }
}
