//! Verifiable witness records.
//!
//! Every certificate carries enough element data to be re-checked by
//! direct arithmetic, independently of the code path that produced it.
//! `validate` performs that re-check with plain loops.

use crate::ring::{ElementId, FiniteRing};
use std::collections::HashSet;
use std::fmt;

/// x = a r b with a b = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZiWitness {
    pub element: ElementId,
    pub a: ElementId,
    pub r: ElementId,
    pub b: ElementId,
}

/// x = e + n with e idempotent and n nilpotent of the recorded index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilCleanDecomposition {
    pub element: ElementId,
    pub idempotent: ElementId,
    pub nilpotent: ElementId,
    pub index: u32,
}

/// x = e + u with e idempotent and u a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub element: ElementId,
    pub idempotent: ElementId,
    pub unit: ElementId,
}

/// x - e - u = (1 - e) r x with e idempotent and u a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeaklyCleanWitness {
    pub element: ElementId,
    pub idempotent: ElementId,
    pub unit: ElementId,
    pub scale: ElementId,
}

/// What a failure witness claims about its element tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// (a, r, b): ab = 0 but arb != 0.
    ProductNotZero,
    /// (a, r, b): ab = 0 but arb is not nilpotent.
    ProductNotNilpotent,
    /// (x, a, r, b): x = arb with ab = 0 admits no idempotent-plus-
    /// nilpotent split; `idempotents_scanned` records the exhaustion.
    ZiMemberNotNilClean,
    /// (x, a, r, b): x = arb with ab = 0 admits no idempotent-plus-unit
    /// split.
    ZiMemberNotClean,
    /// (x, a, r, b): x = arb with ab = 0 and x is not idempotent.
    ZiMemberNotIdempotent,
    /// (a, j, b): ab = 0, j in the radical, but ajb is not nilpotent.
    RadicalProductNotNilpotent,
    /// (x): no idempotent e makes x - e nilpotent.
    NotNilClean,
    /// (x): no idempotent e makes x - e a unit.
    NotClean,
    /// (x): no idempotent e puts x - e in the radical.
    NotJClean,
    /// (x): no (e, u, r) satisfies x - e - u = (1 - e) r x.
    NotWeaklyClean,
    /// (e): an idempotent other than 0 and 1.
    NontrivialIdempotent,
    /// (a, b): ab != ba.
    NonCommuting,
    /// (a, b): a != 0, b != 0, ab = 0.
    ZeroDivisor,
    /// (w): no unit v gives w - v = 1 or w - v = r w^2 for some r.
    UnitDifferenceMiss,
    /// Two supposedly equivalent computations disagreed; carries a note
    /// instead of elements.
    EquivalenceMismatch,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureKind::ProductNotZero => "product-not-zero",
            FailureKind::ProductNotNilpotent => "product-not-nilpotent",
            FailureKind::ZiMemberNotNilClean => "zi-member-not-nil-clean",
            FailureKind::ZiMemberNotClean => "zi-member-not-clean",
            FailureKind::ZiMemberNotIdempotent => "zi-member-not-idempotent",
            FailureKind::RadicalProductNotNilpotent => "radical-product-not-nilpotent",
            FailureKind::NotNilClean => "not-nil-clean",
            FailureKind::NotClean => "not-clean",
            FailureKind::NotJClean => "not-j-clean",
            FailureKind::NotWeaklyClean => "not-weakly-clean",
            FailureKind::NontrivialIdempotent => "nontrivial-idempotent",
            FailureKind::NonCommuting => "non-commuting",
            FailureKind::ZeroDivisor => "zero-divisor",
            FailureKind::UnitDifferenceMiss => "unit-difference-miss",
            FailureKind::EquivalenceMismatch => "equivalence-mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    pub kind: FailureKind,
    pub elements: Vec<ElementId>,
    /// For exhaustion-style failures: how many idempotents were scanned.
    pub idempotents_scanned: Option<u64>,
    pub note: Option<String>,
}

impl FailureWitness {
    pub fn new(kind: FailureKind, elements: Vec<ElementId>) -> Self {
        FailureWitness {
            kind,
            elements,
            idempotents_scanned: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ZeroInsertive(ZiWitness),
    NilClean(NilCleanDecomposition),
    Clean(CleanDecomposition),
    WeaklyClean(WeaklyCleanWitness),
    Failure(FailureWitness),
}

fn is_nilpotent(ring: &FiniteRing, x: ElementId) -> bool {
    let mut p = x;
    let mut seen = HashSet::new();
    loop {
        if p == ring.zero() {
            return true;
        }
        if !seen.insert(p) {
            return false;
        }
        p = ring.mul(p, x);
    }
}

fn is_unit(ring: &FiniteRing, x: ElementId) -> bool {
    ring.elements()
        .any(|y| ring.mul(x, y) == ring.one() && ring.mul(y, x) == ring.one())
}

fn in_radical(ring: &FiniteRing, x: ElementId) -> bool {
    ring.elements()
        .all(|r| is_unit(ring, ring.sub(ring.one(), ring.mul(r, x))))
}

impl Certificate {
    /// Re-checks the certified statement by direct arithmetic.
    pub fn validate(&self, ring: &FiniteRing) -> Result<(), String> {
        match self {
            Certificate::ZeroInsertive(w) => {
                if ring.mul(w.a, w.b) != ring.zero() {
                    return Err(format!(
                        "ab != 0 for a={}, b={}",
                        ring.format(w.a),
                        ring.format(w.b)
                    ));
                }
                if ring.mul(ring.mul(w.a, w.r), w.b) != w.element {
                    return Err("arb does not equal the certified element".into());
                }
                Ok(())
            }
            Certificate::NilClean(d) => {
                if ring.mul(d.idempotent, d.idempotent) != d.idempotent {
                    return Err("e is not idempotent".into());
                }
                if ring.pow(d.nilpotent, d.index as u64) != ring.zero() {
                    return Err("n^index != 0".into());
                }
                if d.index > 1
                    && ring.pow(d.nilpotent, (d.index - 1) as u64) == ring.zero()
                {
                    return Err("recorded nilpotency index is not least".into());
                }
                if ring.add(d.idempotent, d.nilpotent) != d.element {
                    return Err("e + n != x".into());
                }
                Ok(())
            }
            Certificate::Clean(d) => {
                if ring.mul(d.idempotent, d.idempotent) != d.idempotent {
                    return Err("e is not idempotent".into());
                }
                if !is_unit(ring, d.unit) {
                    return Err("u is not a unit".into());
                }
                if ring.add(d.idempotent, d.unit) != d.element {
                    return Err("e + u != x".into());
                }
                Ok(())
            }
            Certificate::WeaklyClean(w) => {
                if ring.mul(w.idempotent, w.idempotent) != w.idempotent {
                    return Err("e is not idempotent".into());
                }
                if !is_unit(ring, w.unit) {
                    return Err("u is not a unit".into());
                }
                let lhs = ring.sub(ring.sub(w.element, w.idempotent), w.unit);
                let rhs = ring.mul(
                    ring.mul(ring.sub(ring.one(), w.idempotent), w.scale),
                    w.element,
                );
                if lhs != rhs {
                    return Err("x - e - u != (1 - e) r x".into());
                }
                Ok(())
            }
            Certificate::Failure(f) => validate_failure(ring, f),
        }
    }
}

fn validate_failure(ring: &FiniteRing, f: &FailureWitness) -> Result<(), String> {
    let el = |i: usize| -> Result<ElementId, String> {
        f.elements
            .get(i)
            .copied()
            .ok_or_else(|| format!("witness is missing element {i}"))
    };
    match f.kind {
        FailureKind::ProductNotZero => {
            let (a, r, b) = (el(0)?, el(1)?, el(2)?);
            if ring.mul(a, b) != ring.zero() {
                return Err("ab != 0".into());
            }
            if ring.mul(ring.mul(a, r), b) == ring.zero() {
                return Err("arb is zero after all".into());
            }
            Ok(())
        }
        FailureKind::ProductNotNilpotent => {
            let (a, r, b) = (el(0)?, el(1)?, el(2)?);
            if ring.mul(a, b) != ring.zero() {
                return Err("ab != 0".into());
            }
            if is_nilpotent(ring, ring.mul(ring.mul(a, r), b)) {
                return Err("arb is nilpotent after all".into());
            }
            Ok(())
        }
        FailureKind::ZiMemberNotNilClean => {
            let (x, a, r, b) = (el(0)?, el(1)?, el(2)?, el(3)?);
            if ring.mul(a, b) != ring.zero() {
                return Err("ab != 0".into());
            }
            if ring.mul(ring.mul(a, r), b) != x {
                return Err("arb != x".into());
            }
            let mut scanned = 0u64;
            for e in ring.elements() {
                if ring.mul(e, e) == e {
                    scanned += 1;
                    if is_nilpotent(ring, ring.sub(x, e)) {
                        return Err(format!(
                            "x decomposes after all with e = {}",
                            ring.format(e)
                        ));
                    }
                }
            }
            if let Some(claimed) = f.idempotents_scanned {
                if claimed != scanned {
                    return Err(format!(
                        "idempotent count mismatch: claimed {claimed}, found {scanned}"
                    ));
                }
            }
            Ok(())
        }
        FailureKind::ZiMemberNotClean => {
            let (x, a, r, b) = (el(0)?, el(1)?, el(2)?, el(3)?);
            if ring.mul(a, b) != ring.zero() || ring.mul(ring.mul(a, r), b) != x {
                return Err("zero-insertive witness does not validate".into());
            }
            for e in ring.elements() {
                if ring.mul(e, e) == e && is_unit(ring, ring.sub(x, e)) {
                    return Err("x is clean after all".into());
                }
            }
            Ok(())
        }
        FailureKind::ZiMemberNotIdempotent => {
            let (x, a, r, b) = (el(0)?, el(1)?, el(2)?, el(3)?);
            if ring.mul(a, b) != ring.zero() || ring.mul(ring.mul(a, r), b) != x {
                return Err("zero-insertive witness does not validate".into());
            }
            if ring.mul(x, x) == x {
                return Err("x is idempotent after all".into());
            }
            Ok(())
        }
        FailureKind::RadicalProductNotNilpotent => {
            let (a, j, b) = (el(0)?, el(1)?, el(2)?);
            if ring.mul(a, b) != ring.zero() {
                return Err("ab != 0".into());
            }
            if !in_radical(ring, j) {
                return Err("j is not in the radical".into());
            }
            if is_nilpotent(ring, ring.mul(ring.mul(a, j), b)) {
                return Err("ajb is nilpotent after all".into());
            }
            Ok(())
        }
        FailureKind::NotNilClean => {
            let x = el(0)?;
            for e in ring.elements() {
                if ring.mul(e, e) == e && is_nilpotent(ring, ring.sub(x, e)) {
                    return Err("x is nil clean after all".into());
                }
            }
            Ok(())
        }
        FailureKind::NotClean => {
            let x = el(0)?;
            for e in ring.elements() {
                if ring.mul(e, e) == e && is_unit(ring, ring.sub(x, e)) {
                    return Err("x is clean after all".into());
                }
            }
            Ok(())
        }
        FailureKind::NotJClean => {
            let x = el(0)?;
            for e in ring.elements() {
                if ring.mul(e, e) == e && in_radical(ring, ring.sub(x, e)) {
                    return Err("x is j-clean after all".into());
                }
            }
            Ok(())
        }
        FailureKind::NotWeaklyClean => {
            let x = el(0)?;
            for e in ring.elements() {
                if ring.mul(e, e) != e {
                    continue;
                }
                for u in ring.elements() {
                    if !is_unit(ring, u) {
                        continue;
                    }
                    let lhs = ring.sub(ring.sub(x, e), u);
                    for r in ring.elements() {
                        let rhs = ring.mul(ring.mul(ring.sub(ring.one(), e), r), x);
                        if lhs == rhs {
                            return Err("x has a weakly clean witness after all".into());
                        }
                    }
                }
            }
            Ok(())
        }
        FailureKind::NontrivialIdempotent => {
            let e = el(0)?;
            if ring.mul(e, e) != e {
                return Err("e is not idempotent".into());
            }
            if e == ring.zero() || e == ring.one() {
                return Err("e is a trivial idempotent".into());
            }
            Ok(())
        }
        FailureKind::NonCommuting => {
            let (a, b) = (el(0)?, el(1)?);
            if ring.mul(a, b) == ring.mul(b, a) {
                return Err("ab == ba after all".into());
            }
            Ok(())
        }
        FailureKind::ZeroDivisor => {
            let (a, b) = (el(0)?, el(1)?);
            if a == ring.zero() || b == ring.zero() {
                return Err("witness uses zero".into());
            }
            if ring.mul(a, b) != ring.zero() {
                return Err("ab != 0".into());
            }
            Ok(())
        }
        FailureKind::UnitDifferenceMiss => {
            let w = el(0)?;
            let w2 = ring.mul(w, w);
            for v in ring.elements() {
                if !is_unit(ring, v) {
                    continue;
                }
                let diff = ring.sub(w, v);
                if diff == ring.one() {
                    return Err("w - v = 1 after all".into());
                }
                for r in ring.elements() {
                    if diff == ring.mul(r, w2) {
                        return Err("w - v = r w^2 after all".into());
                    }
                }
            }
            Ok(())
        }
        FailureKind::EquivalenceMismatch => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::expr::RingExpr;

    #[test]
    fn nil_clean_certificate_validates() {
        let z4 = build(&RingExpr::Zn(4)).unwrap();
        let good = Certificate::NilClean(NilCleanDecomposition {
            element: ElementId(3),
            idempotent: ElementId(1),
            nilpotent: ElementId(2),
            index: 2,
        });
        assert_eq!(good.validate(&z4), Ok(()));
        let bad = Certificate::NilClean(NilCleanDecomposition {
            element: ElementId(3),
            idempotent: ElementId(2),
            nilpotent: ElementId(1),
            index: 2,
        });
        assert!(bad.validate(&z4).is_err());
    }

    #[test]
    fn zero_insertive_certificate_validates() {
        let ring = build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(2)))).unwrap();
        let e11 = ring.from_coordinates(&[1, 0, 0, 0]).unwrap();
        let e12 = ring.from_coordinates(&[0, 1, 0, 0]).unwrap();
        let e21 = ring.from_coordinates(&[0, 0, 1, 0]).unwrap();
        let cert = Certificate::ZeroInsertive(ZiWitness {
            element: e11,
            a: e11,
            r: e12,
            b: e21,
        });
        assert_eq!(cert.validate(&ring), Ok(()));
        // Swapping r and b breaks the zero product.
        let broken = Certificate::ZeroInsertive(ZiWitness {
            element: e11,
            a: e11,
            r: e21,
            b: e12,
        });
        assert!(broken.validate(&ring).is_err());
    }

    #[test]
    fn weakly_clean_certificate_validates() {
        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let cert = Certificate::WeaklyClean(WeaklyCleanWitness {
            element: ElementId(3),
            idempotent: ElementId(4),
            unit: ElementId(5),
            scale: ElementId(0),
        });
        assert_eq!(cert.validate(&z6), Ok(()));
    }

    #[test]
    fn failure_witnesses_validate() {
        let z3 = build(&RingExpr::Zn(3)).unwrap();
        let not_nil_clean = Certificate::Failure(FailureWitness::new(
            FailureKind::NotNilClean,
            vec![ElementId(2)],
        ));
        assert_eq!(not_nil_clean.validate(&z3), Ok(()));

        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let nontrivial = Certificate::Failure(FailureWitness::new(
            FailureKind::NontrivialIdempotent,
            vec![ElementId(3)],
        ));
        assert_eq!(nontrivial.validate(&z6), Ok(()));

        let zero_div = Certificate::Failure(FailureWitness::new(
            FailureKind::ZeroDivisor,
            vec![ElementId(2), ElementId(3)],
        ));
        assert_eq!(zero_div.validate(&z6), Ok(()));
        let not_zero_div = Certificate::Failure(FailureWitness::new(
            FailureKind::ZeroDivisor,
            vec![ElementId(2), ElementId(2)],
        ));
        assert!(not_zero_div.validate(&z6).is_err());
    }
}
