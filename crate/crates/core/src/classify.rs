//! Element classification: idempotents, nilpotents, units, central
//! elements, the Jacobson radical, zero-insertive elements, and sumsets.
//!
//! All classifiers are full scans gated by ring order; the zero-insertive
//! scan has a tighter gate because it walks the zero-product pairs. Every
//! set carries the witnesses its role calls for, and all witness
//! tie-breaks take the least tuple of element indices.

use crate::bitset::Bitset;
use crate::cert::{NilCleanDecomposition, ZiWitness};
use crate::ring::{ElementId, FiniteRing, RingError};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

/// Scan gates. `full_sets` bounds the plain classifiers, `zi` the
/// zero-insertive pair scan, `materialize` the dense-table threshold, and
/// `max_order` the construction ceiling.
#[derive(Clone, Copy, Debug)]
pub struct Gates {
    pub full_sets: usize,
    pub zi: usize,
    pub materialize: usize,
    pub max_order: u64,
}

impl Default for Gates {
    fn default() -> Self {
        Gates {
            full_sets: 1 << 16,
            zi: 1 << 12,
            materialize: crate::ring::DEFAULT_MATERIALIZE_THRESHOLD,
            max_order: crate::expr::DEFAULT_ORDER_CEILING,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("order {order} exceeds the {gate} full-scan gate for {what}; use the certificate-mode interfaces")]
    GateExceeded {
        what: &'static str,
        order: usize,
        gate: usize,
    },
    #[error("element sets belong to different rings")]
    RingMismatch,
    #[error("internal arithmetic inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRole {
    Idempotents,
    Nilpotents,
    Units,
    Central,
    Radical,
    ZeroInsertive,
    IdempotentPlusNilpotent,
    IdempotentPlusUnit,
    Custom,
}

impl SetRole {
    /// Short code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            SetRole::Idempotents => "E",
            SetRole::Nilpotents => "N",
            SetRole::Units => "U",
            SetRole::Central => "Z",
            SetRole::Radical => "J",
            SetRole::ZeroInsertive => "ZI",
            SetRole::IdempotentPlusNilpotent => "E+N",
            SetRole::IdempotentPlusUnit => "E+U",
            SetRole::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug)]
pub enum SetDetail {
    None,
    /// Member -> least k with x^k = 0.
    NilIndex(BTreeMap<u32, u32>),
    /// Member -> two-sided inverse.
    Inverse(BTreeMap<u32, u32>),
    /// Member -> least (a, b, r) with ab = 0 and arb = member.
    ZiWitness(BTreeMap<u32, (u32, u32, u32)>),
}

/// A membership bitset over the elements of one ring, tagged with its
/// role and the role's witness data.
#[derive(Clone, Debug)]
pub struct ElementSet {
    ring: FiniteRing,
    role: SetRole,
    bits: Bitset,
    detail: SetDetail,
}

impl ElementSet {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn role(&self) -> SetRole {
        self.role
    }

    pub fn size(&self) -> usize {
        self.bits.count()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        x.index() < self.bits.len() && self.bits.contains(x.index())
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.iter().map(|i| ElementId(i as u32))
    }

    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn nil_index(&self, x: ElementId) -> Option<u32> {
        match &self.detail {
            SetDetail::NilIndex(map) => map.get(&x.0).copied(),
            _ => None,
        }
    }

    pub fn inverse(&self, x: ElementId) -> Option<ElementId> {
        match &self.detail {
            SetDetail::Inverse(map) => map.get(&x.0).map(|i| ElementId(*i)),
            _ => None,
        }
    }

    /// Stored witness for a zero-insertive member, in presentation order
    /// (a, r, b).
    pub fn zi_witness(&self, x: ElementId) -> Option<ZiWitness> {
        match &self.detail {
            SetDetail::ZiWitness(map) => map.get(&x.0).map(|&(a, b, r)| ZiWitness {
                element: x,
                a: ElementId(a),
                r: ElementId(r),
                b: ElementId(b),
            }),
            _ => None,
        }
    }

    /// All stored zero-insertive witnesses, ascending by member.
    pub fn zi_witnesses(&self) -> Vec<ZiWitness> {
        match &self.detail {
            SetDetail::ZiWitness(map) => map
                .iter()
                .map(|(&x, &(a, b, r))| ZiWitness {
                    element: ElementId(x),
                    a: ElementId(a),
                    r: ElementId(r),
                    b: ElementId(b),
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

fn gate(what: &'static str, ring: &FiniteRing, limit: usize) -> Result<(), ClassifyError> {
    if ring.order() > limit {
        Err(ClassifyError::GateExceeded {
            what,
            order: ring.order(),
            gate: limit,
        })
    } else {
        Ok(())
    }
}

/// The exact set {x : x^2 = x}.
pub fn idempotents(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    gate("idempotents", ring, gates.full_sets)?;
    let mut bits = Bitset::new(ring.order());
    for x in ring.elements() {
        if ring.mul(x, x) == x {
            bits.insert(x.index());
        }
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::Idempotents,
        bits,
        detail: SetDetail::None,
    })
}

/// Least k >= 1 with x^k = 0, found by power iteration with seen-set
/// cycle detection; None when the powers cycle without reaching zero.
pub fn nilpotency_index(ring: &FiniteRing, x: ElementId) -> Option<u32> {
    let mut p = x;
    let mut k = 1u32;
    let mut seen = HashSet::new();
    loop {
        if p == ring.zero() {
            return Some(k);
        }
        if !seen.insert(p) {
            return None;
        }
        p = ring.mul(p, x);
        k += 1;
    }
}

/// The exact set {x : some power of x is 0}, with the least such power
/// recorded per member.
pub fn nilpotents(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    gate("nilpotents", ring, gates.full_sets)?;
    let mut bits = Bitset::new(ring.order());
    let mut index = BTreeMap::new();
    for x in ring.elements() {
        if let Some(k) = nilpotency_index(ring, x) {
            bits.insert(x.index());
            index.insert(x.0, k);
        }
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::Nilpotents,
        bits,
        detail: SetDetail::NilIndex(index),
    })
}

/// The exact unit set with a two-sided inverse recorded per member. The
/// scan finds a right inverse and verifies it is also a left inverse.
pub fn units(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    gate("units", ring, gates.full_sets)?;
    let one = ring.one();
    let mut bits = Bitset::new(ring.order());
    let mut inverse = BTreeMap::new();
    for x in ring.elements() {
        for y in ring.elements() {
            if ring.mul(x, y) == one {
                if ring.mul(y, x) != one {
                    return Err(ClassifyError::Internal(format!(
                        "one-sided inverse in a finite ring: x={}, y={}",
                        ring.format(x),
                        ring.format(y)
                    )));
                }
                bits.insert(x.index());
                inverse.insert(x.0, y.0);
                break;
            }
        }
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::Units,
        bits,
        detail: SetDetail::Inverse(inverse),
    })
}

/// The exact set {x : xr = rx for all r}.
pub fn center(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    gate("center", ring, gates.full_sets)?;
    let mut bits = Bitset::new(ring.order());
    for x in ring.elements() {
        if ring.elements().all(|r| ring.mul(x, r) == ring.mul(r, x)) {
            bits.insert(x.index());
        }
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::Central,
        bits,
        detail: SetDetail::None,
    })
}

/// The Jacobson radical {x : 1 - rx is a unit for all r}, post-verified
/// to be a two-sided ideal.
pub fn jacobson_radical(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    let u = units(ring, gates)?;
    jacobson_radical_with_units(ring, gates, &u)
}

pub fn jacobson_radical_with_units(
    ring: &FiniteRing,
    gates: &Gates,
    units: &ElementSet,
) -> Result<ElementSet, ClassifyError> {
    gate("jacobson radical", ring, gates.full_sets)?;
    let one = ring.one();
    let mut bits = Bitset::new(ring.order());
    for x in ring.elements() {
        if ring
            .elements()
            .all(|r| units.contains(ring.sub(one, ring.mul(r, x))))
        {
            bits.insert(x.index());
        }
    }
    // Ideal post-check; a failure here indicates an arithmetic bug.
    let members: Vec<ElementId> = bits.iter().map(|i| ElementId(i as u32)).collect();
    for &a in &members {
        if !bits.contains(ring.neg(a).index()) {
            return Err(ClassifyError::Internal(
                "radical is not closed under negation".into(),
            ));
        }
        for &b in &members {
            if !bits.contains(ring.add(a, b).index()) {
                return Err(ClassifyError::Internal(
                    "radical is not closed under addition".into(),
                ));
            }
        }
        for r in ring.elements() {
            if !bits.contains(ring.mul(r, a).index()) || !bits.contains(ring.mul(a, r).index()) {
                return Err(ClassifyError::Internal(
                    "radical is not closed under multiplication".into(),
                ));
            }
        }
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::Radical,
        bits,
        detail: SetDetail::None,
    })
}

/// The zero-insertive set {arb : ab = 0}. For every member the stored
/// witness is the least (a, b, r) index triple producing it; witnesses
/// are presented in product order (a, r, b).
pub fn zero_insertive(ring: &FiniteRing, gates: &Gates) -> Result<ElementSet, ClassifyError> {
    gate("zero-insertive scan", ring, gates.zi)?;
    let n = ring.order();
    let chunk = 64usize;
    let starts: Vec<usize> = (0..n).step_by(chunk).collect();
    let merged: BTreeMap<u32, (u32, u32, u32)> = starts
        .par_iter()
        .map(|&start| {
            let mut local: BTreeMap<u32, (u32, u32, u32)> = BTreeMap::new();
            for a in start..(start + chunk).min(n) {
                let a_id = ElementId(a as u32);
                let annihilated: Vec<u32> = (0..n as u32)
                    .filter(|&b| ring.mul(a_id, ElementId(b)) == ring.zero())
                    .collect();
                if annihilated.is_empty() {
                    continue;
                }
                let row: Vec<u32> = (0..n as u32)
                    .map(|r| ring.mul(a_id, ElementId(r)).0)
                    .collect();
                for &b in &annihilated {
                    for (r, &ar) in row.iter().enumerate() {
                        let x = ring.mul(ElementId(ar), ElementId(b));
                        let triple = (a as u32, b, r as u32);
                        match local.get(&x.0) {
                            Some(existing) if *existing <= triple => {}
                            _ => {
                                local.insert(x.0, triple);
                            }
                        }
                    }
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, local| {
            for (x, triple) in local {
                match acc.get(&x) {
                    Some(existing) if *existing <= triple => {}
                    _ => {
                        acc.insert(x, triple);
                    }
                }
            }
            acc
        });
    let mut bits = Bitset::new(n);
    for &x in merged.keys() {
        bits.insert(x as usize);
    }
    Ok(ElementSet {
        ring: ring.clone(),
        role: SetRole::ZeroInsertive,
        bits,
        detail: SetDetail::ZiWitness(merged),
    })
}

/// The setwise sum {s + t : s in S, t in T} over one ring.
pub fn sumset(s: &ElementSet, t: &ElementSet) -> Result<ElementSet, ClassifyError> {
    if !s.ring.same_ring(&t.ring) {
        return Err(ClassifyError::RingMismatch);
    }
    let ring = &s.ring;
    let mut bits = Bitset::new(ring.order());
    for a in s.members() {
        for b in t.members() {
            bits.insert(ring.add(a, b).index());
        }
    }
    let role = match (s.role, t.role) {
        (SetRole::Idempotents, SetRole::Nilpotents) => SetRole::IdempotentPlusNilpotent,
        (SetRole::Idempotents, SetRole::Units) => SetRole::IdempotentPlusUnit,
        _ => SetRole::Custom,
    };
    Ok(ElementSet {
        ring: ring.clone(),
        role,
        bits,
        detail: SetDetail::None,
    })
}

/// The decomposition x = e + n with the least idempotent e such that
/// x - e is nilpotent, or None. Usable at any order: idempotents are
/// enumerated lazily by scanning squarings.
pub fn nil_clean_decomposition(ring: &FiniteRing, x: ElementId) -> Option<NilCleanDecomposition> {
    for e in ring.elements() {
        if ring.mul(e, e) != e {
            continue;
        }
        let n = ring.sub(x, e);
        if let Some(k) = nilpotency_index(ring, n) {
            return Some(NilCleanDecomposition {
                element: x,
                idempotent: e,
                nilpotent: n,
                index: k,
            });
        }
    }
    None
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

    fn m2z2() -> FiniteRing {
        ring(RingExpr::Matrix(2, Box::new(z(2))))
    }

    fn members(s: &ElementSet) -> Vec<u32> {
        s.members().map(|e| e.0).collect()
    }

    #[test]
    fn idempotent_sets() {
        let g = Gates::default();
        assert_eq!(members(&idempotents(&ring(z(6)), &g).unwrap()), [0, 1, 3, 4]);
        assert_eq!(members(&idempotents(&ring(RingExpr::Gf(4)), &g).unwrap()), [0, 1]);
        let e = idempotents(&m2z2(), &g).unwrap();
        assert_eq!(e.size(), 8);
        assert_eq!(members(&e), [0, 1, 3, 5, 8, 9, 10, 12]);
    }

    #[test]
    fn nilpotent_sets_with_indices() {
        let g = Gates::default();
        let n = nilpotents(&ring(z(8)), &g).unwrap();
        assert_eq!(members(&n), [0, 2, 4, 6]);
        assert_eq!(n.nil_index(ElementId(0)), Some(1));
        assert_eq!(n.nil_index(ElementId(2)), Some(3));
        assert_eq!(n.nil_index(ElementId(4)), Some(2));
        assert_eq!(n.nil_index(ElementId(6)), Some(3));
        assert_eq!(members(&nilpotents(&ring(RingExpr::Gf(4)), &g).unwrap()), [0]);
        let t2 = ring(RingExpr::UpperTriangular(2, Box::new(z(2))));
        assert_eq!(members(&nilpotents(&t2, &g).unwrap()), [0, 2]);
    }

    #[test]
    fn unit_sets_with_inverses() {
        let g = Gates::default();
        let u8s = units(&ring(z(8)), &g).unwrap();
        assert_eq!(members(&u8s), [1, 3, 5, 7]);
        assert_eq!(u8s.inverse(ElementId(3)), Some(ElementId(3)));
        assert_eq!(units(&m2z2(), &g).unwrap().size(), 6);
        let prod = ring(RingExpr::Product(vec![z(2), z(4)]));
        assert_eq!(members(&units(&prod, &g).unwrap()), [3, 7]);
    }

    #[test]
    fn center_sets() {
        let g = Gates::default();
        assert_eq!(center(&ring(z(5)), &g).unwrap().size(), 5);
        assert_eq!(members(&center(&m2z2(), &g).unwrap()), [0, 9]);
        let t2 = ring(RingExpr::UpperTriangular(2, Box::new(z(2))));
        assert_eq!(members(&center(&t2, &g).unwrap()), [0, 5]);
    }

    #[test]
    fn jacobson_radicals() {
        let g = Gates::default();
        assert_eq!(members(&jacobson_radical(&ring(z(4)), &g).unwrap()), [0, 2]);
        assert_eq!(members(&jacobson_radical(&m2z2(), &g).unwrap()), [0]);
        let t2 = ring(RingExpr::UpperTriangular(2, Box::new(z(2))));
        assert_eq!(members(&jacobson_radical(&t2, &g).unwrap()), [0, 2]);
    }

    #[test]
    fn zero_insertive_of_commutative_rings_is_zero() {
        let g = Gates::default();
        for expr in [z(6), z(8), RingExpr::Gf(9)] {
            let zi = zero_insertive(&ring(expr), &g).unwrap();
            assert_eq!(members(&zi), [0]);
        }
    }

    #[test]
    fn zero_insertive_of_m2z2() {
        let g = Gates::default();
        let r = m2z2();
        let zi = zero_insertive(&r, &g).unwrap();
        assert_eq!(members(&zi), [0, 1, 2, 3, 4, 5, 8, 10, 12, 15]);
        // E11 = index 1; its least witness is a = E11, b = E21, r = E12,
        // presented (a, r, b) = (E11, E12, E21).
        let w = zi.zi_witness(ElementId(1)).unwrap();
        assert_eq!((w.a.0, w.r.0, w.b.0), (1, 2, 4));
        assert_eq!(r.mul(w.a, w.b), r.zero());
        assert_eq!(r.mul(r.mul(w.a, w.r), w.b), ElementId(1));
    }

    #[test]
    fn zero_insertive_of_m2z3_contains_2e11() {
        let g = Gates::default();
        let r = ring(RingExpr::Matrix(2, Box::new(z(3))));
        let zi = zero_insertive(&r, &g).unwrap();
        let x = r.from_coordinates(&[2, 0, 0, 0]).unwrap();
        assert_eq!(x, ElementId(2));
        assert!(zi.contains(x));
        let w = zi.zi_witness(x).unwrap();
        assert_eq!((w.a.0, w.b.0, w.r.0), (1, 9, 6));
    }

    #[test]
    fn zero_insertive_of_the_zero_ring() {
        let g = Gates::default();
        let one = ring(z(1));
        let zi = zero_insertive(&one, &g).unwrap();
        assert_eq!(members(&zi), [0]);
        let w = zi.zi_witness(ElementId(0)).unwrap();
        assert_eq!((w.a.0, w.r.0, w.b.0), (0, 0, 0));
    }

    #[test]
    fn sumsets() {
        let g = Gates::default();
        let z3 = ring(z(3));
        let en = sumset(
            &idempotents(&z3, &g).unwrap(),
            &nilpotents(&z3, &g).unwrap(),
        )
        .unwrap();
        assert_eq!(members(&en), [0, 1]);
        assert_eq!(en.role(), SetRole::IdempotentPlusNilpotent);

        let z4 = ring(z(4));
        let en4 = sumset(
            &idempotents(&z4, &g).unwrap(),
            &nilpotents(&z4, &g).unwrap(),
        )
        .unwrap();
        assert_eq!(en4.size(), 4);

        let r = m2z2();
        let en_m = sumset(&idempotents(&r, &g).unwrap(), &nilpotents(&r, &g).unwrap()).unwrap();
        assert_eq!(en_m.size(), 16);
    }

    #[test]
    fn sumset_ring_mismatch() {
        let g = Gates::default();
        let a = idempotents(&ring(z(3)), &g).unwrap();
        let b = nilpotents(&ring(z(4)), &g).unwrap();
        assert!(matches!(sumset(&a, &b), Err(ClassifyError::RingMismatch)));
    }

    #[test]
    fn nil_clean_decompositions() {
        let z4 = ring(z(4));
        let d = nil_clean_decomposition(&z4, ElementId(3)).unwrap();
        assert_eq!(
            (d.idempotent, d.nilpotent, d.index),
            (ElementId(1), ElementId(2), 2)
        );
        let z3 = ring(z(3));
        assert!(nil_clean_decomposition(&z3, ElementId(2)).is_none());
        let m2z3 = ring(RingExpr::Matrix(2, Box::new(z(3))));
        assert!(nil_clean_decomposition(&m2z3, ElementId(2)).is_none());
    }

    #[test]
    fn gate_refusals() {
        let g = Gates {
            full_sets: 8,
            zi: 8,
            ..Gates::default()
        };
        let r = m2z2();
        assert!(matches!(
            idempotents(&r, &g),
            Err(ClassifyError::GateExceeded { order: 16, gate: 8, .. })
        ));
        assert!(matches!(
            zero_insertive(&r, &g),
            Err(ClassifyError::GateExceeded { .. })
        ));
    }

    #[test]
    fn idempotent_nilpotent_intersection_is_zero() {
        let g = Gates::default();
        for expr in [
            z(6),
            RingExpr::Matrix(2, Box::new(z(2))),
            RingExpr::UpperTriangular(2, Box::new(z(4))),
            RingExpr::Quaternion(Box::new(z(2))),
        ] {
            let r = ring(expr);
            let e = idempotents(&r, &g).unwrap();
            let n = nilpotents(&r, &g).unwrap();
            let both = e.bits().intersection(n.bits());
            assert_eq!(both.iter().collect::<Vec<_>>(), [r.zero().index()]);
        }
    }

    #[test]
    fn nilpotence_matches_order_power() {
        // x is nilpotent iff x^order = 0, by square-and-multiply.
        let g = Gates::default();
        for expr in [z(8), RingExpr::Matrix(2, Box::new(z(4)))] {
            let r = ring(expr);
            let n = nilpotents(&r, &g).unwrap();
            for x in r.elements() {
                let via_pow = r.pow(x, r.order() as u64) == r.zero();
                assert_eq!(n.contains(x), via_pow, "element {}", r.format(x));
            }
        }
    }
}
