//! Two-sided ideal closure and quotients by nil ideals.

use crate::bitset::Bitset;
use crate::classify::nilpotency_index;
use crate::construct::repr::QuotientOps;
use crate::construct::ConstructError;
use crate::ring::{ElementId, FiniteRing};
use std::collections::VecDeque;
use std::sync::Arc;

/// A closed two-sided ideal of one ring together with the coset structure
/// it induces.
#[derive(Clone, Debug)]
pub struct IdealClosure {
    pub generators: Vec<ElementId>,
    /// Membership over parent indices; closed under addition, negation,
    /// and multiplication by arbitrary ring elements on either side.
    pub members: Bitset,
    /// Parent element -> least-index representative of its coset.
    pub rep_of: Vec<u32>,
}

impl IdealClosure {
    pub fn size(&self) -> usize {
        self.members.count()
    }
}

/// Breadth-first closure of the generators under addition of members,
/// negation, and left/right multiplication by every ring element.
pub fn ideal_closure(ring: &FiniteRing, gens: &[ElementId]) -> Result<IdealClosure, ConstructError> {
    let n = ring.order();
    for g in gens {
        ring.check(*g).map_err(ConstructError::Ring)?;
    }
    let mut members = Bitset::new(n);
    let mut queue: VecDeque<ElementId> = VecDeque::new();
    let push = |members: &mut Bitset, queue: &mut VecDeque<ElementId>, x: ElementId| {
        if !members.contains(x.index()) {
            members.insert(x.index());
            queue.push_back(x);
        }
    };
    push(&mut members, &mut queue, ring.zero());
    for g in gens {
        push(&mut members, &mut queue, *g);
    }
    while let Some(g) = queue.pop_front() {
        push(&mut members, &mut queue, ring.neg(g));
        for r in ring.elements() {
            push(&mut members, &mut queue, ring.mul(r, g));
            push(&mut members, &mut queue, ring.mul(g, r));
        }
        let current: Vec<usize> = members.iter().collect();
        for h in current {
            push(
                &mut members,
                &mut queue,
                ring.add(g, ElementId(h as u32)),
            );
        }
    }

    // Cosets: scanning parent indices ascending makes every first
    // unassigned element the least index of its coset.
    let mut rep_of = vec![u32::MAX; n];
    let member_list: Vec<usize> = members.iter().collect();
    for x in 0..n {
        if rep_of[x] != u32::MAX {
            continue;
        }
        for &i in &member_list {
            let y = ring.add(ElementId(x as u32), ElementId(i as u32));
            rep_of[y.index()] = x as u32;
        }
        debug_assert_eq!(rep_of[x], x as u32);
    }

    Ok(IdealClosure {
        generators: gens.to_vec(),
        members,
        rep_of,
    })
}

/// Quotient of `ring` by the two-sided ideal generated by `gens`, which
/// must close to a proper nil ideal. The quotient lives on the least-index
/// coset representatives in ascending order.
pub fn quotient_by_nil_ideal(
    ring: &FiniteRing,
    gens: &[ElementId],
) -> Result<(FiniteRing, IdealClosure), ConstructError> {
    let closure = ideal_closure(ring, gens)?;
    if closure.size() == ring.order() {
        return Err(ConstructError::ImproperIdeal);
    }
    for i in closure.members.iter() {
        if nilpotency_index(ring, ElementId(i as u32)).is_none() {
            return Err(ConstructError::IdealNotNil {
                witness: ElementId(i as u32),
            });
        }
    }

    let mut reps: Vec<u32> = Vec::new();
    let mut quot_of_parent = vec![0u32; ring.order()];
    for x in 0..ring.order() {
        if closure.rep_of[x] == x as u32 {
            reps.push(x as u32);
        }
    }
    for x in 0..ring.order() {
        let rep = closure.rep_of[x];
        let qi = reps.binary_search(&rep).expect("representative is listed");
        quot_of_parent[x] = qi as u32;
    }

    let label = format!("{}/<{} gens, |I|={}>", ring.label(), gens.len(), closure.size());
    let ops = QuotientOps {
        parent: ring.clone(),
        reps,
        quot_of_parent,
    };
    let quotient = FiniteRing::from_ops(label, None, Arc::new(ops));
    Ok((quotient, closure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::expr::RingExpr;

    fn m2z4() -> FiniteRing {
        build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(4)))).unwrap()
    }

    #[test]
    fn quotient_of_matrix_ring_by_two_scalar() {
        let ring = m2z4();
        // 2 * identity: coordinates (2, 0, 0, 2).
        let gen = ring.from_coordinates(&[2, 0, 0, 2]).unwrap();
        assert_eq!(gen, ElementId(130));
        let (quotient, ideal) = quotient_by_nil_ideal(&ring, &[gen]).unwrap();
        assert_eq!(ideal.size(), 16);
        assert_eq!(quotient.order(), 16);
        assert_eq!(ideal.size() * quotient.order(), ring.order());
    }

    #[test]
    fn non_nil_generator_is_rejected() {
        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let err = quotient_by_nil_ideal(&z6, &[ElementId(2)]).unwrap_err();
        assert_eq!(
            err,
            ConstructError::IdealNotNil {
                witness: ElementId(2)
            }
        );
    }

    #[test]
    fn improper_ideal_is_rejected() {
        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let err = quotient_by_nil_ideal(&z6, &[z6.one()]).unwrap_err();
        assert_eq!(err, ConstructError::ImproperIdeal);
    }

    #[test]
    fn quotient_map_is_a_homomorphism() {
        let ring = m2z4();
        let gen = ring.from_coordinates(&[2, 0, 0, 2]).unwrap();
        let (quotient, ideal) = quotient_by_nil_ideal(&ring, &[gen]).unwrap();
        // q(x + y) = q(q(x) + q(y)) and q(xy) = q(q(x) q(y)) on parent
        // representatives, exhaustively.
        let q = |x: ElementId| ElementId(ideal.rep_of[x.index()]);
        for x in ring.elements() {
            for y in ring.elements() {
                assert_eq!(q(ring.add(x, y)), q(ring.add(q(x), q(y))));
                assert_eq!(q(ring.mul(x, y)), q(ring.mul(q(x), q(y))));
            }
        }
        assert_eq!(quotient.order(), 16);
    }
}
