//! Builders for every supported ring construction.
//!
//! `build` turns a `RingExpr` into a `FiniteRing`; `corner_ring`,
//! `trivial_morita`, and `quotient_by_nil_ideal` derive further rings
//! from already-built ones. Base rings of composite constructions are
//! table-materialized when they fit the default threshold, so structural
//! arithmetic above the threshold still bottoms out in table lookups.

mod gf;
mod ideal;
mod repr;

pub use ideal::{ideal_closure, quotient_by_nil_ideal, IdealClosure};

use crate::expr::{factor_prime_power, ExprError, RingExpr, DEFAULT_ORDER_CEILING};
use crate::ring::{
    ElementId, FiniteRing, RingError, RingOps, DEFAULT_MATERIALIZE_THRESHOLD,
};
use repr::{
    CornerOps, GfOps, MatrixOps, MoritaOps, PolyQuotOps, ProductOps, QuaternionOps,
    TrivialExtensionOps, UpperTriangularOps, ZnOps,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: ElementId },
    #[error("element {element} is not central: it does not commute with {witness}")]
    NotCentral {
        element: ElementId,
        witness: ElementId,
    },
    #[error("bimodule axiom {axiom} fails at ({a}, {b}, {c})")]
    BimoduleAxiom {
        axiom: &'static str,
        a: ElementId,
        b: ElementId,
        c: ElementId,
    },
    #[error("ideal closure contains the non-nilpotent element {witness}")]
    IdealNotNil { witness: ElementId },
    #[error("ideal closure is the whole ring")]
    ImproperIdeal,
}

/// Builds the ring described by `expr` under the default order ceiling.
pub fn build(expr: &RingExpr) -> Result<FiniteRing, ConstructError> {
    build_with_ceiling(expr, DEFAULT_ORDER_CEILING)
}

/// Builds the ring described by `expr`, refusing orders above `ceiling`.
pub fn build_with_ceiling(expr: &RingExpr, ceiling: u64) -> Result<FiniteRing, ConstructError> {
    expr.order_within(ceiling)?;
    build_node(expr, ceiling)
}

fn build_node(expr: &RingExpr, ceiling: u64) -> Result<FiniteRing, ConstructError> {
    let label = expr.to_string();
    let ops: Arc<dyn RingOps> = match expr {
        RingExpr::Zn(n) => Arc::new(ZnOps { n: *n as usize }),
        RingExpr::Gf(q) => {
            let (p, k) = factor_prime_power(*q).ok_or(ExprError::NotPrimePower(*q))?;
            let modulus = gf::smallest_irreducible(p, k);
            Arc::new(GfOps {
                p: p as usize,
                k: k as usize,
                modulus,
            })
        }
        RingExpr::Matrix(n, base) => Arc::new(MatrixOps {
            n: *n as usize,
            base: built_base(base, ceiling)?,
        }),
        RingExpr::UpperTriangular(n, base) => Arc::new(UpperTriangularOps::new(
            *n as usize,
            built_base(base, ceiling)?,
        )),
        RingExpr::Product(parts) => {
            let parts = parts
                .iter()
                .map(|p| built_base(p, ceiling))
                .collect::<Result<Vec<_>, _>>()?;
            Arc::new(ProductOps { parts })
        }
        RingExpr::TrivialExtension(base) => Arc::new(TrivialExtensionOps {
            base: built_base(base, ceiling)?,
        }),
        RingExpr::PolyQuot(base, n) => Arc::new(PolyQuotOps {
            base: built_base(base, ceiling)?,
            n: *n as usize,
        }),
        RingExpr::Quaternion(base) => Arc::new(QuaternionOps {
            base: built_base(base, ceiling)?,
        }),
        RingExpr::Morita(base) => Arc::new(MoritaOps {
            carrier: built_base(base, ceiling)?,
        }),
    };
    Ok(FiniteRing::from_ops(label, Some(expr.clone()), ops))
}

fn built_base(expr: &RingExpr, ceiling: u64) -> Result<FiniteRing, ConstructError> {
    let base = build_node(expr, ceiling)?;
    Ok(base.materialized_or_self(DEFAULT_MATERIALIZE_THRESHOLD))
}

/// The corner ring Re for a central idempotent e: element set {xe},
/// unity e, operations inherited, canonical order ascending parent index.
pub fn corner_ring(ring: &FiniteRing, e: ElementId) -> Result<FiniteRing, ConstructError> {
    ring.check(e)?;
    if ring.mul(e, e) != e {
        return Err(ConstructError::NotIdempotent { element: e });
    }
    for r in ring.elements() {
        if ring.mul(e, r) != ring.mul(r, e) {
            return Err(ConstructError::NotCentral {
                element: e,
                witness: r,
            });
        }
    }
    let mut member_flags = vec![false; ring.order()];
    for x in ring.elements() {
        member_flags[ring.mul(x, e).index()] = true;
    }
    let members: Vec<u32> = (0..ring.order() as u32)
        .filter(|i| member_flags[*i as usize])
        .collect();
    let mut index_of = vec![u32::MAX; ring.order()];
    for (ci, &pi) in members.iter().enumerate() {
        index_of[pi as usize] = ci as u32;
    }
    let unity = index_of[e.index()] as usize;
    let label = format!("Corner({}, e={})", ring.label(), ring.format(e));
    let ops = CornerOps {
        parent: ring.clone(),
        members,
        index_of,
        unity,
    };
    Ok(FiniteRing::from_ops(label, None, Arc::new(ops)))
}

/// Bimodule data for a trivial Morita context. All four slots are tied to
/// one carrier ring W, with both actions given by W's multiplication and
/// both context products identically zero.
#[derive(Clone, Debug)]
pub struct BimoduleSpec {
    pub carrier: FiniteRing,
}

impl BimoduleSpec {
    pub fn diagonal(carrier: FiniteRing) -> Self {
        BimoduleSpec { carrier }
    }

    /// Exhaustively audits the bimodule axioms of the carrier actions:
    /// compatibility with ring multiplication, distributivity on both
    /// sides, and unital actions.
    pub fn audit(&self) -> Result<(), ConstructError> {
        let w = &self.carrier;
        let fail = |axiom: &'static str, a: ElementId, b: ElementId, c: ElementId| {
            Err(ConstructError::BimoduleAxiom { axiom, a, b, c })
        };
        for a in w.elements() {
            if w.mul(w.one(), a) != a {
                return fail("left unital action", w.one(), a, a);
            }
            if w.mul(a, w.one()) != a {
                return fail("right unital action", a, w.one(), a);
            }
            for b in w.elements() {
                for c in w.elements() {
                    if w.mul(w.mul(a, b), c) != w.mul(a, w.mul(b, c)) {
                        return fail("action associativity", a, b, c);
                    }
                    if w.mul(a, w.add(b, c)) != w.add(w.mul(a, b), w.mul(a, c)) {
                        return fail("left action distributivity", a, b, c);
                    }
                    if w.mul(w.add(a, b), c) != w.add(w.mul(a, c), w.mul(b, c)) {
                        return fail("right action distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The ring of a trivial Morita context over the spec's carrier: tuples
/// (a, m, p, b) multiplied with zero context products. The bimodule audit
/// runs first and its failure is reported with a witness.
pub fn trivial_morita(spec: &BimoduleSpec) -> Result<FiniteRing, ConstructError> {
    spec.audit()?;
    let label = format!("Morita({})", spec.carrier.label());
    let expr = spec
        .carrier
        .expr()
        .cloned()
        .map(|e| RingExpr::Morita(Box::new(e)));
    let ops = MoritaOps {
        carrier: spec.carrier.clone(),
    };
    Ok(FiniteRing::from_ops(label, expr, Arc::new(ops)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::RingExpr;

    fn z(n: u64) -> RingExpr {
        RingExpr::Zn(n)
    }

    #[test]
    fn construction_orders() {
        assert_eq!(build(&RingExpr::Matrix(2, Box::new(z(2)))).unwrap().order(), 16);
        assert_eq!(
            build(&RingExpr::UpperTriangular(3, Box::new(z(2)))).unwrap().order(),
            64
        );
        assert_eq!(build(&RingExpr::Gf(4)).unwrap().order(), 4);
        assert_eq!(
            build(&RingExpr::Quaternion(Box::new(z(4)))).unwrap().order(),
            256
        );
    }

    #[test]
    fn quaternion_relations_over_z4() {
        let h = build(&RingExpr::Quaternion(Box::new(z(4)))).unwrap();
        let i = h.from_coordinates(&[0, 1, 0, 0]).unwrap();
        let j = h.from_coordinates(&[0, 0, 1, 0]).unwrap();
        let k = h.from_coordinates(&[0, 0, 0, 1]).unwrap();
        assert_eq!(h.mul(i, j), k);
        assert_eq!(h.mul(j, i), h.neg(k));
        assert_eq!(h.mul(j, k), i);
        assert_eq!(h.mul(k, i), j);
        let minus_one = h.neg(h.one());
        assert_eq!(h.mul(i, i), minus_one);
        assert_eq!(h.mul(j, j), minus_one);
        assert_eq!(h.mul(k, k), minus_one);
    }

    #[test]
    fn corner_of_z6_at_3() {
        let z6 = build(&z(6)).unwrap();
        let corner = corner_ring(&z6, ElementId(3)).unwrap();
        assert_eq!(corner.order(), 2);
        assert_eq!(corner.format(corner.one()), "3");
        assert_eq!(corner.mul(corner.one(), corner.one()), corner.one());
    }

    #[test]
    fn corner_of_product_projection() {
        let ring = build(&RingExpr::Product(vec![z(2), z(4)])).unwrap();
        let e = ring.from_coordinates(&[1, 0]).unwrap();
        let corner = corner_ring(&ring, e).unwrap();
        assert_eq!(corner.order(), 2);
        assert_eq!(corner.format(corner.one()), "(1, 0)");
    }

    #[test]
    fn corner_rejects_non_central_idempotent() {
        let ring = build(&RingExpr::Matrix(2, Box::new(z(2)))).unwrap();
        let e11 = ring.from_coordinates(&[1, 0, 0, 0]).unwrap();
        match corner_ring(&ring, e11) {
            Err(ConstructError::NotCentral { element, .. }) => assert_eq!(element, e11),
            other => panic!("expected NotCentral, got {other:?}"),
        }
    }

    #[test]
    fn corner_rejects_non_idempotent() {
        let z6 = build(&z(6)).unwrap();
        assert_eq!(
            corner_ring(&z6, ElementId(2)).err(),
            Some(ConstructError::NotIdempotent {
                element: ElementId(2)
            })
        );
    }

    #[test]
    fn trivial_morita_over_z2() {
        let z2 = build(&z(2)).unwrap();
        let ring = trivial_morita(&BimoduleSpec::diagonal(z2)).unwrap();
        assert_eq!(ring.order(), 16);
        assert_eq!(ring.one(), ring.from_coordinates(&[1, 0, 0, 1]).unwrap());
        // Pure-module elements square to zero: context products vanish.
        for m1 in 0..2 {
            for m2 in 0..2 {
                let x = ring.from_coordinates(&[0, m1, 0, 0]).unwrap();
                let y = ring.from_coordinates(&[0, m2, 0, 0]).unwrap();
                assert_eq!(ring.mul(x, y), ring.zero());
                let p = ring.from_coordinates(&[0, 0, m1, 0]).unwrap();
                let q = ring.from_coordinates(&[0, 0, m2, 0]).unwrap();
                assert_eq!(ring.mul(p, q), ring.zero());
            }
        }
    }

    #[test]
    fn singleton_product_behaves_like_its_factor() {
        let single = build(&RingExpr::Product(vec![z(6)])).unwrap();
        let z6 = build(&z(6)).unwrap();
        assert_eq!(single.order(), z6.order());
        for a in z6.elements() {
            assert_eq!(single.neg(a), z6.neg(a));
            for b in z6.elements() {
                assert_eq!(single.add(a, b), z6.add(a, b));
                assert_eq!(single.mul(a, b), z6.mul(a, b));
            }
        }
    }

    #[test]
    fn trivial_extension_module_part_squares_to_zero() {
        let ring = build(&RingExpr::TrivialExtension(Box::new(z(4)))).unwrap();
        for m in 0..4 {
            let x = ring.from_coordinates(&[0, m]).unwrap();
            assert_eq!(ring.mul(x, x), ring.zero());
        }
    }

    #[test]
    fn zero_ring_is_permitted() {
        let one = build(&z(1)).unwrap();
        assert_eq!(one.order(), 1);
        assert_eq!(one.zero(), one.one());
        assert_eq!(one.mul(one.zero(), one.zero()), one.zero());
    }

    #[test]
    fn element_formatting() {
        let z4 = build(&z(4)).unwrap();
        assert_eq!(z4.format(ElementId(3)), "3");
        let m = build(&RingExpr::Matrix(2, Box::new(z(2)))).unwrap();
        let e12 = m.from_coordinates(&[0, 1, 0, 0]).unwrap();
        assert_eq!(m.format(e12), "[[0,1],[0,0]]");
        let prod = build(&RingExpr::Product(vec![z(2), z(4)])).unwrap();
        let x = prod.from_coordinates(&[1, 2]).unwrap();
        assert_eq!(prod.format(x), "(1, 2)");
        let pq = build(&RingExpr::PolyQuot(Box::new(z(2)), 3)).unwrap();
        let y = pq.from_coordinates(&[1, 0, 1]).unwrap();
        assert_eq!(pq.format(y), "[1,0,1]");
        let h = build(&RingExpr::Quaternion(Box::new(z(4)))).unwrap();
        let q = h.from_coordinates(&[1, 2, 0, 3]).unwrap();
        assert_eq!(h.format(q), "1+2i+0j+3k");
    }

    #[test]
    fn gf4_has_the_expected_modulus_and_tables() {
        let gf4 = build(&RingExpr::Gf(4)).unwrap();
        assert_eq!(gf4.order(), 4);
        // x * x = x + 1 under x^2 + x + 1.
        let x = ElementId(2);
        assert_eq!(gf4.mul(x, x), ElementId(3));
        // x * (x + 1) = x^2 + x = 1.
        assert_eq!(gf4.mul(x, ElementId(3)), gf4.one());
    }
}
