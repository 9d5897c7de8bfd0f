//! The finite-ring model: element handles, the ring operation trait, and
//! the shared immutable ring value.
//!
//! Elements of a ring of order n are addressed by canonical indices
//! 0..n-1. Every construction fixes a deterministic bijection between
//! elements and indices; composite constructions use positional encoding
//! with the first coordinate least significant, so the coordinate tuple
//! (c0, c1, ...) maps to c0 + c1*m + c2*m^2 + ... over the component
//! radices. All set outputs and witness tie-breaks compare these indices.

use crate::expr::RingExpr;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Canonical handle for an element of one ring. Only meaningful together
/// with the ring that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("element index {index} out of range for {ring} of order {order}")]
    IndexOutOfRange {
        ring: String,
        order: usize,
        index: u32,
    },
    #[error("materialization refused: order {order} exceeds threshold {threshold}")]
    MaterializeThreshold { order: usize, threshold: usize },
}

/// Structural arithmetic of one ring on raw indices. Implementations are
/// immutable and shareable; every method must be total on 0..order.
pub trait RingOps: Send + Sync {
    fn order(&self) -> usize;
    fn zero(&self) -> usize;
    fn one(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn format(&self, a: usize) -> String;

    /// Per-coordinate radices of the positional encoding, least
    /// significant first, when the ring is a positional composite.
    fn radices(&self) -> Option<Vec<usize>> {
        None
    }
}

/// Default threshold for dense table materialization: two order^2 tables
/// of 2-byte indices stay within 64 MiB at order 4096.
pub const DEFAULT_MATERIALIZE_THRESHOLD: usize = 4096;

/// Hard cap above which table entries no longer fit the 2-byte encoding.
const MATERIALIZE_CAP: usize = 1 << 16;

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

struct TableOps {
    order: usize,
    zero: usize,
    one: usize,
    tables: Tables,
    inner: Arc<dyn RingOps>,
}

impl RingOps for TableOps {
    fn order(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.tables.add[a * self.order + b] as usize
    }
    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.tables.neg[a] as usize
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.tables.mul[a * self.order + b] as usize
    }
    fn format(&self, a: usize) -> String {
        self.inner.format(a)
    }
    fn radices(&self) -> Option<Vec<usize>> {
        self.inner.radices()
    }
}

/// Testing hook: one remapped multiplication entry over an otherwise
/// intact ring, used to exercise the axiom audit and the harness.
struct CorruptOps {
    inner: Arc<dyn RingOps>,
    a: usize,
    b: usize,
    result: usize,
}

impl RingOps for CorruptOps {
    fn order(&self) -> usize {
        self.inner.order()
    }
    fn zero(&self) -> usize {
        self.inner.zero()
    }
    fn one(&self) -> usize {
        self.inner.one()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.inner.add(a, b)
    }
    fn neg(&self, a: usize) -> usize {
        self.inner.neg(a)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        if a == self.a && b == self.b {
            self.result
        } else {
            self.inner.mul(a, b)
        }
    }
    fn format(&self, a: usize) -> String {
        self.inner.format(a)
    }
    fn radices(&self) -> Option<Vec<usize>> {
        self.inner.radices()
    }
}

struct RingInner {
    label: String,
    expr: Option<RingExpr>,
    order: usize,
    zero: usize,
    one: usize,
    ops: Arc<dyn RingOps>,
    table_backed: bool,
}

/// An immutable, enumerable unital ring of known finite order. Cloning is
/// cheap; values are safely shareable across threads.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.label(), self.order())
    }
}

impl FiniteRing {
    pub fn from_ops(label: String, expr: Option<RingExpr>, ops: Arc<dyn RingOps>) -> FiniteRing {
        let order = ops.order();
        assert!(order >= 1, "ring must have at least one element");
        let zero = ops.zero();
        let one = ops.one();
        assert!(order == 1 || zero != one, "zero and one must differ when order >= 2");
        FiniteRing {
            inner: Arc::new(RingInner {
                label,
                expr,
                order,
                zero,
                one,
                ops,
                table_backed: false,
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn expr(&self) -> Option<&RingExpr> {
        self.inner.expr.as_ref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        ElementId(self.inner.zero as u32)
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        ElementId(self.inner.one as u32)
    }

    /// Two handles denote the same ring value (not merely isomorphic rings).
    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order() as u32).map(ElementId)
    }

    pub fn contains(&self, x: ElementId) -> bool {
        x.index() < self.order()
    }

    pub fn check(&self, x: ElementId) -> Result<(), RingError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(RingError::IndexOutOfRange {
                ring: self.label().to_string(),
                order: self.order(),
                index: x.0,
            })
        }
    }

    #[inline]
    fn assert_in(&self, x: ElementId) {
        debug_assert!(
            self.contains(x),
            "index {} out of range for {} of order {}",
            x.0,
            self.label(),
            self.order()
        );
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.assert_in(a);
        self.assert_in(b);
        ElementId(self.inner.ops.add(a.index(), b.index()) as u32)
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.assert_in(a);
        ElementId(self.inner.ops.neg(a.index()) as u32)
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.assert_in(a);
        self.assert_in(b);
        ElementId(self.inner.ops.mul(a.index(), b.index()) as u32)
    }

    /// x^k by square-and-multiply, with x^0 = 1.
    pub fn pow(&self, x: ElementId, k: u64) -> ElementId {
        self.assert_in(x);
        let mut acc = self.one();
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn try_add(&self, a: ElementId, b: ElementId) -> Result<ElementId, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: ElementId, b: ElementId) -> Result<ElementId, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: ElementId, b: ElementId) -> Result<ElementId, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_neg(&self, a: ElementId) -> Result<ElementId, RingError> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn try_pow(&self, x: ElementId, k: u64) -> Result<ElementId, RingError> {
        self.check(x)?;
        Ok(self.pow(x, k))
    }

    /// Structural rendering of an element per its construction.
    pub fn format(&self, x: ElementId) -> String {
        self.assert_in(x);
        self.inner.ops.format(x.index())
    }

    pub fn try_format(&self, x: ElementId) -> Result<String, RingError> {
        self.check(x)?;
        Ok(self.format(x))
    }

    /// Coordinate tuple of x, least significant first, for positional
    /// composites; None for rings without a positional encoding.
    pub fn coordinates(&self, x: ElementId) -> Option<Vec<u32>> {
        self.assert_in(x);
        let radices = self.inner.ops.radices()?;
        let mut i = x.index();
        let mut out = Vec::with_capacity(radices.len());
        for r in radices {
            out.push((i % r) as u32);
            i /= r;
        }
        Some(out)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(&self, digits: &[u32]) -> Option<ElementId> {
        let radices = self.inner.ops.radices()?;
        if digits.len() != radices.len() {
            return None;
        }
        let mut i: usize = 0;
        for (d, r) in digits.iter().zip(&radices).rev() {
            if *d as usize >= *r {
                return None;
            }
            i = i * r + *d as usize;
        }
        Some(ElementId(i as u32))
    }

    pub fn is_table_backed(&self) -> bool {
        self.inner.table_backed
    }

    /// Returns a behaviorally identical ring whose add/mul/neg are dense
    /// lookup tables. Element indices are unchanged. Refused above the
    /// threshold.
    pub fn materialize_tables(&self, threshold: usize) -> Result<FiniteRing, RingError> {
        let n = self.order();
        if n > threshold || n > MATERIALIZE_CAP {
            return Err(RingError::MaterializeThreshold {
                order: n,
                threshold: threshold.min(MATERIALIZE_CAP),
            });
        }
        let ops = &self.inner.ops;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        let mut neg = Vec::with_capacity(n);
        for a in 0..n {
            neg.push(ops.neg(a) as u16);
            for b in 0..n {
                add.push(ops.add(a, b) as u16);
                mul.push(ops.mul(a, b) as u16);
            }
        }
        let table_ops = TableOps {
            order: n,
            zero: self.inner.zero,
            one: self.inner.one,
            tables: Tables { add, mul, neg },
            inner: Arc::clone(&self.inner.ops),
        };
        Ok(FiniteRing {
            inner: Arc::new(RingInner {
                label: self.inner.label.clone(),
                expr: self.inner.expr.clone(),
                order: n,
                zero: self.inner.zero,
                one: self.inner.one,
                ops: Arc::new(table_ops),
                table_backed: true,
            }),
        })
    }

    /// Materializes within the threshold, otherwise returns self unchanged.
    pub fn materialized_or_self(&self, threshold: usize) -> FiniteRing {
        if self.inner.table_backed || self.order() > threshold {
            self.clone()
        } else {
            self.materialize_tables(threshold)
                .expect("order checked against threshold")
        }
    }

    /// Testing hook: same ring with mul(a, b) remapped to `result`. Used to
    /// validate that the axiom audit and the statement harness detect
    /// arithmetic corruption.
    pub fn corrupt_mul_entry(&self, a: ElementId, b: ElementId, result: ElementId) -> FiniteRing {
        self.assert_in(a);
        self.assert_in(b);
        self.assert_in(result);
        let ops = CorruptOps {
            inner: Arc::clone(&self.inner.ops),
            a: a.index(),
            b: b.index(),
            result: result.index(),
        };
        FiniteRing {
            inner: Arc::new(RingInner {
                label: format!("{} [corrupted]", self.inner.label),
                expr: self.inner.expr.clone(),
                order: self.inner.order,
                zero: self.inner.zero,
                one: self.inner.one,
                ops: Arc::new(ops),
                table_backed: false,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::construct::build;
    use crate::expr::RingExpr;
    use crate::ring::{ElementId, RingError, DEFAULT_MATERIALIZE_THRESHOLD};

    #[test]
    fn zn_arithmetic() {
        let z4 = build(&RingExpr::Zn(4)).unwrap();
        assert_eq!(z4.mul(ElementId(2), ElementId(2)), z4.zero());
        assert_eq!(z4.pow(ElementId(3), 2), z4.one());
        assert_eq!(z4.sub(ElementId(1), ElementId(3)), ElementId(2));
        assert_eq!(z4.pow(ElementId(2), 0), z4.one());
    }

    #[test]
    fn out_of_range_is_a_domain_error() {
        let z4 = build(&RingExpr::Zn(4)).unwrap();
        let err = z4.try_mul(ElementId(4), ElementId(0)).unwrap_err();
        assert_eq!(
            err,
            RingError::IndexOutOfRange {
                ring: "Z(4)".into(),
                order: 4,
                index: 4
            }
        );
    }

    #[test]
    fn matrix_unit_product_vanishes() {
        // E11 * E21 = 0 in M(2, Z(2)); indices via coordinates.
        let ring = build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(2)))).unwrap();
        let e11 = ring.from_coordinates(&[1, 0, 0, 0]).unwrap();
        let e21 = ring.from_coordinates(&[0, 0, 1, 0]).unwrap();
        assert_eq!(ring.mul(e11, e21), ring.zero());
    }

    #[test]
    fn materialization_preserves_arithmetic() {
        let z8 = build(&RingExpr::Zn(8)).unwrap();
        let table = z8.materialize_tables(DEFAULT_MATERIALIZE_THRESHOLD).unwrap();
        for a in z8.elements() {
            assert_eq!(z8.neg(a), table.neg(a));
            for b in z8.elements() {
                assert_eq!(z8.add(a, b), table.add(a, b));
                assert_eq!(z8.mul(a, b), table.mul(a, b));
            }
        }
    }

    #[test]
    fn materialization_threshold_refusal() {
        let big = build(&RingExpr::UpperTriangular(
            2,
            Box::new(RingExpr::Matrix(2, Box::new(RingExpr::Zn(3)))),
        ))
        .unwrap();
        assert_eq!(big.order(), 531441);
        let err = big.materialize_tables(DEFAULT_MATERIALIZE_THRESHOLD).unwrap_err();
        assert_eq!(
            err,
            RingError::MaterializeThreshold {
                order: 531441,
                threshold: 4096
            }
        );
    }

    #[test]
    fn pow_is_additive_in_the_exponent() {
        for expr in [
            RingExpr::Zn(6),
            RingExpr::Matrix(2, Box::new(RingExpr::Zn(2))),
            RingExpr::Gf(9),
        ] {
            let ring = build(&expr).unwrap();
            for x in ring.elements() {
                for a in 0..=8u64 {
                    for b in 0..=8u64 {
                        assert_eq!(
                            ring.pow(x, a + b),
                            ring.mul(ring.pow(x, a), ring.pow(x, b))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let ring = build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(3)))).unwrap();
        for x in ring.elements() {
            let digits = ring.coordinates(x).unwrap();
            assert_eq!(ring.from_coordinates(&digits), Some(x));
        }
        assert_eq!(ring.from_coordinates(&[3, 0, 0, 0]), None);
        assert_eq!(ring.from_coordinates(&[0, 0]), None);
    }
}
