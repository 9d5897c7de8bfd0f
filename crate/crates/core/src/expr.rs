//! Construction syntax trees for finite rings.
//!
//! A `RingExpr` describes how a ring is assembled from integers-mod-n,
//! Galois fields, matrix and upper-triangular rings, direct products,
//! trivial extensions, truncated polynomial rings, quaternions, and
//! trivial Morita contexts. The order of the resulting ring is computable
//! from the tree alone.

use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    /// Integers modulo n, n >= 1.
    Zn(u64),
    /// Galois field of order q = p^k, p prime, k >= 1.
    Gf(u64),
    /// Full n x n matrices over the base ring, n >= 1.
    Matrix(u32, Box<RingExpr>),
    /// Upper triangular n x n matrices over the base ring, n >= 1.
    UpperTriangular(u32, Box<RingExpr>),
    /// Direct product of the listed rings, componentwise operations.
    Product(Vec<RingExpr>),
    /// Trivial extension of R by R as the regular bimodule: pairs (r, m)
    /// with (r, m)(r', m') = (rr', rm' + mr').
    TrivialExtension(Box<RingExpr>),
    /// R[x] truncated at degree n: polynomials mod x^n, n >= 1.
    PolyQuot(Box<RingExpr>, u32),
    /// Quaternions over the base ring on basis 1, i, j, k with
    /// i^2 = j^2 = k^2 = -1 and ij = k = -ji.
    Quaternion(Box<RingExpr>),
    /// Trivial Morita context with all four slots tied to one ring W and
    /// zero context products.
    Morita(Box<RingExpr>),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("modulus must be >= 1, got Z({0})")]
    ZeroModulus(u64),
    #[error("GF argument must be a prime power, got GF({0})")]
    NotPrimePower(u64),
    #[error("matrix arity must be >= 1")]
    MatrixArity,
    #[error("triangular arity must be >= 1")]
    TriangularArity,
    #[error("truncation degree must be >= 1")]
    PolyQuotDegree,
    #[error("direct product needs at least one factor")]
    EmptyProduct,
    #[error("ring order {order} exceeds the ceiling {ceiling}")]
    OrderCeiling { order: u128, ceiling: u64 },
}

/// Default ceiling on the order of any constructed ring.
pub const DEFAULT_ORDER_CEILING: u64 = 1 << 20;

impl RingExpr {
    /// Validates parameters and returns the order of the ring this
    /// expression builds, without building it.
    pub fn order(&self) -> Result<u128, ExprError> {
        match self {
            RingExpr::Zn(n) => {
                if *n == 0 {
                    Err(ExprError::ZeroModulus(*n))
                } else {
                    Ok(*n as u128)
                }
            }
            RingExpr::Gf(q) => {
                factor_prime_power(*q)
                    .ok_or(ExprError::NotPrimePower(*q))
                    .map(|_| *q as u128)
            }
            RingExpr::Matrix(n, base) => {
                if *n == 0 {
                    return Err(ExprError::MatrixArity);
                }
                checked_pow(base.order()?, (*n as u32) * (*n as u32))
            }
            RingExpr::UpperTriangular(n, base) => {
                if *n == 0 {
                    return Err(ExprError::TriangularArity);
                }
                checked_pow(base.order()?, n * (n + 1) / 2)
            }
            RingExpr::Product(factors) => {
                if factors.is_empty() {
                    return Err(ExprError::EmptyProduct);
                }
                let mut order: u128 = 1;
                for f in factors {
                    order = order
                        .checked_mul(f.order()?)
                        .ok_or(ExprError::OrderCeiling {
                            order: u128::MAX,
                            ceiling: DEFAULT_ORDER_CEILING,
                        })?;
                }
                Ok(order)
            }
            RingExpr::TrivialExtension(base) => checked_pow(base.order()?, 2),
            RingExpr::PolyQuot(base, n) => {
                if *n == 0 {
                    return Err(ExprError::PolyQuotDegree);
                }
                checked_pow(base.order()?, *n)
            }
            RingExpr::Quaternion(base) | RingExpr::Morita(base) => {
                checked_pow(base.order()?, 4)
            }
        }
    }

    /// Order check against an explicit ceiling, for use before building.
    pub fn order_within(&self, ceiling: u64) -> Result<u64, ExprError> {
        let order = self.order()?;
        if order > ceiling as u128 {
            Err(ExprError::OrderCeiling { order, ceiling })
        } else {
            Ok(order as u64)
        }
    }
}

fn checked_pow(base: u128, exp: u32) -> Result<u128, ExprError> {
    base.checked_pow(exp).ok_or(ExprError::OrderCeiling {
        order: u128::MAX,
        ceiling: DEFAULT_ORDER_CEILING,
    })
}

/// Factors q as p^k with p prime, k >= 1.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Z({n})"),
            RingExpr::Gf(q) => write!(f, "GF({q})"),
            RingExpr::Matrix(n, base) => write!(f, "M({n},{base})"),
            RingExpr::UpperTriangular(n, base) => write!(f, "T({n},{base})"),
            RingExpr::Product(factors) => {
                let mut first = true;
                for part in factors {
                    if !first {
                        write!(f, " x ")?;
                    }
                    first = false;
                    // Nested products were parenthesized in the source.
                    if matches!(part, RingExpr::Product(_)) {
                        write!(f, "({part})")?;
                    } else {
                        write!(f, "{part}")?;
                    }
                }
                Ok(())
            }
            RingExpr::TrivialExtension(base) => write!(f, "TrivExt({base})"),
            RingExpr::PolyQuot(base, n) => write!(f, "PolyQuot({base},{n})"),
            RingExpr::Quaternion(base) => write!(f, "H({base})"),
            RingExpr::Morita(base) => write!(f, "Morita({base})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formulas() {
        assert_eq!(RingExpr::Matrix(2, Box::new(RingExpr::Zn(2))).order(), Ok(16));
        assert_eq!(
            RingExpr::UpperTriangular(3, Box::new(RingExpr::Zn(2))).order(),
            Ok(64)
        );
        assert_eq!(RingExpr::Gf(4).order(), Ok(4));
        assert_eq!(
            RingExpr::Product(vec![RingExpr::Zn(2), RingExpr::Zn(4)]).order(),
            Ok(8)
        );
        assert_eq!(
            RingExpr::TrivialExtension(Box::new(RingExpr::Zn(4))).order(),
            Ok(16)
        );
        assert_eq!(
            RingExpr::PolyQuot(Box::new(RingExpr::Gf(4)), 3).order(),
            Ok(64)
        );
        assert_eq!(RingExpr::Quaternion(Box::new(RingExpr::Zn(4))).order(), Ok(256));
        assert_eq!(RingExpr::Morita(Box::new(RingExpr::Zn(2))).order(), Ok(16));
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(RingExpr::Zn(0).order(), Err(ExprError::ZeroModulus(0)));
        assert_eq!(RingExpr::Gf(6).order(), Err(ExprError::NotPrimePower(6)));
        assert_eq!(
            RingExpr::Matrix(0, Box::new(RingExpr::Zn(2))).order(),
            Err(ExprError::MatrixArity)
        );
        assert!(RingExpr::Zn(8)
            .order_within(4)
            .is_err());
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(2), Some((2, 1)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(32), Some((2, 5)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
        assert_eq!(factor_prime_power(97), Some((97, 1)));
    }
}
