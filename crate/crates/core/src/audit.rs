//! Ring axiom audit: exhaustive or seeded-random verification that a
//! constructed table really is a unital associative ring.

use crate::ring::{ElementId, FiniteRing};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default ceiling on order^3 for a full audit; larger rings must use
/// sampled mode.
pub const DEFAULT_FULL_AUDIT_TRIPLES: u64 = 1 << 24;

/// Default seed and trial count for sampled audits.
pub const DEFAULT_AUDIT_SEED: u64 = 0;
pub const DEFAULT_AUDIT_TRIALS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    /// Exhaustive over all pairs and triples, bounded by `max_triples`.
    Full { max_triples: u64 },
    /// Pseudo-random triples from a fixed seed.
    Sampled { seed: u64, trials: u64 },
}

impl AuditMode {
    pub fn full() -> Self {
        AuditMode::Full {
            max_triples: DEFAULT_FULL_AUDIT_TRIPLES,
        }
    }

    pub fn sampled(seed: u64) -> Self {
        AuditMode::Sampled {
            seed,
            trials: DEFAULT_AUDIT_TRIALS,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("full audit needs {needed} triples, over the {budget} budget; use sampled mode")]
    BudgetExceeded { needed: u128, budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<ElementId>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub ring_label: String,
    pub mode: AuditMode,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the abelian-group axioms of addition, associativity of
/// multiplication, two-sided distributivity, and the two-sided unity,
/// reporting every violation found with a witness tuple.
pub fn audit_axioms(ring: &FiniteRing, mode: AuditMode) -> Result<AxiomReport, AuditError> {
    let mut violations = Vec::new();
    match mode {
        AuditMode::Full { max_triples } => {
            let n = ring.order() as u128;
            let needed = n * n * n;
            if needed > max_triples as u128 {
                return Err(AuditError::BudgetExceeded {
                    needed,
                    budget: max_triples,
                });
            }
            for a in ring.elements() {
                check_unary(ring, a, &mut violations);
                for b in ring.elements() {
                    check_pair(ring, a, b, &mut violations);
                    for c in ring.elements() {
                        check_triple(ring, a, b, c, &mut violations);
                    }
                }
            }
        }
        AuditMode::Sampled { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = ring.order() as u64;
            let mut pick = || ElementId((rng.next_u64() % n) as u32);
            for _ in 0..trials {
                let (a, b, c) = (pick(), pick(), pick());
                check_unary(ring, a, &mut violations);
                check_pair(ring, a, b, &mut violations);
                check_triple(ring, a, b, c, &mut violations);
            }
        }
    }
    Ok(AxiomReport {
        ring_label: ring.label().to_string(),
        mode,
        violations,
    })
}

fn check_unary(ring: &FiniteRing, a: ElementId, out: &mut Vec<Violation>) {
    let zero = ring.zero();
    let one = ring.one();
    if ring.add(a, ring.neg(a)) != zero {
        out.push(Violation {
            axiom: "additive inverse",
            witness: vec![a],
        });
    }
    if ring.add(a, zero) != a || ring.add(zero, a) != a {
        out.push(Violation {
            axiom: "additive identity",
            witness: vec![a],
        });
    }
    if ring.mul(a, one) != a || ring.mul(one, a) != a {
        out.push(Violation {
            axiom: "unity",
            witness: vec![a],
        });
    }
}

fn check_pair(ring: &FiniteRing, a: ElementId, b: ElementId, out: &mut Vec<Violation>) {
    if ring.add(a, b) != ring.add(b, a) {
        out.push(Violation {
            axiom: "additive commutativity",
            witness: vec![a, b],
        });
    }
}

fn check_triple(ring: &FiniteRing, a: ElementId, b: ElementId, c: ElementId, out: &mut Vec<Violation>) {
    if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) {
        out.push(Violation {
            axiom: "additive associativity",
            witness: vec![a, b, c],
        });
    }
    if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
        out.push(Violation {
            axiom: "multiplicative associativity",
            witness: vec![a, b, c],
        });
    }
    if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)) {
        out.push(Violation {
            axiom: "left distributivity",
            witness: vec![a, b, c],
        });
    }
    if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)) {
        out.push(Violation {
            axiom: "right distributivity",
            witness: vec![a, b, c],
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::expr::RingExpr;

    #[test]
    fn honest_rings_pass_full_audit() {
        for expr in [
            RingExpr::Zn(6),
            RingExpr::Gf(9),
            RingExpr::Matrix(2, Box::new(RingExpr::Zn(2))),
            RingExpr::Quaternion(Box::new(RingExpr::Zn(2))),
            RingExpr::Morita(Box::new(RingExpr::Zn(2))),
            RingExpr::TrivialExtension(Box::new(RingExpr::Zn(4))),
        ] {
            let ring = build(&expr).unwrap();
            let report = audit_axioms(&ring, AuditMode::full()).unwrap();
            assert!(report.passed(), "{expr} failed: {:?}", report.violations);
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let bad = z6.corrupt_mul_entry(ElementId(2), ElementId(3), ElementId(1));
        let report = audit_axioms(&bad, AuditMode::full()).unwrap();
        assert!(!report.passed());
        let axioms: Vec<&str> = report.violations.iter().map(|v| v.axiom).collect();
        assert!(
            axioms
                .iter()
                .any(|a| a.contains("associativity") || a.contains("distributivity")
                    || a.contains("unity")),
            "unexpected axioms: {axioms:?}"
        );
    }

    #[test]
    fn corrupted_unity_entry_names_unity() {
        let z6 = build(&RingExpr::Zn(6)).unwrap();
        let bad = z6.corrupt_mul_entry(ElementId(1), ElementId(1), ElementId(3));
        let report = audit_axioms(&bad, AuditMode::full()).unwrap();
        assert!(report.violations.iter().any(|v| v.axiom == "unity"));
    }

    #[test]
    fn budget_refusal_points_to_sampled_mode() {
        let big = build(&RingExpr::Matrix(3, Box::new(RingExpr::Zn(2)))).unwrap();
        let err = audit_axioms(&big, AuditMode::Full { max_triples: 1 << 20 }).unwrap_err();
        assert!(matches!(err, AuditError::BudgetExceeded { .. }));
        let report = audit_axioms(&big, AuditMode::sampled(DEFAULT_AUDIT_SEED)).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn sampled_audit_is_deterministic() {
        let ring = build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(3)))).unwrap();
        let bad = ring.corrupt_mul_entry(ElementId(5), ElementId(7), ElementId(0));
        let a = audit_axioms(&bad, AuditMode::sampled(7)).unwrap();
        let b = audit_axioms(&bad, AuditMode::sampled(7)).unwrap();
        assert_eq!(a.violations, b.violations);
    }
}
