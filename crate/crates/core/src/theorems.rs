//! A catalogue of finitely checkable structural statements about
//! zero-insertive elements and clean-style decompositions, each compiled
//! to a hypothesis filter plus a conclusion check over a ring corpus.
//!
//! Every statement reports one outcome per instance: the hypothesis was
//! not met, the conclusion verified, or a failure with a re-validating
//! certificate. Conditional statements are never reported as passing
//! vacuously: an instance set with no met hypothesis aggregates to
//! `Vacuous`. A `Refuted` aggregate on a correctly built corpus is a
//! build-stopping event, since it contradicts either a published result
//! or the arithmetic itself.

use crate::audit::{audit_axioms, AuditError, AuditMode};
use crate::cert::{Certificate, FailureKind, FailureWitness};
use crate::classify::{self, ClassifyError, ElementSet, Gates};
use crate::construct::{
    build_with_ceiling, corner_ring, quotient_by_nil_ideal, trivial_morita, BimoduleSpec,
    ConstructError,
};
use crate::expr::RingExpr;
use crate::properties::{
    check_property, is_nil_clean_element, weakly_clean_witness, zinc_certificate_check,
    CheckMode, Property, PropertyError,
};
use crate::ring::{ElementId, FiniteRing};
use std::collections::BTreeMap;
use std::rc::Rc;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StatementId {
    S0,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    S10b,
    S11,
    S12,
    S13,
    S14,
    S15,
    S16,
}

impl StatementId {
    pub const ALL: [StatementId; 18] = [
        StatementId::S0,
        StatementId::S1,
        StatementId::S2,
        StatementId::S3,
        StatementId::S4,
        StatementId::S5,
        StatementId::S6,
        StatementId::S7,
        StatementId::S8,
        StatementId::S9,
        StatementId::S10,
        StatementId::S10b,
        StatementId::S11,
        StatementId::S12,
        StatementId::S13,
        StatementId::S14,
        StatementId::S15,
        StatementId::S16,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StatementId::S0 => "S0",
            StatementId::S1 => "S1",
            StatementId::S2 => "S2",
            StatementId::S3 => "S3",
            StatementId::S4 => "S4",
            StatementId::S5 => "S5",
            StatementId::S6 => "S6",
            StatementId::S7 => "S7",
            StatementId::S8 => "S8",
            StatementId::S9 => "S9",
            StatementId::S10 => "S10",
            StatementId::S10b => "S10b",
            StatementId::S11 => "S11",
            StatementId::S12 => "S12",
            StatementId::S13 => "S13",
            StatementId::S14 => "S14",
            StatementId::S15 => "S15",
            StatementId::S16 => "S16",
        }
    }

    /// One-line statement of what is being verified.
    pub fn summary(&self) -> &'static str {
        match self {
            StatementId::S0 => "every commutative ring is zinc",
            StatementId::S1 => {
                "semicommutative is equivalent to: every zero-insertive element is idempotent"
            }
            StatementId::S2 => {
                "weakly semicommutative is equivalent to: every zero-insertive element is nilpotent"
            }
            StatementId::S3 => {
                "in a zinc ring with only trivial idempotents, zero-insertive elements are nilpotent"
            }
            StatementId::S4 => {
                "over a base with only trivial idempotents, the triangular ring is zinc \
                 exactly when its zero-insertive elements are nilpotent"
            }
            StatementId::S5 => {
                "in a j-clean ring with nil radical, zero-insertive elements are nilpotent"
            }
            StatementId::S6 => {
                "a ring whose quotient by a nil ideal is zinc is itself zinc"
            }
            StatementId::S7 => {
                "a finite direct product is zinc exactly when every factor is zinc"
            }
            StatementId::S8 => {
                "triangular rings, trivial extensions, and truncated polynomial rings \
                 are zinc exactly when the base ring is zinc"
            }
            StatementId::S9 => {
                "in a zinc ring, every zero-insertive element is an idempotent plus a unit"
            }
            StatementId::S10 => {
                "if the 2x2 matrix ring is zinc, the base ring is weakly clean"
            }
            StatementId::S10b => {
                "over a domain with zinc 2x2 matrices, every w admits a unit v with \
                 w - v = r w^2 or w - v = 1"
            }
            StatementId::S11 => {
                "matrix rings over a division ring are zinc exactly when the division \
                 ring has two elements"
            }
            StatementId::S12 => {
                "a trivial Morita context over zinc diagonal rings is zinc"
            }
            StatementId::S13 => {
                "zinc passes to and assembles from corner rings at central idempotents"
            }
            StatementId::S14 => {
                "in a zinc ring, ab = 0 forces a J(R) b into the nilpotents"
            }
            StatementId::S15 => {
                "2x2 matrices over the two-element field are zinc yet not weakly semicommutative"
            }
            StatementId::S16 => "2x2 matrices over the three-element field are not zinc",
        }
    }
}

impl std::fmt::Display for StatementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatementId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_uppercase();
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.name().to_ascii_uppercase() == norm)
            .ok_or_else(|| TheoremError::UnknownStatement(s.to_string()))
    }
}

#[derive(Error, Debug)]
pub enum TheoremError {
    #[error("unknown statement id {0:?}")]
    UnknownStatement(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

#[derive(Clone, Debug)]
pub enum Outcome {
    HypothesisNotMet,
    Pass,
    Fail(Certificate),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn code(&self) -> &'static str {
        match self {
            Outcome::HypothesisNotMet => "hypothesis_not_met",
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingOutcome {
    pub subject: String,
    pub outcome: Outcome,
    pub note: Option<String>,
}

impl RingOutcome {
    fn new(subject: impl Into<String>, outcome: Outcome) -> Self {
        RingOutcome {
            subject: subject.into(),
            outcome,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    AllPass,
    Vacuous,
    Refuted,
}

impl Aggregate {
    pub fn code(&self) -> &'static str {
        match self {
            Aggregate::AllPass => "all-pass",
            Aggregate::Vacuous => "vacuous",
            Aggregate::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub id: StatementId,
    pub summary: &'static str,
    pub per_ring: Vec<RingOutcome>,
    pub aggregate: Aggregate,
    pub elapsed: Duration,
}

fn aggregate(rows: &[RingOutcome]) -> Aggregate {
    if rows.iter().any(|r| r.outcome.is_fail()) {
        Aggregate::Refuted
    } else if rows.iter().any(|r| matches!(r.outcome, Outcome::Pass)) {
        Aggregate::AllPass
    } else {
        Aggregate::Vacuous
    }
}

#[derive(Clone, Debug)]
pub enum StatementResult {
    Completed(TheoremVerdict),
    Skipped { id: StatementId, reason: String },
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub results: Vec<StatementResult>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn refuted(&self) -> Vec<StatementId> {
        self.results
            .iter()
            .filter_map(|r| match r {
                StatementResult::Completed(v) if v.aggregate == Aggregate::Refuted => Some(v.id),
                _ => None,
            })
            .collect()
    }

    pub fn vacuous(&self) -> Vec<StatementId> {
        self.results
            .iter()
            .filter_map(|r| match r {
                StatementResult::Completed(v) if v.aggregate == Aggregate::Vacuous => Some(v.id),
                _ => None,
            })
            .collect()
    }
}

/// The built-in corpus: the rings the statement catalogue is exercised
/// against by default.
pub fn default_corpus() -> Vec<RingExpr> {
    let z = RingExpr::Zn;
    let boxed = |e: RingExpr| Box::new(e);
    vec![
        z(2),
        z(3),
        z(4),
        z(6),
        z(8),
        RingExpr::Gf(4),
        RingExpr::Gf(9),
        RingExpr::Product(vec![z(2), z(4)]),
        RingExpr::Matrix(2, boxed(z(2))),
        RingExpr::Matrix(2, boxed(z(3))),
        RingExpr::Matrix(2, boxed(RingExpr::Gf(4))),
        RingExpr::Matrix(2, boxed(z(4))),
        RingExpr::Matrix(3, boxed(z(2))),
        RingExpr::UpperTriangular(2, boxed(z(2))),
        RingExpr::UpperTriangular(3, boxed(z(2))),
        RingExpr::UpperTriangular(2, boxed(z(4))),
        RingExpr::TrivialExtension(boxed(z(4))),
        RingExpr::PolyQuot(boxed(z(2)), 3),
        RingExpr::Quaternion(boxed(z(2))),
        RingExpr::Quaternion(boxed(z(4))),
        RingExpr::Morita(boxed(z(2))),
    ]
}

/// One fully classified ring: the six element sets every statement
/// draws on.
struct AnalyzedRing {
    ring: FiniteRing,
    idempotents: ElementSet,
    nilpotents: ElementSet,
    units: ElementSet,
    center: ElementSet,
    radical: ElementSet,
    zero_insertive: ElementSet,
}

impl AnalyzedRing {
    fn compute(ring: FiniteRing, gates: &Gates) -> Result<AnalyzedRing, TheoremError> {
        let idempotents = classify::idempotents(&ring, gates)?;
        let nilpotents = classify::nilpotents(&ring, gates)?;
        let units = classify::units(&ring, gates)?;
        let center = classify::center(&ring, gates)?;
        let radical = classify::jacobson_radical_with_units(&ring, gates, &units)?;
        let zero_insertive = classify::zero_insertive(&ring, gates)?;
        Ok(AnalyzedRing {
            ring,
            idempotents,
            nilpotents,
            units,
            center,
            radical,
            zero_insertive,
        })
    }

    fn zinc(&self) -> (bool, Option<Certificate>) {
        for x in self.zero_insertive.members() {
            if !is_nil_clean_element(&self.ring, x, &self.idempotents, &self.nilpotents) {
                let w = self
                    .zero_insertive
                    .zi_witness(x)
                    .expect("member has a stored witness");
                let mut failure = FailureWitness::new(
                    FailureKind::ZiMemberNotNilClean,
                    vec![x, w.a, w.r, w.b],
                );
                failure.idempotents_scanned = Some(self.idempotents.size() as u64);
                return (false, Some(Certificate::Failure(failure)));
            }
        }
        (true, None)
    }

    fn is_zinc(&self) -> bool {
        self.zinc().0
    }

    fn only_trivial_idempotents(&self) -> bool {
        self.idempotents.members().all(|e| {
            e == self.ring.zero() || e == self.ring.one()
        })
    }

    fn is_commutative(&self) -> bool {
        let r = &self.ring;
        r.elements()
            .all(|a| r.elements().all(|b| r.mul(a, b) == r.mul(b, a)))
    }

    fn is_j_clean(&self) -> bool {
        let r = &self.ring;
        r.elements().all(|x| {
            self.idempotents
                .members()
                .any(|e| self.radical.contains(r.sub(x, e)))
        })
    }

    fn is_division_ring(&self) -> bool {
        self.ring.order() >= 2 && self.units.size() == self.ring.order() - 1
    }

    /// Least zero-insertive member outside `target`, as a failure
    /// certificate of the given kind.
    fn zi_escapee(&self, target: &ElementSet, kind: FailureKind) -> Option<Certificate> {
        for x in self.zero_insertive.members() {
            if !target.contains(x) {
                let w = self.zero_insertive.zi_witness(x).expect("witness stored");
                let elements = match kind {
                    FailureKind::ProductNotZero | FailureKind::ProductNotNilpotent => {
                        vec![w.a, w.r, w.b]
                    }
                    _ => vec![x, w.a, w.r, w.b],
                };
                return Some(Certificate::Failure(FailureWitness::new(kind, elements)));
            }
        }
        None
    }
}

/// Shared analysis cache for one verification run, keyed by the
/// canonical expression string.
struct Ctx {
    gates: Gates,
    corpus: Vec<RingExpr>,
    corpus_labels: Vec<String>,
    cache: BTreeMap<String, Rc<AnalyzedRing>>,
}

impl Ctx {
    fn new(corpus: &[RingExpr], gates: Gates) -> Ctx {
        Ctx {
            gates,
            corpus: corpus.to_vec(),
            corpus_labels: corpus.iter().map(|e| e.to_string()).collect(),
            cache: BTreeMap::new(),
        }
    }

    fn has(&self, expr: &RingExpr) -> bool {
        self.corpus_labels.contains(&expr.to_string())
    }

    fn analyzed(&mut self, expr: &RingExpr) -> Result<Rc<AnalyzedRing>, TheoremError> {
        let key = expr.to_string();
        if let Some(found) = self.cache.get(&key) {
            return Ok(Rc::clone(found));
        }
        let ring = build_with_ceiling(expr, self.gates.max_order)?
            .materialized_or_self(self.gates.materialize);
        let analyzed = Rc::new(AnalyzedRing::compute(ring, &self.gates)?);
        self.cache.insert(key, Rc::clone(&analyzed));
        Ok(analyzed)
    }

    fn analyzed_ring(&mut self, ring: FiniteRing) -> Result<Rc<AnalyzedRing>, TheoremError> {
        let key = ring.label().to_string();
        if let Some(found) = self.cache.get(&key) {
            return Ok(Rc::clone(found));
        }
        let ring = ring.materialized_or_self(self.gates.materialize);
        let analyzed = Rc::new(AnalyzedRing::compute(ring, &self.gates)?);
        self.cache.insert(key, Rc::clone(&analyzed));
        Ok(analyzed)
    }
}

/// Verifies one catalogued statement over the corpus.
pub fn verify_statement(
    id: StatementId,
    corpus: &[RingExpr],
    gates: &Gates,
) -> Result<TheoremVerdict, TheoremError> {
    let mut ctx = Ctx::new(corpus, *gates);
    verify_with_ctx(id, &mut ctx)
}

/// Runs every catalogued statement. With a budget, statements that no
/// longer fit are reported as skipped with a reason, never silently
/// passed; without one the run is exhaustive (and byte-deterministic).
pub fn run_all(
    corpus: &[RingExpr],
    gates: &Gates,
    budget: Option<Duration>,
) -> Result<RunReport, TheoremError> {
    let start = Instant::now();
    let mut ctx = Ctx::new(corpus, *gates);
    let mut results = Vec::new();
    for id in StatementId::ALL {
        if let Some(limit) = budget {
            if start.elapsed() >= limit {
                results.push(StatementResult::Skipped {
                    id,
                    reason: format!("time budget of {}s exhausted", limit.as_secs()),
                });
                continue;
            }
        }
        results.push(StatementResult::Completed(verify_with_ctx(id, &mut ctx)?));
    }
    Ok(RunReport {
        results,
        elapsed: start.elapsed(),
    })
}

fn verify_with_ctx(id: StatementId, ctx: &mut Ctx) -> Result<TheoremVerdict, TheoremError> {
    let start = Instant::now();
    let per_ring = match id {
        StatementId::S0 => s0(ctx)?,
        StatementId::S1 => s1_s2(ctx, false)?,
        StatementId::S2 => s1_s2(ctx, true)?,
        StatementId::S3 => s3(ctx)?,
        StatementId::S4 => s4(ctx)?,
        StatementId::S5 => s5(ctx)?,
        StatementId::S6 => s6(ctx)?,
        StatementId::S7 => s7(ctx)?,
        StatementId::S8 => s8(ctx)?,
        StatementId::S9 => s9(ctx)?,
        StatementId::S10 => s10(ctx)?,
        StatementId::S10b => s10b(ctx)?,
        StatementId::S11 => s11(ctx)?,
        StatementId::S12 => s12(ctx)?,
        StatementId::S13 => s13(ctx)?,
        StatementId::S14 => s14(ctx)?,
        StatementId::S15 => s15(ctx)?,
        StatementId::S16 => s16(ctx)?,
    };
    Ok(TheoremVerdict {
        id,
        summary: id.summary(),
        aggregate: aggregate(&per_ring),
        per_ring,
        elapsed: start.elapsed(),
    })
}

/// Corpus entries that fit the full-scan gates; larger ones yield a
/// hypothesis-not-met row so nothing is silently passed.
fn corpus_rows<F>(ctx: &mut Ctx, mut row: F) -> Result<Vec<RingOutcome>, TheoremError>
where
    F: FnMut(&mut Ctx, &RingExpr, Rc<AnalyzedRing>) -> Result<RingOutcome, TheoremError>,
{
    let corpus = ctx.corpus.clone();
    let mut rows = Vec::new();
    for expr in &corpus {
        match ctx.analyzed(expr) {
            Ok(analyzed) => rows.push(row(ctx, expr, analyzed)?),
            Err(TheoremError::Classify(ClassifyError::GateExceeded { .. })) => {
                rows.push(
                    RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet)
                        .with_note("above the full-scan gates; not evaluated"),
                );
            }
            Err(other) => return Err(other),
        }
    }
    Ok(rows)
}

fn s0(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |_, expr, ar| {
        if !ar.is_commutative() {
            return Ok(RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet));
        }
        let (holds, cert) = ar.zinc();
        Ok(RingOutcome::new(
            expr.to_string(),
            if holds {
                Outcome::Pass
            } else {
                Outcome::Fail(cert.expect("failure carries a certificate"))
            },
        ))
    })
}

/// S1 (strict) and S2 (weak): the quantifier definition of (weak)
/// semicommutativity must agree with the zero-insertive characterization
/// ring by ring. Both routes are computed by `check_property`, which
/// reports disagreement as an error mapped here to a failed row.
fn s1_s2(ctx: &mut Ctx, weak: bool) -> Result<Vec<RingOutcome>, TheoremError> {
    let prop = if weak {
        Property::WeaklySemicommutative
    } else {
        Property::Semicommutative
    };
    corpus_rows(ctx, |ctx, expr, ar| {
        match check_property(&ar.ring, prop, &ctx.gates) {
            Ok(verdict) => {
                let routes = verdict.routes.expect("dual-route property");
                debug_assert_eq!(routes.direct, routes.via_zero_insertive);
                Ok(RingOutcome::new(expr.to_string(), Outcome::Pass)
                    .with_note(format!("both routes: {}", verdict.holds)))
            }
            Err(PropertyError::RouteDisagreement { direct, via_zi, .. }) => {
                let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
                w.note = Some(format!(
                    "direct route {direct}, zero-insertive route {via_zi}"
                ));
                Ok(RingOutcome::new(
                    expr.to_string(),
                    Outcome::Fail(Certificate::Failure(w)),
                ))
            }
            Err(other) => Err(other.into()),
        }
    })
}

fn s3(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |_, expr, ar| {
        if !(ar.is_zinc() && ar.only_trivial_idempotents()) {
            return Ok(RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet));
        }
        Ok(match ar.zi_escapee(&ar.nilpotents, FailureKind::ProductNotNilpotent) {
            None => RingOutcome::new(expr.to_string(), Outcome::Pass),
            Some(cert) => RingOutcome::new(expr.to_string(), Outcome::Fail(cert)),
        })
    })
}

fn s4(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let corpus = ctx.corpus.clone();
    let mut rows = Vec::new();
    for base_expr in &corpus {
        let base_order = match base_expr.order() {
            Ok(order) if order <= 16 => order,
            _ => continue,
        };
        let base = ctx.analyzed(base_expr)?;
        if !base.only_trivial_idempotents() {
            rows.push(RingOutcome::new(
                format!("T(2,{base_expr})"),
                Outcome::HypothesisNotMet,
            ));
            continue;
        }
        let mut sizes = vec![2u32];
        if base_order <= 4 {
            sizes.push(3);
        }
        for n in sizes {
            let t_expr = RingExpr::UpperTriangular(n, Box::new(base_expr.clone()));
            let t = ctx.analyzed(&t_expr)?;
            let zinc = t.is_zinc();
            let nil_bound = t.zero_insertive.is_subset(&t.nilpotents);
            if zinc == nil_bound {
                rows.push(RingOutcome::new(t_expr.to_string(), Outcome::Pass)
                    .with_note(format!("both sides: {zinc}")));
            } else {
                let cert = if zinc {
                    t.zi_escapee(&t.nilpotents, FailureKind::ProductNotNilpotent)
                        .expect("escapee exists when the bound fails")
                } else {
                    t.zinc().1.expect("failure certificate")
                };
                rows.push(RingOutcome::new(t_expr.to_string(), Outcome::Fail(cert)));
            }
        }
    }
    Ok(rows)
}

fn s5(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |_, expr, ar| {
        let radical_nil = ar.radical.is_subset(&ar.nilpotents);
        if !(ar.is_j_clean() && radical_nil) {
            return Ok(RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet));
        }
        Ok(match ar.zi_escapee(&ar.nilpotents, FailureKind::ProductNotNilpotent) {
            None => RingOutcome::new(expr.to_string(), Outcome::Pass),
            Some(cert) => RingOutcome::new(expr.to_string(), Outcome::Fail(cert)),
        })
    })
}

fn s6(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let parent_expr = RingExpr::Matrix(2, Box::new(RingExpr::Zn(4)));
    if !ctx.has(&parent_expr) {
        return Ok(vec![]);
    }
    let parent = ctx.analyzed(&parent_expr)?;
    let two_scalar = parent
        .ring
        .from_coordinates(&[2, 0, 0, 2])
        .expect("2x2 coordinates");
    let (quotient, ideal) = quotient_by_nil_ideal(&parent.ring, &[two_scalar])?;
    let subject = format!("{parent_expr} mod <2>");

    if ideal.size() * quotient.order() != parent.ring.order() {
        let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
        w.note = Some(format!(
            "|I| * |R/I| = {} * {} != |R| = {}",
            ideal.size(),
            quotient.order(),
            parent.ring.order()
        ));
        return Ok(vec![RingOutcome::new(
            subject,
            Outcome::Fail(Certificate::Failure(w)),
        )]);
    }

    let audit = audit_axioms(&quotient, AuditMode::full())?;
    if !audit.passed() {
        let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
        w.note = Some(format!(
            "quotient failed the axiom audit: {:?}",
            audit.violations.first()
        ));
        return Ok(vec![RingOutcome::new(
            subject,
            Outcome::Fail(Certificate::Failure(w)),
        )]);
    }

    let q = ctx.analyzed_ring(quotient)?;
    if !q.is_zinc() {
        return Ok(vec![RingOutcome::new(subject, Outcome::HypothesisNotMet)
            .with_note("quotient is not zinc")]);
    }
    let (holds, cert) = parent.zinc();
    Ok(vec![if holds {
        RingOutcome::new(subject, Outcome::Pass).with_note(format!(
            "quotient of order {} is zinc and so is the parent (also brute-forced)",
            q.ring.order()
        ))
    } else {
        RingOutcome::new(subject, Outcome::Fail(cert.expect("certificate")))
    }])
}

fn s7(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let z = RingExpr::Zn;
    let m2 = |b: RingExpr| RingExpr::Matrix(2, Box::new(b));
    let candidate_factors: Vec<Vec<RingExpr>> = vec![
        vec![z(2), z(4)],
        vec![z(4), m2(z(2))],
        vec![m2(z(2)), m2(z(3))],
        vec![z(2), z(3), z(4)],
        vec![z(3), m2(z(3))],
    ];
    let mut rows = Vec::new();
    for factors in candidate_factors {
        if !factors.iter().all(|f| ctx.has(f)) {
            continue;
        }
        let product_expr = RingExpr::Product(factors.clone());
        let product = ctx.analyzed(&product_expr)?;
        let mut all_factors_zinc = true;
        let mut factor_cert = None;
        for f in &factors {
            let fa = ctx.analyzed(f)?;
            let (holds, cert) = fa.zinc();
            if !holds {
                all_factors_zinc = false;
                factor_cert = cert.map(|c| (f.to_string(), c));
                break;
            }
        }
        let (product_zinc, product_cert) = product.zinc();
        let subject = product_expr.to_string();
        if product_zinc == all_factors_zinc {
            rows.push(
                RingOutcome::new(subject, Outcome::Pass)
                    .with_note(format!("both sides: {product_zinc}")),
            );
        } else if let Some(cert) = product_cert {
            rows.push(RingOutcome::new(subject, Outcome::Fail(cert))
                .with_note("product refutes zinc while every factor is zinc"));
        } else {
            let (label, cert) = factor_cert.expect("non-zinc factor has a certificate");
            rows.push(RingOutcome::new(subject, Outcome::Fail(cert))
                .with_note(format!("factor {label} is not zinc yet the product is")));
        }
    }
    Ok(rows)
}

fn s8(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let z = RingExpr::Zn;
    let m2z2 = RingExpr::Matrix(2, Box::new(z(2)));
    let m2z3 = RingExpr::Matrix(2, Box::new(z(3)));
    let mut rows = Vec::new();

    // Full-mode instances: construction and base both within gates.
    let positive: Vec<(RingExpr, RingExpr)> = vec![
        (RingExpr::UpperTriangular(2, Box::new(z(2))), z(2)),
        (RingExpr::UpperTriangular(3, Box::new(z(2))), z(2)),
        (RingExpr::UpperTriangular(2, Box::new(z(4))), z(4)),
        (
            RingExpr::UpperTriangular(2, Box::new(m2z2.clone())),
            m2z2.clone(),
        ),
        (RingExpr::TrivialExtension(Box::new(z(4))), z(4)),
        (
            RingExpr::TrivialExtension(Box::new(m2z2.clone())),
            m2z2.clone(),
        ),
        (RingExpr::PolyQuot(Box::new(z(2)), 3), z(2)),
        (RingExpr::PolyQuot(Box::new(z(4)), 2), z(4)),
        (RingExpr::PolyQuot(Box::new(m2z2.clone()), 2), m2z2.clone()),
    ];
    for (cons_expr, base_expr) in positive {
        if !ctx.has(&base_expr) {
            continue;
        }
        let base = ctx.analyzed(&base_expr)?;
        let cons = ctx.analyzed(&cons_expr)?;
        let (cons_zinc, cons_cert) = cons.zinc();
        let (base_zinc, base_cert) = base.zinc();
        let subject = cons_expr.to_string();
        if cons_zinc == base_zinc {
            rows.push(
                RingOutcome::new(subject, Outcome::Pass)
                    .with_note(format!("both sides: {cons_zinc}")),
            );
        } else {
            let cert = cons_cert.or(base_cert).expect("a side failed");
            rows.push(RingOutcome::new(subject, Outcome::Fail(cert)));
        }
    }

    // Certificate-mode instances over the non-zinc base: the base's
    // least failing zero-insertive element embeds as a corner block (or
    // constant) and its non-decomposability is re-established in the
    // large ring by a lazy idempotent scan.
    if ctx.has(&m2z3) {
        let base = ctx.analyzed(&m2z3)?;
        let (base_zinc, base_cert) = base.zinc();
        let base_witness = match (&base_cert, base_zinc) {
            (Some(Certificate::Failure(f)), false) => {
                (f.elements[0], f.elements[1], f.elements[2], f.elements[3])
            }
            _ => {
                let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
                w.note = Some("expected-non-zinc base turned out zinc".to_string());
                rows.push(RingOutcome::new(
                    "T(2,M(2,Z(3)))",
                    Outcome::Fail(Certificate::Failure(w)),
                ));
                return Ok(rows);
            }
        };
        let (x, a, r, b) = base_witness;

        struct BigInstance {
            expr: RingExpr,
            // Embedding of one base index into big-ring coordinates.
            lift: fn(u32, usize) -> Vec<u32>,
            digits: usize,
        }
        let instances = [
            BigInstance {
                expr: RingExpr::UpperTriangular(2, Box::new(m2z3.clone())),
                lift: |i, k| {
                    let mut digits = vec![0u32; k];
                    digits[0] = i;
                    digits
                },
                digits: 3,
            },
            BigInstance {
                expr: RingExpr::TrivialExtension(Box::new(m2z3.clone())),
                lift: |i, k| {
                    let mut digits = vec![0u32; k];
                    digits[0] = i;
                    digits
                },
                digits: 2,
            },
            BigInstance {
                expr: RingExpr::PolyQuot(Box::new(m2z3.clone()), 2),
                lift: |i, k| {
                    let mut digits = vec![0u32; k];
                    digits[0] = i;
                    digits
                },
                digits: 2,
            },
        ];
        for inst in instances {
            let big = build_with_ceiling(&inst.expr, ctx.gates.max_order)?;
            let lift = |i: ElementId| {
                big.from_coordinates(&(inst.lift)(i.0, inst.digits))
                    .expect("embedding stays in range")
            };
            let candidates = [(lift(a), lift(r), lift(b))];
            let verdict = zinc_certificate_check(&big, &candidates)?;
            let subject = inst.expr.to_string();
            if verdict.holds {
                // The lift of a non-decomposable element decomposed: the
                // equivalence would be violated.
                let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
                w.note = Some(format!(
                    "lift of {} decomposed in {}",
                    base.ring.format(x),
                    subject
                ));
                rows.push(RingOutcome::new(subject, Outcome::Fail(Certificate::Failure(w))));
            } else {
                let cert = verdict.certificate.expect("failing check carries evidence");
                cert.validate(&big).map_err(|e| {
                    TheoremError::Classify(ClassifyError::Internal(format!(
                        "certificate failed re-validation: {e}"
                    )))
                })?;
                debug_assert_eq!(verdict.mode, CheckMode::CertificateOnly);
                rows.push(RingOutcome::new(subject, Outcome::Pass).with_note(
                    "both sides false; large side refuted in certificate mode, evidence re-validated",
                ));
            }
        }
    }
    Ok(rows)
}

fn s9(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |_, expr, ar| {
        if !ar.is_zinc() {
            return Ok(RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet));
        }
        let ring = &ar.ring;
        for x in ar.zero_insertive.members() {
            let clean = ar
                .idempotents
                .members()
                .any(|e| ar.units.contains(ring.sub(x, e)));
            if !clean {
                let w = ar.zero_insertive.zi_witness(x).expect("witness stored");
                return Ok(RingOutcome::new(
                    expr.to_string(),
                    Outcome::Fail(Certificate::Failure(FailureWitness::new(
                        FailureKind::ZiMemberNotClean,
                        vec![x, w.a, w.r, w.b],
                    ))),
                ));
            }
        }
        Ok(RingOutcome::new(expr.to_string(), Outcome::Pass))
    })
}

fn small_corpus_bases(ctx: &Ctx, max_order: u128) -> Vec<RingExpr> {
    ctx.corpus
        .iter()
        .filter(|e| matches!(e.order(), Ok(o) if o <= max_order))
        .cloned()
        .collect()
}

fn s10(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let mut rows = Vec::new();
    for base_expr in small_corpus_bases(ctx, 8) {
        let companion = RingExpr::Matrix(2, Box::new(base_expr.clone()));
        let m = ctx.analyzed(&companion)?;
        let subject = companion.to_string();
        if !m.is_zinc() {
            rows.push(RingOutcome::new(subject, Outcome::HypothesisNotMet));
            continue;
        }
        let base = ctx.analyzed(&base_expr)?;
        let mut failed = None;
        for x in base.ring.elements() {
            match weakly_clean_witness(&base.ring, x, &ctx.gates)? {
                Some(w) => {
                    Certificate::WeaklyClean(w).validate(&base.ring).map_err(|e| {
                        TheoremError::Classify(ClassifyError::Internal(format!(
                            "weakly clean witness failed re-validation: {e}"
                        )))
                    })?;
                }
                None => {
                    failed = Some(x);
                    break;
                }
            }
        }
        rows.push(match failed {
            None => RingOutcome::new(subject, Outcome::Pass).with_note(format!(
                "every element of {base_expr} has a validated weakly clean witness"
            )),
            Some(x) => RingOutcome::new(
                subject,
                Outcome::Fail(Certificate::Failure(FailureWitness::new(
                    FailureKind::NotWeaklyClean,
                    vec![x],
                ))),
            ),
        });
    }
    Ok(rows)
}

fn s10b(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let mut rows = Vec::new();
    for base_expr in small_corpus_bases(ctx, 8) {
        let base = ctx.analyzed(&base_expr)?;
        let subject = base_expr.to_string();
        let domain = {
            let ring = &base.ring;
            ring.elements().all(|a| {
                a == ring.zero()
                    || ring
                        .elements()
                        .all(|b| b == ring.zero() || ring.mul(a, b) != ring.zero())
            })
        };
        if !domain {
            rows.push(RingOutcome::new(subject, Outcome::HypothesisNotMet));
            continue;
        }
        let companion = RingExpr::Matrix(2, Box::new(base_expr.clone()));
        let m = ctx.analyzed(&companion)?;
        if !m.is_zinc() {
            rows.push(RingOutcome::new(subject, Outcome::HypothesisNotMet)
                .with_note("companion matrix ring is not zinc"));
            continue;
        }
        // Each w needs some unit v with w - v = r w^2 for some r, or
        // w - v = 1; the disjunction is read per element.
        let ring = &base.ring;
        let mut miss = None;
        'outer: for w in ring.elements() {
            let w2 = ring.mul(w, w);
            for v in base.units.members() {
                let diff = ring.sub(w, v);
                if diff == ring.one()
                    || ring.elements().any(|r| diff == ring.mul(r, w2))
                {
                    continue 'outer;
                }
            }
            miss = Some(w);
            break;
        }
        rows.push(match miss {
            None => RingOutcome::new(subject, Outcome::Pass),
            Some(w) => RingOutcome::new(
                subject,
                Outcome::Fail(Certificate::Failure(FailureWitness::new(
                    FailureKind::UnitDifferenceMiss,
                    vec![w],
                ))),
            ),
        });
    }
    Ok(rows)
}

fn s11(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    // Matrix-shaped corpus entries select the statement; when any are
    // present the canonical division-ring family joins the instance set.
    let mut instances: Vec<RingExpr> = ctx
        .corpus
        .iter()
        .filter(|e| matches!(e, RingExpr::Matrix(n, _) if *n >= 2))
        .cloned()
        .collect();
    if !instances.is_empty() {
        for q in [2u64, 3, 4, 5] {
            let family = RingExpr::Matrix(2, Box::new(RingExpr::Gf(q)));
            if !instances.iter().any(|e| e.to_string() == family.to_string()) {
                instances.push(family);
            }
        }
    }
    let mut rows = Vec::new();
    for expr in instances {
        let base_expr = match &expr {
            RingExpr::Matrix(_, base) => (**base).clone(),
            _ => unreachable!("selector keeps matrix shapes only"),
        };
        let base = ctx.analyzed(&base_expr)?;
        let subject = expr.to_string();
        if !base.is_division_ring() {
            rows.push(RingOutcome::new(subject, Outcome::HypothesisNotMet));
            continue;
        }
        let m = ctx.analyzed(&expr)?;
        let expected = base.ring.order() == 2;
        let (computed, cert) = m.zinc();
        if computed == expected {
            rows.push(RingOutcome::new(subject, Outcome::Pass).with_note(format!(
                "zinc = {computed} over a division ring of order {}",
                base.ring.order()
            )));
        } else if let Some(cert) = cert {
            rows.push(RingOutcome::new(subject, Outcome::Fail(cert))
                .with_note("zinc fails over the two-element division ring"));
        } else {
            let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
            w.note = Some(format!(
                "zinc over a division ring of order {}",
                base.ring.order()
            ));
            rows.push(RingOutcome::new(subject, Outcome::Fail(Certificate::Failure(w))));
        }
    }
    Ok(rows)
}

fn s12(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let carriers = [
        RingExpr::Zn(2),
        RingExpr::Zn(3),
        RingExpr::Zn(4),
        RingExpr::Gf(4),
    ];
    let mut rows = Vec::new();
    for carrier_expr in carriers {
        if !ctx.has(&carrier_expr) {
            continue;
        }
        let carrier = ctx.analyzed(&carrier_expr)?;
        let subject = format!("Morita({carrier_expr})");
        if !carrier.is_zinc() {
            rows.push(RingOutcome::new(subject, Outcome::HypothesisNotMet));
            continue;
        }
        let spec = BimoduleSpec::diagonal(carrier.ring.clone());
        let morita = trivial_morita(&spec)?;
        let analyzed = ctx.analyzed_ring(morita)?;
        let (holds, cert) = analyzed.zinc();
        rows.push(if holds {
            RingOutcome::new(subject, Outcome::Pass)
                .with_note("all four slots tied to one carrier; context products zero")
        } else {
            RingOutcome::new(subject, Outcome::Fail(cert.expect("certificate")))
        });
    }
    Ok(rows)
}

fn s13(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |ctx, expr, ar| {
        let ring = &ar.ring;
        let central_idempotents: Vec<ElementId> = ar
            .idempotents
            .members()
            .filter(|e| ar.center.contains(*e))
            .collect();
        let whole = ar.is_zinc();
        let mut all_corners = true;
        let mut split_exists = false;
        for &e in &central_idempotents {
            let corner = corner_ring(ring, e)?;
            let corner_zinc = ctx.analyzed_ring(corner)?.is_zinc();
            if !corner_zinc {
                all_corners = false;
            }
            let complement = ring.sub(ring.one(), e);
            let other = corner_ring(ring, complement)?;
            let other_zinc = ctx.analyzed_ring(other)?.is_zinc();
            if corner_zinc && other_zinc {
                split_exists = true;
            }
        }
        let subject = expr.to_string();
        if whole == all_corners && whole == split_exists {
            Ok(RingOutcome::new(subject, Outcome::Pass).with_note(format!(
                "{} central idempotents examined, all three conditions {}",
                central_idempotents.len(),
                whole
            )))
        } else {
            let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
            w.note = Some(format!(
                "whole {whole}, all corners {all_corners}, split {split_exists}"
            ));
            Ok(RingOutcome::new(subject, Outcome::Fail(Certificate::Failure(w))))
        }
    })
}

fn s14(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    corpus_rows(ctx, |_, expr, ar| {
        if !ar.is_zinc() {
            return Ok(RingOutcome::new(expr.to_string(), Outcome::HypothesisNotMet));
        }
        let ring = &ar.ring;
        for a in ring.elements() {
            for b in ring.elements() {
                if ring.mul(a, b) != ring.zero() {
                    continue;
                }
                for j in ar.radical.members() {
                    let p = ring.mul(ring.mul(a, j), b);
                    if !ar.nilpotents.contains(p) {
                        return Ok(RingOutcome::new(
                            expr.to_string(),
                            Outcome::Fail(Certificate::Failure(FailureWitness::new(
                                FailureKind::RadicalProductNotNilpotent,
                                vec![a, j, b],
                            ))),
                        ));
                    }
                }
            }
        }
        Ok(RingOutcome::new(expr.to_string(), Outcome::Pass))
    })
}

fn s15(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let expr = RingExpr::Matrix(2, Box::new(RingExpr::Zn(2)));
    if !ctx.has(&expr) {
        return Ok(vec![]);
    }
    let ar = ctx.analyzed(&expr)?;
    let subject = expr.to_string();
    if !ar.is_zinc() {
        let (_, cert) = ar.zinc();
        return Ok(vec![RingOutcome::new(
            subject,
            Outcome::Fail(cert.expect("certificate")),
        )]);
    }
    let verdict = check_property(&ar.ring, Property::WeaklySemicommutative, &ctx.gates)?;
    Ok(vec![if verdict.holds {
        let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
        w.note = Some("expected a weak-semicommutativity counterexample".to_string());
        RingOutcome::new(subject, Outcome::Fail(Certificate::Failure(w)))
    } else {
        let cert = verdict.certificate.expect("failing property carries evidence");
        cert.validate(&ar.ring).map_err(|e| {
            TheoremError::Classify(ClassifyError::Internal(format!(
                "witness failed re-validation: {e}"
            )))
        })?;
        let witness = match &cert {
            Certificate::Failure(f) => f
                .elements
                .iter()
                .map(|x| ar.ring.format(*x))
                .collect::<Vec<_>>()
                .join(", "),
            _ => String::new(),
        };
        RingOutcome::new(subject, Outcome::Pass)
            .with_note(format!("zinc holds; separation witness ({witness})"))
    }])
}

fn s16(ctx: &mut Ctx) -> Result<Vec<RingOutcome>, TheoremError> {
    let expr = RingExpr::Matrix(2, Box::new(RingExpr::Zn(3)));
    if !ctx.has(&expr) {
        return Ok(vec![]);
    }
    let ar = ctx.analyzed(&expr)?;
    let subject = expr.to_string();
    let (holds, cert) = ar.zinc();
    Ok(vec![if holds {
        let mut w = FailureWitness::new(FailureKind::EquivalenceMismatch, vec![]);
        w.note = Some("expected a zinc refutation".to_string());
        RingOutcome::new(subject, Outcome::Fail(Certificate::Failure(w)))
    } else {
        let cert = cert.expect("failing check carries evidence");
        cert.validate(&ar.ring).map_err(|e| {
            TheoremError::Classify(ClassifyError::Internal(format!(
                "certificate failed re-validation: {e}"
            )))
        })?;
        RingOutcome::new(subject, Outcome::Pass)
            .with_note("non-zinc established with re-validated evidence")
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gates() -> Gates {
        Gates::default()
    }

    #[test]
    fn corpus_is_as_published() {
        let corpus = default_corpus();
        assert_eq!(corpus.len(), 21);
        let labels: Vec<String> = corpus.iter().map(|e| e.to_string()).collect();
        assert!(labels.contains(&"M(2,Z(2))".to_string()));
        assert!(labels.contains(&"M(2,Z(3))".to_string()));
        assert!(labels.contains(&"Morita(Z(2))".to_string()));
        for expr in &corpus {
            assert!(expr.order().unwrap() <= 65536);
        }
    }

    #[test]
    fn s15_and_s16_pass_on_the_default_corpus() {
        let corpus = default_corpus();
        let v15 = verify_statement(StatementId::S15, &corpus, &gates()).unwrap();
        assert_eq!(v15.aggregate, Aggregate::AllPass);
        let v16 = verify_statement(StatementId::S16, &corpus, &gates()).unwrap();
        assert_eq!(v16.aggregate, Aggregate::AllPass);
    }

    #[test]
    fn s1_checks_every_ring_without_filtering() {
        let corpus = default_corpus();
        let v = verify_statement(StatementId::S1, &corpus, &gates()).unwrap();
        assert_eq!(v.aggregate, Aggregate::AllPass);
        assert_eq!(v.per_ring.len(), corpus.len());
        assert!(v
            .per_ring
            .iter()
            .all(|row| matches!(row.outcome, Outcome::Pass)));
    }

    #[test]
    fn s11_goes_vacuous_without_matrix_rings() {
        let corpus: Vec<RingExpr> = default_corpus()
            .into_iter()
            .filter(|e| !matches!(e, RingExpr::Matrix(_, _)))
            .collect();
        let v = verify_statement(StatementId::S11, &corpus, &gates()).unwrap();
        assert_eq!(v.aggregate, Aggregate::Vacuous);
        assert!(v.per_ring.is_empty());
    }

    #[test]
    fn s6_verifies_the_quotient_route() {
        let v = verify_statement(StatementId::S6, &default_corpus(), &gates()).unwrap();
        assert_eq!(v.aggregate, Aggregate::AllPass);
        assert_eq!(v.per_ring.len(), 1);
    }

    #[test]
    fn unknown_statement_ids_are_rejected() {
        assert!("S99".parse::<StatementId>().is_err());
        assert_eq!("s10B".parse::<StatementId>().unwrap(), StatementId::S10b);
    }

    #[test]
    fn corrupted_corpus_ring_is_caught() {
        // A corrupted multiplication entry must trip the audit or some
        // statement; here the audit alone already catches it.
        let ring = crate::construct::build(&RingExpr::Zn(6)).unwrap();
        let bad = ring.corrupt_mul_entry(ElementId(2), ElementId(3), ElementId(1));
        let report = audit_axioms(&bad, AuditMode::full()).unwrap();
        assert!(!report.passed());
    }
}
