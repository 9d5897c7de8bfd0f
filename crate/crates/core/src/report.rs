//! Report documents: a JSON schema (version "1") and a text rendering,
//! both byte-deterministic for identical inputs and flags. Timings are
//! included only on request since they vary run to run.

use crate::audit::{AuditMode, AxiomReport};
use crate::cert::{Certificate, ZiWitness};
use crate::classify::ElementSet;
use crate::properties::{CheckMode, PropertyVerdict};
use crate::ring::FiniteRing;
use crate::theorems::{Outcome, RunReport, StatementResult, TheoremVerdict};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Debug, Default)]
pub struct JsonReport {
    pub schema_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<BTreeMap<String, SetSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<BTreeMap<String, PropertySection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorems: Option<BTreeMap<String, TheoremSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl JsonReport {
    pub fn new() -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Serialize, Debug)]
pub struct RingSection {
    pub expr: String,
    pub order: usize,
}

impl RingSection {
    pub fn of(ring: &FiniteRing) -> Self {
        RingSection {
            expr: ring.label().to_string(),
            order: ring.order(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct AuditSection {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
}

impl AuditSection {
    pub fn of(report: &AxiomReport) -> Self {
        let (mode, seed, trials) = match report.mode {
            AuditMode::Full { .. } => ("full".to_string(), None, None),
            AuditMode::Sampled { seed, trials } => ("sampled".to_string(), Some(seed), Some(trials)),
        };
        AuditSection {
            mode,
            seed,
            trials,
            violations: report.violations.len(),
            first_violation: report
                .violations
                .first()
                .map(|v| format!("{} at {:?}", v.axiom, v.witness)),
        }
    }
}

/// One element set: size, optionally the formatted member list, and the
/// role's witness data. A gated set reports the gate instead.
#[derive(Serialize, Debug, Default)]
pub struct SetSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_exceeded: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nil_index: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessSection>>,
}

#[derive(Serialize, Debug)]
pub struct ElementJson {
    pub index: u32,
    pub str: String,
}

#[derive(Serialize, Debug)]
pub struct WitnessSection {
    pub element: ElementJson,
    pub a: ElementJson,
    pub r: ElementJson,
    pub b: ElementJson,
}

impl WitnessSection {
    pub fn of(w: &ZiWitness, ring: &FiniteRing) -> Self {
        let el = |x: crate::ring::ElementId| ElementJson {
            index: x.0,
            str: ring.format(x),
        };
        WitnessSection {
            element: el(w.element),
            a: el(w.a),
            r: el(w.r),
            b: el(w.b),
        }
    }
}

/// Include the member list only when the set is small enough or full
/// listings were requested.
pub fn set_section(set: &ElementSet, full_sets: bool, full_sets_limit: usize) -> SetSection {
    let ring = set.ring();
    let include = full_sets || set.size() <= full_sets_limit;
    let mut section = SetSection {
        size: Some(set.size()),
        ..Default::default()
    };
    if include {
        section.members = Some(set.members().map(|x| ring.format(x)).collect());
        let nil: Vec<(u32, u32)> = set
            .members()
            .filter_map(|x| set.nil_index(x).map(|k| (x.0, k)))
            .collect();
        if !nil.is_empty() {
            section.nil_index = Some(nil);
        }
        let inv: Vec<(u32, u32)> = set
            .members()
            .filter_map(|x| set.inverse(x).map(|y| (x.0, y.0)))
            .collect();
        if !inv.is_empty() {
            section.inverse = Some(inv);
        }
        let wit: Vec<WitnessSection> = set
            .zi_witnesses()
            .iter()
            .map(|w| WitnessSection::of(w, ring))
            .collect();
        if !wit.is_empty() {
            section.witnesses = Some(wit);
        }
    }
    section
}

pub fn gated_set_section(gate: usize) -> SetSection {
    SetSection {
        gate_exceeded: Some(gate),
        ..Default::default()
    }
}

#[derive(Serialize, Debug)]
pub struct CertificateJson {
    pub kind: String,
    pub elements: BTreeMap<String, ElementJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_index: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents_scanned: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Renders a certificate with structural element formatting when a ring
/// handle is available, falling back to bare indices otherwise.
pub fn certificate_json(cert: &Certificate, ring: Option<&FiniteRing>) -> CertificateJson {
    let el = |x: crate::ring::ElementId| ElementJson {
        index: x.0,
        str: ring.map_or_else(|| x.0.to_string(), |r| r.format(x)),
    };
    let mut elements = BTreeMap::new();
    let mut nilpotency_index = None;
    let mut idempotents_scanned = None;
    let mut note = None;
    let kind = match cert {
        Certificate::ZeroInsertive(w) => {
            elements.insert("element".into(), el(w.element));
            elements.insert("a".into(), el(w.a));
            elements.insert("r".into(), el(w.r));
            elements.insert("b".into(), el(w.b));
            "zero-insertive".to_string()
        }
        Certificate::NilClean(d) => {
            elements.insert("element".into(), el(d.element));
            elements.insert("idempotent".into(), el(d.idempotent));
            elements.insert("nilpotent".into(), el(d.nilpotent));
            nilpotency_index = Some(d.index);
            "nil-clean".to_string()
        }
        Certificate::Clean(d) => {
            elements.insert("element".into(), el(d.element));
            elements.insert("idempotent".into(), el(d.idempotent));
            elements.insert("unit".into(), el(d.unit));
            "clean".to_string()
        }
        Certificate::WeaklyClean(w) => {
            elements.insert("element".into(), el(w.element));
            elements.insert("idempotent".into(), el(w.idempotent));
            elements.insert("unit".into(), el(w.unit));
            elements.insert("scale".into(), el(w.scale));
            "weakly-clean".to_string()
        }
        Certificate::Failure(f) => {
            let roles: &[&str] = match f.elements.len() {
                1 => &["element"],
                2 => &["a", "b"],
                3 => &["a", "r", "b"],
                4 => &["element", "a", "r", "b"],
                _ => &[],
            };
            for (role, x) in roles.iter().zip(&f.elements) {
                elements.insert((*role).to_string(), el(*x));
            }
            idempotents_scanned = f.idempotents_scanned;
            note = f.note.clone();
            f.kind.to_string()
        }
    };
    CertificateJson {
        kind,
        elements,
        nilpotency_index,
        idempotents_scanned,
        note,
    }
}

#[derive(Serialize, Debug)]
pub struct PropertySection {
    pub holds: bool,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes: Option<RoutesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

#[derive(Serialize, Debug)]
pub struct RoutesJson {
    pub direct: bool,
    pub via_zero_insertive: bool,
}

pub fn property_section(verdict: &PropertyVerdict, ring: &FiniteRing) -> PropertySection {
    PropertySection {
        holds: verdict.holds,
        mode: match verdict.mode {
            CheckMode::Full => "full".to_string(),
            CheckMode::CertificateOnly => "certificate-only".to_string(),
        },
        routes: verdict.routes.map(|r| RoutesJson {
            direct: r.direct,
            via_zero_insertive: r.via_zero_insertive,
        }),
        certificate: verdict
            .certificate
            .as_ref()
            .map(|c| certificate_json(c, Some(ring))),
    }
}

#[derive(Serialize, Debug)]
pub struct TheoremSection {
    pub summary: String,
    pub aggregate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub per_ring: Vec<TheoremRowJson>,
}

#[derive(Serialize, Debug)]
pub struct TheoremRowJson {
    pub subject: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

/// Formats failure evidence against the subject ring when the subject is
/// a buildable expression.
fn resolve_subject(label: &str) -> Option<FiniteRing> {
    let expr = crate::dsl::parse_expr(label).ok()?;
    crate::construct::build(&expr).ok()
}

pub fn theorem_section(verdict: &TheoremVerdict) -> TheoremSection {
    let per_ring = verdict
        .per_ring
        .iter()
        .map(|row| {
            let certificate = match &row.outcome {
                Outcome::Fail(cert) => {
                    let ring = resolve_subject(&row.subject);
                    Some(certificate_json(cert, ring.as_ref()))
                }
                _ => None,
            };
            TheoremRowJson {
                subject: row.subject.clone(),
                outcome: row.outcome.code().to_string(),
                note: row.note.clone(),
                certificate,
            }
        })
        .collect();
    TheoremSection {
        summary: verdict.summary.to_string(),
        aggregate: verdict.aggregate.code().to_string(),
        reason: None,
        per_ring,
    }
}

pub fn theorems_map(report: &RunReport) -> BTreeMap<String, TheoremSection> {
    let mut map = BTreeMap::new();
    for result in &report.results {
        match result {
            StatementResult::Completed(v) => {
                map.insert(v.id.name().to_string(), theorem_section(v));
            }
            StatementResult::Skipped { id, reason } => {
                map.insert(
                    id.name().to_string(),
                    TheoremSection {
                        summary: id.summary().to_string(),
                        aggregate: "skipped".to_string(),
                        reason: Some(reason.clone()),
                        per_ring: vec![],
                    },
                );
            }
        }
    }
    map
}

// ---- text rendering ----

pub fn render_set_text(code: &str, section: &SetSection, out: &mut String) {
    use std::fmt::Write;
    if let Some(gate) = section.gate_exceeded {
        writeln!(out, "{code}: gate exceeded (limit {gate}); use certificate-mode interfaces")
            .unwrap();
        return;
    }
    writeln!(out, "{code}: size {}", section.size.unwrap_or(0)).unwrap();
    if let Some(members) = &section.members {
        writeln!(out, "  members: {}", members.join(", ")).unwrap();
    }
    if let Some(nil) = &section.nil_index {
        let rendered: Vec<String> = nil.iter().map(|(x, k)| format!("{x}:{k}")).collect();
        writeln!(out, "  nilpotency index: {}", rendered.join(", ")).unwrap();
    }
    if let Some(inv) = &section.inverse {
        let rendered: Vec<String> = inv.iter().map(|(x, y)| format!("{x}<->{y}")).collect();
        writeln!(out, "  inverses: {}", rendered.join(", ")).unwrap();
    }
    if let Some(wit) = &section.witnesses {
        for w in wit {
            writeln!(
                out,
                "  witness {} = {}: a={} ({}), r={} ({}), b={} ({})",
                w.element.index,
                w.element.str,
                w.a.str,
                w.a.index,
                w.r.str,
                w.r.index,
                w.b.str,
                w.b.index
            )
            .unwrap();
        }
    }
}

pub fn render_certificate_text(cert: &CertificateJson, out: &mut String) {
    use std::fmt::Write;
    writeln!(out, "certificate {}:", cert.kind).unwrap();
    for (role, el) in &cert.elements {
        writeln!(out, "  {role} = {} (index {})", el.str, el.index).unwrap();
    }
    if let Some(k) = cert.nilpotency_index {
        writeln!(out, "  nilpotency index: {k}").unwrap();
    }
    if let Some(n) = cert.idempotents_scanned {
        writeln!(out, "  idempotents scanned: {n}").unwrap();
    }
    if let Some(note) = &cert.note {
        writeln!(out, "  note: {note}").unwrap();
    }
}

pub fn render_theorems_text(map: &BTreeMap<String, TheoremSection>, out: &mut String) {
    use std::fmt::Write;
    for (id, section) in map {
        writeln!(out, "{id} {}: {}", section.aggregate, section.summary).unwrap();
        if let Some(reason) = &section.reason {
            writeln!(out, "  reason: {reason}").unwrap();
        }
        for row in &section.per_ring {
            match &row.note {
                Some(note) => {
                    writeln!(out, "  {} {} ({note})", row.outcome, row.subject).unwrap()
                }
                None => writeln!(out, "  {} {}", row.outcome, row.subject).unwrap(),
            }
            if let Some(cert) = &row.certificate {
                let mut inner = String::new();
                render_certificate_text(cert, &mut inner);
                for line in inner.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{idempotents, zero_insertive, Gates};
    use crate::construct::build;
    use crate::expr::RingExpr;
    use crate::properties::{check_property, Property};

    #[test]
    fn json_report_is_deterministic() {
        let ring = build(&RingExpr::Matrix(2, Box::new(RingExpr::Zn(2))))
            .unwrap()
            .materialized_or_self(4096);
        let gates = Gates::default();
        let render = || {
            let mut report = JsonReport::new();
            report.ring = Some(RingSection::of(&ring));
            let mut sets = BTreeMap::new();
            sets.insert(
                "E".to_string(),
                set_section(&idempotents(&ring, &gates).unwrap(), false, 256),
            );
            sets.insert(
                "ZI".to_string(),
                set_section(&zero_insertive(&ring, &gates).unwrap(), false, 256),
            );
            report.sets = Some(sets);
            let verdict = check_property(&ring, Property::Zinc, &gates).unwrap();
            let mut props = BTreeMap::new();
            props.insert("zinc".to_string(), property_section(&verdict, &ring));
            report.properties = Some(props);
            report.to_json()
        };
        assert_eq!(render(), render());
    }

    #[test]
    fn schema_version_is_one() {
        let report = JsonReport::new();
        let doc: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(doc["schema_version"], "1");
    }

    #[test]
    fn member_lists_respect_the_limit() {
        let ring = build(&RingExpr::Zn(8)).unwrap().materialized_or_self(4096);
        let gates = Gates::default();
        let set = idempotents(&ring, &gates).unwrap();
        assert!(set_section(&set, false, 1).members.is_none());
        assert!(set_section(&set, true, 1).members.is_some());
        assert!(set_section(&set, false, 256).members.is_some());
    }
}
