//! Serializable reports and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::elements::{self, classify, clean_decomps, nil_clean_decomps, Commuting, Decomposition};
use crate::expr::Subject;
use crate::ring::{Elem, ElementSet, FiniteRing};
use crate::structure::{jacobson_radical, ring_class_report, Property, PropertyReport};
use crate::theorems::TheoremVerdict;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelledSet {
    pub size: usize,
    pub labels: Vec<String>,
}

impl LabelledSet {
    pub fn of(r: &FiniteRing, set: &ElementSet) -> Self {
        LabelledSet {
            size: set.len(),
            labels: set.labels(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSets {
    pub units: LabelledSet,
    pub nilpotents: LabelledSet,
    pub idempotents: LabelledSet,
    pub jacobson: LabelledSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingReport {
    pub name: String,
    pub provenance: String,
    pub order: usize,
    pub sets: RingSets,
    pub properties: BTreeMap<Property, bool>,
    /// Refuting element (by label) for each property that fails.
    #[serde(default)]
    pub witnesses: BTreeMap<Property, String>,
    #[serde(default)]
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RingReport {
    pub fn from_property_report(
        name: &str,
        r: &FiniteRing,
        rep: &PropertyReport,
    ) -> Result<Self, Error> {
        let mut witnesses = BTreeMap::new();
        let mut properties = BTreeMap::new();
        for (&p, check) in &rep.checks {
            properties.insert(p, check.holds);
            if let Some(w) = check.witness {
                witnesses.insert(p, r.label(w).to_string());
            }
        }
        Ok(RingReport {
            name: name.to_string(),
            provenance: r.provenance().to_string(),
            order: r.order(),
            sets: RingSets {
                units: LabelledSet::of(r, &elements::units(r)),
                nilpotents: LabelledSet::of(r, &elements::nilpotents(r)),
                idempotents: LabelledSet::of(r, &elements::idempotents(r)),
                jacobson: LabelledSet::of(r, jacobson_radical(r)?.members()),
            },
            properties,
            witnesses,
            verdicts: Vec::new(),
            notes: Vec::new(),
        })
    }

    /// Property report for the subject ring, plus a note for group rings.
    pub fn build(name: &str, subject: &Subject) -> Result<Self, Error> {
        let r = &subject.ring;
        let mut report = Self::from_property_report(name, r, &ring_class_report(r)?)?;
        if let Some(gr) = &subject.group_ring {
            report.notes.push(format!(
                "group {} is finite, so locally finite",
                gr.group.name()
            ));
        }
        Ok(report)
    }

    pub fn with_verdicts(mut self, verdicts: Vec<TheoremVerdict>) -> Self {
        self.verdicts = verdicts;
        self
    }

    pub fn all_consistent(&self) -> bool {
        self.verdicts.iter().all(|v| v.consistent)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name: {}", self.name);
        let _ = writeln!(out, "provenance: {}", self.provenance);
        let _ = writeln!(out, "order: {}", self.order);
        for (key, set) in [
            ("units", &self.sets.units),
            ("nilpotents", &self.sets.nilpotents),
            ("idempotents", &self.sets.idempotents),
            ("jacobson", &self.sets.jacobson),
        ] {
            let _ = writeln!(out, "{key} ({}): {{{}}}", set.size, set.labels.join(", "));
        }
        for (p, value) in &self.properties {
            match self.witnesses.get(p) {
                Some(w) if !value => {
                    let _ = writeln!(out, "{p}: {value}  (witness {w})");
                }
                _ => {
                    let _ = writeln!(out, "{p}: {value}");
                }
            }
        }
        for v in &self.verdicts {
            out.push_str(&verdict_text(v));
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

pub fn verdict_text(v: &TheoremVerdict) -> String {
    let mut out = String::new();
    let status = if v.consistent {
        "consistent"
    } else {
        "INCONSISTENT"
    };
    let _ = write!(out, "verdict {}", v.theorem_id);
    if let Some(inst) = &v.instance {
        let _ = write!(out, " [{inst}]");
    }
    let _ = write!(out, ": {status}");
    if !v.hypothesis_met {
        out.push_str(" (hypothesis not met)");
    }
    out.push('\n');
    for c in &v.clauses {
        let _ = write!(out, "  {} = {}", c.statement, c.value);
        if let Some(w) = &c.witness {
            let _ = write!(out, "  (witness {w})");
        }
        out.push('\n');
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness: {w}");
    }
    out
}

/// Property booleans recovered from [`RingReport::to_text`] output.
pub fn text_properties(text: &str) -> BTreeMap<Property, bool> {
    text.lines()
        .filter_map(|line| {
            let (key, rest) = line.split_once(": ")?;
            let p: Property = key.parse().ok()?;
            let value = rest.split_whitespace().next()?.parse().ok()?;
            Some((p, value))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionPair {
    pub idempotent: String,
    pub other: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decompositions {
    pub nil_clean: Vec<DecompositionPair>,
    pub strongly_nil_clean: Vec<DecompositionPair>,
    pub clean: Vec<DecompositionPair>,
    pub strongly_clean: Vec<DecompositionPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementReport {
    pub provenance: String,
    pub element: String,
    pub index: usize,
    pub unit: bool,
    pub inverse: Option<String>,
    pub nilpotent: bool,
    pub nilpotency_index: Option<u32>,
    pub idempotent: bool,
    pub central: bool,
    pub uniquely_nil_clean: bool,
    pub uniquely_clean: bool,
    pub exchange: bool,
    pub decompositions: Decompositions,
}

fn pairs(r: &FiniteRing, ds: &[Decomposition]) -> Vec<DecompositionPair> {
    ds.iter()
        .map(|d| DecompositionPair {
            idempotent: r.label(d.idempotent.index()).to_string(),
            other: r.label(d.other.index()).to_string(),
        })
        .collect()
}

impl ElementReport {
    pub fn build(r: &FiniteRing, a: Elem) -> Result<Self, Error> {
        let class = classify(r, a)?;
        let nc = nil_clean_decomps(r, a, Commuting::Any)?;
        let cl = clean_decomps(r, a, Commuting::Any)?;
        Ok(ElementReport {
            provenance: r.provenance().to_string(),
            element: r.label(class.index).to_string(),
            index: class.index,
            unit: class.is_unit(),
            inverse: class.inverse.map(|i| r.label(i).to_string()),
            nilpotent: class.is_nilpotent(),
            nilpotency_index: class.nilpotency_index,
            idempotent: class.idempotent,
            central: class.central,
            uniquely_nil_clean: elements::is_uniquely_nil_clean_elem(r, a)?,
            uniquely_clean: elements::is_uniquely_clean_elem(r, a)?,
            exchange: elements::is_exchange_elem(r, a)?,
            decompositions: Decompositions {
                nil_clean: pairs(r, &nc),
                strongly_nil_clean: pairs(r, &nil_clean_decomps(r, a, Commuting::Required)?),
                clean: pairs(r, &cl),
                strongly_clean: pairs(r, &clean_decomps(r, a, Commuting::Required)?),
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ring: {}", self.provenance);
        let _ = writeln!(out, "element: {} (index {})", self.element, self.index);
        let _ = writeln!(out, "unit: {}", self.unit);
        if let Some(inv) = &self.inverse {
            let _ = writeln!(out, "inverse: {inv}");
        }
        let _ = writeln!(out, "nilpotent: {}", self.nilpotent);
        if let Some(k) = self.nilpotency_index {
            let _ = writeln!(out, "nilpotency index: {k}");
        }
        let _ = writeln!(out, "idempotent: {}", self.idempotent);
        let _ = writeln!(out, "central: {}", self.central);
        let _ = writeln!(out, "uniquely nil-clean: {}", self.uniquely_nil_clean);
        let _ = writeln!(out, "uniquely clean: {}", self.uniquely_clean);
        let _ = writeln!(out, "exchange: {}", self.exchange);
        for (kind, list) in [
            ("nil-clean", &self.decompositions.nil_clean),
            (
                "strongly nil-clean",
                &self.decompositions.strongly_nil_clean,
            ),
            ("clean", &self.decompositions.clean),
            ("strongly clean", &self.decompositions.strongly_clean),
        ] {
            let _ = writeln!(out, "{kind} decompositions ({}):", list.len());
            for p in list {
                let _ = writeln!(out, "  {} + {}", p.idempotent, p.other);
            }
        }
        out
    }
}
