//! Corpus files and batch verification.
//!
//! One record per line: `name | expr | key=bool,key=bool,...`. The third
//! field is optional. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructors::Limits;
use crate::expr::{parse_ring_expr, RingExpr};
use crate::report::RingReport;
use crate::ring::{AxiomReport, Coverage};
use crate::structure::Property;
use crate::theorems::verify_all;
use crate::Error;

/// Orders up to this bound get an exhaustive axiom check; larger rings get
/// a fixed-seed sample of triples.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;
pub const AXIOM_SAMPLE_TRIPLES: usize = 200_000;
pub const AXIOM_SAMPLE_SEED: u64 = 0x5eed;

pub fn axiom_coverage(order: usize) -> Coverage {
    if order <= EXHAUSTIVE_AXIOM_LIMIT {
        Coverage::Exhaustive
    } else {
        Coverage::Sampled {
            triples: AXIOM_SAMPLE_TRIPLES,
            seed: AXIOM_SAMPLE_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub name: String,
    pub expr: RingExpr,
    pub source: String,
    pub expected: BTreeMap<Property, bool>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CorpusParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusParseError> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| CorpusParseError { line, message };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split('|').map(str::trim).collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!(
                "expected `name | expr [| expectations]`, found {} fields",
                fields.len()
            )));
        }
        let name = fields[0];
        if name.is_empty() {
            return Err(err("empty entry name".into()));
        }
        if !seen.insert(name.to_string()) {
            return Err(err(format!("duplicate entry name {name:?}")));
        }
        let expr = parse_ring_expr(fields[1]).map_err(|e| err(format!("{name}: {e}")))?;
        let mut expected = BTreeMap::new();
        if let Some(spec) = fields.get(2) {
            for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| err(format!("{name}: expected key=bool, found {item:?}")))?;
                let p: Property = key
                    .parse()
                    .map_err(|_| err(format!("{name}: unknown property {:?}", key.trim())))?;
                let v: bool = value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("{name}: {:?} is not a boolean", value.trim())))?;
                if expected.insert(p, v).is_some() {
                    return Err(err(format!("{name}: {p} given twice")));
                }
            }
        }
        out.push(CorpusEntry {
            line,
            name: name.to_string(),
            expr,
            source: fields[1].to_string(),
            expected,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mismatch {
    pub entry: String,
    pub property: Property,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inconsistency {
    pub entry: String,
    pub theorem_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryErrorKind {
    SizeCap,
    Build,
    Axioms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryError {
    pub entry: String,
    pub kind: EntryErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusReport {
    /// Seconds since the Unix epoch; omitted with stable output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub entries: Vec<RingReport>,
    pub mismatches: Vec<Mismatch>,
    pub inconsistencies: Vec<Inconsistency>,
    pub errors: Vec<EntryError>,
}

impl CorpusReport {
    /// 0 ok, 1 inconsistency or golden mismatch, 3 size cap, 2 any other
    /// entry failure.
    pub fn exit_code(&self) -> i32 {
        if !self.mismatches.is_empty() || !self.inconsistencies.is_empty() {
            1
        } else if self
            .errors
            .iter()
            .any(|e| e.kind == EntryErrorKind::SizeCap)
        {
            3
        } else if !self.errors.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let mut lines = vec![format!(
            "{} entries, {} verdicts, {} mismatches, {} inconsistencies, {} errors",
            self.entries.len(),
            self.entries.iter().map(|e| e.verdicts.len()).sum::<usize>(),
            self.mismatches.len(),
            self.inconsistencies.len(),
            self.errors.len()
        )];
        for m in &self.mismatches {
            lines.push(format!(
                "mismatch in {}: {} expected {} but computed {}",
                m.entry, m.property, m.expected, m.actual
            ));
        }
        for i in &self.inconsistencies {
            lines.push(format!(
                "inconsistent verdict in {}: {}{}{}",
                i.entry,
                i.theorem_id,
                i.instance
                    .as_deref()
                    .map(|s| format!(" [{s}]"))
                    .unwrap_or_default(),
                i.witness
                    .as_deref()
                    .map(|s| format!(": {s}"))
                    .unwrap_or_default()
            ));
        }
        for e in &self.errors {
            lines.push(format!("error in {}: {}", e.entry, e.message));
        }
        lines.join("\n")
    }
}

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    pub limits: Limits,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub stable_output: bool,
}

enum Outcome {
    Done(Box<RingReport>),
    Failed(EntryError),
}

fn run_entry(entry: &CorpusEntry, limits: &Limits) -> Outcome {
    let fail = |kind, message: String| {
        Outcome::Failed(EntryError {
            entry: entry.name.clone(),
            kind,
            message,
        })
    };
    let subject = match entry.expr.build_subject(limits) {
        Ok(s) => s,
        Err(e @ Error::SizeCap { .. }) => return fail(EntryErrorKind::SizeCap, e.to_string()),
        Err(e) => return fail(EntryErrorKind::Build, e.to_string()),
    };
    let r = &subject.ring;
    if let AxiomReport::Fail { axiom, witness } = r.verify_axioms_with(axiom_coverage(r.order())) {
        return fail(
            EntryErrorKind::Axioms,
            format!("{axiom} fails at {witness:?}"),
        );
    }
    let built = RingReport::build(&entry.name, &subject)
        .and_then(|rep| Ok(rep.with_verdicts(verify_all(&subject, limits)?)));
    match built {
        Ok(rep) => Outcome::Done(Box::new(rep)),
        Err(e @ Error::SizeCap { .. }) => fail(EntryErrorKind::SizeCap, e.to_string()),
        Err(e) => fail(EntryErrorKind::Build, e.to_string()),
    }
}

/// Evaluates every entry independently; results keep corpus order.
pub fn run_corpus(entries: &[CorpusEntry], options: &CorpusOptions) -> Result<CorpusReport, Error> {
    let work = || -> Vec<Outcome> {
        entries
            .par_iter()
            .map(|e| run_entry(e, &options.limits))
            .collect()
    };
    let outcomes = match options.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut report = CorpusReport {
        generated_at: if options.stable_output {
            None
        } else {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs())
        },
        entries: Vec::new(),
        mismatches: Vec::new(),
        inconsistencies: Vec::new(),
        errors: Vec::new(),
    };
    for (entry, outcome) in entries.iter().zip(outcomes) {
        let rep = match outcome {
            Outcome::Done(rep) => rep,
            Outcome::Failed(err) => {
                report.errors.push(err);
                continue;
            }
        };
        for (&p, &expected) in &entry.expected {
            let actual = rep.properties[&p];
            if actual != expected {
                report.mismatches.push(Mismatch {
                    entry: entry.name.clone(),
                    property: p,
                    expected,
                    actual,
                });
            }
        }
        for v in rep.verdicts.iter().filter(|v| !v.consistent) {
            report.inconsistencies.push(Inconsistency {
                entry: entry.name.clone(),
                theorem_id: v.theorem_id.to_string(),
                instance: v.instance.clone(),
                witness: v.witness.clone(),
            });
        }
        report.entries.push(*rep);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records_and_comments() {
        let text = "# header\n\nz2 | Z2 | boolean=true, abelian=true\nz4|Z4\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].line, 3);
        assert!(entries[0].expected[&Property::Boolean]);
        assert!(entries[1].expected.is_empty());
    }

    #[test]
    fn rejects_bad_records() {
        assert_eq!(parse_corpus("a | Z2 | bogus=true").unwrap_err().line, 1);
        assert!(parse_corpus("a | Z2 | uu=maybe").is_err());
        assert!(parse_corpus("a | Z2 | uu").is_err());
        assert!(parse_corpus("a | Q2").is_err());
        assert!(parse_corpus("just-a-name").is_err());
        assert!(parse_corpus("a | Z2\na | Z3").is_err());
    }

    #[test]
    fn mismatch_is_reported_by_name() {
        let entries = parse_corpus("z4 | Z4 | boolean=true\nz2 | Z2 | boolean=true").unwrap();
        let rep = run_corpus(&entries, &CorpusOptions::default()).unwrap();
        assert_eq!(rep.exit_code(), 1);
        assert_eq!(rep.mismatches.len(), 1);
        assert_eq!(rep.mismatches[0].entry, "z4");
        assert_eq!(rep.entries.len(), 2);
    }

    #[test]
    fn size_cap_maps_to_three() {
        let entries = parse_corpus("big | M(3,Z4)").unwrap();
        let rep = run_corpus(&entries, &CorpusOptions::default()).unwrap();
        assert_eq!(rep.errors[0].kind, EntryErrorKind::SizeCap);
        assert_eq!(rep.exit_code(), 3);
    }

    #[test]
    fn order_and_bytes_are_stable_across_job_counts() {
        let text = "a | Z6\nb | T(2,Z2)\nc | grpring(Z2,C2)\nd | Z3\n";
        let entries = parse_corpus(text).unwrap();
        let run = |jobs| {
            let opts = CorpusOptions {
                jobs: Some(jobs),
                stable_output: true,
                ..Default::default()
            };
            serde_json::to_string(&run_corpus(&entries, &opts).unwrap()).unwrap()
        };
        let one = run(1);
        assert_eq!(one, run(4));
        let rep: CorpusReport = serde_json::from_str(&one).unwrap();
        let names: Vec<_> = rep.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "d"]);
        assert!(rep.generated_at.is_none());
    }
}
