//! Acceptance gate. Runs without the libtest harness so that one PASS/FAIL
//! line per criterion always shows up in `cargo test` output.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ringlab_core::corpus::{parse_corpus, run_corpus, CorpusOptions, CorpusReport};
use ringlab_core::elements::{idempotents, is_uniquely_nil_clean_elem, nil_clean_decomps};
use ringlab_core::structure::{
    check_property, is_nil_ideal, is_semipotent, jacobson_radical, nil_ideal_instances,
    nil_plus_nil_cap_idem, ring_class_report,
};
use ringlab_core::theorems::{
    characterized_classes, verify_group_ring, verify_theorem, verify_thm_ncunc_equivalences,
    verify_thm_unc_ring,
};
use ringlab_core::{
    is_2_group, make_group_ring, make_quotient, Commuting, ElementSet, FiniteGroup, Ideal, Limits,
    Property, Subject, TheoremId,
};

type Outcome = Result<String, String>;

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/default.corpus")
}

struct Ring {
    name: String,
    subject: Subject,
}

fn load_corpus() -> Vec<Ring> {
    let text = fs::read_to_string(corpus_path()).expect("default corpus");
    parse_corpus(&text)
        .expect("corpus parses")
        .into_iter()
        .map(|e| Ring {
            subject: e.expr.build_subject(&Limits::default()).expect(&e.name),
            name: e.name,
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn holds(r: &ringlab_core::FiniteRing, p: Property) -> Result<bool, String> {
    Ok(check_property(r, p).map_err(err)?.holds)
}

fn find<'a>(rings: &'a [Ring], name: &str) -> Result<&'a Ring, String> {
    rings
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| format!("corpus entry {name} missing"))
}

fn criterion_1(rings: &[Ring]) -> Outcome {
    ensure(rings.len() >= 18, || format!("only {} rings", rings.len()))?;
    let orders: Vec<usize> = rings.iter().map(|r| r.subject.ring.order()).collect();
    let (lo, hi) = (*orders.iter().min().unwrap(), *orders.iter().max().unwrap());
    ensure(lo == 2 && hi == 256, || format!("orders span {lo}..{hi}"))?;
    for ring in rings {
        let r = &ring.subject.ring;
        let v = verify_thm_ncunc_equivalences(r).map_err(err)?;
        ensure(v.clauses.len() == 6, || {
            format!("{}: {} clauses", ring.name, v.clauses.len())
        })?;
        let abelian = holds(r, Property::Abelian)?;
        for c in &v.clauses {
            ensure(c.value == abelian, || {
                format!(
                    "{}: clause {:?} = {} but abelian = {abelian}",
                    ring.name, c.statement, c.value
                )
            })?;
        }
        ensure(v.consistent, || format!("{}: inconsistent", ring.name))?;
        ensure(holds(r, Property::Ncunc)? == abelian, || {
            format!("{}: NCUNC differs from abelian", ring.name)
        })?;
    }
    let entries = parse_corpus(&fs::read_to_string(corpus_path()).map_err(err)?).map_err(err)?;
    let start = Instant::now();
    let options = CorpusOptions {
        jobs: Some(1),
        stable_output: true,
        ..Default::default()
    };
    let report = run_corpus(&entries, &options).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(report.exit_code() == 0, || report.summary())?;
    ensure(elapsed <= Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} rings, orders {lo}..{hi}, full single-worker run {:.2}s",
        rings.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2(rings: &[Ring]) -> Outcome {
    let r = &find(rings, "t2z2")?.subject.ring;
    let cap = nil_plus_nil_cap_idem(r);
    ensure(cap.is_zero_only(r), || {
        format!("(nil+nil)∩idem = {:?}", cap.labels(r))
    })?;
    let rep = ring_class_report(r).map_err(err)?;
    ensure(!rep.holds(Property::Abelian), || {
        "T2(Z2) reported abelian".into()
    })?;
    ensure(rep.holds(Property::Uu), || "T2(Z2) not UU".into())?;
    ensure(!rep.holds(Property::Ncunc), || {
        "T2(Z2) reported NCUNC".into()
    })?;
    let e11 = r.elem_by_label("[[1,0],[0,0]]").map_err(err)?;
    let decomps = nil_clean_decomps(r, e11, Commuting::Any).map_err(err)?;
    ensure(decomps.len() == 2, || {
        format!("e11 has {} nil-clean decompositions", decomps.len())
    })?;
    ensure(
        ringlab_core::structure::refutes(r, Property::Ncunc, e11.index()).map_err(err)?,
        || "e11 does not refute NCUNC".into(),
    )?;
    let w = rep.get(Property::Ncunc).witness.ok_or("no NCUNC witness")?;
    let wn = nil_clean_decomps(r, r.elem(w).map_err(err)?, Commuting::Any).map_err(err)?;
    ensure(wn.len() == 2, || {
        format!("reported witness has {} decompositions", wn.len())
    })?;
    let parts: Vec<String> = decomps
        .iter()
        .map(|d| {
            format!(
                "{} + {}",
                r.label(d.idempotent.index()),
                r.label(d.other.index())
            )
        })
        .collect();
    Ok(format!("e11 = {}", parts.join(" = ")))
}

fn criterion_3(rings: &[Ring]) -> Outcome {
    for ring in rings {
        let r = &ring.subject.ring;
        let cunc = holds(r, Property::Cunc)?;
        let rhs = holds(r, Property::Abelian)? && holds(r, Property::Uu)?;
        ensure(cunc == rhs, || {
            format!("{}: CUNC={cunc}, abelian∧UU={rhs}", ring.name)
        })?;
        let v = verify_theorem(
            &ring.subject,
            TheoremId::CuncEquivalence,
            &Limits::default(),
        )
        .map_err(err)?;
        ensure(v.iter().all(|v| v.consistent), || {
            format!("{}: inconsistent", ring.name)
        })?;
    }
    for (name, expected) in [
        ("z4", true),
        ("z2c2", true),
        ("z6", false),
        ("m2z2", false),
        ("t2z2", false),
        ("t3z2", false),
    ] {
        let got = holds(&find(rings, name)?.subject.ring, Property::Cunc)?;
        ensure(got == expected, || format!("{name}: CUNC = {got}"))?;
    }
    Ok(format!(
        "{} rings; Z4, Z2[C2] CUNC; Z6, M2(Z2), T2(Z2), T3(Z2) not",
        rings.len()
    ))
}

fn criterion_4(rings: &[Ring]) -> Outcome {
    for ring in rings {
        let r = &ring.subject.ring;
        let unc = holds(r, Property::UniquelyNilClean)?;
        let semi_cunc = holds(r, Property::Semipotent)? && holds(r, Property::Cunc)?;
        let v = verify_thm_unc_ring(r).map_err(err)?;
        let values: Vec<bool> = v.clauses.iter().map(|c| c.value).collect();
        ensure(
            values.len() == 3 && values.iter().all(|&x| x == unc) && semi_cunc == unc,
            || format!("{}: unc={unc}, clauses={values:?}", ring.name),
        )?;
    }
    let z4 = &find(rings, "z4")?.subject.ring;
    let j = jacobson_radical(z4).map_err(err)?;
    let labels = j.members().labels(z4);
    ensure(labels == ["0", "2"], || format!("J(Z4) = {labels:?}"))?;
    let q = make_quotient(z4, &j).map_err(err)?;
    ensure(holds(&q.ring, Property::Boolean)?, || {
        "Z4/J not boolean".into()
    })?;
    ensure(holds(z4, Property::UniquelyNilClean)?, || {
        "Z4 not UNC".into()
    })?;
    Ok("three routes agree on every ring; J(Z4) = {0,2}, Z4/J boolean".into())
}

fn corpus_groups(rings: &[Ring]) -> Vec<FiniteGroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for ring in rings {
        if let Some(gr) = &ring.subject.group_ring {
            if seen.insert(gr.group.name().to_string()) {
                out.push(gr.group.clone());
            }
        }
    }
    out
}

fn criterion_5(rings: &[Ring]) -> Outcome {
    let limits = Limits::default();
    let groups = corpus_groups(rings);
    let mut bases: Vec<&Ring> = Vec::new();
    let mut seen = BTreeSet::new();
    for ring in rings {
        if seen.insert(ring.subject.ring.provenance().to_string()) {
            bases.push(ring);
        }
    }
    let mut checked = BTreeSet::new();
    let (mut pos, mut neg) = (0, 0);
    for base in &bases {
        let r = &base.subject.ring;
        for g in &groups {
            let size = (r.order() as u128).checked_pow(g.order() as u32);
            if size.is_none_or(|s| s > limits.cap() as u128) {
                continue;
            }
            let gr = make_group_ring(r, g, &limits).map_err(err)?;
            let lhs = holds(&gr.ring, Property::Cunc)?;
            let rhs = holds(r, Property::Cunc)? && is_2_group(g);
            ensure(lhs == rhs, || {
                format!(
                    "({}, {}): CUNC(RG)={lhs}, CUNC(R)∧2-group={rhs}",
                    r.provenance(),
                    g.name()
                )
            })?;
            let v = verify_group_ring(&gr).map_err(err)?;
            ensure(v.consistent, || {
                format!("({}, {}) verdict inconsistent", r.provenance(), g.name())
            })?;
            if lhs {
                pos += 1;
            } else {
                neg += 1;
            }
            checked.insert((r.provenance().to_string(), g.name().to_string()));
        }
    }
    for (r, g) in [
        ("Z2", "C2"),
        ("Z2", "C4"),
        ("Z2", "gprod(C2,C2)"),
        ("Z4", "C2"),
        ("Z2", "C3"),
        ("Z2", "C6"),
        ("Z6", "C2"),
    ] {
        ensure(checked.contains(&(r.to_string(), g.to_string())), || {
            format!("pair ({r}, {g}) not covered")
        })?;
    }
    Ok(format!(
        "{} pairs ({pos} CUNC, {neg} not) over {} groups",
        checked.len(),
        groups.len()
    ))
}

fn criterion_6(rings: &[Ring]) -> Outcome {
    let (mut cunc_rings, mut quotients) = (0, 0);
    for ring in rings {
        let r = &ring.subject.ring;
        if !holds(r, Property::Cunc)? {
            continue;
        }
        cunc_rings += 1;
        let two = r.add(r.one(), r.one()).map_err(err)?;
        let nil = ringlab_core::elements::nilpotents(r);
        ensure(nil.contains_elem(two), || {
            format!("{}: 2 not nilpotent", ring.name)
        })?;
        for ideal in nil_ideal_instances(r, ring.subject.group_ring.as_ref()).map_err(err)? {
            let q = make_quotient(r, &ideal).map_err(err)?;
            ensure(holds(&q.ring, Property::Cunc)?, || {
                format!("{}: R/{} not CUNC", ring.name, ideal.describe(r))
            })?;
            quotients += 1;
        }
        for id in [TheoremId::TwoNilpotent, TheoremId::QuotientCunc] {
            let vs = verify_theorem(&ring.subject, id, &Limits::default()).map_err(err)?;
            ensure(vs.iter().all(|v| v.consistent), || {
                format!("{}: {id} inconsistent", ring.name)
            })?;
        }
    }
    ensure(cunc_rings > 0, || "no CUNC rings in corpus".into())?;
    Ok(format!(
        "{cunc_rings} CUNC rings, {quotients} nil quotients all CUNC"
    ))
}

fn criterion_7(rings: &[Ring]) -> Outcome {
    let mut augmentation_checks = 0;
    for ring in rings {
        let r = &ring.subject.ring;
        let j = jacobson_radical(r).map_err(err)?;
        Ideal::new(r, j.members().clone(), None, None)
            .map_err(|e| format!("{}: J not an ideal: {e}", ring.name))?;
        ensure(is_nil_ideal(r, &j).map_err(err)?, || {
            format!("{}: J not nil", ring.name)
        })?;
        let q = make_quotient(r, &j).map_err(err)?;
        let jq = jacobson_radical(&q.ring).map_err(err)?;
        ensure(jq.len() == 1, || {
            format!("{}: J(R/J) has {} elements", ring.name, jq.len())
        })?;
        ensure(is_semipotent(r).map_err(err)?, || {
            format!("{}: not semipotent", ring.name)
        })?;
        if let Some(gr) = &ring.subject.group_ring {
            let omega = gr.augmentation_ideal().map_err(err)?;
            let zero = gr.base.zero();
            let kernel = ElementSet::from_predicate(r, |x| {
                gr.augmentation(r.elem(x).unwrap()).unwrap() == zero
            });
            let diffs = gr.ideal_generated_by_differences().map_err(err)?;
            ensure(omega.members() == &kernel, || {
                format!("{}: ω ≠ ker ε", ring.name)
            })?;
            ensure(omega.members() == diffs.members(), || {
                format!("{}: ω ≠ ideal generated by 1−g", ring.name)
            })?;
            augmentation_checks += 1;
        }
    }
    Ok(format!(
        "{} rings; {augmentation_checks} augmentation ideals matched",
        rings.len()
    ))
}

fn criterion_8(rings: &[Ring]) -> Outcome {
    let mut count = 0;
    for ring in rings {
        let r = &ring.subject.ring;
        let center = ringlab_core::elements::center(r);
        for e in idempotents(r).iter() {
            let e = r.elem(e).map_err(err)?;
            let unc = is_uniquely_nil_clean_elem(r, e).map_err(err)?;
            ensure(unc == center.contains_elem(e), || {
                format!("{}: idempotent {} unc={unc}", ring.name, r.label(e.index()))
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} idempotents, zero exceptions"))
}

fn criterion_9(rings: &[Ring]) -> Outcome {
    let mut compared = 0;
    for ring in rings {
        let r = &ring.subject.ring;
        let rep = ring_class_report(r).map_err(err)?;
        for (p, value) in characterized_classes(r).map_err(err)? {
            ensure(rep.holds(p) == value, || {
                format!(
                    "{}: {p} by definition {} vs characterization {value}",
                    ring.name,
                    rep.holds(p)
                )
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} predicate comparisons over {} rings",
        rings.len()
    ))
}

fn run_cli(path: &std::path::Path) -> Result<(i32, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .arg("corpus")
        .arg(path)
        .arg("--stable-output")
        .output()
        .map_err(err)?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    ))
}

fn check_schema(json: &str) -> Result<usize, String> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(err)?;
    let typed: CorpusReport = serde_json::from_value(value.clone()).map_err(err)?;
    for entry in value["entries"].as_array().ok_or("entries missing")? {
        for key in [
            "name",
            "provenance",
            "order",
            "sets",
            "properties",
            "verdicts",
        ] {
            ensure(entry.get(key).is_some(), || format!("entry lacks {key}"))?;
        }
        for set in ["units", "nilpotents", "idempotents", "jacobson"] {
            let s = &entry["sets"][set];
            let labels = s["labels"].as_array().ok_or("labels missing")?;
            ensure(s["size"].as_u64() == Some(labels.len() as u64), || {
                format!("{set} size does not match labels")
            })?;
        }
        for v in entry["verdicts"].as_array().ok_or("verdicts missing")? {
            for key in ["theorem_id", "clauses", "consistent"] {
                ensure(v.get(key).is_some(), || format!("verdict lacks {key}"))?;
            }
        }
    }
    Ok(typed.entries.len())
}

fn criterion_10(_: &[Ring]) -> Outcome {
    let path = corpus_path();
    let (code, stdout, stderr) = run_cli(&path)?;
    ensure(code == 0, || {
        format!("default corpus exit {code}: {stderr}")
    })?;
    let n = check_schema(&stdout)?;

    let text = fs::read_to_string(&path).map_err(err)?;
    let target = "z4 |";
    let line = text
        .lines()
        .find(|l| l.starts_with(target))
        .ok_or("z4 entry missing")?;
    let mutated_line = line.replacen("uu=true", "uu=false", 1);
    ensure(mutated_line != line, || "could not mutate z4".into())?;
    let dir = tempfile::tempdir().map_err(err)?;
    let mutated = dir.path().join("mutated.corpus");
    fs::write(&mutated, text.replacen(line, &mutated_line, 1)).map_err(err)?;
    let (code, stdout, stderr) = run_cli(&mutated)?;
    ensure(code == 1, || format!("mutated corpus exit {code}"))?;
    let report: CorpusReport = serde_json::from_str(&stdout).map_err(err)?;
    ensure(
        report.mismatches.len() == 1 && report.mismatches[0].entry == "z4",
        || format!("mismatches: {:?}", report.mismatches),
    )?;
    ensure(stderr.contains("z4"), || "stderr does not name z4".into())?;
    Ok(format!(
        "default: exit 0, {n} schema-valid entries; mutated z4: exit 1"
    ))
}

type Criterion = fn(&[Ring]) -> Outcome;

fn main() -> ExitCode {
    let rings = load_corpus();
    let criteria: [(&str, Criterion); 10] = [
        ("six-way NCUNC equivalence", criterion_1),
        ("T2(Z2) counterexample", criterion_2),
        ("CUNC = abelian and UU", criterion_3),
        ("uniquely nil-clean characterizations", criterion_4),
        ("group ring CUNC", criterion_5),
        ("2 nilpotent, nil quotients CUNC", criterion_6),
        ("structural self-checks", criterion_7),
        ("idempotents: uniquely nil-clean iff central", criterion_8),
        ("definitions vs characterizations", criterion_9),
        ("CLI corpus contract", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| f(&rings)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
