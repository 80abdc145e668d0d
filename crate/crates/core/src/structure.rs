//! Ideals, the Jacobson radical, idempotent lifting and ring-class
//! predicates.
//!
//! Every ring-class predicate here is decided by quantifying over elements
//! with the definitions from [`crate::elements`]. None of them consult the
//! characterizations that the verifiers in [`crate::theorems`] test.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use bitvec::vec::BitVec;
use serde::{Deserialize, Serialize};

use crate::constructors::{make_quotient, GroupRing};
use crate::elements::{
    self, central_bits, count_clean, count_nil_clean, idempotent_list, is_central_idx,
    is_exchange_idx, is_idempotent_idx, is_nilpotent_idx, is_unit_idx, left_multiples,
    nil_clean_idempotents, right_multiples, Commuting,
};
use crate::expr::elem_ref_text;
use crate::ring::{Elem, ElementSet, FiniteRing, RingId};
use crate::Error;

/// A verified two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    members: ElementSet,
    generators: Option<Vec<Elem>>,
    name: Option<String>,
}

impl Ideal {
    /// Verifies closure under addition, that zero is a member, and two-sided
    /// absorption.
    pub fn new(
        r: &FiniteRing,
        members: ElementSet,
        generators: Option<Vec<Elem>>,
        name: Option<String>,
    ) -> Result<Self, Error> {
        if members.ring_id() != r.id() {
            return Err(Error::RingMismatch);
        }
        if !members.contains(r.zero_idx()) {
            return Err(Error::NotAnIdeal("does not contain zero".into()));
        }
        let list = members.to_vec();
        for &a in &list {
            for &b in &list {
                if !members.contains(r.add_idx(a, b)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} + {} escapes",
                        r.label(a),
                        r.label(b)
                    )));
                }
            }
            for x in 0..r.order() {
                if !members.contains(r.mul_idx(x, a)) || !members.contains(r.mul_idx(a, x)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} does not absorb {}",
                        r.label(a),
                        r.label(x)
                    )));
                }
            }
        }
        Ok(Ideal {
            members,
            generators,
            name,
        })
    }

    pub fn zero(r: &FiniteRing) -> Self {
        Ideal {
            members: ElementSet::from_indices(r, [r.zero_idx()]),
            generators: Some(vec![r.zero()]),
            name: Some("0".into()),
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.members.ring_id()
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn generators(&self) -> Option<&[Elem]> {
        self.generators.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Short human-readable description used in provenance strings.
    pub fn describe(&self, r: &FiniteRing) -> String {
        if let Some(gens) = &self.generators {
            gens.iter()
                .map(|g| elem_ref_text(r.label(g.index())))
                .collect::<Vec<_>>()
                .join(", ")
        } else if let Some(name) = &self.name {
            name.clone()
        } else {
            format!("{{{}}}", self.members.labels(r).join(","))
        }
    }
}

fn radical_bits(r: &FiniteRing) -> BitVec {
    let one = r.one_idx();
    (0..r.order())
        .map(|x| (0..r.order()).all(|y| is_unit_idx(r, r.sub_idx(one, r.mul_idx(y, x)))))
        .collect()
}

/// `J(R) = {x : 1 − yx is a unit for every y}`.
///
/// The result is checked to be a two-sided ideal with `J(R/J(R)) = 0`.
pub fn jacobson_radical(r: &FiniteRing) -> Result<Ideal, Error> {
    let bits = match r.cache().radical.get() {
        Some(bits) => bits.clone(),
        None => {
            let bits = radical_bits(r);
            let members = ElementSet::from_bits(r, bits.clone());
            let ideal = Ideal::new(r, members, None, Some("J(R)".into()))
                .map_err(|e| Error::Internal(format!("radical of {}: {e}", r.provenance())))?;
            if ideal.len() > 1 {
                let q = make_quotient(r, &ideal)?;
                if radical_bits(&q.ring).count_ones() != 1 {
                    return Err(Error::Internal(format!(
                        "J(R/J) is nonzero for {}",
                        r.provenance()
                    )));
                }
            }
            let _ = r.cache().radical.set(bits.clone());
            bits
        }
    };
    Ok(Ideal {
        members: ElementSet::from_bits(r, bits),
        generators: None,
        name: Some("J(R)".into()),
    })
}

fn in_radical(r: &FiniteRing, a: usize) -> Result<bool, Error> {
    jacobson_radical(r)?;
    Ok(r.cache().radical.get().map(|b| b[a]).unwrap_or(false))
}

/// The smallest two-sided ideal containing `gens`: the additive span of
/// `{x·g·y}`.
pub fn ideal_generated(r: &FiniteRing, gens: &[Elem]) -> Result<Ideal, Error> {
    let idx: Vec<usize> = gens.iter().map(|&g| r.owns(g)).collect::<Result<_, _>>()?;
    let mut products = ElementSet::empty(r);
    for &g in &idx {
        for x in 0..r.order() {
            let xg = r.mul_idx(x, g);
            for y in 0..r.order() {
                products.insert(r.mul_idx(xg, y));
            }
        }
    }
    let mut members = ElementSet::from_indices(r, [r.zero_idx()]);
    let mut list = vec![r.zero_idx()];
    for t in products.iter() {
        if members.contains(t) {
            continue;
        }
        let base = list.clone();
        let mut shift = t;
        while !members.contains(shift) {
            for &s in &base {
                let x = r.add_idx(s, shift);
                members.insert(x);
                list.push(x);
            }
            shift = r.add_idx(shift, t);
        }
    }
    Ideal::new(r, members, Some(gens.to_vec()), None)
}

/// `aR`.
pub fn principal_right_ideal(r: &FiniteRing, a: Elem) -> Result<ElementSet, Error> {
    let a = r.owns(a)?;
    Ok(ElementSet::from_bits(r, right_multiples(r, a)))
}

/// `Ra`.
pub fn principal_left_ideal(r: &FiniteRing, a: Elem) -> Result<ElementSet, Error> {
    let a = r.owns(a)?;
    Ok(ElementSet::from_bits(r, left_multiples(r, a)))
}

pub fn is_nil_ideal(r: &FiniteRing, ideal: &Ideal) -> Result<bool, Error> {
    if ideal.ring_id() != r.id() {
        return Err(Error::RingMismatch);
    }
    Ok(ideal.members().iter().all(|a| is_nilpotent_idx(r, a)))
}

/// Fails with [`Error::NotNil`] naming the first non-nilpotent member.
pub fn require_nil(r: &FiniteRing, ideal: &Ideal) -> Result<(), Error> {
    if ideal.ring_id() != r.id() {
        return Err(Error::RingMismatch);
    }
    match ideal.members().iter().find(|&a| !is_nilpotent_idx(r, a)) {
        Some(a) => Err(Error::NotNil(r.label(a).to_string())),
        None => Ok(()),
    }
}

/// Lift counts for each idempotent of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub unique: bool,
    /// `(coset index in R/I, number of idempotents of R in that coset)`.
    pub lifts: Vec<(usize, usize)>,
}

pub fn lifts_idempotents_uniquely(r: &FiniteRing, ideal: &Ideal) -> Result<LiftReport, Error> {
    let q = make_quotient(r, ideal)?;
    let mut counts = vec![0usize; q.ring.order()];
    for &e in idempotent_list(r) {
        counts[q.projection[e]] += 1;
    }
    let lifts: Vec<(usize, usize)> = idempotent_list(&q.ring)
        .iter()
        .map(|&c| (c, counts[c]))
        .collect();
    Ok(LiftReport {
        unique: lifts.iter().all(|&(_, k)| k == 1),
        lifts,
    })
}

/// The ideal `2R` (two is central).
pub fn two_r(r: &FiniteRing) -> Result<Ideal, Error> {
    Ok(ideal_generated(r, &[r.elem_unchecked(r.two_idx())])?.with_name("2R"))
}

/// The nil ideals the quotient-based verifiers run over: `0`, and `J(R)`,
/// `2R`, `ω(RG)` whenever they are nil.
pub fn nil_ideal_instances(
    r: &FiniteRing,
    group_ring: Option<&GroupRing>,
) -> Result<Vec<Ideal>, Error> {
    let mut out = vec![Ideal::zero(r)];
    let mut candidates = vec![jacobson_radical(r)?, two_r(r)?];
    if let Some(gr) = group_ring {
        if gr.ring.id() == r.id() {
            candidates.push(gr.augmentation_ideal()?);
        }
    }
    for ideal in candidates {
        if is_nil_ideal(r, &ideal)? {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// Ring classes decided by [`ring_class_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Abelian,
    Commutative,
    Boolean,
    Uu,
    Semipotent,
    Ncunc,
    Cunc,
    Cuc,
    UniquelyNilClean,
    NilClean,
    Clean,
    Exchange,
    StronglyNilClean,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::Abelian,
        Property::Commutative,
        Property::Boolean,
        Property::Uu,
        Property::Semipotent,
        Property::Ncunc,
        Property::Cunc,
        Property::Cuc,
        Property::UniquelyNilClean,
        Property::NilClean,
        Property::Clean,
        Property::Exchange,
        Property::StronglyNilClean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Abelian => "abelian",
            Property::Commutative => "commutative",
            Property::Boolean => "boolean",
            Property::Uu => "uu",
            Property::Semipotent => "semipotent",
            Property::Ncunc => "ncunc",
            Property::Cunc => "cunc",
            Property::Cuc => "cuc",
            Property::UniquelyNilClean => "uniquely_nil_clean",
            Property::NilClean => "nil_clean",
            Property::Clean => "clean",
            Property::Exchange => "exchange",
            Property::StronglyNilClean => "strongly_nil_clean",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property {s:?}")))
    }
}

/// Truth value of a ring-level predicate; a false predicate names an
/// element refuting it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<usize>,
}

/// Whether `a` is a counterexample to `property`.
pub fn refutes(r: &FiniteRing, property: Property, a: usize) -> Result<bool, Error> {
    let one = r.one_idx();
    Ok(match property {
        Property::Abelian => is_idempotent_idx(r, a) && !is_central_idx(r, a),
        Property::Commutative => !is_central_idx(r, a),
        Property::Boolean => !is_idempotent_idx(r, a),
        Property::Uu => is_unit_idx(r, a) && !is_nilpotent_idx(r, r.sub_idx(a, one)),
        Property::Semipotent => {
            if in_radical(r, a)? {
                false
            } else {
                let zero = r.zero_idx();
                let right = right_multiples(r, a);
                let left = left_multiples(r, a);
                let has = |bits: &BitVec| idempotent_list(r).iter().any(|&e| e != zero && bits[e]);
                !(has(&right) && has(&left))
            }
        }
        Property::Ncunc => count_nil_clean(r, a, 2) == 2,
        Property::Cunc => count_clean(r, a, 1) == 1 && count_nil_clean(r, a, 2) != 1,
        Property::Cuc => count_clean(r, a, 2) == 2,
        Property::UniquelyNilClean => count_nil_clean(r, a, 2) != 1,
        Property::NilClean => count_nil_clean(r, a, 1) == 0,
        Property::Clean => count_clean(r, a, 1) == 0,
        Property::Exchange => !is_exchange_idx(r, a),
        Property::StronglyNilClean => nil_clean_idempotents(r, a, Commuting::Required)
            .next()
            .is_none(),
    })
}

/// Decides `property` by searching for a refuting element.
pub fn check_property(r: &FiniteRing, property: Property) -> Result<Check, Error> {
    for a in 0..r.order() {
        if refutes(r, property, a)? {
            return Ok(Check {
                holds: false,
                witness: Some(a),
            });
        }
    }
    Ok(Check {
        holds: true,
        witness: None,
    })
}

pub fn is_abelian(r: &FiniteRing) -> bool {
    // idempotent centrality only needs the idempotent list
    idempotent_list(r).iter().all(|&e| central_bits(r)[e])
}

pub fn is_commutative(r: &FiniteRing) -> bool {
    central_bits(r).all()
}

pub fn is_boolean(r: &FiniteRing) -> bool {
    idempotent_list(r).len() == r.order()
}

/// `U(R) = 1 + nil(R)`, tested as set equality.
pub fn is_uu(r: &FiniteRing) -> bool {
    let one = r.one_idx();
    let shifted =
        ElementSet::from_indices(r, elements::nilpotents(r).iter().map(|b| r.add_idx(one, b)));
    shifted == elements::units(r)
}

/// Every principal one-sided ideal generated outside `J(R)` contains a
/// nonzero idempotent, on both sides.
pub fn is_semipotent(r: &FiniteRing) -> Result<bool, Error> {
    Ok(check_property(r, Property::Semipotent)?.holds)
}

pub fn is_cunc(r: &FiniteRing) -> Result<bool, Error> {
    Ok(check_property(r, Property::Cunc)?.holds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSizes {
    pub units: usize,
    pub nilpotents: usize,
    pub idempotents: usize,
    pub jacobson: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub order: usize,
    pub checks: BTreeMap<Property, Check>,
    pub sizes: SetSizes,
}

impl PropertyReport {
    pub fn get(&self, property: Property) -> Check {
        self.checks[&property]
    }

    pub fn holds(&self, property: Property) -> bool {
        self.get(property).holds
    }

    /// Re-checks that every false predicate carries a witness refuting it.
    pub fn revalidate(&self, r: &FiniteRing) -> Result<(), Property> {
        for (&p, check) in &self.checks {
            if check.holds {
                continue;
            }
            match check.witness {
                Some(w) if refutes(r, p, w).unwrap_or(false) => {}
                _ => return Err(p),
            }
        }
        Ok(())
    }
}

pub fn ring_class_report(r: &FiniteRing) -> Result<PropertyReport, Error> {
    let mut checks = BTreeMap::new();
    for p in Property::ALL {
        checks.insert(p, check_property(r, p)?);
    }
    Ok(PropertyReport {
        order: r.order(),
        checks,
        sizes: SetSizes {
            units: elements::units(r).len(),
            nilpotents: elements::nilpotents(r).len(),
            idempotents: idempotent_list(r).len(),
            jacobson: jacobson_radical(r)?.len(),
        },
    })
}

/// `(nil(R) + nil(R)) ∩ idem(R)`.
pub fn nil_plus_nil_cap_idem(r: &FiniteRing) -> ElementSet {
    let nil = elements::nilpotents(r).to_vec();
    let mut out = ElementSet::empty(r);
    for &b in &nil {
        for &c in &nil {
            let s = r.add_idx(b, c);
            if is_idempotent_idx(r, s) {
                out.insert(s);
            }
        }
    }
    out
}

/// `(idem(R) − idem(R)) ∩ nil(R)`.
pub fn idem_minus_idem_cap_nil(r: &FiniteRing) -> ElementSet {
    let idem = idempotent_list(r);
    let mut out = ElementSet::empty(r);
    for &e in idem {
        for &f in idem {
            let d = r.sub_idx(e, f);
            if is_nilpotent_idx(r, d) {
                out.insert(d);
            }
        }
    }
    out
}
