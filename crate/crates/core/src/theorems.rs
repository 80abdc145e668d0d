//! Verifiers that evaluate each known characterization clause-by-clause on
//! a concrete ring and report whether the clauses agree.
//!
//! Equivalences are consistent when all clauses share one truth value.
//! One-directional statements are encoded as implications (antecedent,
//! consequent) and are consistent unless the antecedent holds and the
//! consequent fails. Statements with a standing hypothesis report
//! `hypothesis_met = false` and count as consistent when it fails.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructors::{
    generated_subring, make_corner, make_group_ring, make_product, make_quotient, make_subring,
    make_zmod, Embedded, GroupRing, Limits,
};
use crate::elements::{
    count_clean, count_nil_clean, idempotent_list, is_central_idx, is_nilpotent_idx, is_unit_idx,
    nil_clean_idempotents, nilpotents, Commuting,
};
use crate::expr::Subject;
use crate::group::{is_2_group, FiniteGroup};
use crate::ring::FiniteRing;
use crate::structure::{
    check_property, idem_minus_idem_cap_nil, is_abelian, is_boolean, is_nil_ideal, is_uu,
    jacobson_radical, lifts_idempotents_uniquely, nil_ideal_instances, nil_plus_nil_cap_idem,
    require_nil, Check, Ideal, Property,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    NilpotentUnc,
    NcuncEquivalences,
    CentralIdempotent,
    NilIdealAbelian,
    CuncEquivalence,
    CuncThreeWay,
    RadicalReduction,
    Corner,
    SubringClosure,
    ProductClosure,
    UncRing,
    FiveWay,
    CucRelation,
    TwoNilpotent,
    QuotientCunc,
    GroupRing,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::NilpotentUnc,
        TheoremId::NcuncEquivalences,
        TheoremId::CentralIdempotent,
        TheoremId::NilIdealAbelian,
        TheoremId::CuncEquivalence,
        TheoremId::CuncThreeWay,
        TheoremId::RadicalReduction,
        TheoremId::Corner,
        TheoremId::SubringClosure,
        TheoremId::ProductClosure,
        TheoremId::UncRing,
        TheoremId::FiveWay,
        TheoremId::CucRelation,
        TheoremId::TwoNilpotent,
        TheoremId::QuotientCunc,
        TheoremId::GroupRing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::NilpotentUnc => "nilpotent-unc",
            TheoremId::NcuncEquivalences => "ncunc-equivalences",
            TheoremId::CentralIdempotent => "central-idempotent",
            TheoremId::NilIdealAbelian => "nil-ideal-abelian",
            TheoremId::CuncEquivalence => "cunc-equivalence",
            TheoremId::CuncThreeWay => "cunc-three-way",
            TheoremId::RadicalReduction => "radical-reduction",
            TheoremId::Corner => "corner",
            TheoremId::SubringClosure => "subring-closure",
            TheoremId::ProductClosure => "product-closure",
            TheoremId::UncRing => "unc-ring",
            TheoremId::FiveWay => "five-way",
            TheoremId::CucRelation => "cuc-relation",
            TheoremId::TwoNilpotent => "two-nilpotent",
            TheoremId::QuotientCunc => "quotient-cunc",
            TheoremId::GroupRing => "group-ring",
        }
    }

    /// One-line statement, for listings.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::NilpotentUnc => {
                "nilpotents are uniquely nil-clean iff (nil+nil) ∩ idem = {0}"
            }
            TheoremId::NcuncEquivalences => "six equivalent forms of NCUNC, including abelian",
            TheoremId::CentralIdempotent => "an idempotent is uniquely nil-clean iff central",
            TheoremId::NilIdealAbelian => {
                "for nil I: R abelian iff R/I abelian and idempotents lift uniquely"
            }
            TheoremId::CuncEquivalence => "CUNC iff abelian and UU",
            TheoremId::CuncThreeWay => {
                "CUNC iff abelian with clean ⇒ nil-clean iff NCUNC with units nil-clean"
            }
            TheoremId::RadicalReduction => {
                "CUNC iff J nil, R/J CUNC and idempotents lift uniquely mod J"
            }
            TheoremId::Corner => "CUNC passes to every corner eRe",
            TheoremId::SubringClosure => "CUNC passes to subrings",
            TheoremId::ProductClosure => "a product is CUNC iff every factor is",
            TheoremId::UncRing => {
                "uniquely nil-clean iff semipotent CUNC iff abelian, J nil, R/J boolean"
            }
            TheoremId::FiveWay => {
                "for CUNC rings: uniquely nil-clean, nil-clean, clean, exchange, semipotent agree"
            }
            TheoremId::CucRelation => "for semipotent rings: CUNC iff CUC and J nil",
            TheoremId::TwoNilpotent => "CUNC implies 2 is nilpotent",
            TheoremId::QuotientCunc => "CUNC passes to quotients by nil ideals",
            TheoremId::GroupRing => "RG is CUNC iff R is CUNC and G is a 2-group",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Equivalence,
    Implication,
    /// Two inclusions that must both hold for every element.
    Elementwise,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Clause {
    pub statement: String,
    pub value: bool,
    /// Label of an element refuting the clause, when it is false.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    fn new(statement: impl Into<String>, value: bool) -> Self {
        Clause {
            statement: statement.into(),
            value,
            witness: None,
        }
    }

    fn from_check(r: &FiniteRing, statement: impl Into<String>, check: Check) -> Self {
        Clause {
            statement: statement.into(),
            value: check.holds,
            witness: check.witness.map(|w| r.label(w).to_string()),
        }
    }

    fn witnessed(mut self, witness: Option<String>) -> Self {
        if !self.value {
            self.witness = witness;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremVerdict {
    pub theorem_id: TheoremId,
    pub shape: Shape,
    /// Parameter description (ideal, idempotent set, factor list, group).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub hypothesis_met: bool,
    pub clauses: Vec<Clause>,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl TheoremVerdict {
    fn build(id: TheoremId, shape: Shape, clauses: Vec<Clause>) -> Self {
        let values: Vec<bool> = clauses.iter().map(|c| c.value).collect();
        let consistent = match shape {
            Shape::Equivalence => values.windows(2).all(|w| w[0] == w[1]),
            Shape::Implication => !values[0] || values[1..].iter().all(|&v| v),
            Shape::Elementwise => values.iter().all(|&v| v),
        };
        let witness = if consistent {
            None
        } else {
            let parts: Vec<String> = clauses
                .iter()
                .map(|c| match &c.witness {
                    Some(w) => format!("{}={} (at {w})", c.statement, c.value),
                    None => format!("{}={}", c.statement, c.value),
                })
                .collect();
            Some(parts.join("; "))
        };
        TheoremVerdict {
            theorem_id: id,
            shape,
            instance: None,
            hypothesis_met: true,
            clauses,
            consistent,
            witness,
        }
    }

    fn equivalence(id: TheoremId, clauses: Vec<Clause>) -> Self {
        Self::build(id, Shape::Equivalence, clauses)
    }

    fn implication(id: TheoremId, antecedent: Clause, consequent: Clause) -> Self {
        Self::build(id, Shape::Implication, vec![antecedent, consequent])
    }

    fn with_instance(mut self, instance: impl Into<String>) -> Self {
        self.instance = Some(instance.into());
        self
    }

    /// Marks a failed standing hypothesis: the verdict is vacuously
    /// consistent.
    fn hypothesis(mut self, met: bool) -> Self {
        if !met {
            self.hypothesis_met = false;
            self.consistent = true;
            self.witness = None;
        }
        self
    }
}

fn first_label(r: &FiniteRing, mut it: impl Iterator<Item = usize>) -> Option<String> {
    it.next().map(|a| r.label(a).to_string())
}

fn cunc(r: &FiniteRing) -> Result<Check, Error> {
    check_property(r, Property::Cunc)
}

fn zero_only_clause(r: &FiniteRing, statement: &str, set: &crate::ElementSet) -> Clause {
    let zero = r.zero_idx();
    Clause::new(statement, set.is_zero_only(r))
        .witnessed(first_label(r, set.iter().filter(|&x| x != zero)))
}

/// Nilpotents are uniquely nil-clean iff `(nil + nil) ∩ idem = {0}`.
pub fn verify_prop_nilpotents_unc(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let bad = nilpotents(r)
        .iter()
        .find(|&b| count_nil_clean(r, b, 2) != 1);
    let c1 = Clause::new("every nilpotent is uniquely nil-clean", bad.is_none())
        .witnessed(bad.map(|b| r.label(b).to_string()));
    let c2 = zero_only_clause(r, "(nil+nil) ∩ idem = {0}", &nil_plus_nil_cap_idem(r));
    Ok(TheoremVerdict::equivalence(
        TheoremId::NilpotentUnc,
        vec![c1, c2],
    ))
}

/// Six equivalent forms of "every nil-clean element is uniquely nil-clean".
pub fn verify_thm_ncunc_equivalences(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let n = r.order();
    let idem = idempotent_list(r);

    let c1 = Clause::from_check(r, "NCUNC", check_property(r, Property::Ncunc)?);

    let strong_bad = (0..n).find(|&a| {
        nil_clean_idempotents(r, a, Commuting::Required)
            .next()
            .is_some()
            && count_nil_clean(r, a, 2) != 1
    });
    let c2 = Clause::new(
        "every strongly nil-clean element is uniquely nil-clean",
        strong_bad.is_none(),
    )
    .witnessed(strong_bad.map(|a| r.label(a).to_string()));

    let idem_bad = idem
        .iter()
        .copied()
        .find(|&e| count_nil_clean(r, e, 2) != 1);
    let c3 = Clause::new("every idempotent is uniquely nil-clean", idem_bad.is_none())
        .witnessed(idem_bad.map(|e| r.label(e).to_string()));

    let c4 = Clause::from_check(r, "abelian", check_property(r, Property::Abelian)?);

    let nil = nilpotents(r).to_vec();
    let noncommuting = idem
        .iter()
        .copied()
        .find(|&e| nil.iter().any(|&b| !r.commute_idx(e, b)));
    let npn = nil_plus_nil_cap_idem(r);
    let c5 = Clause::new(
        "idempotents commute with nilpotents and (nil+nil) ∩ idem = {0}",
        noncommuting.is_none() && npn.is_zero_only(r),
    )
    .witnessed(
        noncommuting
            .map(|e| r.label(e).to_string())
            .or_else(|| first_label(r, npn.iter().filter(|&x| x != r.zero_idx()))),
    );

    let c6 = zero_only_clause(r, "(idem-idem) ∩ nil = {0}", &idem_minus_idem_cap_nil(r));

    Ok(TheoremVerdict::equivalence(
        TheoremId::NcuncEquivalences,
        vec![c1, c2, c3, c4, c5, c6],
    ))
}

/// For every idempotent: uniquely nil-clean iff central.
pub fn verify_cor_central_idem(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let idem = idempotent_list(r);
    let unc = |e: usize| count_nil_clean(r, e, 2) == 1;
    let a = idem
        .iter()
        .copied()
        .find(|&e| unc(e) && !is_central_idx(r, e));
    let b = idem
        .iter()
        .copied()
        .find(|&e| !unc(e) && is_central_idx(r, e));
    let c1 = Clause::new("uniquely nil-clean idempotents are central", a.is_none())
        .witnessed(a.map(|e| r.label(e).to_string()));
    let c2 = Clause::new("central idempotents are uniquely nil-clean", b.is_none())
        .witnessed(b.map(|e| r.label(e).to_string()));
    Ok(TheoremVerdict::build(
        TheoremId::CentralIdempotent,
        Shape::Elementwise,
        vec![c1, c2],
    ))
}

fn instance_name(r: &FiniteRing, ideal: &Ideal) -> String {
    ideal
        .name()
        .map(str::to_string)
        .unwrap_or_else(|| ideal.describe(r))
}

/// For a nil ideal `I`: `R` abelian iff `R/I` abelian with unique lifting.
pub fn verify_cor_nil_ideal_abelian(
    r: &FiniteRing,
    ideal: &Ideal,
) -> Result<TheoremVerdict, Error> {
    require_nil(r, ideal)?;
    let q = make_quotient(r, ideal)?;
    let lifting = lifts_idempotents_uniquely(r, ideal)?;
    let c1 = Clause::from_check(r, "R abelian", check_property(r, Property::Abelian)?);
    let q_abelian = check_property(&q.ring, Property::Abelian)?;
    let c2 = Clause::new(
        "R/I abelian and idempotents lift uniquely",
        q_abelian.holds && lifting.unique,
    )
    .witnessed(
        q_abelian
            .witness
            .map(|w| q.ring.label(w).to_string())
            .or_else(|| {
                lifting
                    .lifts
                    .iter()
                    .find(|&&(_, k)| k != 1)
                    .map(|&(c, _)| q.ring.label(c).to_string())
            }),
    );
    Ok(
        TheoremVerdict::equivalence(TheoremId::NilIdealAbelian, vec![c1, c2])
            .with_instance(instance_name(r, ideal)),
    )
}

/// CUNC iff abelian and UU.
pub fn verify_thm_cunc_equivalence(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let c1 = Clause::from_check(r, "CUNC", cunc(r)?);
    let abelian = check_property(r, Property::Abelian)?;
    let uu = check_property(r, Property::Uu)?;
    let c2 = Clause::new("abelian and UU", abelian.holds && uu.holds).witnessed(
        abelian
            .witness
            .or(uu.witness)
            .map(|w| r.label(w).to_string()),
    );
    Ok(TheoremVerdict::equivalence(
        TheoremId::CuncEquivalence,
        vec![c1, c2],
    ))
}

/// CUNC iff (abelian, clean ⇒ nil-clean) iff (NCUNC, units nil-clean).
pub fn verify_cor_cunc_three_way(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let n = r.order();
    let c1 = Clause::from_check(r, "CUNC", cunc(r)?);

    let abelian = check_property(r, Property::Abelian)?;
    let clean_not_nc = (0..n).find(|&a| count_clean(r, a, 1) == 1 && count_nil_clean(r, a, 1) == 0);
    let c2 = Clause::new(
        "abelian and every clean element is nil-clean",
        abelian.holds && clean_not_nc.is_none(),
    )
    .witnessed(
        abelian
            .witness
            .or(clean_not_nc)
            .map(|w| r.label(w).to_string()),
    );

    let ncunc = check_property(r, Property::Ncunc)?;
    let unit_not_nc = (0..n).find(|&a| is_unit_idx(r, a) && count_nil_clean(r, a, 1) == 0);
    let c3 = Clause::new(
        "NCUNC and every unit is nil-clean",
        ncunc.holds && unit_not_nc.is_none(),
    )
    .witnessed(
        ncunc
            .witness
            .or(unit_not_nc)
            .map(|w| r.label(w).to_string()),
    );

    Ok(TheoremVerdict::equivalence(
        TheoremId::CuncThreeWay,
        vec![c1, c2, c3],
    ))
}

/// CUNC iff J nil, R/J CUNC and idempotents lift uniquely modulo J.
pub fn verify_cor_radical_reduction(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let c1 = Clause::from_check(r, "CUNC", cunc(r)?);
    let j = jacobson_radical(r)?;
    let j_nil = is_nil_ideal(r, &j)?;
    let q = make_quotient(r, &j)?;
    let q_cunc = cunc(&q.ring)?;
    let lifting = lifts_idempotents_uniquely(r, &j)?;
    let c2 = Clause::new(
        "J nil, R/J CUNC and idempotents lift uniquely mod J",
        j_nil && q_cunc.holds && lifting.unique,
    )
    .witnessed(
        q_cunc
            .witness
            .map(|w| q.ring.label(w).to_string())
            .or_else(|| {
                lifting
                    .lifts
                    .iter()
                    .find(|&&(_, k)| k != 1)
                    .map(|&(c, _)| q.ring.label(c).to_string())
            }),
    );
    Ok(TheoremVerdict::equivalence(
        TheoremId::RadicalReduction,
        vec![c1, c2],
    ))
}

/// CUNC(R) ⇒ CUNC(eRe) for every nonzero idempotent `e`.
pub fn verify_cor_corner(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let antecedent = Clause::from_check(r, "R CUNC", cunc(r)?);
    let mut failing = None;
    let mut count = 0;
    for &e in idempotent_list(r) {
        if e == r.zero_idx() {
            continue;
        }
        count += 1;
        let corner = make_corner(r, r.elem_unchecked(e))?;
        if !cunc(&corner.ring)?.holds {
            failing = Some(r.label(e).to_string());
            break;
        }
    }
    let consequent = Clause::new("every corner eRe is CUNC", failing.is_none()).witnessed(failing);
    Ok(
        TheoremVerdict::implication(TheoremId::Corner, antecedent, consequent)
            .with_instance(format!("{count} nonzero idempotents")),
    )
}

/// Distinct unital subrings generated by a single element.
pub fn singly_generated_subrings(r: &FiniteRing) -> Result<Vec<Embedded>, Error> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in 0..r.order() {
        let members = generated_subring(r, &[a]);
        if !seen.insert(members.clone()) {
            continue;
        }
        match make_subring(r, &[r.elem_unchecked(a)]) {
            Ok(s) => out.push(s),
            Err(Error::NoIdentity(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// CUNC(R) ⇒ CUNC(S) for each given subring.
pub fn verify_prop_subring(r: &FiniteRing, subrings: &[Embedded]) -> Result<TheoremVerdict, Error> {
    let antecedent = Clause::from_check(r, "R CUNC", cunc(r)?);
    let mut failing = None;
    for s in subrings {
        if !cunc(&s.ring)?.holds {
            failing = Some(s.ring.provenance().to_string());
            break;
        }
    }
    let consequent =
        Clause::new("every listed subring is CUNC", failing.is_none()).witnessed(failing);
    Ok(
        TheoremVerdict::implication(TheoremId::SubringClosure, antecedent, consequent)
            .with_instance(format!("{} subrings", subrings.len())),
    )
}

/// `∏ Rᵢ` is CUNC iff every `Rᵢ` is.
pub fn verify_prop_product(
    product: &FiniteRing,
    factors: &[FiniteRing],
) -> Result<TheoremVerdict, Error> {
    let c1 = Clause::from_check(product, "product CUNC", cunc(product)?);
    let mut failing = None;
    for f in factors {
        if !cunc(f)?.holds {
            failing = Some(f.provenance().to_string());
            break;
        }
    }
    let c2 = Clause::new("every factor CUNC", failing.is_none()).witnessed(failing);
    let names: Vec<&str> = factors.iter().map(|f| f.provenance()).collect();
    Ok(
        TheoremVerdict::equivalence(TheoremId::ProductClosure, vec![c1, c2])
            .with_instance(names.join(" × ")),
    )
}

fn radical_nil_and_boolean_quotient(r: &FiniteRing) -> Result<(bool, bool), Error> {
    let j = jacobson_radical(r)?;
    let nil = is_nil_ideal(r, &j)?;
    let boolean = if j.len() == 1 {
        is_boolean(r)
    } else {
        is_boolean(&make_quotient(r, &j)?.ring)
    };
    Ok((nil, boolean))
}

/// Uniquely nil-clean iff semipotent CUNC iff abelian with J nil and R/J
/// boolean.
pub fn verify_thm_unc_ring(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let c1 = Clause::from_check(
        r,
        "uniquely nil-clean ring",
        check_property(r, Property::UniquelyNilClean)?,
    );
    let semipotent = check_property(r, Property::Semipotent)?;
    let cunc = cunc(r)?;
    let c2 = Clause::new("semipotent and CUNC", semipotent.holds && cunc.holds).witnessed(
        semipotent
            .witness
            .or(cunc.witness)
            .map(|w| r.label(w).to_string()),
    );
    let (j_nil, boolean) = radical_nil_and_boolean_quotient(r)?;
    let c3 = Clause::new(
        "abelian, J nil and R/J boolean",
        is_abelian(r) && j_nil && boolean,
    );
    Ok(TheoremVerdict::equivalence(
        TheoremId::UncRing,
        vec![c1, c2, c3],
    ))
}

/// On CUNC rings: uniquely nil-clean, nil-clean, clean, exchange and
/// semipotent agree.
pub fn verify_cor_five_way(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let hypothesis = cunc(r)?.holds;
    let clauses = [
        ("uniquely nil-clean ring", Property::UniquelyNilClean),
        ("nil-clean ring", Property::NilClean),
        ("clean ring", Property::Clean),
        ("exchange ring", Property::Exchange),
        ("semipotent ring", Property::Semipotent),
    ]
    .into_iter()
    .map(|(name, p)| Ok(Clause::from_check(r, name, check_property(r, p)?)))
    .collect::<Result<Vec<_>, Error>>()?;
    Ok(TheoremVerdict::equivalence(TheoremId::FiveWay, clauses)
        .with_instance("hypothesis: R is CUNC")
        .hypothesis(hypothesis))
}

/// On semipotent rings: CUNC iff CUC and J nil.
pub fn verify_prop_cuc_relation(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let hypothesis = check_property(r, Property::Semipotent)?.holds;
    let c1 = Clause::from_check(r, "CUNC", cunc(r)?);
    let cuc = check_property(r, Property::Cuc)?;
    let j_nil = is_nil_ideal(r, &jacobson_radical(r)?)?;
    let c2 = Clause::new("CUC and J nil", cuc.holds && j_nil)
        .witnessed(cuc.witness.map(|w| r.label(w).to_string()));
    Ok(
        TheoremVerdict::equivalence(TheoremId::CucRelation, vec![c1, c2])
            .with_instance("hypothesis: R is semipotent")
            .hypothesis(hypothesis),
    )
}

/// CUNC ⇒ 2 is nilpotent.
pub fn verify_lemma_two_nilpotent(r: &FiniteRing) -> Result<TheoremVerdict, Error> {
    let antecedent = Clause::from_check(r, "CUNC", cunc(r)?);
    let two = r.two_idx();
    let consequent = Clause::new("2 is nilpotent", is_nilpotent_idx(r, two))
        .witnessed(Some(r.label(two).to_string()));
    Ok(TheoremVerdict::implication(
        TheoremId::TwoNilpotent,
        antecedent,
        consequent,
    ))
}

/// CUNC(R) ⇒ CUNC(R/I) for a nil ideal `I`.
pub fn verify_lemma_quotient_cunc(r: &FiniteRing, ideal: &Ideal) -> Result<TheoremVerdict, Error> {
    require_nil(r, ideal)?;
    let q = make_quotient(r, ideal)?;
    let antecedent = Clause::from_check(r, "R CUNC", cunc(r)?);
    let consequent = Clause::from_check(&q.ring, "R/I CUNC", cunc(&q.ring)?);
    Ok(
        TheoremVerdict::implication(TheoremId::QuotientCunc, antecedent, consequent)
            .with_instance(instance_name(r, ideal)),
    )
}

/// `RG` is CUNC iff `R` is CUNC and `G` is a 2-group, on a prebuilt group
/// ring.
pub fn verify_group_ring(gr: &GroupRing) -> Result<TheoremVerdict, Error> {
    let c1 = Clause::from_check(&gr.ring, "RG CUNC", cunc(&gr.ring)?);
    let base = cunc(&gr.base)?;
    let two_group = is_2_group(&gr.group);
    let c2 = Clause::new("R CUNC and G a 2-group", base.holds && two_group).witnessed(
        base.witness
            .map(|w| format!("R: {}", gr.base.label(w)))
            .or_else(|| (!two_group).then(|| format!("|G| = {}", gr.group.order()))),
    );
    Ok(
        TheoremVerdict::equivalence(TheoremId::GroupRing, vec![c1, c2]).with_instance(format!(
            "R = {}, G = {} (finite, hence locally finite)",
            gr.base.provenance(),
            gr.group.name()
        )),
    )
}

pub fn verify_thm_group_ring(
    r: &FiniteRing,
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<TheoremVerdict, Error> {
    verify_group_ring(&make_group_ring(r, g, limits)?)
}

/// Runs the verifiers registered under `id`, with parameters drawn from
/// the subject (nil ideal instances, factors, subrings, group data).
pub fn verify_theorem(
    subject: &Subject,
    id: TheoremId,
    limits: &Limits,
) -> Result<Vec<TheoremVerdict>, Error> {
    let r = &subject.ring;
    let nil_ideals = || nil_ideal_instances(r, subject.group_ring.as_ref());
    Ok(match id {
        TheoremId::NilpotentUnc => vec![verify_prop_nilpotents_unc(r)?],
        TheoremId::NcuncEquivalences => vec![verify_thm_ncunc_equivalences(r)?],
        TheoremId::CentralIdempotent => vec![verify_cor_central_idem(r)?],
        TheoremId::NilIdealAbelian => nil_ideals()?
            .iter()
            .map(|i| verify_cor_nil_ideal_abelian(r, i))
            .collect::<Result<_, _>>()?,
        TheoremId::CuncEquivalence => vec![verify_thm_cunc_equivalence(r)?],
        TheoremId::CuncThreeWay => vec![verify_cor_cunc_three_way(r)?],
        TheoremId::RadicalReduction => vec![verify_cor_radical_reduction(r)?],
        TheoremId::Corner => vec![verify_cor_corner(r)?],
        TheoremId::SubringClosure => {
            vec![verify_prop_subring(r, &singly_generated_subrings(r)?)?]
        }
        TheoremId::ProductClosure => match &subject.factors {
            Some(factors) => vec![verify_prop_product(r, factors)?],
            None => {
                let z2 = make_zmod(2, limits)?;
                let factors = vec![r.clone(), z2];
                match make_product(&factors, limits) {
                    Ok(p) => vec![verify_prop_product(&p, &factors)?],
                    Err(Error::SizeCap { .. }) => vec![],
                    Err(e) => return Err(e),
                }
            }
        },
        TheoremId::UncRing => vec![verify_thm_unc_ring(r)?],
        TheoremId::FiveWay => vec![verify_cor_five_way(r)?],
        TheoremId::CucRelation => vec![verify_prop_cuc_relation(r)?],
        TheoremId::TwoNilpotent => vec![verify_lemma_two_nilpotent(r)?],
        TheoremId::QuotientCunc => nil_ideals()?
            .iter()
            .map(|i| verify_lemma_quotient_cunc(r, i))
            .collect::<Result<_, _>>()?,
        TheoremId::GroupRing => match &subject.group_ring {
            Some(gr) => vec![verify_group_ring(gr)?],
            None => vec![],
        },
    })
}

pub fn verify_all(subject: &Subject, limits: &Limits) -> Result<Vec<TheoremVerdict>, Error> {
    let mut out = Vec::new();
    for id in TheoremId::ALL {
        out.extend(verify_theorem(subject, id, limits)?);
    }
    Ok(out)
}

/// Ring classes recomputed from their structural characterizations rather
/// than from element definitions. Used to cross-check
/// [`crate::structure::ring_class_report`].
pub fn characterized_classes(r: &FiniteRing) -> Result<BTreeMap<Property, bool>, Error> {
    let abelian = is_abelian(r);
    let (j_nil, boolean_quotient) = radical_nil_and_boolean_quotient(r)?;
    let mut out = BTreeMap::new();
    out.insert(Property::Ncunc, abelian);
    out.insert(Property::Cunc, abelian && is_uu(r));
    out.insert(
        Property::UniquelyNilClean,
        abelian && j_nil && boolean_quotient,
    );
    out.insert(Property::StronglyNilClean, j_nil && boolean_quotient);
    Ok(out)
}
