//! Element classification and exhaustive decomposition enumeration.
//!
//! An element `a` is nil-clean when `a = e + q` with `e` idempotent and `q`
//! nilpotent, and clean when `a = e + u` with `u` a unit. The "strongly"
//! variants additionally require the two parts to commute. Since the second
//! part is determined by the idempotent (`q = a − e`), decompositions are
//! enumerated by walking the idempotents in index order.

use std::collections::BTreeSet;

use bitvec::vec::BitVec;
use serde::{Deserialize, Serialize};

use crate::ring::{Cell, Elem, ElementSet, FiniteRing};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClass {
    pub index: usize,
    /// Two-sided inverse, if the element is a unit.
    pub inverse: Option<usize>,
    /// Least k with a^k = 0, if the element is nilpotent.
    pub nilpotency_index: Option<u32>,
    pub idempotent: bool,
    pub central: bool,
}

impl ElementClass {
    pub fn is_unit(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionKind {
    NilClean,
    Clean,
    StronglyNilClean,
    StronglyClean,
}

/// Whether the idempotent part must commute with the other part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Commuting {
    Any,
    Required,
}

/// `element = idempotent + other`, where `other` is a nilpotent or a unit
/// depending on `kind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub idempotent: Elem,
    pub other: Elem,
}

// Cached per-ring tables.

pub(crate) fn inverses(r: &FiniteRing) -> &[Option<Cell>] {
    r.cache().inverses.get_or_init(|| {
        let one = r.one_idx();
        (0..r.order())
            .map(|a| {
                // A one-sided inverse in a finite ring is two-sided.
                (0..r.order()).find(|&b| r.mul_idx(a, b) == one).map(|b| {
                    debug_assert_eq!(r.mul_idx(b, a), one);
                    b as Cell
                })
            })
            .collect()
    })
}

pub(crate) fn nilpotency(r: &FiniteRing) -> &[Option<u32>] {
    r.cache().nilpotency.get_or_init(|| {
        let n = r.order();
        let zero = r.zero_idx();
        // a is nilpotent iff a^n = 0; n bounds every nilpotency index.
        let bound = n.next_power_of_two() as u64;
        (0..n)
            .map(|a| {
                if r.pow_idx(a, bound) != zero {
                    return None;
                }
                let mut k = 1u32;
                let mut p = a;
                while p != zero {
                    p = r.mul_idx(p, a);
                    k += 1;
                }
                Some(k)
            })
            .collect()
    })
}

pub(crate) fn idempotent_list(r: &FiniteRing) -> &[usize] {
    r.cache()
        .idempotents
        .get_or_init(|| (0..r.order()).filter(|&a| r.mul_idx(a, a) == a).collect())
}

pub(crate) fn central_bits(r: &FiniteRing) -> &BitVec {
    r.cache().central.get_or_init(|| {
        (0..r.order())
            .map(|a| (0..r.order()).all(|x| r.commute_idx(a, x)))
            .collect()
    })
}

#[inline]
pub(crate) fn is_unit_idx(r: &FiniteRing, a: usize) -> bool {
    inverses(r)[a].is_some()
}

#[inline]
pub(crate) fn is_nilpotent_idx(r: &FiniteRing, a: usize) -> bool {
    nilpotency(r)[a].is_some()
}

#[inline]
pub(crate) fn is_idempotent_idx(r: &FiniteRing, a: usize) -> bool {
    r.mul_idx(a, a) == a
}

#[inline]
pub(crate) fn is_central_idx(r: &FiniteRing, a: usize) -> bool {
    central_bits(r)[a]
}

pub fn classify(r: &FiniteRing, a: Elem) -> Result<ElementClass, Error> {
    let a = r.owns(a)?;
    Ok(ElementClass {
        index: a,
        inverse: inverses(r)[a].map(|b| b as usize),
        nilpotency_index: nilpotency(r)[a],
        idempotent: is_idempotent_idx(r, a),
        central: is_central_idx(r, a),
    })
}

pub fn units(r: &FiniteRing) -> ElementSet {
    ElementSet::from_predicate(r, |a| is_unit_idx(r, a))
}

pub fn nilpotents(r: &FiniteRing) -> ElementSet {
    ElementSet::from_predicate(r, |a| is_nilpotent_idx(r, a))
}

pub fn idempotents(r: &FiniteRing) -> ElementSet {
    ElementSet::from_indices(r, idempotent_list(r).iter().copied())
}

pub fn center(r: &FiniteRing) -> ElementSet {
    ElementSet::from_bits(r, central_bits(r).clone())
}

/// Idempotents `e` such that `a − e` is nilpotent (optionally commuting
/// with `e`), in index order.
pub(crate) fn nil_clean_idempotents(
    r: &FiniteRing,
    a: usize,
    commuting: Commuting,
) -> impl Iterator<Item = usize> + '_ {
    idempotent_list(r).iter().copied().filter(move |&e| {
        let q = r.sub_idx(a, e);
        is_nilpotent_idx(r, q) && (commuting == Commuting::Any || r.commute_idx(e, q))
    })
}

/// Idempotents `e` such that `a − e` is a unit (optionally commuting).
pub(crate) fn clean_idempotents(
    r: &FiniteRing,
    a: usize,
    commuting: Commuting,
) -> impl Iterator<Item = usize> + '_ {
    idempotent_list(r).iter().copied().filter(move |&e| {
        let u = r.sub_idx(a, e);
        is_unit_idx(r, u) && (commuting == Commuting::Any || r.commute_idx(e, u))
    })
}

/// Number of nil-clean decompositions, stopping once `cap` is reached.
pub(crate) fn count_nil_clean(r: &FiniteRing, a: usize, cap: usize) -> usize {
    nil_clean_idempotents(r, a, Commuting::Any)
        .take(cap)
        .count()
}

pub(crate) fn count_clean(r: &FiniteRing, a: usize, cap: usize) -> usize {
    clean_idempotents(r, a, Commuting::Any).take(cap).count()
}

pub(crate) fn is_exchange_idx(r: &FiniteRing, a: usize) -> bool {
    let right_a = right_multiples(r, a);
    let right_b = right_multiples(r, r.sub_idx(r.one_idx(), a));
    idempotent_list(r)
        .iter()
        .any(|&e| right_a[e] && right_b[r.sub_idx(r.one_idx(), e)])
}

/// Membership bits of `aR`.
pub(crate) fn right_multiples(r: &FiniteRing, a: usize) -> BitVec {
    let mut bits = BitVec::repeat(false, r.order());
    for x in 0..r.order() {
        bits.set(r.mul_idx(a, x), true);
    }
    bits
}

/// Membership bits of `Ra`.
pub(crate) fn left_multiples(r: &FiniteRing, a: usize) -> BitVec {
    let mut bits = BitVec::repeat(false, r.order());
    for x in 0..r.order() {
        bits.set(r.mul_idx(x, a), true);
    }
    bits
}

fn decompositions(
    r: &FiniteRing,
    a: usize,
    kind: DecompositionKind,
    idempotents: impl Iterator<Item = usize>,
) -> Vec<Decomposition> {
    idempotents
        .map(|e| Decomposition {
            kind,
            idempotent: r.elem_unchecked(e),
            other: r.elem_unchecked(r.sub_idx(a, e)),
        })
        .collect()
}

pub fn nil_clean_decomps(
    r: &FiniteRing,
    a: Elem,
    commuting: Commuting,
) -> Result<Vec<Decomposition>, Error> {
    let a = r.owns(a)?;
    let kind = match commuting {
        Commuting::Any => DecompositionKind::NilClean,
        Commuting::Required => DecompositionKind::StronglyNilClean,
    };
    Ok(decompositions(
        r,
        a,
        kind,
        nil_clean_idempotents(r, a, commuting),
    ))
}

pub fn clean_decomps(
    r: &FiniteRing,
    a: Elem,
    commuting: Commuting,
) -> Result<Vec<Decomposition>, Error> {
    let a = r.owns(a)?;
    let kind = match commuting {
        Commuting::Any => DecompositionKind::Clean,
        Commuting::Required => DecompositionKind::StronglyClean,
    };
    Ok(decompositions(
        r,
        a,
        kind,
        clean_idempotents(r, a, commuting),
    ))
}

/// Counts decompositions both as distinct (idempotent, other) pairs and as
/// distinct idempotent parts; the two must agree.
fn unique_pair(r: &FiniteRing, decomps: &[Decomposition]) -> Result<bool, Error> {
    let pairs: BTreeSet<(usize, usize)> = decomps
        .iter()
        .map(|d| (d.idempotent.index(), d.other.index()))
        .collect();
    let parts: BTreeSet<usize> = decomps.iter().map(|d| d.idempotent.index()).collect();
    if pairs.len() != parts.len() {
        return Err(Error::Internal(format!(
            "pair count {} differs from idempotent count {} in {}",
            pairs.len(),
            parts.len(),
            r.provenance()
        )));
    }
    Ok(pairs.len() == 1)
}

pub fn is_nil_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    Ok(count_nil_clean(r, r.owns(a)?, 1) > 0)
}

pub fn is_strongly_nil_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    let a = r.owns(a)?;
    Ok(nil_clean_idempotents(r, a, Commuting::Required)
        .next()
        .is_some())
}

pub fn is_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    Ok(count_clean(r, r.owns(a)?, 1) > 0)
}

pub fn is_strongly_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    let a = r.owns(a)?;
    Ok(clean_idempotents(r, a, Commuting::Required)
        .next()
        .is_some())
}

pub fn is_uniquely_nil_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    unique_pair(r, &nil_clean_decomps(r, a, Commuting::Any)?)
}

pub fn is_uniquely_clean_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    unique_pair(r, &clean_decomps(r, a, Commuting::Any)?)
}

/// Exists an idempotent `e ∈ aR` with `1 − e ∈ (1 − a)R`.
pub fn is_exchange_elem(r: &FiniteRing, a: Elem) -> Result<bool, Error> {
    Ok(is_exchange_idx(r, r.owns(a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{make_upper_triangular, make_zmod, Limits};

    fn z(n: u64) -> FiniteRing {
        make_zmod(n, &Limits::default()).unwrap()
    }

    fn t2() -> FiniteRing {
        make_upper_triangular(2, &z(2), &Limits::default()).unwrap()
    }

    #[test]
    fn classify_in_z6_and_z4() {
        let z6 = z(6);
        let c = classify(&z6, z6.elem(3).unwrap()).unwrap();
        assert!(c.idempotent && c.central && !c.is_unit() && !c.is_nilpotent());
        let z4 = z(4);
        let c = classify(&z4, z4.elem(3).unwrap()).unwrap();
        assert_eq!(c.inverse, Some(3));
        let c = classify(&z4, z4.elem(2).unwrap()).unwrap();
        assert_eq!(c.nilpotency_index, Some(2));
        let c = classify(&z4, z4.zero()).unwrap();
        assert_eq!(c.nilpotency_index, Some(1));
    }

    #[test]
    fn e12_is_nilpotent_and_not_central() {
        let r = t2();
        let e12 = r.elem_by_label("[[0,1],[0,0]]").unwrap();
        let c = classify(&r, e12).unwrap();
        assert_eq!(c.nilpotency_index, Some(2));
        assert!(!c.central);
    }

    #[test]
    fn decompositions_in_z4() {
        let z4 = z(4);
        let d = nil_clean_decomps(&z4, z4.elem(3).unwrap(), Commuting::Any).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].idempotent.index(), d[0].other.index()), (1, 2));
        for a in z4.elems() {
            assert!(is_uniquely_nil_clean_elem(&z4, a).unwrap());
        }
    }

    #[test]
    fn five_in_z6_is_clean_but_not_nil_clean() {
        let z6 = z(6);
        let five = z6.elem(5).unwrap();
        let clean: Vec<(usize, usize)> = clean_decomps(&z6, five, Commuting::Any)
            .unwrap()
            .iter()
            .map(|d| (d.idempotent.index(), d.other.index()))
            .collect();
        assert!(clean.contains(&(0, 5)) && clean.contains(&(4, 1)));
        assert!(nil_clean_decomps(&z6, five, Commuting::Any)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exchange_on_units_and_idempotents() {
        let z6 = z(6);
        for a in z6.elems() {
            let c = classify(&z6, a).unwrap();
            if c.idempotent || c.is_unit() {
                assert!(is_exchange_elem(&z6, a).unwrap());
            }
        }
        let z4 = z(4);
        assert!(z4.elems().all(|a| is_exchange_elem(&z4, a).unwrap()));
    }

    #[test]
    fn zero_is_nil_clean() {
        for r in [z(2), z(6), t2()] {
            assert!(is_nil_clean_elem(&r, r.zero()).unwrap());
        }
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let (a, b) = (z(4), z(4));
        assert!(classify(&a, b.one()).is_err());
        assert!(nil_clean_decomps(&a, b.one(), Commuting::Any).is_err());
    }
}
