//! Table-backed finite rings.
//!
//! A [`FiniteRing`] stores its elements as dense indices `0..order` together
//! with materialized addition and multiplication tables. Every other module
//! works either through checked [`Elem`] handles or through the raw
//! `*_idx` accessors when it iterates over the whole carrier.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use bitvec::vec::BitVec;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Table cell type. Orders above `u16::MAX + 1` are not representable.
pub(crate) type Cell = u16;

/// Largest ring order the table representation can hold.
pub const MAX_SUPPORTED_ORDER: usize = 1 << 16;

/// Opaque identity of a constructed ring. Clones of a ring share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

impl RingId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        RingId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// A handle naming one element of one ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    ring: RingId,
    index: usize,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn ring_id(self) -> RingId {
        self.ring
    }
}

/// Raw ring tables in row-major order, as handed to [`verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTables {
    pub order: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl RingTables {
    pub fn from_fns(
        order: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut add_table = Vec::with_capacity(order * order);
        let mut mul_table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                add_table.push(add(a, b));
                mul_table.push(mul(a, b));
            }
        }
        RingTables {
            order,
            add: add_table,
            mul: mul_table,
            zero,
            one,
        }
    }

    fn check_well_formed(&self) -> Result<(), TableError> {
        let n = self.order;
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_SUPPORTED_ORDER {
            return Err(TableError::TooLarge { order: n });
        }
        for (name, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n * n {
                return Err(TableError::WrongSize {
                    table: name,
                    found: table.len(),
                    expected: n * n,
                });
            }
            if let Some(pos) = table.iter().position(|&v| v >= n) {
                return Err(TableError::EntryOutOfRange {
                    table: name,
                    row: pos / n,
                    col: pos % n,
                    value: table[pos],
                    order: n,
                });
            }
        }
        for (name, value) in [("zero", self.zero), ("one", self.one)] {
            if value >= n {
                return Err(TableError::SpecialOutOfRange {
                    which: name,
                    value,
                    order: n,
                });
            }
        }
        Ok(())
    }
}

/// Structural defects of a table, as opposed to axiom violations.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("ring has no elements")]
    Empty,
    #[error("order {order} exceeds the supported maximum of {MAX_SUPPORTED_ORDER}")]
    TooLarge { order: usize },
    #[error("{table} table has {found} entries, expected {expected}")]
    WrongSize {
        table: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("{table}[{row}][{col}] = {value} is out of range for order {order}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("{which} index {value} is out of range for order {order}")]
    SpecialOutOfRange {
        which: &'static str,
        value: usize,
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    NonzeroIdentity,
    LeftIdentity,
    RightIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::NonzeroIdentity => "zero differs from one",
            Axiom::LeftIdentity => "left identity",
            Axiom::RightIdentity => "right identity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
        };
        f.write_str(name)
    }
}

/// Outcome of an axiom check. A failure names the first violated axiom and
/// the element triple (unused slots repeat the first element) witnessing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomReport {
    Pass,
    Fail { axiom: Axiom, witness: [usize; 3] },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

/// How many triples the cubic axioms (associativity, distributivity) visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

trait TableView {
    fn order(&self) -> usize;
    fn zero(&self) -> usize;
    fn one(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
}

impl TableView for RingTables {
    fn order(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }
}

impl TableView for FiniteRing {
    fn order(&self) -> usize {
        self.inner.order
    }
    fn zero(&self) -> usize {
        self.inner.zero
    }
    fn one(&self) -> usize {
        self.inner.one
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, b)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_idx(a, b)
    }
}

/// Checks every unital-ring axiom on raw tables.
///
/// Malformed tables (wrong size, indices out of range) are reported as
/// [`TableError`]; genuine axiom violations come back as
/// [`AxiomReport::Fail`].
pub fn verify_axioms(tables: &RingTables) -> Result<AxiomReport, TableError> {
    verify_axioms_with(tables, Coverage::Exhaustive)
}

pub fn verify_axioms_with(
    tables: &RingTables,
    coverage: Coverage,
) -> Result<AxiomReport, TableError> {
    tables.check_well_formed()?;
    Ok(check_axioms(tables, coverage))
}

fn check_axioms<T: TableView>(t: &T, coverage: Coverage) -> AxiomReport {
    let fail = |axiom, witness| AxiomReport::Fail { axiom, witness };
    let n = t.order();
    let (zero, one) = (t.zero(), t.one());

    for a in 0..n {
        if t.add(zero, a) != a || t.add(a, zero) != a {
            return fail(Axiom::AdditiveIdentity, [a, a, a]);
        }
    }
    for a in 0..n {
        if !(0..n).any(|b| t.add(a, b) == zero) {
            return fail(Axiom::AdditiveInverse, [a, a, a]);
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if t.add(a, b) != t.add(b, a) {
                return fail(Axiom::AdditiveCommutativity, [a, b, a]);
            }
        }
    }
    if zero == one {
        return fail(Axiom::NonzeroIdentity, [zero, zero, zero]);
    }
    for a in 0..n {
        if t.mul(one, a) != a {
            return fail(Axiom::LeftIdentity, [a, a, a]);
        }
        if t.mul(a, one) != a {
            return fail(Axiom::RightIdentity, [a, a, a]);
        }
    }

    let check_triple = |a: usize, b: usize, c: usize| -> Option<Axiom> {
        if t.add(t.add(a, b), c) != t.add(a, t.add(b, c)) {
            return Some(Axiom::AdditiveAssociativity);
        }
        if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
            return Some(Axiom::MultiplicativeAssociativity);
        }
        if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)) {
            return Some(Axiom::LeftDistributivity);
        }
        if t.mul(t.add(a, b), c) != t.add(t.mul(a, c), t.mul(b, c)) {
            return Some(Axiom::RightDistributivity);
        }
        None
    };

    match coverage {
        Coverage::Exhaustive => {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if let Some(axiom) = check_triple(a, b, c) {
                            return fail(axiom, [a, b, c]);
                        }
                    }
                }
            }
        }
        Coverage::Sampled { triples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..triples {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if let Some(axiom) = check_triple(a, b, c) {
                    return fail(axiom, [a, b, c]);
                }
            }
        }
    }
    AxiomReport::Pass
}

/// Write-once memo tables shared by all clones of a ring.
#[derive(Default, Debug)]
pub(crate) struct RingCache {
    pub inverses: OnceLock<Vec<Option<Cell>>>,
    pub nilpotency: OnceLock<Vec<Option<u32>>>,
    pub idempotents: OnceLock<Vec<usize>>,
    pub central: OnceLock<BitVec>,
    pub radical: OnceLock<BitVec>,
}

#[derive(Debug)]
struct RingInner {
    id: RingId,
    order: usize,
    add: Vec<Cell>,
    mul: Vec<Cell>,
    neg: Vec<Cell>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
    provenance: String,
    cache: RingCache,
}

/// An immutable finite unital ring with materialized operation tables.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

fn check_shape(order: usize, zero: usize, one: usize, labels: &[String]) -> Result<(), Error> {
    if order > MAX_SUPPORTED_ORDER {
        return Err(TableError::TooLarge { order }.into());
    }
    if order < 2 || zero == one {
        return Err(Error::ZeroRing);
    }
    if labels.len() != order {
        return Err(Error::Labels(format!(
            "expected {order} labels, found {}",
            labels.len()
        )));
    }
    let mut seen = std::collections::HashSet::with_capacity(order);
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(Error::Labels(format!("duplicate label {dup:?}")));
    }
    Ok(())
}

impl FiniteRing {
    /// Builds a ring from raw tables.
    ///
    /// Performs the quadratic checks (identities, inverses, commutativity of
    /// addition, label sanity). The cubic axioms are left to
    /// [`FiniteRing::verify_axioms`].
    pub fn from_tables(
        tables: RingTables,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self, Error> {
        tables.check_well_formed()?;
        let RingTables {
            order,
            add,
            mul,
            zero,
            one,
        } = tables;
        Self::from_fns(
            order,
            zero,
            one,
            |a, b| add[a * order + b],
            |a, b| mul[a * order + b],
            labels,
            provenance,
        )
    }

    /// Builds a ring by evaluating the operations on every pair.
    pub(crate) fn from_fns(
        order: usize,
        zero: usize,
        one: usize,
        mut add: impl FnMut(usize, usize) -> usize,
        mut mul: impl FnMut(usize, usize) -> usize,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self, Error> {
        check_shape(order, zero, one, &labels)?;
        let mut add_table = Vec::with_capacity(order * order);
        let mut mul_table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                add_table.push(add(a, b) as Cell);
                mul_table.push(mul(a, b) as Cell);
            }
        }
        Self::from_raw(order, zero, one, add_table, mul_table, labels, provenance)
    }

    /// Builds a ring from row-major tables already filled by a constructor.
    pub(crate) fn from_raw(
        order: usize,
        zero: usize,
        one: usize,
        add_table: Vec<Cell>,
        mul_table: Vec<Cell>,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self, Error> {
        check_shape(order, zero, one, &labels)?;
        if add_table.len() != order * order || mul_table.len() != order * order {
            return Err(Error::Internal("table size does not match order".into()));
        }
        debug_assert!(add_table
            .iter()
            .chain(&mul_table)
            .all(|&v| (v as usize) < order));
        let mut neg = Vec::with_capacity(order);
        for a in 0..order {
            let row = &add_table[a * order..(a + 1) * order];
            match row.iter().position(|&v| v as usize == zero) {
                Some(b) => neg.push(b as Cell),
                None => {
                    return Err(Error::Axiom {
                        axiom: Axiom::AdditiveInverse,
                        witness: [a, a, a],
                    })
                }
            }
        }

        let ring = FiniteRing {
            inner: Arc::new(RingInner {
                id: RingId::fresh(),
                order,
                add: add_table,
                mul: mul_table,
                neg,
                zero,
                one,
                labels,
                provenance: provenance.into(),
                cache: RingCache::default(),
            }),
        };
        ring.quick_checks()?;
        Ok(ring)
    }

    fn quick_checks(&self) -> Result<(), Error> {
        let n = self.order();
        let (zero, one) = (self.zero_idx(), self.one_idx());
        let bad = |axiom, a| {
            Err(Error::Axiom {
                axiom,
                witness: [a, a, a],
            })
        };
        for a in 0..n {
            if self.add_idx(zero, a) != a {
                return bad(Axiom::AdditiveIdentity, a);
            }
            if self.mul_idx(one, a) != a {
                return bad(Axiom::LeftIdentity, a);
            }
            if self.mul_idx(a, one) != a {
                return bad(Axiom::RightIdentity, a);
            }
        }
        Ok(())
    }

    /// Exhaustive axiom check (cubic in the order).
    pub fn verify_axioms(&self) -> AxiomReport {
        check_axioms(self, Coverage::Exhaustive)
    }

    pub fn verify_axioms_with(&self, coverage: Coverage) -> AxiomReport {
        check_axioms(self, coverage)
    }

    pub fn id(&self) -> RingId {
        self.inner.id
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn provenance(&self) -> &str {
        &self.inner.provenance
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.labels[index]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    pub(crate) fn cache(&self) -> &RingCache {
        &self.inner.cache
    }

    /// Exports the tables in the raw form accepted by [`verify_axioms`].
    pub fn tables(&self) -> RingTables {
        RingTables {
            order: self.order(),
            add: self.inner.add.iter().map(|&v| v as usize).collect(),
            mul: self.inner.mul.iter().map(|&v| v as usize).collect(),
            zero: self.zero_idx(),
            one: self.one_idx(),
        }
    }

    // Checked element handles.

    pub fn elem(&self, index: usize) -> Result<Elem, Error> {
        if index < self.order() {
            Ok(Elem {
                ring: self.id(),
                index,
            })
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            })
        }
    }

    pub(crate) fn elem_unchecked(&self, index: usize) -> Elem {
        debug_assert!(index < self.order());
        Elem {
            ring: self.id(),
            index,
        }
    }

    pub fn elem_by_label(&self, label: &str) -> Result<Elem, Error> {
        self.find_label(label)
            .map(|i| self.elem_unchecked(i))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(|i| self.elem_unchecked(i))
    }

    pub fn zero(&self) -> Elem {
        self.elem_unchecked(self.zero_idx())
    }

    pub fn one(&self) -> Elem {
        self.elem_unchecked(self.one_idx())
    }

    pub fn owns(&self, a: Elem) -> Result<usize, Error> {
        if a.ring == self.id() {
            Ok(a.index)
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn elem_label(&self, a: Elem) -> Result<&str, Error> {
        Ok(self.label(self.owns(a)?))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem, Error> {
        Ok(self.elem_unchecked(self.add_idx(self.owns(a)?, self.owns(b)?)))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem, Error> {
        Ok(self.elem_unchecked(self.mul_idx(self.owns(a)?, self.owns(b)?)))
    }

    pub fn neg(&self, a: Elem) -> Result<Elem, Error> {
        Ok(self.elem_unchecked(self.neg_idx(self.owns(a)?)))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Result<Elem, Error> {
        Ok(self.elem_unchecked(self.sub_idx(self.owns(a)?, self.owns(b)?)))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Result<Elem, Error> {
        Ok(self.elem_unchecked(self.pow_idx(self.owns(a)?, k)))
    }

    // Raw index arithmetic. Callers guarantee indices are in range.

    #[inline]
    pub fn zero_idx(&self) -> usize {
        self.inner.zero
    }

    #[inline]
    pub fn one_idx(&self) -> usize {
        self.inner.one
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.inner.add[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.inner.neg[a] as usize
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `a^k` by repeated squaring; `a^0` is one.
    pub fn pow_idx(&self, a: usize, mut k: u64) -> usize {
        let mut acc = self.one_idx();
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            k >>= 1;
        }
        acc
    }

    /// The integer multiple `k·a`.
    pub fn times_idx(&self, k: u64, a: usize) -> usize {
        let mut acc = self.zero_idx();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_idx(acc, base);
            }
            base = self.add_idx(base, base);
            k >>= 1;
        }
        acc
    }

    /// The element `1 + 1`.
    pub fn two_idx(&self) -> usize {
        self.add_idx(self.one_idx(), self.one_idx())
    }

    #[inline]
    pub fn commute_idx(&self, a: usize, b: usize) -> bool {
        self.mul_idx(a, b) == self.mul_idx(b, a)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.provenance(), self.order())
    }
}

/// A subset of a ring's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    ring: RingId,
    bits: BitVec,
}

impl ElementSet {
    pub fn empty(ring: &FiniteRing) -> Self {
        ElementSet {
            ring: ring.id(),
            bits: BitVec::repeat(false, ring.order()),
        }
    }

    pub fn full(ring: &FiniteRing) -> Self {
        ElementSet {
            ring: ring.id(),
            bits: BitVec::repeat(true, ring.order()),
        }
    }

    pub fn from_indices(ring: &FiniteRing, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(ring);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn from_predicate(ring: &FiniteRing, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut set = Self::empty(ring);
        for i in 0..ring.order() {
            if pred(i) {
                set.insert(i);
            }
        }
        set
    }

    pub(crate) fn from_bits(ring: &FiniteRing, bits: BitVec) -> Self {
        debug_assert_eq!(bits.len(), ring.order());
        ElementSet {
            ring: ring.id(),
            bits,
        }
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    /// Length of the underlying carrier, not the number of members.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, index: usize) {
        self.bits.set(index, true);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.get(index).map(|b| *b).unwrap_or(false)
    }

    pub fn contains_elem(&self, a: Elem) -> bool {
        a.ring == self.ring && self.contains(a.index)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// True iff the set is exactly `{0}`.
    pub fn is_zero_only(&self, ring: &FiniteRing) -> bool {
        self.len() == 1 && self.contains(ring.zero_idx())
    }

    pub fn labels(&self, ring: &FiniteRing) -> Vec<String> {
        self.iter().map(|i| ring.label(i).to_string()).collect()
    }
}
