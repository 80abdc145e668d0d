//! Compositional ring constructors.
//!
//! Every constructor derives a fresh [`FiniteRing`] from smaller inputs and
//! refuses results whose order exceeds the configured [`Limits`].

use std::env;

use crate::expr::elem_ref_text;
use crate::group::FiniteGroup;
use crate::ring::{Cell, Elem, ElementSet, FiniteRing, MAX_SUPPORTED_ORDER};
use crate::structure::{ideal_generated, Ideal};
use crate::Error;

/// Size cap applied by every constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ORDER: usize = 4096;
    pub const ENV_VAR: &'static str = "RINGLAB_MAX_ORDER";

    pub fn new(max_order: usize) -> Self {
        Limits { max_order }
    }

    /// Reads `RINGLAB_MAX_ORDER`, falling back to the default cap.
    pub fn from_env() -> Result<Self, Error> {
        match env::var(Self::ENV_VAR) {
            Ok(v) => v.trim().parse::<usize>().map(Limits::new).map_err(|_| {
                Error::InvalidArgument(format!("{}={v:?} is not a number", Self::ENV_VAR))
            }),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn cap(&self) -> usize {
        self.max_order.min(MAX_SUPPORTED_ORDER)
    }

    pub(crate) fn check(&self, requested: u128) -> Result<usize, Error> {
        if requested > self.cap() as u128 {
            Err(Error::SizeCap {
                requested,
                cap: self.cap(),
            })
        } else {
            Ok(requested as usize)
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::new(Self::DEFAULT_MAX_ORDER)
    }
}

fn checked_power(base: usize, exp: usize) -> u128 {
    (0..exp)
        .try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
        .unwrap_or(u128::MAX)
}

/// Mixed-radix codec; the first digit is the most significant.
#[derive(Clone, Debug)]
struct Radix {
    bases: Vec<usize>,
}

impl Radix {
    fn uniform(base: usize, digits: usize) -> Self {
        Radix {
            bases: vec![base; digits],
        }
    }

    fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.bases.len()];
        for (slot, &b) in digits.iter_mut().zip(&self.bases).rev() {
            *slot = index % b;
            index /= b;
        }
        digits
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.bases)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    }
}

/// Coefficient labels other than plain integers are parenthesized, so a
/// coefficient named like a group element cannot collide with one.
fn wrap_label(label: &str) -> String {
    if label.chars().all(|c| c.is_ascii_digit()) {
        label.to_string()
    } else {
        format!("({label})")
    }
}

/// Integers modulo n.
pub fn make_zmod(n: u64, limits: &Limits) -> Result<FiniteRing, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Z{n}: modulus must be at least 2"
        )));
    }
    let order = limits.check(n as u128)?;
    let labels = (0..order).map(|i| i.to_string()).collect();
    FiniteRing::from_fns(
        order,
        0,
        1 % order,
        |a, b| (a + b) % order,
        |a, b| ((a as u64 * b as u64) % n) as usize,
        labels,
        format!("Z{n}"),
    )
}

/// Full n×n matrices over `r`.
pub fn make_matrix_ring(n: usize, r: &FiniteRing, limits: &Limits) -> Result<FiniteRing, Error> {
    let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    matrix_like(
        n,
        r,
        positions,
        limits,
        format!("M({n},{})", r.provenance()),
    )
}

/// Upper triangular n×n matrices over `r`.
pub fn make_upper_triangular(
    n: usize,
    r: &FiniteRing,
    limits: &Limits,
) -> Result<FiniteRing, Error> {
    let positions = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    matrix_like(
        n,
        r,
        positions,
        limits,
        format!("T({n},{})", r.provenance()),
    )
}

fn matrix_like(
    n: usize,
    r: &FiniteRing,
    positions: Vec<(usize, usize)>,
    limits: &Limits,
    provenance: String,
) -> Result<FiniteRing, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "matrix size must be at least 1".into(),
        ));
    }
    let order = limits.check(checked_power(r.order(), positions.len()))?;
    let radix = Radix::uniform(r.order(), positions.len());
    let zero = r.zero_idx();

    // slot[i][j] = digit position, or None outside the shape
    let mut slot = vec![vec![None; n]; n];
    for (k, &(i, j)) in positions.iter().enumerate() {
        slot[i][j] = Some(k);
    }
    let entry = |digits: &[usize], i: usize, j: usize| slot[i][j].map_or(zero, |k| digits[k]);

    let decoded: Vec<Vec<usize>> = (0..order).map(|x| radix.decode(x)).collect();
    let add = |a: usize, b: usize| {
        let d: Vec<usize> = decoded[a]
            .iter()
            .zip(&decoded[b])
            .map(|(&x, &y)| r.add_idx(x, y))
            .collect();
        radix.encode(&d)
    };
    let mul = |a: usize, b: usize| {
        let (da, db) = (&decoded[a], &decoded[b]);
        let d: Vec<usize> = positions
            .iter()
            .map(|&(i, j)| {
                (0..n).fold(zero, |acc, k| {
                    r.add_idx(acc, r.mul_idx(entry(da, i, k), entry(db, k, j)))
                })
            })
            .collect();
        radix.encode(&d)
    };
    let identity: Vec<usize> = positions
        .iter()
        .map(|&(i, j)| if i == j { r.one_idx() } else { zero })
        .collect();
    let labels = decoded
        .iter()
        .map(|d| {
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    let cells: Vec<&str> = (0..n).map(|j| r.label(entry(d, i, j))).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    FiniteRing::from_fns(
        order,
        radix.encode(&vec![zero; positions.len()]),
        radix.encode(&identity),
        add,
        mul,
        labels,
        provenance,
    )
}

/// Direct product with componentwise operations; labels are tuples.
pub fn make_product(rings: &[FiniteRing], limits: &Limits) -> Result<FiniteRing, Error> {
    if rings.is_empty() {
        return Err(Error::InvalidArgument(
            "product needs at least one factor".into(),
        ));
    }
    let requested = rings
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.order() as u128))
        .unwrap_or(u128::MAX);
    let order = limits.check(requested)?;
    let radix = Radix {
        bases: rings.iter().map(|r| r.order()).collect(),
    };
    let decoded: Vec<Vec<usize>> = (0..order).map(|x| radix.decode(x)).collect();
    let combine = |a: usize, b: usize, op: &dyn Fn(&FiniteRing, usize, usize) -> usize| {
        let d: Vec<usize> = rings
            .iter()
            .enumerate()
            .map(|(k, r)| op(r, decoded[a][k], decoded[b][k]))
            .collect();
        radix.encode(&d)
    };
    let labels = decoded
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(rings).map(|(&x, r)| r.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero: Vec<usize> = rings.iter().map(|r| r.zero_idx()).collect();
    let one: Vec<usize> = rings.iter().map(|r| r.one_idx()).collect();
    let provenance = format!(
        "prod({})",
        rings
            .iter()
            .map(|r| r.provenance())
            .collect::<Vec<_>>()
            .join(",")
    );
    FiniteRing::from_fns(
        order,
        radix.encode(&zero),
        radix.encode(&one),
        |a, b| combine(a, b, &|r, x, y| r.add_idx(x, y)),
        |a, b| combine(a, b, &|r, x, y| r.mul_idx(x, y)),
        labels,
        provenance,
    )
}

/// A quotient ring together with the projection `R → R/I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: FiniteRing,
    /// Coset index of every element of the parent ring.
    pub projection: Vec<usize>,
    /// Minimal parent index of every coset.
    pub representatives: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, parent: &FiniteRing, a: Elem) -> Result<Elem, Error> {
        let i = parent.owns(a)?;
        self.ring.elem(self.projection[i])
    }
}

/// `R/I`; each coset is represented by its minimal element index.
pub fn make_quotient(r: &FiniteRing, ideal: &Ideal) -> Result<Quotient, Error> {
    if ideal.ring_id() != r.id() {
        return Err(Error::RingMismatch);
    }
    let members = ideal.members().to_vec();
    let n = r.order();
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let coset = representatives.len();
        representatives.push(x);
        for &i in &members {
            projection[r.add_idx(x, i)] = coset;
        }
    }
    let order = representatives.len();
    if order < 2 {
        return Err(Error::ZeroRing);
    }
    let labels = representatives
        .iter()
        .map(|&x| format!("[{}]", r.label(x)))
        .collect();
    let provenance = format!("quot({}; {})", r.provenance(), ideal.describe(r));
    let reps = &representatives;
    let ring = FiniteRing::from_fns(
        order,
        projection[r.zero_idx()],
        projection[r.one_idx()],
        |a, b| projection[r.add_idx(reps[a], reps[b])],
        |a, b| projection[r.mul_idx(reps[a], reps[b])],
        labels,
        provenance,
    )?;
    Ok(Quotient {
        ring,
        projection,
        representatives,
    })
}

/// A ring carved out of a parent carrier (corner or subring).
#[derive(Clone, Debug)]
pub struct Embedded {
    pub ring: FiniteRing,
    /// Parent index of every element of `ring`.
    pub embedding: Vec<usize>,
}

impl Embedded {
    pub fn members(&self, parent: &FiniteRing) -> ElementSet {
        ElementSet::from_indices(parent, self.embedding.iter().copied())
    }
}

fn restrict(
    r: &FiniteRing,
    carrier: Vec<usize>,
    one: usize,
    provenance: String,
) -> Result<Embedded, Error> {
    let mut position = vec![usize::MAX; r.order()];
    for (k, &x) in carrier.iter().enumerate() {
        position[x] = k;
    }
    let c = &carrier;
    let lookup = |x: usize| {
        let p = position[x];
        assert!(p != usize::MAX, "carrier not closed at {x}");
        p
    };
    let labels = carrier.iter().map(|&x| r.label(x).to_string()).collect();
    let ring = FiniteRing::from_fns(
        carrier.len(),
        lookup(r.zero_idx()),
        lookup(one),
        |a, b| lookup(r.add_idx(c[a], c[b])),
        |a, b| lookup(r.mul_idx(c[a], c[b])),
        labels,
        provenance,
    )?;
    Ok(Embedded {
        ring,
        embedding: carrier,
    })
}

/// The corner ring `eRe` with identity `e`.
pub fn make_corner(r: &FiniteRing, e: Elem) -> Result<Embedded, Error> {
    let e = r.owns(e)?;
    if r.mul_idx(e, e) != e {
        return Err(Error::NotIdempotent(r.label(e).to_string()));
    }
    if e == r.zero_idx() {
        return Err(Error::InvalidArgument(
            "corner at zero has no identity".into(),
        ));
    }
    let members =
        ElementSet::from_indices(r, (0..r.order()).map(|x| r.mul_idx(r.mul_idx(e, x), e)));
    let provenance = format!("corner({}; {})", r.provenance(), elem_ref_text(r.label(e)));
    restrict(r, members.to_vec(), e, provenance)
}

/// Extends the additive subgroup `set` (listed in `list`) by `t`.
fn extend_additive(r: &FiniteRing, set: &mut ElementSet, list: &mut Vec<usize>, t: usize) {
    if set.contains(t) {
        return;
    }
    let base = list.clone();
    let mut shift = t;
    while !set.contains(shift) {
        for &s in &base {
            let x = r.add_idx(s, shift);
            set.insert(x);
            list.push(x);
        }
        shift = r.add_idx(shift, t);
    }
}

/// Closure of `gens` under addition, negation and multiplication.
pub(crate) fn generated_subring(r: &FiniteRing, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::from_indices(r, [r.zero_idx()]);
    let mut list = vec![r.zero_idx()];
    for &g in gens {
        extend_additive(r, &mut set, &mut list, g);
    }
    loop {
        let snapshot = list.clone();
        let mut grew = false;
        for &a in &snapshot {
            for &b in &snapshot {
                let p = r.mul_idx(a, b);
                if !set.contains(p) {
                    extend_additive(r, &mut set, &mut list, p);
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// The subring generated by `gens`, accepted only if it has its own
/// multiplicative identity (which may differ from the parent's).
pub fn make_subring(r: &FiniteRing, gens: &[Elem]) -> Result<Embedded, Error> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument(
            "subring needs at least one generator".into(),
        ));
    }
    let gens: Vec<usize> = gens.iter().map(|&g| r.owns(g)).collect::<Result<_, _>>()?;
    let described = gens
        .iter()
        .map(|&g| elem_ref_text(r.label(g)))
        .collect::<Vec<_>>()
        .join(", ");
    let members = generated_subring(r, &gens).to_vec();
    let identity = members.iter().copied().find(|&u| {
        members
            .iter()
            .all(|&s| r.mul_idx(u, s) == s && r.mul_idx(s, u) == s)
    });
    match identity {
        Some(u) if u != r.zero_idx() => restrict(
            r,
            members,
            u,
            format!("sub({}; {described})", r.provenance()),
        ),
        _ => Err(Error::NoIdentity(described)),
    }
}

/// A group ring `RG` with access to its base ring and group.
#[derive(Clone, Debug)]
pub struct GroupRing {
    pub ring: FiniteRing,
    pub base: FiniteRing,
    pub group: FiniteGroup,
    radix: Radix,
}

/// Addition and multiplication tables of `RG`.
///
/// Both operations are additive in the second argument, so each entry is
/// derived from an entry with one fewer nonzero coefficient plus a single
/// term. Only products with single-term elements are convolved directly.
fn group_ring_tables(
    r: &FiniteRing,
    g: &FiniteGroup,
    radix: &Radix,
    decoded: &[Vec<usize>],
) -> (Vec<Cell>, Vec<Cell>) {
    let n = decoded.len();
    let m = g.order();
    let zero = r.zero_idx();
    let place: Vec<usize> = (0..m).map(|h| r.order().pow((m - 1 - h) as u32)).collect();
    let set_digit = |x: usize, h: usize, v: usize| x - decoded[x][h] * place[h] + v * place[h];
    let zero_vec = radix.encode(&vec![zero; m]);

    // Elements by number of nonzero coefficients, with each one's first
    // nonzero position, remainder and single-term part.
    let mut by_support: Vec<usize> = (0..n).collect();
    by_support.sort_by_key(|&b| decoded[b].iter().filter(|&&c| c != zero).count());
    let split: Vec<Option<(usize, usize, usize)>> = (0..n)
        .map(|b| {
            let h = decoded[b].iter().position(|&c| c != zero)?;
            Some((
                h,
                set_digit(b, h, zero),
                set_digit(zero_vec, h, decoded[b][h]),
            ))
        })
        .collect();

    let mut add = vec![0 as Cell; n * n];
    for a in 0..n {
        let row = &mut add[a * n..(a + 1) * n];
        row[zero_vec] = a as Cell;
        for &b in &by_support {
            if let Some((h, rest, _)) = split[b] {
                let x = row[rest] as usize;
                row[b] = set_digit(x, h, r.add_idx(decoded[x][h], decoded[b][h])) as Cell;
            }
        }
    }

    let mut mul = vec![0 as Cell; n * n];
    let mut acc = vec![zero; m];
    for a in 0..n {
        for &b in &by_support {
            let Some((h, rest, single)) = split[b] else {
                mul[a * n + b] = zero_vec as Cell;
                continue;
            };
            mul[a * n + b] = if rest == zero_vec {
                // a · (c h) = Σ_k (a_k c)(k h)
                let c = decoded[b][h];
                acc.fill(zero);
                for (k, &ak) in decoded[a].iter().enumerate() {
                    acc[g.op(k, h)] = r.mul_idx(ak, c);
                }
                radix.encode(&acc) as Cell
            } else {
                let (x, y) = (mul[a * n + rest] as usize, mul[a * n + single] as usize);
                add[x * n + y]
            };
        }
    }
    (add, mul)
}

/// `RG`: coefficient vectors indexed by group elements, multiplied by
/// convolution over the group operation.
pub fn make_group_ring(
    r: &FiniteRing,
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<GroupRing, Error> {
    let m = g.order();
    let order = limits.check(checked_power(r.order(), m))?;
    let radix = Radix::uniform(r.order(), m);
    let decoded: Vec<Vec<usize>> = (0..order).map(|x| radix.decode(x)).collect();
    let zero = r.zero_idx();
    let (add, mul) = group_ring_tables(r, g, &radix, &decoded);

    let labels = decoded
        .iter()
        .map(|d| {
            let terms: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != zero)
                .map(|(gi, &c)| {
                    if gi == g.identity() {
                        wrap_label(r.label(c))
                    } else if c == r.one_idx() {
                        g.label(gi).to_string()
                    } else {
                        format!("{}*{}", wrap_label(r.label(c)), g.label(gi))
                    }
                })
                .collect();
            if terms.is_empty() {
                r.label(zero).to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();

    let mut one = vec![zero; m];
    one[g.identity()] = r.one_idx();
    let ring = FiniteRing::from_raw(
        order,
        radix.encode(&vec![zero; m]),
        radix.encode(&one),
        add,
        mul,
        labels,
        format!("grpring({},{})", r.provenance(), g.name()),
    )?;
    Ok(GroupRing {
        ring,
        base: r.clone(),
        group: g.clone(),
        radix,
    })
}

impl GroupRing {
    /// Coefficient vector of an element, indexed by group element.
    pub fn coefficients(&self, x: usize) -> Vec<usize> {
        self.radix.decode(x)
    }

    /// The basis element `g` (coefficient one at `g`).
    pub fn group_element(&self, gi: usize) -> usize {
        let mut d = vec![self.base.zero_idx(); self.group.order()];
        d[gi] = self.base.one_idx();
        self.radix.encode(&d)
    }

    pub(crate) fn augmentation_idx(&self, x: usize) -> usize {
        self.radix
            .decode(x)
            .into_iter()
            .fold(self.base.zero_idx(), |acc, c| self.base.add_idx(acc, c))
    }

    /// Coefficient sum `RG → R`.
    pub fn augmentation(&self, x: Elem) -> Result<Elem, Error> {
        let i = self.ring.owns(x)?;
        self.base.elem(self.augmentation_idx(i))
    }

    /// Kernel of the augmentation map.
    pub fn augmentation_ideal(&self) -> Result<Ideal, Error> {
        let zero = self.base.zero_idx();
        let members = ElementSet::from_predicate(&self.ring, |x| self.augmentation_idx(x) == zero);
        Ideal::new(&self.ring, members, None, Some("ω(RG)".into()))
    }

    /// The two-sided ideal generated by `{1 − g : g ∈ G}`.
    pub fn ideal_generated_by_differences(&self) -> Result<Ideal, Error> {
        let one = self.ring.one_idx();
        let gens: Vec<Elem> = (0..self.group.order())
            .map(|gi| {
                self.ring
                    .elem_unchecked(self.ring.sub_idx(one, self.group_element(gi)))
            })
            .collect();
        ideal_generated(&self.ring, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic_group;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn zmod_basics() {
        let z4 = make_zmod(4, &lim()).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.pow_idx(2, 2), 0);
        assert!(make_zmod(1, &lim()).is_err());
        assert!(matches!(
            make_zmod(5000, &lim()),
            Err(Error::SizeCap {
                requested: 5000,
                cap: 4096
            })
        ));
    }

    #[test]
    fn size_caps_are_enforced_before_building() {
        let z4 = make_zmod(4, &lim()).unwrap();
        assert!(matches!(
            make_matrix_ring(3, &z4, &lim()),
            Err(Error::SizeCap { .. })
        ));
        assert!(matches!(
            make_product(&[z4.clone(), z4.clone()], &Limits::new(8)),
            Err(Error::SizeCap {
                requested: 16,
                cap: 8
            })
        ));
        let c8 = make_cyclic_group(8).unwrap();
        assert!(make_group_ring(&z4, &c8, &lim()).is_err());
    }

    #[test]
    fn triangular_labels() {
        let z2 = make_zmod(2, &lim()).unwrap();
        let t2 = make_upper_triangular(2, &z2, &lim()).unwrap();
        assert_eq!(t2.order(), 8);
        assert_eq!(t2.label(t2.one_idx()), "[[1,0],[0,1]]");
        assert_eq!(t2.label(t2.zero_idx()), "[[0,0],[0,0]]");
        assert_eq!(t2.provenance(), "T(2,Z2)");
    }

    #[test]
    fn one_by_one_matrices_and_unary_products_copy_tables() {
        let z4 = make_zmod(4, &lim()).unwrap();
        for copy in [
            make_matrix_ring(1, &z4, &lim()).unwrap(),
            make_product(std::slice::from_ref(&z4), &lim()).unwrap(),
        ] {
            let (a, b) = (copy.tables(), z4.tables());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn subring_identity_search() {
        let z6 = make_zmod(6, &lim()).unwrap();
        let s = make_subring(&z6, &[z6.elem(3).unwrap()]).unwrap();
        assert_eq!(s.embedding, vec![0, 3]);
        assert_eq!(s.embedding[s.ring.one_idx()], 3);
        let s = make_subring(&z6, &[z6.elem(2).unwrap()]).unwrap();
        assert_eq!(s.embedding, vec![0, 2, 4]);
        assert_eq!(s.embedding[s.ring.one_idx()], 4);
        let z4 = make_zmod(4, &lim()).unwrap();
        assert!(matches!(
            make_subring(&z4, &[z4.elem(2).unwrap()]),
            Err(Error::NoIdentity(_))
        ));
        assert_eq!(make_subring(&z4, &[z4.one()]).unwrap().ring.order(), 4);
    }

    #[test]
    fn corner_errors() {
        let z6 = make_zmod(6, &lim()).unwrap();
        assert!(matches!(
            make_corner(&z6, z6.elem(2).unwrap()),
            Err(Error::NotIdempotent(_))
        ));
        assert!(make_corner(&z6, z6.zero()).is_err());
        let c = make_corner(&z6, z6.elem(3).unwrap()).unwrap();
        assert_eq!(c.embedding, vec![0, 3]);
        assert_eq!(c.ring.provenance(), "corner(Z6; label:3)");
    }

    #[test]
    fn group_ring_labels() {
        let z2 = make_zmod(2, &lim()).unwrap();
        let c3 = make_cyclic_group(3).unwrap();
        let rg = make_group_ring(&z2, &c3, &lim()).unwrap();
        assert_eq!(rg.ring.order(), 8);
        let mut labels = rg.ring.labels().to_vec();
        labels.sort();
        assert_eq!(
            labels,
            ["0", "1", "1+g", "1+g+g^2", "1+g^2", "g", "g+g^2", "g^2"]
        );
        let z4 = make_zmod(4, &lim()).unwrap();
        let c2 = make_cyclic_group(2).unwrap();
        let rg = make_group_ring(&z4, &c2, &lim()).unwrap();
        assert!(rg.ring.find_label("2+3*g").is_some());
    }

    #[test]
    fn nested_group_rings_have_distinct_labels() {
        let z2 = make_zmod(2, &lim()).unwrap();
        let c2 = make_cyclic_group(2).unwrap();
        let inner = make_group_ring(&z2, &c2, &lim()).unwrap();
        let outer = make_group_ring(&inner.ring, &c2, &lim()).unwrap();
        assert_eq!(outer.ring.order(), 16);
        assert!(outer.ring.verify_axioms().passed());
        assert!(outer.ring.find_label("(1+g)*g").is_some());
    }

    /// Incremental tables agree with a direct convolution over S3.
    #[test]
    fn group_ring_tables_match_convolution() {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let op = (0..6)
            .flat_map(|a| {
                let perms = &perms;
                (0..6).map(move |b| {
                    let c = compose(&perms[a], &perms[b]);
                    perms.iter().position(|p| *p == c).unwrap()
                })
            })
            .collect();
        let labels = (0..6).map(|i| format!("s{i}")).collect();
        let s3 = FiniteGroup::from_table(6, op, labels, "S3").unwrap();
        let z2 = make_zmod(2, &lim()).unwrap();
        let rg = make_group_ring(&z2, &s3, &lim()).unwrap();
        let r = &rg.ring;
        assert_eq!(r.order(), 64);
        for a in 0..64 {
            let ca = rg.coefficients(a);
            for b in 0..64 {
                let cb = rg.coefficients(b);
                let mut conv = [0usize; 6];
                for i in 0..6 {
                    for j in 0..6 {
                        conv[s3.op(i, j)] ^= ca[i] & cb[j];
                    }
                }
                assert_eq!(rg.coefficients(r.mul_idx(a, b)), conv.to_vec());
                let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| x ^ y).collect();
                assert_eq!(rg.coefficients(r.add_idx(a, b)), sum);
            }
        }
    }
}
