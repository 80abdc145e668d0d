//! Finite groups given by Cayley tables.

use crate::constructors::Limits;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    op: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    name: String,
}

impl FiniteGroup {
    /// Validates a Cayley table: latin square, two-sided identity,
    /// associativity. Inverses are derived.
    pub fn from_table(
        order: usize,
        op: Vec<usize>,
        labels: Vec<String>,
        name: impl Into<String>,
    ) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::Group("empty group".into()));
        }
        if op.len() != order * order || labels.len() != order {
            return Err(Error::Group(
                "table or label count does not match order".into(),
            ));
        }
        if op.iter().any(|&v| v >= order) {
            return Err(Error::Group("table entry out of range".into()));
        }
        let at = |a: usize, b: usize| op[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(Error::Group(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Group(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            order,
            op,
            identity,
            inverse,
            labels,
            name: name.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Smallest k ≥ 1 with a^k = identity.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.op(p, a);
            k += 1;
        }
        k
    }
}

/// The cyclic group of order n, elements labelled `1, g, g^2, ...`.
pub fn make_cyclic_group(n: usize) -> Result<FiniteGroup, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "cyclic group order must be at least 1".into(),
        ));
    }
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    let op = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_table(n, op, labels, format!("C{n}"))
}

/// Direct product; elements are tuples ordered lexicographically with the
/// first factor most significant.
pub fn make_group_product(groups: &[FiniteGroup], limits: &Limits) -> Result<FiniteGroup, Error> {
    if groups.is_empty() {
        return Err(Error::InvalidArgument(
            "group product needs at least one factor".into(),
        ));
    }
    let requested = groups
        .iter()
        .try_fold(1u128, |acc, g| acc.checked_mul(g.order() as u128))
        .unwrap_or(u128::MAX);
    let order = limits.check(requested)?;
    let name = format!(
        "gprod({})",
        groups
            .iter()
            .map(|g| g.name())
            .collect::<Vec<_>>()
            .join(",")
    );
    if groups.len() == 1 {
        let g = &groups[0];
        return FiniteGroup::from_table(g.order, g.op.clone(), g.labels.clone(), name);
    }

    let radix: Vec<usize> = groups.iter().map(|g| g.order()).collect();
    let decode = |mut i: usize| {
        let mut digits = vec![0; radix.len()];
        for (slot, &b) in digits.iter_mut().zip(&radix).rev() {
            *slot = i % b;
            i /= b;
        }
        digits
    };
    let encode = |digits: &[usize]| {
        digits
            .iter()
            .zip(&radix)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    };

    let mut op = Vec::with_capacity(order * order);
    for a in 0..order {
        let da = decode(a);
        for b in 0..order {
            let db = decode(b);
            let dc: Vec<usize> = groups
                .iter()
                .enumerate()
                .map(|(k, g)| g.op(da[k], db[k]))
                .collect();
            op.push(encode(&dc));
        }
    }
    let labels = (0..order)
        .map(|a| {
            let parts: Vec<&str> = decode(a)
                .iter()
                .zip(groups)
                .map(|(&d, g)| g.label(d))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteGroup::from_table(order, op, labels, name)
}

/// Finite 2-group test via the group order being a power of two.
pub fn is_2_group(g: &FiniteGroup) -> bool {
    let by_order = g.order().is_power_of_two();
    debug_assert_eq!(by_order, is_2_group_by_element_orders(g));
    by_order
}

/// Definitional route: every element order is a power of two.
pub fn is_2_group_by_element_orders(g: &FiniteGroup) -> bool {
    (0..g.order()).all(|a| g.element_order(a).is_power_of_two())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_labels_and_orders() {
        let c4 = make_cyclic_group(4).unwrap();
        assert_eq!(c4.labels(), ["1", "g", "g^2", "g^3"]);
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.element_order(2), 2);
        assert_eq!(c4.inverse(1), 3);
        assert!(make_cyclic_group(0).is_err());
    }

    #[test]
    fn two_groups() {
        let lim = Limits::default();
        let c2 = make_cyclic_group(2).unwrap();
        let c4 = make_cyclic_group(4).unwrap();
        let c6 = make_cyclic_group(6).unwrap();
        let v4 = make_group_product(&[c2.clone(), c2.clone()], &lim).unwrap();
        assert!(is_2_group(&c4));
        assert!(is_2_group(&v4));
        assert!(!is_2_group(&c6));
        assert_eq!(c6.element_order(2), 3);
        assert!(is_2_group(&make_cyclic_group(1).unwrap()));
        for g in [&c2, &c4, &c6, &v4] {
            assert_eq!(is_2_group(g), is_2_group_by_element_orders(g));
        }
    }

    #[test]
    fn product_labels() {
        let c2 = make_cyclic_group(2).unwrap();
        let v4 = make_group_product(&[c2.clone(), c2], &Limits::default()).unwrap();
        assert_eq!(v4.labels(), ["(1,1)", "(1,g)", "(g,1)", "(g,g)"]);
        assert_eq!(v4.name(), "gprod(C2,C2)");
        assert_eq!(v4.op(1, 2), 3);
    }

    #[test]
    fn bad_table_rejected() {
        let err = FiniteGroup::from_table(2, vec![0, 1, 1, 1], vec!["a".into(), "b".into()], "x");
        assert!(err.is_err());
    }
}
