//! Finite groups given by Cayley tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits;
use crate::perm::Perm;

/// Index of a group element. Elements are the dense range `0..order`; the
/// identity is stored explicitly and need not be `0`.
pub type Elem = usize;

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
}

impl PartialEq for FiniteGroup {
    /// Structural equality of tables; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a user-supplied table, checking closure, the
    /// identity, inverses and associativity.
    pub fn from_table(label: impl Into<String>, rows: Vec<Vec<Elem>>) -> Result<FiniteGroup> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        limits::check_group_order("group table", order as u128)?;
        let mut mul = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroupTable(format!(
                    "row {a} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::InvalidGroupTable(format!(
                        "entry {c} out of range in row {a}"
                    )));
                }
            }
            mul.extend_from_slice(row);
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul[e * order + a] == a && mul[a * order + e] == a))
            .ok_or_else(|| Error::InvalidGroupTable("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == identity && mul[b * order + a] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("element {a} has no inverse")))?;
            inv[a] = b;
        }
        let group = FiniteGroup {
            label: label.into(),
            order,
            mul,
            identity,
            inv,
        };
        if !group.is_associative() {
            return Err(Error::InvalidGroupTable(
                "multiplication is not associative".into(),
            ));
        }
        Ok(group)
    }

    /// Builds a group from a table known to satisfy the axioms.
    pub(crate) fn from_trusted(
        label: String,
        order: usize,
        mul: Vec<Elem>,
        identity: Elem,
    ) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == identity {
                    inv[a] = b;
                    break;
                }
            }
        }
        FiniteGroup {
            label,
            order,
            mul,
            identity,
            inv,
        }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_trusted("1".into(), 1, vec![0], 0)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: Elem, exp: i64) -> Elem {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut out = self.identity;
        for _ in 0..exp.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The Cayley table as rows.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Associativity via Light's test over a generating set.
    fn is_associative(&self) -> bool {
        let gens = self.generating_set();
        gens.iter().all(|&s| {
            self.elements().all(|x| {
                let xs = self.mul(x, s);
                self.elements()
                    .all(|y| self.mul(xs, y) == self.mul(x, self.mul(s, y)))
            })
        })
    }

    /// Exhaustive check of associativity, identity and inverse laws.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != self.identity {
                return false;
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    /// A small generating set, chosen greedily: elements of larger order
    /// first, each added only when it lies outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut candidates: Vec<Elem> = self.elements().filter(|&a| a != self.identity).collect();
        let orders: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        candidates.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut member = self.generated_subgroup(&gens);
        for a in candidates {
            if !member[a] {
                gens.push(a);
                member = self.generated_subgroup(&gens);
                if member.iter().all(|&m| m) {
                    break;
                }
            }
        }
        gens
    }

    /// Whether `subset` (a membership mask) is a subgroup.
    pub fn is_subgroup(&self, member: &[bool]) -> bool {
        member.len() == self.order
            && member[self.identity]
            && self.elements().filter(|&a| member[a]).all(|a| {
                member[self.inv(a)]
                    && self
                        .elements()
                        .filter(|&b| member[b])
                        .all(|b| member[self.mul(a, b)])
            })
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for a in self.elements() {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<Elem> = Vec::new();
            for g in self.elements() {
                let c = self.conjugate(g, a);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

/// `Z_n` under addition; element `k` is the residue `k`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cyclic group order must be positive".into(),
        ));
    }
    limits::check_group_order("cyclic group", n as u128)?;
    let mul = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    Ok(FiniteGroup::from_trusted(format!("Z{n}"), n, mul, 0))
}

/// `G × H` with element `(a, b)` at index `a·|H| + b`.
pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    limits::check_group_order("direct product", order as u128)?;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a1, b1) = (x / nh, x % nh);
        for y in 0..order {
            let (a2, b2) = (y / nh, y % nh);
            mul.push(g.mul(a1, a2) * nh + h.mul(b1, b2));
        }
    }
    let identity = g.identity() * nh + h.identity();
    Ok(FiniteGroup::from_trusted(
        format!("{}x{}", g.label(), h.label()),
        order,
        mul,
        identity,
    ))
}

/// The symmetric group together with the permutation each element index denotes.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    pub group: Arc<FiniteGroup>,
    pub perms: Vec<Perm>,
    index: HashMap<Perm, Elem>,
}

impl SymmetricGroup {
    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Perm::degree)
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn perm(&self, a: Elem) -> &Perm {
        &self.perms[a]
    }
}

/// `S_n`: elements are the permutations of `0..n` in lexicographic order,
/// so the identity is element `0`; `mul(a, b)` is `a ∘ b`.
pub fn make_symmetric(n: usize) -> Result<SymmetricGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "symmetric group degree must be positive".into(),
        ));
    }
    limits::check(
        "symmetric group degree",
        n as u128,
        limits::current().max_symmetric_degree,
    )?;
    let order: u128 = (1..=n as u128).product();
    limits::check_group_order("symmetric group", order)?;
    let perms = Perm::all(n);
    let index: HashMap<Perm, Elem> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let order = perms.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            mul.push(index[&a.compose(b)]);
        }
    }
    let group = FiniteGroup::from_trusted(format!("S{n}"), order, mul, 0);
    Ok(SymmetricGroup {
        group: Arc::new(group),
        perms,
        index,
    })
}

/// Dihedral group of order `2n`: element `s^f r^k` at index `f·n + k`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "dihedral parameter must be positive".into(),
        ));
    }
    let order = 2 * n;
    limits::check_group_order("dihedral group", order as u128)?;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (f1, k1) = (x / n, x % n);
        for y in 0..order {
            let (f2, k2) = (y / n, y % n);
            // r^k s = s r^-k
            let k = if f2 == 0 {
                (k1 + k2) % n
            } else {
                (n - k1 % n + k2) % n
            };
            mul.push(((f1 + f2) % 2) * n + k);
        }
    }
    Ok(FiniteGroup::from_trusted(format!("D{n}"), order, mul, 0))
}

/// The quaternion group `Q8` on `±1, ±i, ±j, ±k`, indexed as
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn make_quaternion() -> FiniteGroup {
    // unit index (0..4 for 1, i, j, k) and sign bit
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut mul = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (u, s) = unit_mul(x / 2, y / 2);
            let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ s;
            mul.push(u * 2 + usize::from(sign));
        }
    }
    FiniteGroup::from_trusted("Q8".into(), 8, mul, 0)
}
