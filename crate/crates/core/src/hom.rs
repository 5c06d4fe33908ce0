//! Group homomorphisms and automorphism groups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::limits;

/// A homomorphism given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<Elem>,
}

impl GroupHom {
    /// Validates the table and the homomorphism law.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<Elem>,
    ) -> Result<GroupHom> {
        if image.len() != source.order() {
            return Err(Error::SizeMismatch {
                expected: source.order(),
                found: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotHomomorphism(format!(
                "image {bad} is not an element of the target"
            )));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "law fails on the pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<Elem>,
    ) -> GroupHom {
        GroupHom {
            source,
            target,
            image,
        }
    }

    pub fn identity(group: Arc<FiniteGroup>) -> GroupHom {
        let image = group.elements().collect();
        GroupHom {
            source: group.clone(),
            target: group,
            image,
        }
    }

    /// The constant map onto the identity of `target`.
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> GroupHom {
        let image = vec![target.identity(); source.order()];
        GroupHom {
            source,
            target,
            image,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_isomorphism(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.image
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (a, &b) in self.image.iter().enumerate() {
            inv[b] = a;
        }
        Some(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            image: inv,
        })
    }
}

/// Elements sent to the identity.
pub fn kernel(h: &GroupHom) -> Vec<Elem> {
    let e = h.target.identity();
    h.source.elements().filter(|&a| h.image[a] == e).collect()
}

/// `f ∘ g`; requires `g.target == f.source`.
pub fn compose_hom(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
    if *g.target != *f.source {
        return Err(Error::GroupMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            f.source.label(),
            f.target.label(),
            g.source.label(),
            g.target.label()
        )));
    }
    Ok(GroupHom {
        source: g.source.clone(),
        target: f.target.clone(),
        image: g.image.iter().map(|&a| f.image[a]).collect(),
    })
}

/// Extends generator images to a full table, checking `φ(x·s) = φ(x)·φ(s)`
/// on every edge of the Cayley graph.
fn extend_from_generators(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut table = vec![usize::MAX; source.order()];
    table[source.identity()] = target.identity();
    let mut queue = std::collections::VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(table[x], t);
            if table[y] == usize::MAX {
                table[y] = fy;
                queue.push_back(y);
            } else if table[y] != fy {
                return None;
            }
        }
    }
    Some(table)
}

/// Backtracking over images of the generating set. `candidates[i]` lists the
/// admissible images of generator `i`.
fn search(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    bijective: bool,
    limit: usize,
) -> Result<Vec<GroupHom>> {
    struct Search<'a> {
        source: &'a Arc<FiniteGroup>,
        target: &'a Arc<FiniteGroup>,
        gens: &'a [Elem],
        candidates: &'a [Vec<Elem>],
        bijective: bool,
        limit: usize,
        chosen: Vec<Elem>,
        out: Vec<GroupHom>,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> Result<()> {
            if depth == self.gens.len() {
                if let Some(table) =
                    extend_from_generators(self.source, self.target, self.gens, &self.chosen)
                {
                    let h =
                        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), table);
                    if !self.bijective || h.is_isomorphism() {
                        if self.out.len() == self.limit {
                            return Err(Error::BoundExceeded {
                                what: "homomorphism enumeration",
                                size: self.limit as u128 + 1,
                                limit: self.limit as u128,
                            });
                        }
                        self.out.push(h);
                    }
                }
                return Ok(());
            }
            for &c in &self.candidates[depth] {
                if self.bijective && self.chosen.contains(&c) {
                    continue;
                }
                self.chosen.push(c);
                self.go(depth + 1)?;
                self.chosen.pop();
            }
            Ok(())
        }
    }

    let mut s = Search {
        source,
        target,
        gens,
        candidates,
        bijective,
        limit,
        chosen: Vec::with_capacity(gens.len()),
        out: Vec::new(),
    };
    s.go(0)?;
    let mut out = s.out;
    out.sort_by(|a, b| a.image.cmp(&b.image));
    Ok(out)
}

/// All homomorphisms `source → target`, sorted by image table.
pub fn homomorphisms(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
) -> Result<Vec<GroupHom>> {
    limits::check_group_order("homomorphism source", source.order() as u128)?;
    limits::check_group_order("homomorphism target", target.order() as u128)?;
    let gens = source.generating_set();
    let target_orders: Vec<usize> = target.elements().map(|t| target.element_order(t)).collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let o = source.element_order(g);
            target
                .elements()
                .filter(|&t| o.is_multiple_of(target_orders[t]))
                .collect()
        })
        .collect();
    search(
        source,
        target,
        &gens,
        &candidates,
        false,
        limits::current().max_enumeration,
    )
}

/// All automorphisms of `group`, sorted by image table.
pub fn automorphisms(group: &Arc<FiniteGroup>) -> Result<Vec<GroupHom>> {
    limits::check_group_order("automorphism enumeration", group.order() as u128)?;
    let gens = group.generating_set();
    let orders: Vec<usize> = group.elements().map(|t| group.element_order(t)).collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            group
                .elements()
                .filter(|&t| orders[t] == orders[g])
                .collect()
        })
        .collect();
    search(
        group,
        group,
        &gens,
        &candidates,
        true,
        limits::current().max_enumeration,
    )
}

/// `Aut(G)` as a group under composition, with element `i` denoting
/// `auts[i]`, so that `mul(i, j)` is the index of `auts[i] ∘ auts[j]`.
pub fn aut_group(group: &Arc<FiniteGroup>) -> Result<(FiniteGroup, Vec<GroupHom>)> {
    let auts = automorphisms(group)?;
    let table = composition_table(
        &auts,
        |a, b| b.image.iter().map(|&x| a.image[x]).collect::<Vec<_>>(),
        |h| h.image.clone(),
    );
    let identity = auts
        .iter()
        .position(GroupHom::is_identity)
        .expect("identity automorphism");
    let order = auts.len();
    let label = format!("Aut({})", group.label());
    Ok((
        FiniteGroup::from_trusted(label, order, table, identity),
        auts,
    ))
}

/// Builds the multiplication table of a finite list of maps closed under
/// composition, looking products up by their value tables.
pub(crate) fn composition_table<T, K, C, F>(items: &[T], compose: C, key: F) -> Vec<Elem>
where
    K: std::hash::Hash + Eq,
    C: Fn(&T, &T) -> K,
    F: Fn(&T) -> K,
{
    let index: std::collections::HashMap<K, Elem> =
        items.iter().enumerate().map(|(i, t)| (key(t), i)).collect();
    let mut table = Vec::with_capacity(items.len() * items.len());
    for a in items {
        for b in items {
            table.push(index[&compose(a, b)]);
        }
    }
    table
}
