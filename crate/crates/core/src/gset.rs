//! Finite G-sets, orbit quotients, division and equivariant maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{compose_hom, GroupHom};

/// Index of a point of a G-set carrier.
pub type Point = usize;

/// Orbit decomposition; orbit `i` is the one containing `representatives[i]`,
/// and orbits are numbered in increasing order of their smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbit_of: Vec<usize>,
    pub orbit_count: usize,
    pub representatives: Vec<Point>,
}

impl OrbitPartition {
    /// Points of each orbit in increasing order.
    pub fn members(&self) -> Vec<Vec<Point>> {
        let mut out = vec![Vec::new(); self.orbit_count];
        for (f, &o) in self.orbit_of.iter().enumerate() {
            out[o].push(f);
        }
        out
    }
}

/// A left action of a finite group on `0..size`.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    act: Vec<Point>,
    orbits: OrbitPartition,
    free: bool,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.act == other.act && *self.group == *other.group
    }
}

impl Eq for GSet {}

impl GSet {
    /// Builds a G-set from rows `act[g][f]`, checking the action axioms.
    pub fn new(group: Arc<FiniteGroup>, size: usize, rows: Vec<Vec<Point>>) -> Result<GSet> {
        if rows.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "expected {} rows, found {}",
                group.order(),
                rows.len()
            )));
        }
        let mut act = Vec::with_capacity(group.order() * size);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidAction(format!(
                    "row {g} has length {}",
                    row.len()
                )));
            }
            if row.iter().any(|&f| f >= size) {
                return Err(Error::InvalidAction(format!("row {g} leaves the carrier")));
            }
            act.extend_from_slice(row);
        }
        let e = group.identity();
        if (0..size).any(|f| act[e * size + f] != f) {
            return Err(Error::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for f in 0..size {
                    if act[g * size + act[h * size + f]] != act[gh * size + f] {
                        return Err(Error::InvalidAction(format!(
                            "compatibility fails for g={g}, h={h}, point {f}"
                        )));
                    }
                }
            }
        }
        Ok(GSet::from_trusted(group, size, act))
    }

    pub(crate) fn from_trusted(group: Arc<FiniteGroup>, size: usize, act: Vec<Point>) -> GSet {
        let mut orbit_of = vec![usize::MAX; size];
        let mut representatives = Vec::new();
        let mut free = true;
        for f in 0..size {
            if orbit_of[f] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(f);
            let mut hits = 0;
            for g in group.elements() {
                let y = act[g * size + f];
                if y == f {
                    hits += 1;
                }
                orbit_of[y] = id;
            }
            if hits > 1 {
                free = false;
            }
        }
        let orbits = OrbitPartition {
            orbit_of,
            orbit_count: representatives.len(),
            representatives,
        };
        GSet {
            group,
            size,
            act,
            orbits,
            free,
        }
    }

    /// `G` acting on itself by left translation.
    pub fn regular(group: Arc<FiniteGroup>) -> GSet {
        let n = group.order();
        let act = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| group.mul(g, h))
            .collect();
        GSet::from_trusted(group, n, act)
    }

    /// `G` acting trivially on `n` points.
    pub fn trivial_action(group: Arc<FiniteGroup>, n: usize) -> GSet {
        let act = (0..group.order()).flat_map(|_| 0..n).collect();
        GSet::from_trusted(group, n, act)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: Elem, f: Point) -> Point {
        self.act[g * self.size + f]
    }

    /// The action as rows `act[g][f]`.
    pub fn table(&self) -> Vec<Vec<Point>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.act.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.orbit_count
    }

    /// The quotient map `q`.
    #[inline]
    pub fn q(&self, f: Point) -> usize {
        self.orbits.orbit_of[f]
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.orbit_count == 1
    }

    /// Finite quotients are discrete, so this agrees with [`GSet::is_free`].
    pub fn is_semitorsor(&self) -> bool {
        self.free
    }

    pub fn is_torsor(&self) -> bool {
        self.free && self.is_transitive()
    }

    /// The unique `g` with `g·f = f_prime`.
    pub fn divide(&self, f_prime: Point, f: Point) -> Result<Elem> {
        if !self.free {
            return Err(Error::NotFree);
        }
        if f_prime >= self.size || f >= self.size {
            return Err(Error::InvalidArgument("point outside the carrier".into()));
        }
        if self.q(f_prime) != self.q(f) {
            return Err(Error::NoQuotient(f_prime, f));
        }
        Ok(self
            .group
            .elements()
            .find(|&g| self.act(g, f) == f_prime)
            .expect("points in one orbit"))
    }

    /// The same action transported along the carrier bijection `p ↦ pi(p)`.
    pub fn relabel(&self, pi: &crate::perm::Perm) -> Result<GSet> {
        if pi.degree() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: pi.degree(),
            });
        }
        let pi_inv = pi.inverse();
        let act = self
            .group
            .elements()
            .flat_map(|g| (0..self.size).map(move |p| (g, p)))
            .map(|(g, p)| pi.apply(self.act(g, pi_inv.apply(p))))
            .collect();
        Ok(GSet::from_trusted(self.group.clone(), self.size, act))
    }

    pub(crate) fn require_free(&self) -> Result<()> {
        if self.free {
            Ok(())
        } else {
            Err(Error::NotFree)
        }
    }
}

/// Every `ξ`-equivariant map `source → target`, each determined by the images
/// of the orbit representatives of the free G-set `source`.
pub fn equivariant_maps(
    source: &Arc<GSet>,
    target: &Arc<GSet>,
    xi: &GroupHom,
) -> Result<Vec<EquivariantMap>> {
    source.require_free()?;
    if **xi.source() != **source.group() || **xi.target() != **target.group() {
        return Err(Error::GroupMismatch(
            "ξ does not connect the acting groups".into(),
        ));
    }
    let reps = &source.orbits().representatives;
    let candidates = (target.size() as u128)
        .checked_pow(reps.len() as u32)
        .unwrap_or(u128::MAX);
    crate::limits::check_enumeration("equivariant map candidates", candidates)?;
    let mut out = Vec::new();
    for t in crate::wreath::tuples(target.size(), reps.len()) {
        let value = (0..source.size())
            .map(|p| {
                let x = source.q(p);
                let g = source.divide(p, reps[x]).expect("free");
                target.act(xi.apply(g), t[x])
            })
            .collect();
        let map = EquivariantMap::new_unchecked(source.clone(), target.clone(), xi.clone(), value);
        if map.check_equivariant() {
            out.push(map);
        }
    }
    Ok(out)
}

/// `G × I_n` with `g·(h, x) = (gh, x)`; the point `(h, x)` has index `x·|G| + h`.
pub fn standard_semitorsor(group: Arc<FiniteGroup>, n: usize) -> Result<GSet> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "orbit count must be positive".into(),
        ));
    }
    let order = group.order();
    let size = order * n;
    let mut act = Vec::with_capacity(order * size);
    for g in group.elements() {
        for x in 0..n {
            for h in group.elements() {
                act.push(x * order + group.mul(g, h));
            }
        }
    }
    Ok(GSet::from_trusted(group, size, act))
}

/// Index of `(h, x)` in [`standard_semitorsor`].
pub fn standard_point(order: usize, h: Elem, x: usize) -> Point {
    x * order + h
}

/// Coordinates `(h, x)` of a point of [`standard_semitorsor`].
pub fn standard_coords(order: usize, p: Point) -> (Elem, usize) {
    (p % order, p / order)
}

/// `A ⊔ B` over a shared group; points of `B` follow those of `A`.
pub fn disjoint_union(a: &GSet, b: &GSet) -> Result<GSet> {
    if *a.group != *b.group {
        return Err(Error::GroupMismatch(
            "disjoint union needs a common group".into(),
        ));
    }
    let size = a.size + b.size;
    let mut act = Vec::with_capacity(a.group.order() * size);
    for g in a.group.elements() {
        act.extend((0..a.size).map(|f| a.act(g, f)));
        act.extend((0..b.size).map(|f| a.size + b.act(g, f)));
    }
    Ok(GSet::from_trusted(a.group.clone(), size, act))
}

/// A `ξ`-equivariant map `source → target` stored as a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    source: Arc<GSet>,
    target: Arc<GSet>,
    xi: GroupHom,
    value: Vec<Point>,
}

impl EquivariantMap {
    /// Validates shapes and `value(g·f) = ξ(g)·value(f)`.
    pub fn new(
        source: Arc<GSet>,
        target: Arc<GSet>,
        xi: GroupHom,
        value: Vec<Point>,
    ) -> Result<EquivariantMap> {
        let map = EquivariantMap::build(source, target, xi, value)?;
        if let Some(msg) = map.equivariance_failure() {
            return Err(Error::NotEquivariant(msg));
        }
        Ok(map)
    }

    /// Validates shapes only; equivariance can be tested with
    /// [`EquivariantMap::check_equivariant`].
    pub fn build(
        source: Arc<GSet>,
        target: Arc<GSet>,
        xi: GroupHom,
        value: Vec<Point>,
    ) -> Result<EquivariantMap> {
        if **xi.source() != **source.group() || **xi.target() != **target.group() {
            return Err(Error::GroupMismatch(
                "ξ does not connect the acting groups".into(),
            ));
        }
        if value.len() != source.size() {
            return Err(Error::SizeMismatch {
                expected: source.size(),
                found: value.len(),
            });
        }
        if value.iter().any(|&v| v >= target.size()) {
            return Err(Error::InvalidArgument(
                "value outside the target carrier".into(),
            ));
        }
        Ok(EquivariantMap {
            source,
            target,
            xi,
            value,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<GSet>,
        target: Arc<GSet>,
        xi: GroupHom,
        value: Vec<Point>,
    ) -> Self {
        EquivariantMap {
            source,
            target,
            xi,
            value,
        }
    }

    /// An equivariant map with `ξ = id`.
    pub fn with_identity(
        source: Arc<GSet>,
        target: Arc<GSet>,
        value: Vec<Point>,
    ) -> Result<EquivariantMap> {
        let xi = GroupHom::identity(source.group().clone());
        EquivariantMap::new(source, target, xi, value)
    }

    pub fn identity(gset: Arc<GSet>) -> EquivariantMap {
        let value = (0..gset.size()).collect();
        EquivariantMap {
            xi: GroupHom::identity(gset.group().clone()),
            source: gset.clone(),
            target: gset,
            value,
        }
    }

    pub fn source(&self) -> &Arc<GSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GSet> {
        &self.target
    }

    pub fn xi(&self) -> &GroupHom {
        &self.xi
    }

    #[inline]
    pub fn apply(&self, f: Point) -> Point {
        self.value[f]
    }

    pub fn values(&self) -> &[Point] {
        &self.value
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut seen = vec![false; self.target.size()];
        self.value
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.value {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Inverse of a bijective map with invertible `ξ`.
    pub fn inverse(&self) -> Option<EquivariantMap> {
        if !self.is_bijective() {
            return None;
        }
        let xi = self.xi.inverse()?;
        let mut value = vec![0; self.value.len()];
        for (f, &v) in self.value.iter().enumerate() {
            value[v] = f;
        }
        Some(EquivariantMap {
            source: self.target.clone(),
            target: self.source.clone(),
            xi,
            value,
        })
    }

    fn equivariance_failure(&self) -> Option<String> {
        for g in self.source.group().elements() {
            let xg = self.xi.apply(g);
            for f in 0..self.source.size() {
                if self.value[self.source.act(g, f)] != self.target.act(xg, self.value[f]) {
                    return Some(format!("fails at g={g}, point {f}"));
                }
            }
        }
        None
    }

    /// Exhaustive check of `value(g·f) = ξ(g)·value(f)`.
    pub fn check_equivariant(&self) -> bool {
        self.equivariance_failure().is_none()
    }
}

/// `a ∘ b`; requires `b.target == a.source`.
pub fn compose_equivariant(a: &EquivariantMap, b: &EquivariantMap) -> Result<EquivariantMap> {
    if *b.target != *a.source {
        return Err(Error::GroupMismatch("maps are not composable".into()));
    }
    let xi = compose_hom(&a.xi, &b.xi)?;
    Ok(EquivariantMap {
        source: b.source.clone(),
        target: a.target.clone(),
        xi,
        value: b.value.iter().map(|&f| a.value[f]).collect(),
    })
}

/// The map `α/` on orbit indices with `q₂∘α = α/∘q₁`.
pub fn induced_orbit_map(a: &EquivariantMap) -> Vec<usize> {
    let src = a.source.orbits();
    src.representatives
        .iter()
        .map(|&r| a.target.q(a.value[r]))
        .collect()
}

pub fn is_orbit_bijection(a: &EquivariantMap) -> bool {
    let m = induced_orbit_map(a);
    if m.len() != a.target.orbit_count() {
        return false;
    }
    let mut seen = vec![false; m.len()];
    m.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
}
