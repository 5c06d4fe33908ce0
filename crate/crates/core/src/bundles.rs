//! Flat bundles over a wedge of `m` circles, given by one clutching
//! automorphism of the fiber per loop.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::aut::{aut_group_of_gset, cq, wreath_to_aut, GSetAut};
use crate::error::{Error, Result};
use crate::frames::{canonical_frame, divide_bases, enumerate_frames, is_basis, Frame, FrameSpace};
use crate::group::{FiniteGroup, SymmetricGroup};
use crate::gset::{is_orbit_bijection, standard_semitorsor, EquivariantMap, GSet, Point};
use crate::hom::{automorphisms, kernel, GroupHom};
use crate::limits;
use crate::perm::Perm;
use crate::wreath::{MaterializedWreath, WreathElement, WreathProduct};

/// Which morphisms a bundle's clutching data lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleMode {
    /// Fiber is the underlying set of a group; clutching maps are group
    /// automorphisms.
    Group(Arc<FiniteGroup>),
    /// Fiber is a free G-set; clutching maps are G-set automorphisms.
    GSpace,
}

impl BundleMode {
    pub fn name(&self) -> &'static str {
        match self {
            BundleMode::Group(_) => "group",
            BundleMode::GSpace => "gspace",
        }
    }
}

/// A flat bundle, stored as its monodromy on the free group of the wedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatBundle {
    mode: BundleMode,
    fiber: Arc<GSet>,
    clutching: Vec<GSetAut>,
}

impl FlatBundle {
    /// A bundle with a free G-set fiber.
    pub fn new(fiber: Arc<GSet>, clutching: Vec<GSetAut>) -> Result<FlatBundle> {
        fiber.require_free()?;
        if clutching.is_empty() {
            return Err(Error::InvalidArgument(
                "a bundle needs at least one loop".into(),
            ));
        }
        if clutching.iter().any(|c| **c.gset() != *fiber) {
            return Err(Error::NotGSetAutomorphism(
                "clutching map acts on a different fiber".into(),
            ));
        }
        Ok(FlatBundle {
            mode: BundleMode::GSpace,
            fiber,
            clutching,
        })
    }

    /// A group bundle: the fiber is `G` as a bare set.
    pub fn group_bundle(group: Arc<FiniteGroup>, clutching: &[GroupHom]) -> Result<FlatBundle> {
        if clutching.is_empty() {
            return Err(Error::InvalidArgument(
                "a bundle needs at least one loop".into(),
            ));
        }
        let fiber = Arc::new(group_fiber(&group));
        let mut maps = Vec::with_capacity(clutching.len());
        for a in clutching {
            if **a.source() != *group || **a.target() != *group || !a.is_isomorphism() {
                return Err(Error::NotGroupAutomorphism);
            }
            maps.push(GSetAut::from_values_unchecked(
                fiber.clone(),
                a.image().to_vec(),
            ));
        }
        Ok(FlatBundle {
            mode: BundleMode::Group(group),
            fiber,
            clutching: maps,
        })
    }

    /// All clutching maps equal to the identity.
    pub fn trivial(fiber: Arc<GSet>, loops: usize) -> Result<FlatBundle> {
        let id = GSetAut::identity(fiber.clone());
        FlatBundle::new(fiber, vec![id; loops])
    }

    pub fn mode(&self) -> &BundleMode {
        &self.mode
    }

    pub fn fiber(&self) -> &Arc<GSet> {
        &self.fiber
    }

    pub fn loops(&self) -> usize {
        self.clutching.len()
    }

    pub fn clutching(&self) -> &[GSetAut] {
        &self.clutching
    }
}

/// The underlying set of `G`, acted on by the trivial group.
fn group_fiber(group: &FiniteGroup) -> GSet {
    GSet::trivial_action(Arc::new(FiniteGroup::trivial()), group.order())
}

/// `G` glued to itself along the automorphism `a`.
pub fn group_bundle_over_circle(group: Arc<FiniteGroup>, a: &GroupHom) -> Result<FlatBundle> {
    FlatBundle::group_bundle(group, std::slice::from_ref(a))
}

/// A word in the free group on the loops: letter `±i` traverses loop `i`
/// (1-based) forwards or backwards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LoopWord {
    pub letters: Vec<i64>,
}

impl LoopWord {
    pub fn new(letters: Vec<i64>) -> Result<LoopWord> {
        if letters.contains(&0) {
            return Err(Error::InvalidArgument("loop letters are nonzero".into()));
        }
        Ok(LoopWord { letters })
    }

    pub fn empty() -> LoopWord {
        LoopWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word traversed backwards.
    pub fn inverse(&self) -> LoopWord {
        LoopWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &LoopWord) -> LoopWord {
        LoopWord {
            letters: self.letters.iter().chain(&other.letters).copied().collect(),
        }
    }

    pub fn check(&self, loops: usize) -> Result<()> {
        for &l in &self.letters {
            if l == 0 || l.unsigned_abs() as usize > loops {
                return Err(Error::LetterOutOfRange { letter: l, loops });
            }
        }
        Ok(())
    }

    /// All words of exactly `len` letters over `loops` loops.
    pub fn all_of_length(loops: usize, len: usize) -> Vec<LoopWord> {
        let alphabet: Vec<i64> = (1..=loops as i64).flat_map(|i| [i, -i]).collect();
        let mut out = vec![LoopWord::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.letters.push(l);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Comma- or space-separated signed integers; the empty string is the empty word.
impl FromStr for LoopWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<LoopWord> {
        let letters = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad loop letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LoopWord::new(letters)
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Monodromy along `word`; the first letter acts first.
pub fn holonomy(b: &FlatBundle, word: &LoopWord) -> Result<GSetAut> {
    word.check(b.loops())?;
    let mut out = GSetAut::identity(b.fiber.clone());
    for &l in &word.letters {
        let c = &b.clutching[l.unsigned_abs() as usize - 1];
        let step = if l > 0 { c.clone() } else { c.inverse() };
        out = step.compose(&out);
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by a list of permutations of `0..size`,
/// each sorted, ordered by smallest point.
pub(crate) fn generated_orbits(size: usize, maps: &[&[Point]]) -> Vec<Vec<Point>> {
    let mut parent: Vec<usize> = (0..size).collect();
    for m in maps {
        for (p, &q) in m.iter().enumerate() {
            let (a, b) = (find(&mut parent, p), find(&mut parent, q));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut slot = vec![usize::MAX; size];
    let mut out: Vec<Vec<Point>> = Vec::new();
    for p in 0..size {
        let r = find(&mut parent, p);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(p);
    }
    out
}

/// Connected components of the total space, as orbits of the monodromy
/// group on the fiber.
pub fn component_partition(b: &FlatBundle) -> Vec<Vec<Point>> {
    let maps: Vec<&[Point]> = b.clutching.iter().map(GSetAut::values).collect();
    generated_orbits(b.fiber.size(), &maps)
}

pub fn total_components(b: &FlatBundle) -> usize {
    component_partition(b).len()
}

/// Whether the unit section spans a component of its own: the identity
/// element is fixed by every clutching map.
pub fn unit_component_is_circle(b: &FlatBundle) -> Result<bool> {
    match &b.mode {
        BundleMode::Group(g) => {
            let e = g.identity();
            Ok(b.clutching.iter().all(|c| c.apply(e) == e))
        }
        BundleMode::GSpace => Err(Error::ModeMismatch(
            "unit section needs a group bundle".into(),
        )),
    }
}

/// Automorphisms of the fiber that are admissible changes of trivialization.
fn conjugators(b: &FlatBundle) -> Result<Vec<GSetAut>> {
    match &b.mode {
        BundleMode::Group(g) => Ok(automorphisms(g)?
            .into_iter()
            .map(|a| GSetAut::from_values_unchecked(b.fiber.clone(), a.image().to_vec()))
            .collect()),
        BundleMode::GSpace => Ok(aut_group_of_gset(&b.fiber)?.auts),
    }
}

/// Whether one automorphism `c` conjugates every clutching map of `b1` into
/// the corresponding one of `b2`.
pub fn bundle_isomorphic(b1: &FlatBundle, b2: &FlatBundle) -> Result<bool> {
    if b1.mode != b2.mode {
        return Err(Error::ModeMismatch(format!(
            "{} bundle against {} bundle",
            b1.mode.name(),
            b2.mode.name()
        )));
    }
    if *b1.fiber != *b2.fiber {
        return Err(Error::InvalidArgument(
            "bundles have different fibers".into(),
        ));
    }
    if b1.loops() != b2.loops() {
        return Ok(false);
    }
    Ok(find_conjugator(b1, b2)?.is_some())
}

/// A fiber automorphism `c` with `c∘ψ₁ᵢ∘c⁻¹ = ψ₂ᵢ` for all `i`, if one exists.
pub fn find_conjugator(b1: &FlatBundle, b2: &FlatBundle) -> Result<Option<GSetAut>> {
    for c in conjugators(b1)? {
        let c_inv = c.inverse();
        if b1
            .clutching
            .iter()
            .zip(&b2.clutching)
            .all(|(p1, p2)| c.compose(p1).compose(&c_inv) == *p2)
        {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Conjugation fixes the identity, so a bundle is trivializable exactly when
/// every clutching map already is the identity.
pub fn is_trivializable(b: &FlatBundle) -> bool {
    b.clutching.iter().all(GSetAut::is_identity)
}

/// The covering `B/G → M`: fiber is the orbit set, clutching is `C_q`.
pub fn quotient_bundle(b: &FlatBundle) -> Result<FlatBundle> {
    b.fiber.require_free()?;
    let orbits = Arc::new(GSet::trivial_action(
        Arc::new(FiniteGroup::trivial()),
        b.fiber.orbit_count(),
    ));
    let clutching = b
        .clutching
        .iter()
        .map(|c| GSetAut::from_values_unchecked(orbits.clone(), cq(c).images().to_vec()))
        .collect();
    FlatBundle::new(orbits, clutching)
}

/// The fiber quotient map `Q: F → F/G`, equivariant over `G → 1`.
pub fn quotient_map(b: &FlatBundle) -> Result<EquivariantMap> {
    let q = quotient_bundle(b)?;
    let xi = GroupHom::trivial(b.fiber.group().clone(), q.fiber.group().clone());
    EquivariantMap::new(
        b.fiber.clone(),
        q.fiber.clone(),
        xi,
        b.fiber.orbits().orbit_of.clone(),
    )
}

/// The common preimage size of a surjective, orbit-bijective map, which
/// equals `|ker ξ|`.
pub fn map_fiber_count(a: &EquivariantMap) -> Result<usize> {
    if !a.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !is_orbit_bijection(a) {
        return Err(Error::OrbitObstruction);
    }
    let mut counts = vec![0usize; a.target().size()];
    for &v in a.values() {
        counts[v] += 1;
    }
    let k = kernel(a.xi()).len();
    if counts.iter().any(|&c| c != k) {
        return Err(Error::NonUniformFibers);
    }
    Ok(k)
}

/// Fiber `G × I_k` glued by the shift `(h, x) ↦ (h, x + 1)`, the image of
/// `(e, (1 2 … k))` under `I`.
pub fn finite_winding_bundle(group: Arc<FiniteGroup>, k: usize) -> Result<FlatBundle> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "winding number must be positive".into(),
        ));
    }
    let fiber = Arc::new(standard_semitorsor(group.clone(), k)?);
    let w = WreathProduct::new(group.clone(), k).from_perm(Perm::cycle(k));
    let psi = wreath_to_aut(&w, k, &group)?;
    let psi = GSetAut::from_values_unchecked(fiber.clone(), psi.values().to_vec());
    FlatBundle::new(fiber, vec![psi])
}

/// The frame bundle together with the data identifying its fiber.
#[derive(Clone, Debug)]
pub struct FrameBundle {
    /// Fiber: the frames, as a torsor over the wreath product.
    pub bundle: FlatBundle,
    pub frames: Arc<FrameSpace>,
    pub wreath: MaterializedWreath,
}

/// `Fr(B)`: clutching `i` sends a frame `f̃` to `ψᵢ∘f̃`.
pub fn frame_bundle(b: &FlatBundle) -> Result<FrameBundle> {
    let frames = Arc::new(enumerate_frames(b.fiber.clone())?);
    let wreath = frames.wreath().to_finite_group()?;
    let size = frames.len();
    limits::check_enumeration(
        "frame bundle action table",
        (wreath.elements.len() * size) as u128,
    )?;
    let act: Vec<Point> = wreath
        .elements
        .iter()
        .flat_map(|w| {
            (0..size)
                .map(|i| frames.act_index(w, i))
                .collect::<Vec<_>>()
        })
        .collect();
    let fiber = Arc::new(GSet::from_trusted(wreath.group.clone(), size, act));
    let clutching = b
        .clutching
        .iter()
        .map(|c| {
            let values = frames
                .frames()
                .iter()
                .map(|f| {
                    let image = Frame::new(f.entries.iter().map(|&p| c.apply(p)).collect());
                    frames
                        .index_of(&image)
                        .expect("automorphisms map frames to frames")
                })
                .collect();
            GSetAut::from_values_unchecked(fiber.clone(), values)
        })
        .collect();
    Ok(FrameBundle {
        bundle: FlatBundle::new(fiber, clutching)?,
        frames,
        wreath,
    })
}

/// `wᵢ = [ψᵢ∘f̃ / f̃]` for a reference frame `f̃`.
pub fn clutching_wreath(b: &FlatBundle, reference: &Frame) -> Result<Vec<WreathElement>> {
    if !is_basis(&b.fiber, &reference.entries)? {
        return Err(Error::NotBasis);
    }
    b.clutching
        .iter()
        .map(|c| {
            let image = Frame::new(reference.entries.iter().map(|&p| c.apply(p)).collect());
            divide_bases(&b.fiber, &image, reference)
        })
        .collect()
}

/// [`clutching_wreath`] relative to the canonical frame.
pub fn canonical_clutching_wreath(b: &FlatBundle) -> Result<Vec<WreathElement>> {
    clutching_wreath(b, &canonical_frame(&b.fiber))
}

/// The labelling `A → I_n` with `aᵢ ↦ i`, where `aᵢ` is the unique point
/// fixed by the stabilizer of `i`.
pub fn sn_labelling(sn: &SymmetricGroup, action: &GSet) -> Result<Perm> {
    let n = sn.degree();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    if **action.group() != *sn.group {
        return Err(Error::GroupMismatch(
            "action is not by this symmetric group".into(),
        ));
    }
    if action.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: action.size(),
        });
    }
    let g = &sn.group;
    let faithful = g
        .elements()
        .filter(|&s| s != g.identity())
        .all(|s| (0..n).any(|a| action.act(s, a) != a));
    if !faithful {
        return Err(Error::NotFaithful);
    }
    let mut point_of = Vec::with_capacity(n);
    for i in 0..n {
        let stabilizer: Vec<usize> = g.elements().filter(|&s| sn.perm(s).apply(i) == i).collect();
        let fixed: Vec<Point> = (0..n)
            .filter(|&a| stabilizer.iter().all(|&s| action.act(s, a) == a))
            .collect();
        match fixed.as_slice() {
            [a] => point_of.push(*a),
            _ => return Err(Error::NoFixedPoint(i)),
        }
    }
    let mut label = vec![usize::MAX; n];
    for (i, &a) in point_of.iter().enumerate() {
        if label[a] != usize::MAX {
            return Err(Error::NoFixedPoint(i));
        }
        label[a] = i;
    }
    let label = Perm::new(label)?;
    for s in g.elements() {
        for a in 0..n {
            if label.apply(action.act(s, a)) != sn.perm(s).apply(label.apply(a)) {
                return Err(Error::InvalidAction("labelling is not equivariant".into()));
            }
        }
    }
    Ok(label)
}

/// `S_n` acting on `0..n` by `σ·a = τ⁻¹(σ(τ(a)))`.
pub fn conjugated_natural_action(sn: &SymmetricGroup, tau: &Perm) -> Result<GSet> {
    let n = sn.degree();
    if tau.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: tau.degree(),
        });
    }
    let tau_inv = tau.inverse();
    let rows = sn
        .perms
        .iter()
        .map(|s| {
            (0..n)
                .map(|a| tau_inv.apply(s.apply(tau.apply(a))))
                .collect()
        })
        .collect();
    GSet::new(sn.group.clone(), n, rows)
}

/// Result of trying to put a fiber-preserving `S_n` action on a covering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SnActionOutcome {
    /// The natural action on every fiber, compatible with all clutching maps.
    Action { action: GSet },
    /// A loop (1-based) whose clutching does not commute with the action.
    Obstruction { loop_index: usize, clutching: Perm },
}

/// A global `S_n` action on an `n`-sheeted covering, or the first loop whose
/// monodromy obstructs one.
pub fn sn_action_on_bundle(b: &FlatBundle, sn: &SymmetricGroup) -> Result<SnActionOutcome> {
    if b.fiber.group().order() != 1 {
        return Err(Error::ModeMismatch(
            "S_n actions are defined on coverings".into(),
        ));
    }
    let n = b.fiber.size();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    if sn.degree() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: sn.degree(),
        });
    }
    let action = conjugated_natural_action(sn, &Perm::identity(n))?;
    for (i, c) in b.clutching.iter().enumerate() {
        let commutes = sn
            .group
            .elements()
            .all(|s| (0..n).all(|a| c.apply(action.act(s, a)) == action.act(s, c.apply(a))));
        if !commutes {
            return Ok(SnActionOutcome::Obstruction {
                loop_index: i + 1,
                clutching: Perm::new(c.values().to_vec())?,
            });
        }
    }
    Ok(SnActionOutcome::Action { action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_direct_product, make_symmetric};
    use crate::hom::{aut_group, compose_hom};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(make_cyclic(n).unwrap())
    }

    fn klein() -> Arc<FiniteGroup> {
        let z2 = make_cyclic(2).unwrap();
        Arc::new(make_direct_product(&z2, &z2).unwrap())
    }

    /// Oracle: follow each point around the loop until it returns, counting
    /// the distinct cycles of a single permutation.
    fn cycle_count(values: &[Point]) -> usize {
        let mut seen = vec![false; values.len()];
        let mut count = 0;
        for start in 0..values.len() {
            if !seen[start] {
                count += 1;
                let mut p = start;
                while !seen[p] {
                    seen[p] = true;
                    p = values[p];
                }
            }
        }
        count
    }

    #[test]
    fn z3_circle_bundles() {
        let g = z(3);
        let auts = automorphisms(&g).unwrap();
        let trivial = group_bundle_over_circle(g.clone(), &auts[0]).unwrap();
        let twisted = group_bundle_over_circle(g.clone(), &auts[1]).unwrap();
        assert!(is_trivializable(&trivial));
        assert!(!is_trivializable(&twisted));
        assert_eq!(total_components(&trivial), 3);
        assert_eq!(total_components(&twisted), 2);
        assert_eq!(component_partition(&twisted), vec![vec![0], vec![1, 2]]);
        assert!(unit_component_is_circle(&twisted).unwrap());
        assert!(!bundle_isomorphic(&trivial, &twisted).unwrap());
        assert!(bundle_isomorphic(&twisted, &twisted).unwrap());
    }

    #[test]
    fn klein_circle_bundles() {
        let g = klein();
        let (aut, auts) = aut_group(&g).unwrap();
        let mut counts: Vec<usize> = aut
            .conjugacy_classes()
            .iter()
            .map(|c| total_components(&group_bundle_over_circle(g.clone(), &auts[c[0]]).unwrap()))
            .collect();
        counts.sort();
        assert_eq!(counts, vec![2, 3, 4]);
        for a in &auts {
            let b = group_bundle_over_circle(g.clone(), a).unwrap();
            assert_eq!(total_components(&b), cycle_count(a.image()));
            assert!(unit_component_is_circle(&b).unwrap());
        }
    }

    #[test]
    fn isomorphism_follows_conjugacy() {
        let g = klein();
        let (aut, auts) = aut_group(&g).unwrap();
        let classes = aut.conjugacy_classes();
        let class_of = |i: usize| classes.iter().position(|c| c.contains(&i)).unwrap();
        for i in aut.elements() {
            for j in aut.elements() {
                let b1 = group_bundle_over_circle(g.clone(), &auts[i]).unwrap();
                let b2 = group_bundle_over_circle(g.clone(), &auts[j]).unwrap();
                assert_eq!(
                    bundle_isomorphic(&b1, &b2).unwrap(),
                    class_of(i) == class_of(j)
                );
            }
        }
    }

    #[test]
    fn group_bundle_rejects_non_automorphisms() {
        let g = z(4);
        let square = GroupHom::new(g.clone(), g.clone(), vec![0, 2, 0, 2]).unwrap();
        assert_eq!(
            group_bundle_over_circle(g, &square),
            Err(Error::NotGroupAutomorphism)
        );
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let g = z(3);
        let gb = group_bundle_over_circle(g.clone(), &GroupHom::identity(g.clone())).unwrap();
        let fiber = gb.fiber().clone();
        let cover = FlatBundle::trivial(fiber, 1).unwrap();
        assert!(matches!(
            bundle_isomorphic(&gb, &cover),
            Err(Error::ModeMismatch(_))
        ));
        assert!(matches!(
            unit_component_is_circle(&cover),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn two_loop_trivializability() {
        let f = Arc::new(standard_semitorsor(z(2), 2).unwrap());
        let swap = GSetAut::from_values(f.clone(), vec![2, 3, 0, 1]).unwrap();
        let b = FlatBundle::new(f.clone(), vec![GSetAut::identity(f.clone()), swap]).unwrap();
        assert!(!is_trivializable(&b));
        let t = FlatBundle::trivial(f, 2).unwrap();
        assert!(is_trivializable(&t));
        assert!(!bundle_isomorphic(&b, &t).unwrap());
    }

    #[test]
    fn winding_bundles() {
        let g = z(2);
        let b1 = finite_winding_bundle(g.clone(), 1).unwrap();
        assert!(is_trivializable(&b1));
        let b2 = finite_winding_bundle(g.clone(), 2).unwrap();
        assert_eq!(b2.clutching()[0].values(), &[2, 3, 0, 1]);
        // one component per element of G: each sheet pair closes into one circle
        assert_eq!(total_components(&b2), 2);
        assert_eq!(total_components(&quotient_bundle(&b2).unwrap()), 1);
        let q3 = quotient_bundle(&finite_winding_bundle(g, 3).unwrap()).unwrap();
        assert_eq!(total_components(&q3), 1);
        assert_eq!(q3.clutching()[0].values(), &[1, 2, 0]);
    }

    #[test]
    fn quotient_of_trivial_semitorsor_bundle() {
        let f = Arc::new(standard_semitorsor(z(3), 4).unwrap());
        let q = quotient_bundle(&FlatBundle::trivial(f, 1).unwrap()).unwrap();
        assert_eq!(q.fiber().size(), 4);
        assert_eq!(total_components(&q), 4);
        let torsor = Arc::new(GSet::regular(z(3)));
        let q = quotient_bundle(&FlatBundle::trivial(torsor, 1).unwrap()).unwrap();
        assert_eq!(q.fiber().size(), 1);
    }

    #[test]
    fn holonomy_words() {
        let b = finite_winding_bundle(z(2), 3).unwrap();
        assert!(holonomy(&b, &LoopWord::empty()).unwrap().is_identity());
        assert!(holonomy(&b, &"1,-1".parse().unwrap())
            .unwrap()
            .is_identity());
        assert!(holonomy(&b, &"1 1 1".parse().unwrap())
            .unwrap()
            .is_identity());
        assert!(!holonomy(&b, &"1 1".parse().unwrap()).unwrap().is_identity());
        assert_eq!(
            holonomy(&b, &"2".parse().unwrap()),
            Err(Error::LetterOutOfRange {
                letter: 2,
                loops: 1
            })
        );
        assert!("0".parse::<LoopWord>().is_err());
    }

    #[test]
    fn holonomy_order_convention() {
        let f = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 3));
        let a = GSetAut::from_values(f.clone(), vec![1, 0, 2]).unwrap();
        let c = GSetAut::from_values(f.clone(), vec![0, 2, 1]).unwrap();
        let b = FlatBundle::new(f, vec![a.clone(), c.clone()]).unwrap();
        // loop 1 first, then loop 2
        let h = holonomy(&b, &"1,2".parse().unwrap()).unwrap();
        assert_eq!(h, c.compose(&a));
        for u in LoopWord::all_of_length(2, 2) {
            for v in LoopWord::all_of_length(2, 2) {
                let lhs = holonomy(&b, &u.concat(&v)).unwrap();
                let rhs = holonomy(&b, &v)
                    .unwrap()
                    .compose(&holonomy(&b, &u).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frame_bundle_of_winding() {
        let b = finite_winding_bundle(z(2), 2).unwrap();
        let fb = frame_bundle(&b).unwrap();
        assert_eq!(fb.frames.len(), 8);
        assert!(fb.bundle.fiber().is_torsor());
        let lifted = fb.bundle.clutching()[0].values();
        assert_eq!(total_components(&fb.bundle), cycle_count(lifted));
        assert_eq!(total_components(&fb.bundle), 4);
        let w = canonical_clutching_wreath(&b).unwrap();
        assert_eq!(
            w,
            vec![WreathElement::new(vec![0, 0], Perm::transposition(2, 0, 1)).unwrap()]
        );
        let t = FlatBundle::trivial(b.fiber().clone(), 1).unwrap();
        assert!(is_trivializable(&frame_bundle(&t).unwrap().bundle));
    }

    #[test]
    fn winding_frame_components_follow_formula() {
        // |G|^k (k-1)! components: the k-cycle acts freely on frames with
        // orbits of length k
        for (order, k) in [(1, 3), (2, 3), (3, 2), (1, 4)] {
            let b = finite_winding_bundle(z(order), k).unwrap();
            let fb = frame_bundle(&b).unwrap();
            let fact: usize = (1..k).product();
            assert_eq!(total_components(&fb.bundle), order.pow(k as u32) * fact);
        }
    }

    #[test]
    fn winding_clutching_wreath_is_a_cycle() {
        let g = z(3);
        let b = finite_winding_bundle(g.clone(), 3).unwrap();
        let w = canonical_clutching_wreath(&b).unwrap();
        assert_eq!(w[0].g, vec![0, 0, 0]);
        assert_eq!(w[0].sigma, Perm::cycle(3).inverse());
        assert_eq!(w[0].sigma.cycles().len(), 1);
    }

    #[test]
    fn clutching_wreath_changes_by_conjugation() {
        let f = Arc::new(standard_semitorsor(z(2), 2).unwrap());
        let psi = GSetAut::from_values(f.clone(), vec![3, 2, 0, 1]).unwrap();
        let b = FlatBundle::new(f.clone(), vec![psi]).unwrap();
        let fs = enumerate_frames(f).unwrap();
        let wp = fs.wreath().clone();
        let reference = fs.frame(0).clone();
        let w0 = clutching_wreath(&b, &reference).unwrap()[0].clone();
        for other in fs.frames() {
            let u = crate::frames::frame_divide(&fs, other, &reference).unwrap();
            let w1 = clutching_wreath(&b, other).unwrap()[0].clone();
            assert_eq!(w1, wp.mul(&wp.mul(&u, &w0), &wp.inv(&u)));
        }
    }

    #[test]
    fn frame_bundle_descends_to_quotient_frames() {
        let b = finite_winding_bundle(z(2), 3).unwrap();
        let fb = frame_bundle(&b).unwrap();
        let qb = quotient_bundle(&b).unwrap();
        let qfs = enumerate_frames(qb.fiber().clone()).unwrap();
        let qfb = frame_bundle(&qb).unwrap();
        let fiber = b.fiber();
        let project = |f: &Frame| Frame::new(f.entries.iter().map(|&p| fiber.q(p)).collect());
        for (i, f) in fb.frames.frames().iter().enumerate() {
            let image = fb.frames.frame(fb.bundle.clutching()[0].apply(i));
            let lhs = qfs.index_of(&project(image)).unwrap();
            let rhs = qfb.bundle.clutching()[0].apply(qfs.index_of(&project(f)).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fiber_counts() {
        let f = Arc::new(standard_semitorsor(z(2), 2).unwrap());
        assert_eq!(
            map_fiber_count(&EquivariantMap::identity(f.clone())).unwrap(),
            1
        );
        let b = finite_winding_bundle(z(3), 2).unwrap();
        assert_eq!(map_fiber_count(&quotient_map(&b).unwrap()).unwrap(), 3);
        // reduction Z4 → Z2 on standard semitorsors
        let z4 = z(4);
        let z2 = z(2);
        let xi = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let s4 = Arc::new(standard_semitorsor(z4, 2).unwrap());
        let s2 = Arc::new(standard_semitorsor(z2, 2).unwrap());
        let value = (0..8).map(|p| (p / 4) * 2 + (p % 4) % 2).collect();
        let red = EquivariantMap::new(s4, s2.clone(), xi, value).unwrap();
        assert_eq!(map_fiber_count(&red).unwrap(), 2);
        let not_onto = EquivariantMap::new(
            Arc::new(GSet::regular(z(2))),
            s2,
            GroupHom::identity(z(2)),
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(map_fiber_count(&not_onto), Err(Error::NotSurjective));
    }

    #[test]
    fn decomposition_coherence() {
        let g = z(2);
        let f = Arc::new(standard_semitorsor(g.clone(), 3).unwrap());
        let auts = aut_group_of_gset(&f).unwrap().auts;
        for a in auts.iter().step_by(4) {
            let b = FlatBundle::new(f.clone(), vec![a.clone()]).unwrap();
            let q = quotient_bundle(&b).unwrap();
            assert_eq!(q.clutching()[0].values(), cq(a).images());
            assert_eq!(map_fiber_count(&quotient_map(&b).unwrap()).unwrap(), 2);
        }
    }

    #[test]
    fn labelling_of_conjugated_actions() {
        for n in [3, 4] {
            let sn = make_symmetric(n).unwrap();
            for tau in Perm::all(n) {
                let action = conjugated_natural_action(&sn, &tau).unwrap();
                assert_eq!(sn_labelling(&sn, &action).unwrap(), tau);
            }
        }
        let s2 = make_symmetric(2).unwrap();
        let natural = conjugated_natural_action(&s2, &Perm::identity(2)).unwrap();
        assert_eq!(sn_labelling(&s2, &natural), Err(Error::TooSmall(2)));
    }

    #[test]
    fn labelling_rejects_unfaithful_actions() {
        let s3 = make_symmetric(3).unwrap();
        // sign action: odd permutations swap 0 and 1, fix 2
        let rows = s3
            .perms
            .iter()
            .map(|p| {
                let odd = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                if odd {
                    vec![1, 0, 2]
                } else {
                    vec![0, 1, 2]
                }
            })
            .collect();
        let sign = GSet::new(s3.group.clone(), 3, rows).unwrap();
        assert_eq!(sn_labelling(&s3, &sign), Err(Error::NotFaithful));
    }

    #[test]
    fn labelling_fails_for_the_exotic_s6_action() {
        let s6 = make_symmetric(6).unwrap();
        let exotic = crate::fixtures::exotic_s6_action(&s6).unwrap();
        assert!(exotic.is_transitive());
        assert_eq!(sn_labelling(&s6, &exotic), Err(Error::NoFixedPoint(0)));
        let natural = conjugated_natural_action(&s6, &Perm::identity(6)).unwrap();
        assert_eq!(sn_labelling(&s6, &natural).unwrap(), Perm::identity(6));
    }

    #[test]
    fn sn_action_on_coverings() {
        let s3 = make_symmetric(3).unwrap();
        let sheets = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 3));
        let trivial = FlatBundle::trivial(sheets, 1).unwrap();
        assert!(matches!(
            sn_action_on_bundle(&trivial, &s3).unwrap(),
            SnActionOutcome::Action { .. }
        ));
        let cover = quotient_bundle(&finite_winding_bundle(z(2), 3).unwrap()).unwrap();
        match sn_action_on_bundle(&cover, &s3).unwrap() {
            SnActionOutcome::Obstruction {
                loop_index,
                clutching,
            } => {
                assert_eq!(loop_index, 1);
                assert_eq!(clutching, Perm::cycle(3));
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
        let two = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 2));
        let swap = GSetAut::from_values(two.clone(), vec![1, 0]).unwrap();
        let b = FlatBundle::new(two, vec![swap]).unwrap();
        assert_eq!(sn_action_on_bundle(&b, &s3), Err(Error::TooSmall(2)));
    }

    #[test]
    fn hom_composition_matches_bundle_composition() {
        let g = klein();
        let auts = automorphisms(&g).unwrap();
        let b = FlatBundle::group_bundle(g.clone(), &[auts[1].clone(), auts[2].clone()]).unwrap();
        let h = holonomy(&b, &"1,2".parse().unwrap()).unwrap();
        let c = compose_hom(&auts[2], &auts[1]).unwrap();
        assert_eq!(h.values(), c.image());
    }
}
