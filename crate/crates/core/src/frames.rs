//! Frames (bases) of free G-sets and the frame functor.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::gset::{
    equivariant_maps, is_orbit_bijection, standard_semitorsor, EquivariantMap, GSet, Point,
};
use crate::hom::GroupHom;
use crate::limits;
use crate::perm::Perm;
use crate::wreath::{WreathElement, WreathProduct};

/// A tuple `f̃: I_n → F`; frames held by a [`FrameSpace`] are bases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frame {
    pub entries: Vec<Point>,
}

impl Frame {
    pub fn new(entries: Vec<Point>) -> Frame {
        Frame { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The slot-to-orbit map `q∘f̃` as a permutation, if it is one.
    pub fn orbit_perm(&self, gset: &GSet) -> Option<Perm> {
        Perm::new(self.entries.iter().map(|&p| gset.q(p)).collect()).ok()
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Whether `q∘t` is a bijection onto the orbit set.
pub fn is_basis(gset: &GSet, t: &[Point]) -> Result<bool> {
    gset.require_free()?;
    if t.iter().any(|&p| p >= gset.size()) {
        return Err(Error::InvalidArgument(
            "tuple entry outside the carrier".into(),
        ));
    }
    if t.len() != gset.orbit_count() {
        return Ok(false);
    }
    let mut seen = vec![false; t.len()];
    Ok(t.iter()
        .all(|&p| !std::mem::replace(&mut seen[gset.q(p)], true)))
}

/// The frame of orbit representatives, `x ↦ representatives[x]`.
pub fn canonical_frame(gset: &GSet) -> Frame {
    Frame::new(gset.orbits().representatives.clone())
}

fn require_basis(gset: &GSet, f: &Frame) -> Result<()> {
    if is_basis(gset, &f.entries)? {
        Ok(())
    } else {
        Err(Error::NotBasis)
    }
}

/// `φ_f̃: G × I_n → F`, `(g, x) ↦ g·f̃(x)`, as an equivariant map out of
/// [`standard_semitorsor`].
pub fn associated_map(gset: &Arc<GSet>, f: &Frame) -> Result<EquivariantMap> {
    require_basis(gset, f)?;
    let group = gset.group().clone();
    let order = group.order();
    let standard = Arc::new(standard_semitorsor(group.clone(), f.len())?);
    let value = (0..standard.size())
        .map(|p| gset.act(p % order, f.entries[p / order]))
        .collect();
    Ok(EquivariantMap::new_unchecked(
        standard,
        gset.clone(),
        GroupHom::identity(group),
        value,
    ))
}

/// `φ_f̃⁻¹`, computed as `p ↦ ([p / f̃(x)], x)` with `x` the slot over `q(p)`.
pub fn associated_inverse(gset: &Arc<GSet>, f: &Frame) -> Result<EquivariantMap> {
    require_basis(gset, f)?;
    let group = gset.group().clone();
    let order = group.order();
    let standard = Arc::new(standard_semitorsor(group.clone(), f.len())?);
    let slot_of = f.orbit_perm(gset).expect("basis").inverse();
    let value = (0..gset.size())
        .map(|p| {
            let x = slot_of.apply(gset.q(p));
            let g = gset.divide(p, f.entries[x])?;
            Ok(x * order + g)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivariantMap::new_unchecked(
        gset.clone(),
        standard,
        GroupHom::identity(group),
        value,
    ))
}

/// All frames of a free G-set, sorted lexicographically, with the action of
/// `G ≀ I_n`.
#[derive(Clone, Debug)]
pub struct FrameSpace {
    gset: Arc<GSet>,
    wreath: WreathProduct,
    frames: Vec<Frame>,
    index: HashMap<Frame, usize>,
}

/// Enumerates `Fr(F)`.
pub fn enumerate_frames(gset: Arc<GSet>) -> Result<FrameSpace> {
    gset.require_free()?;
    let n = gset.orbit_count();
    let wreath = WreathProduct::new(gset.group().clone(), n);
    limits::check_enumeration("frame space", wreath.order())?;
    let mut frames = Vec::with_capacity(wreath.order() as usize);
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn fill(gset: &GSet, current: &mut Vec<Point>, used: &mut [bool], out: &mut Vec<Frame>) {
        if current.len() == used.len() {
            out.push(Frame::new(current.clone()));
            return;
        }
        for p in 0..gset.size() {
            let o = gset.q(p);
            if !used[o] {
                used[o] = true;
                current.push(p);
                fill(gset, current, used, out);
                current.pop();
                used[o] = false;
            }
        }
    }
    fill(&gset, &mut current, &mut used, &mut frames);
    let index = frames
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    Ok(FrameSpace {
        gset,
        wreath,
        frames,
        index,
    })
}

impl FrameSpace {
    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn wreath(&self) -> &WreathProduct {
        &self.wreath
    }

    pub fn n(&self) -> usize {
        self.wreath.n()
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn frame(&self, i: usize) -> &Frame {
        &self.frames[i]
    }

    pub fn index_of(&self, f: &Frame) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Frame) -> bool {
        self.index.contains_key(f)
    }

    /// `w·f̃` for a frame of this space.
    pub fn act(&self, w: &WreathElement, f: &Frame) -> Frame {
        Frame::new(self.wreath.act_tuple(w, &self.gset, &f.entries))
    }

    /// Index of `w·frames[i]`.
    pub fn act_index(&self, w: &WreathElement, i: usize) -> usize {
        self.index[&self.act(w, &self.frames[i])]
    }

    /// `table[k][i]` is the index of `elements[k]·frames[i]`.
    pub fn action_table(&self, elements: &[WreathElement]) -> Vec<Vec<usize>> {
        elements
            .iter()
            .map(|w| (0..self.len()).map(|i| self.act_index(w, i)).collect())
            .collect()
    }
}

/// The unique `w` with `w·f1 = f2`.
pub fn frame_divide(fs: &FrameSpace, f2: &Frame, f1: &Frame) -> Result<WreathElement> {
    if !fs.contains(f1) || !fs.contains(f2) {
        return Err(Error::NotInFrameSpace);
    }
    divide_bases(fs.gset(), f2, f1)
}

/// The unique `w` with `w·f1 = f2` for two bases of `gset`.
pub(crate) fn divide_bases(gset: &GSet, f2: &Frame, f1: &Frame) -> Result<WreathElement> {
    let a = f1.orbit_perm(gset).expect("basis");
    let b = f2.orbit_perm(gset).expect("basis");
    let sigma = b.inverse().compose(&a);
    let s_inv = sigma.inverse();
    let g = (0..f1.len())
        .map(|x| gset.divide(f2.entries[x], f1.entries[s_inv.apply(x)]))
        .collect::<Result<Vec<Elem>>>()?;
    Ok(WreathElement { g, sigma })
}

/// `ξ! = (ξ^X, id)`.
pub fn xi_bang(xi: &GroupHom, w: &WreathElement) -> WreathElement {
    WreathElement {
        g: w.g.iter().map(|&g| xi.apply(g)).collect(),
        sigma: w.sigma.clone(),
    }
}

/// The lift `α!: Fr(F₁) → Fr(F₂)`, `f̃ ↦ α∘f̃`, as an index table.
#[derive(Clone, Debug)]
pub struct FrameMap {
    pub source: Arc<FrameSpace>,
    pub target: Arc<FrameSpace>,
    pub xi: GroupHom,
    pub value: Vec<usize>,
}

impl FrameMap {
    pub fn apply(&self, f: &Frame) -> Option<Frame> {
        self.source
            .index_of(f)
            .map(|i| self.target.frame(self.value[i]).clone())
    }

    /// Exhaustive check of `α!(w·f̃) = ξ!(w)·α!(f̃)`.
    pub fn check_equivariant(&self) -> Result<bool> {
        for w in self.source.wreath().elements()? {
            let xw = xi_bang(&self.xi, &w);
            for i in 0..self.source.len() {
                let lhs = self.value[self.source.act_index(&w, i)];
                let rhs = self.target.act_index(&xw, self.value[i]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `α!`; fails with [`Error::OrbitObstruction`] unless `α/` is a bijection.
pub fn frame_functor_map(
    a: &EquivariantMap,
    source: &Arc<FrameSpace>,
    target: &Arc<FrameSpace>,
) -> Result<FrameMap> {
    if **source.gset() != **a.source() || **target.gset() != **a.target() {
        return Err(Error::GroupMismatch(
            "frame spaces do not match the map".into(),
        ));
    }
    if !is_orbit_bijection(a) {
        return Err(Error::OrbitObstruction);
    }
    let value = source
        .frames()
        .iter()
        .map(|f| {
            let image = Frame::new(f.entries.iter().map(|&p| a.apply(p)).collect());
            target
                .index_of(&image)
                .expect("orbit bijection maps bases to bases")
        })
        .collect();
    Ok(FrameMap {
        source: source.clone(),
        target: target.clone(),
        xi: a.xi().clone(),
        value,
    })
}

/// `Fr(F)` divided by the stabilizer of slot `x`, as a G-set.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// G acting on the classes through the slot-`x` embedding `g ↦ (e_x(g), id)`.
    pub gset: Arc<GSet>,
    /// Class of each frame, by frame index.
    pub class_of: Vec<usize>,
    /// Class ↦ `f̃(x)` for any member `f̃`; an isomorphism onto the original G-set.
    pub to_original: EquivariantMap,
    /// Isomorphism onto `G × I_n`, `φ_{f₀}⁻¹ ∘ to_original` with `f₀` the canonical frame.
    pub to_standard: EquivariantMap,
}

/// Reconstructs the G-set from its frames by dividing out
/// `H = {(g̃, σ) : σ(x) = x, g̃(x) = e}`.
pub fn reconstruct_semitorsor(fs: &FrameSpace, x: usize) -> Result<Reconstruction> {
    let n = fs.n();
    if x >= n {
        return Err(Error::InvalidArgument(format!(
            "slot {x} out of range for {n} slots"
        )));
    }
    let group = fs.gset().group().clone();
    let e = group.identity();
    let stabilizer: Vec<WreathElement> = fs
        .wreath()
        .elements()?
        .into_iter()
        .filter(|w| w.sigma.apply(x) == x && w.g[x] == e)
        .collect();

    // classes are H-orbits, numbered by smallest frame index
    let mut class_of = vec![usize::MAX; fs.len()];
    let mut reps = Vec::new();
    for i in 0..fs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for h in &stabilizer {
            class_of[fs.act_index(h, i)] = c;
        }
    }

    let embed = |g: Elem| {
        let mut w = fs.wreath().identity();
        w.g[x] = g;
        w
    };
    let size = reps.len();
    let mut act = Vec::with_capacity(group.order() * size);
    for g in group.elements() {
        let w = embed(g);
        act.extend(reps.iter().map(|&r| class_of[fs.act_index(&w, r)]));
    }
    let quotient = Arc::new(GSet::from_trusted(group.clone(), size, act));
    let to_original = EquivariantMap::new(
        quotient.clone(),
        fs.gset().clone(),
        GroupHom::identity(group.clone()),
        reps.iter().map(|&r| fs.frame(r).entries[x]).collect(),
    )?;
    let phi_inv = associated_inverse(fs.gset(), &canonical_frame(fs.gset()))?;
    let to_standard = crate::gset::compose_equivariant(&phi_inv, &to_original)?;
    Ok(Reconstruction {
        gset: quotient,
        class_of,
        to_original,
        to_standard,
    })
}

/// Outcome of comparing `Hom_STor(F, F₂)` with the torsor maps `Fr(F) → Fr(F₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    /// Equivariant maps with `ξ = id` whose orbit map is bijective.
    pub semitorsor_maps: usize,
    /// `G ≀ I_n`-equivariant maps between frame spaces.
    pub torsor_maps: usize,
    /// Whether `α ↦ α!` is a bijection between the two sets.
    pub lift_is_bijective: bool,
}

/// Enumerates both Hom-sets and checks that `α ↦ α!` is a bijection.
pub fn check_equivalence(f1: &Arc<GSet>, f2: &Arc<GSet>) -> Result<EquivalenceReport> {
    if **f1.group() != **f2.group() {
        return Err(Error::GroupMismatch("G-sets over different groups".into()));
    }
    f1.require_free()?;
    f2.require_free()?;
    if f1.orbit_count() != f2.orbit_count() {
        // no orbit bijection and no equivariant map between torsors of different groups
        return Ok(EquivalenceReport {
            semitorsor_maps: 0,
            torsor_maps: 0,
            lift_is_bijective: true,
        });
    }
    let fs1 = Arc::new(enumerate_frames(f1.clone())?);
    let fs2 = Arc::new(enumerate_frames(f2.clone())?);
    let id = GroupHom::identity(f1.group().clone());
    let stor: Vec<EquivariantMap> = equivariant_maps(f1, f2, &id)?
        .into_iter()
        .filter(is_orbit_bijection)
        .collect();

    // Right side: a torsor map is fixed by the image of one frame.
    let elements = fs1.wreath().elements()?;
    let table1 = fs1.action_table(&elements);
    let table2 = fs2.action_table(&elements);
    let base = 0;
    let mut torsor: HashSet<Vec<usize>> = HashSet::new();
    for image in 0..fs2.len() {
        let mut value = vec![usize::MAX; fs1.len()];
        for k in 0..elements.len() {
            value[table1[k][base]] = table2[k][image];
        }
        let equivariant = (0..elements.len())
            .all(|k| (0..fs1.len()).all(|i| value[table1[k][i]] == table2[k][value[i]]));
        if equivariant {
            torsor.insert(value);
        }
    }

    let mut hit: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut all_lift = true;
    for a in &stor {
        let lift = frame_functor_map(a, &fs1, &fs2)?;
        if torsor.contains(&lift.value) {
            *hit.entry(lift.value).or_default() += 1;
        } else {
            all_lift = false;
        }
    }
    let injective = hit.values().all(|&c| c == 1);
    let surjective = hit.len() == torsor.len();
    Ok(EquivalenceReport {
        semitorsor_maps: stor.len(),
        torsor_maps: torsor.len(),
        lift_is_bijective: all_lift && injective && surjective,
    })
}
