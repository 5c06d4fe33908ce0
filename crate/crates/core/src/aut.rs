//! Automorphisms of free G-sets: the orbit map `C_q`, its kernel `Aut(q)`
//! and the isomorphism `I: G ≀ I_n → Aut(G × I_n)`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{associated_inverse, associated_map, canonical_frame, is_basis, Frame};
use crate::group::{Elem, FiniteGroup};
use crate::gset::{
    compose_equivariant, standard_coords, standard_point, standard_semitorsor, EquivariantMap,
    GSet, Point,
};
use crate::hom::{composition_table, GroupHom};
use crate::limits;
use crate::perm::Perm;
use crate::wreath::{tuples, WreathElement, WreathProduct};

/// An equivariant bijection `F → F` over `ξ = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetAut {
    map: EquivariantMap,
}

impl GSetAut {
    pub fn new(map: EquivariantMap) -> Result<GSetAut> {
        if **map.source() != **map.target() {
            return Err(Error::NotGSetAutomorphism(
                "source and target differ".into(),
            ));
        }
        if !map.xi().is_identity() {
            return Err(Error::NotGSetAutomorphism("ξ is not the identity".into()));
        }
        if !map.is_bijective() {
            return Err(Error::NotGSetAutomorphism("not a bijection".into()));
        }
        if !map.check_equivariant() {
            return Err(Error::NotGSetAutomorphism("not equivariant".into()));
        }
        Ok(GSetAut { map })
    }

    /// Validates a value table as an automorphism of `gset`.
    pub fn from_values(gset: Arc<GSet>, values: Vec<Point>) -> Result<GSetAut> {
        let xi = GroupHom::identity(gset.group().clone());
        let map = EquivariantMap::build(gset.clone(), gset, xi, values)
            .map_err(|e| Error::NotGSetAutomorphism(e.to_string()))?;
        GSetAut::new(map)
    }

    pub(crate) fn from_values_unchecked(gset: Arc<GSet>, values: Vec<Point>) -> GSetAut {
        let xi = GroupHom::identity(gset.group().clone());
        GSetAut {
            map: EquivariantMap::new_unchecked(gset.clone(), gset, xi, values),
        }
    }

    pub fn identity(gset: Arc<GSet>) -> GSetAut {
        GSetAut {
            map: EquivariantMap::identity(gset),
        }
    }

    pub fn gset(&self) -> &Arc<GSet> {
        self.map.source()
    }

    pub fn map(&self) -> &EquivariantMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.map.apply(p)
    }

    pub fn values(&self) -> &[Point] {
        self.map.values()
    }

    pub fn is_identity(&self) -> bool {
        self.values().iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GSetAut) -> GSetAut {
        let values = other.values().iter().map(|&p| self.apply(p)).collect();
        GSetAut::from_values_unchecked(self.gset().clone(), values)
    }

    pub fn inverse(&self) -> GSetAut {
        let mut values = vec![0; self.values().len()];
        for (p, &v) in self.values().iter().enumerate() {
            values[v] = p;
        }
        GSetAut::from_values_unchecked(self.gset().clone(), values)
    }

    pub fn pow(&self, exp: i64) -> GSetAut {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = GSetAut::identity(self.gset().clone());
        for _ in 0..exp.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }
}

/// `Aut(F)` as a table group; element `i` denotes `auts[i]` and
/// `mul(i, j)` is the index of `auts[i] ∘ auts[j]`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    pub auts: Vec<GSetAut>,
    /// The frame used to transport `Aut(G × I_n)` onto `F`.
    pub frame: Frame,
}

/// `C_q(ψ)`: the permutation of orbits with `q∘ψ = C_q(ψ)∘q`.
pub fn cq(psi: &GSetAut) -> Perm {
    let gset = psi.gset();
    let images = gset
        .orbits()
        .representatives
        .iter()
        .map(|&r| gset.q(psi.apply(r)))
        .collect();
    Perm::new(images).expect("automorphisms permute orbits")
}

/// `I(g̃, σ)(g, x) = (g·g̃(σ(x))⁻¹, σ(x))` on `G × I_n`.
pub fn wreath_to_aut(w: &WreathElement, n: usize, group: &Arc<FiniteGroup>) -> Result<GSetAut> {
    let wp = WreathProduct::new(group.clone(), n);
    wp.validate(w)?;
    let gset = Arc::new(standard_semitorsor(group.clone(), n)?);
    Ok(wreath_to_aut_on(&gset, w))
}

fn wreath_to_aut_on(gset: &Arc<GSet>, w: &WreathElement) -> GSetAut {
    let group = gset.group();
    let order = group.order();
    let values = (0..gset.size())
        .map(|p| {
            let (g, x) = standard_coords(order, p);
            let sx = w.sigma.apply(x);
            standard_point(order, group.mul(g, group.inv(w.g[sx])), sx)
        })
        .collect();
    GSetAut::from_values_unchecked(gset.clone(), values)
}

fn require_standard(gset: &GSet) -> Result<usize> {
    let order = gset.group().order();
    let n = gset.size() / order;
    if n == 0
        || !gset.size().is_multiple_of(order)
        || *gset != standard_semitorsor(gset.group().clone(), n)?
    {
        return Err(Error::InvalidArgument(
            "G-set is not a standard semitorsor G × I_n".into(),
        ));
    }
    Ok(n)
}

/// Inverse of [`wreath_to_aut`]: `σ = C_q(ψ)` and `g̃(x)` is the inverse of
/// the group coordinate of `ψ(e, σ⁻¹(x))`.
pub fn aut_to_wreath(psi: &GSetAut) -> Result<WreathElement> {
    let gset = psi.gset();
    let n = require_standard(gset)?;
    let group = gset.group();
    let order = group.order();
    let sigma = cq(psi);
    let s_inv = sigma.inverse();
    let g = (0..n)
        .map(|x| {
            let (h, _) = standard_coords(
                order,
                psi.apply(standard_point(order, group.identity(), s_inv.apply(x))),
            );
            group.inv(h)
        })
        .collect();
    Ok(WreathElement { g, sigma })
}

/// `φ_f̃ ∘ ψ ∘ φ_f̃⁻¹`, transporting an automorphism of `G × I_n` onto `F`.
fn transport_through(gset: &Arc<GSet>, f: &Frame, psi: &GSetAut) -> Result<GSetAut> {
    let phi = associated_map(gset, f)?;
    let phi_inv = associated_inverse(gset, f)?;
    let inner = compose_equivariant(psi.map(), &phi_inv)?;
    let outer = compose_equivariant(&phi, &inner)?;
    Ok(GSetAut::from_values_unchecked(
        gset.clone(),
        outer.values().to_vec(),
    ))
}

/// All automorphisms of a free G-set, obtained from `G ≀ I_n` through the
/// canonical frame and sorted by value table.
pub fn aut_group_of_gset(gset: &Arc<GSet>) -> Result<AutGroup> {
    gset.require_free()?;
    let n = gset.orbit_count();
    let wp = WreathProduct::new(gset.group().clone(), n);
    limits::check_group_order("automorphism group", wp.order())?;
    let frame = canonical_frame(gset);
    let standard = Arc::new(standard_semitorsor(gset.group().clone(), n)?);
    let mut auts = wp
        .elements()?
        .iter()
        .map(|w| transport_through(gset, &frame, &wreath_to_aut_on(&standard, w)))
        .collect::<Result<Vec<_>>>()?;
    auts.sort_by(|a, b| a.values().cmp(b.values()));
    let table = composition_table(
        &auts,
        |a, b| a.compose(b).values().to_vec(),
        |a| a.values().to_vec(),
    );
    let identity = auts
        .iter()
        .position(GSetAut::is_identity)
        .expect("identity");
    let order = auts.len();
    let group = FiniteGroup::from_trusted(
        format!("Aut(F) over {}", gset.group().label()),
        order,
        table,
        identity,
    );
    Ok(AutGroup { group, auts, frame })
}

/// `ψ_σ = [f̃σ / f̃]`: `h·f̃(x) ↦ h·f̃(σ(x))`.
pub fn section_from_frame(gset: &Arc<GSet>, f: &Frame, sigma: &Perm) -> Result<GSetAut> {
    if !is_basis(gset, &f.entries)? {
        return Err(Error::NotBasis);
    }
    if sigma.degree() != f.len() {
        return Err(Error::SizeMismatch {
            expected: f.len(),
            found: sigma.degree(),
        });
    }
    let slot_of = f.orbit_perm(gset).expect("basis").inverse();
    let values = (0..gset.size())
        .map(|p| {
            let x = slot_of.apply(gset.q(p));
            let h = gset.divide(p, f.entries[x]).expect("free");
            gset.act(h, f.entries[sigma.apply(x)])
        })
        .collect();
    Ok(GSetAut::from_values_unchecked(gset.clone(), values))
}

/// The automorphism `ψ` with `ψ∘f̃ = w·f̃`, so that `w` is its clutching
/// element relative to the frame `f̃`: `h·f̃(x) ↦ h·g̃(x)·f̃(σ⁻¹(x))`.
pub fn aut_with_frame_clutching(gset: &Arc<GSet>, f: &Frame, w: &WreathElement) -> Result<GSetAut> {
    if !is_basis(gset, &f.entries)? {
        return Err(Error::NotBasis);
    }
    WreathProduct::new(gset.group().clone(), f.len()).validate(w)?;
    let group = gset.group();
    let slot_of = f.orbit_perm(gset).expect("basis").inverse();
    let s_inv = w.sigma.inverse();
    let values = (0..gset.size())
        .map(|p| {
            let x = slot_of.apply(gset.q(p));
            let h = gset.divide(p, f.entries[x]).expect("free");
            gset.act(group.mul(h, w.g[x]), f.entries[s_inv.apply(x)])
        })
        .collect();
    Ok(GSetAut::from_values_unchecked(gset.clone(), values))
}

/// `g̃_{ψ,f̃}(x) = [f̃(x) / ψ(f̃(x))]` for `ψ ∈ Aut(q)`.
///
/// The inverse of the translating element appears so that `ψ ↦ g̃` is a
/// homomorphism `Aut(q) → G^n`.
pub fn autq_component(psi: &GSetAut, f: &Frame) -> Result<Vec<Elem>> {
    let gset = psi.gset();
    if !is_basis(gset, &f.entries)? {
        return Err(Error::NotBasis);
    }
    if !cq(psi).is_identity() {
        return Err(Error::NotInAutQ);
    }
    f.entries
        .iter()
        .map(|&p| gset.divide(p, psi.apply(p)))
        .collect()
}

/// The element of `Aut(q)` with component `g̃` relative to `f̃`:
/// `h·f̃(x) ↦ h·g̃(x)⁻¹·f̃(x)`.
pub fn autq_from_component(gset: &Arc<GSet>, f: &Frame, g: &[Elem]) -> Result<GSetAut> {
    if !is_basis(gset, &f.entries)? {
        return Err(Error::NotBasis);
    }
    if g.len() != f.len() {
        return Err(Error::SizeMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    let group = gset.group();
    let slot_of = f.orbit_perm(gset).expect("basis").inverse();
    let values = (0..gset.size())
        .map(|p| {
            let x = slot_of.apply(gset.q(p));
            let h = gset.divide(p, f.entries[x]).expect("free");
            gset.act(group.mul(h, group.inv(g[x])), f.entries[x])
        })
        .collect();
    Ok(GSetAut::from_values_unchecked(gset.clone(), values))
}

/// Checks of the split short exact sequence `1 → Aut(q) → Aut(F) → Sym(X) → 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub aut_q: usize,
    pub sym_x: usize,
    pub aut_f: usize,
    /// `ker(C_q)` equals the set built from all of `G^n` through the canonical frame.
    pub kernel_is_autq: bool,
    pub cq_surjective: bool,
    /// `σ ↦ ψ_σ` is a homomorphism with `C_q∘ψ = id`.
    pub section_splits: bool,
    /// `|Aut(F)| = |Aut(q)|·|Sym(X)|`.
    pub orders_multiply: bool,
    /// The canonical frame used for the section.
    pub frame: Frame,
}

impl SesReport {
    pub fn passed(&self) -> bool {
        self.kernel_is_autq && self.cq_surjective && self.section_splits && self.orders_multiply
    }
}

pub fn ses_report(gset: &Arc<GSet>) -> Result<SesReport> {
    let aut = aut_group_of_gset(gset)?;
    let n = gset.orbit_count();
    let frame = aut.frame.clone();

    let kernel: HashSet<Vec<Point>> = aut
        .auts
        .iter()
        .filter(|a| cq(a).is_identity())
        .map(|a| a.values().to_vec())
        .collect();
    let from_components: HashSet<Vec<Point>> = tuples(gset.group().order(), n)
        .iter()
        .map(|g| autq_from_component(gset, &frame, g).map(|a| a.values().to_vec()))
        .collect::<Result<_>>()?;
    let kernel_is_autq = kernel == from_components;

    let images: HashSet<Perm> = aut.auts.iter().map(cq).collect();
    let perms = Perm::all(n);
    let cq_surjective = images.len() == perms.len();

    let sections = perms
        .iter()
        .map(|s| section_from_frame(gset, &frame, s))
        .collect::<Result<Vec<_>>>()?;
    let mut section_splits = perms.iter().zip(&sections).all(|(s, a)| &cq(a) == s);
    for (i, s) in perms.iter().enumerate() {
        for (j, t) in perms.iter().enumerate() {
            let st = section_from_frame(gset, &frame, &s.compose(t))?;
            section_splits &= sections[i].compose(&sections[j]) == st;
        }
    }

    let aut_q = kernel.len();
    let sym_x = perms.len();
    let aut_f = aut.auts.len();
    Ok(SesReport {
        aut_q,
        sym_x,
        aut_f,
        kernel_is_autq,
        cq_surjective,
        section_splits,
        orders_multiply: aut_f == aut_q * sym_x,
        frame,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{enumerate_frames, FrameSpace};
    use crate::group::{make_cyclic, make_symmetric};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(make_cyclic(n).unwrap())
    }

    fn std_set(g: Arc<FiniteGroup>, n: usize) -> Arc<GSet> {
        Arc::new(standard_semitorsor(g, n).unwrap())
    }

    /// Oracle: all bijections of the carrier that commute with the action.
    fn brute_force_auts(gset: &GSet) -> Vec<Vec<Point>> {
        let mut out: Vec<Vec<Point>> = Perm::all(gset.size())
            .into_iter()
            .map(|p| p.images().to_vec())
            .filter(|v| {
                gset.group()
                    .elements()
                    .all(|g| (0..gset.size()).all(|f| v[gset.act(g, f)] == gset.act(g, v[f])))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn aut_group_matches_brute_force() {
        let trivial = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 3));
        let s3 = make_symmetric(3).unwrap().group;
        let fixtures = vec![
            std_set(z(2), 2),
            std_set(z(3), 2),
            std_set(z(2), 3),
            Arc::new(GSet::regular(s3)),
            trivial,
        ];
        for f in fixtures {
            let aut = aut_group_of_gset(&f).unwrap();
            let listed: Vec<Vec<Point>> = aut.auts.iter().map(|a| a.values().to_vec()).collect();
            assert_eq!(listed, brute_force_auts(&f));
            assert!(aut.group.satisfies_axioms());
        }
    }

    #[test]
    fn aut_group_orders() {
        assert_eq!(aut_group_of_gset(&std_set(z(2), 2)).unwrap().auts.len(), 8);
        let torsor = Arc::new(GSet::regular(z(4)));
        let aut = aut_group_of_gset(&torsor).unwrap();
        assert_eq!(aut.group.order(), 4);
        assert!(aut.group.is_abelian());
        let trivial = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 3));
        let aut = aut_group_of_gset(&trivial).unwrap();
        assert_eq!(aut.group.order(), 6);
        assert!(!aut.group.is_abelian());
    }

    #[test]
    fn cq_examples() {
        let f = std_set(z(2), 2);
        assert!(cq(&GSetAut::identity(f.clone())).is_identity());
        let swap = GSetAut::from_values(f.clone(), vec![2, 3, 0, 1]).unwrap();
        assert_eq!(cq(&swap), Perm::transposition(2, 0, 1));
    }

    #[test]
    fn sections_split_cq() {
        for f in [std_set(z(2), 2), std_set(z(2), 3), std_set(z(3), 3)] {
            let frame = canonical_frame(&f);
            let n = f.orbit_count();
            for s in Perm::all(n) {
                let psi = section_from_frame(&f, &frame, &s).unwrap();
                assert_eq!(cq(&psi), s);
                for t in Perm::all(n) {
                    let lhs = psi.compose(&section_from_frame(&f, &frame, &t).unwrap());
                    assert_eq!(lhs, section_from_frame(&f, &frame, &s.compose(&t)).unwrap());
                }
            }
            assert!(section_from_frame(&f, &frame, &Perm::identity(n))
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn autq_component_round_trip() {
        let f = std_set(z(2), 2);
        let frame = Frame::new(vec![1, 2]);
        let id = GSetAut::identity(f.clone());
        assert_eq!(autq_component(&id, &frame).unwrap(), vec![0, 0]);
        // translate orbit 0 by 1, fix orbit 1
        let psi = GSetAut::from_values(f.clone(), vec![1, 0, 2, 3]).unwrap();
        let g = autq_component(&psi, &frame).unwrap();
        assert_eq!(g, vec![1, 0]);
        assert_eq!(autq_from_component(&f, &frame, &g).unwrap(), psi);
        let swap = GSetAut::from_values(f.clone(), vec![2, 3, 0, 1]).unwrap();
        assert_eq!(autq_component(&swap, &frame), Err(Error::NotInAutQ));
    }

    #[test]
    fn autq_component_is_a_homomorphism() {
        let s3 = make_symmetric(3).unwrap().group;
        let f = std_set(s3.clone(), 2);
        let frame = Frame::new(vec![7, 2]);
        let auts: Vec<GSetAut> = aut_group_of_gset(&f)
            .unwrap()
            .auts
            .into_iter()
            .filter(|a| cq(a).is_identity())
            .collect();
        assert_eq!(auts.len(), 36);
        for a in auts.iter().step_by(3) {
            let ga = autq_component(a, &frame).unwrap();
            for b in &auts {
                let gb = autq_component(b, &frame).unwrap();
                let gab = autq_component(&a.compose(b), &frame).unwrap();
                let expected: Vec<Elem> = (0..2).map(|x| s3.mul(ga[x], gb[x])).collect();
                assert_eq!(gab, expected);
            }
        }
    }

    #[test]
    fn basis_change_conjugates_components() {
        for group in [z(3), make_symmetric(3).unwrap().group] {
            let f = std_set(group.clone(), 2);
            let fs: FrameSpace = enumerate_frames(f.clone()).unwrap();
            let frame = canonical_frame(&f);
            let autq: Vec<GSetAut> = aut_group_of_gset(&f)
                .unwrap()
                .auts
                .into_iter()
                .filter(|a| cq(a).is_identity())
                .collect();
            for h in tuples(group.order(), 2) {
                let shifted = Frame::new((0..2).map(|x| f.act(h[x], frame.entries[x])).collect());
                assert!(fs.contains(&shifted));
                for psi in &autq {
                    let g = autq_component(psi, &frame).unwrap();
                    let g2 = autq_component(psi, &shifted).unwrap();
                    for x in 0..2 {
                        assert_eq!(g2[x], group.conjugate(h[x], g[x]));
                    }
                }
            }
        }
    }

    #[test]
    fn wreath_iso_on_z2_two_orbits() {
        let g = z(2);
        let wp = WreathProduct::new(g.clone(), 2);
        let els = wp.elements().unwrap();
        assert!(wreath_to_aut(&wp.identity(), 2, &g).unwrap().is_identity());
        let mut seen = HashSet::new();
        for a in &els {
            let ia = wreath_to_aut(a, 2, &g).unwrap();
            assert!(GSetAut::new(ia.map().clone()).is_ok());
            assert_eq!(&aut_to_wreath(&ia).unwrap(), a);
            assert_eq!(cq(&ia), a.sigma);
            seen.insert(ia.values().to_vec());
            for b in &els {
                let ib = wreath_to_aut(b, 2, &g).unwrap();
                assert_eq!(
                    wreath_to_aut(&wp.mul(a, b), 2, &g).unwrap(),
                    ia.compose(&ib)
                );
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn pure_tuple_acts_by_right_translation() {
        let s3 = make_symmetric(3).unwrap().group;
        let w = WreathElement::new(vec![3, 4], Perm::identity(2)).unwrap();
        let psi = wreath_to_aut(&w, 2, &s3).unwrap();
        for x in 0..2 {
            for g in s3.elements() {
                let expected = standard_point(6, s3.mul(g, s3.inv(w.g[x])), x);
                assert_eq!(psi.apply(standard_point(6, g, x)), expected);
            }
        }
    }

    #[test]
    fn aut_to_wreath_composition_law() {
        let s3 = make_symmetric(3).unwrap().group;
        let f = std_set(s3.clone(), 2);
        let auts = aut_group_of_gset(&f).unwrap().auts;
        for a in auts.iter().step_by(5) {
            let wa = aut_to_wreath(a).unwrap();
            let s_inv = wa.sigma.inverse();
            for b in auts.iter().step_by(3) {
                let wb = aut_to_wreath(b).unwrap();
                let wab = aut_to_wreath(&a.compose(b)).unwrap();
                let expected: Vec<Elem> = (0..2)
                    .map(|x| s3.mul(wa.g[x], wb.g[s_inv.apply(x)]))
                    .collect();
                assert_eq!(wab.g, expected);
            }
        }
    }

    #[test]
    fn pairing_invariance() {
        let s3 = make_symmetric(3).unwrap().group;
        let f = std_set(s3.clone(), 2);
        let fs = enumerate_frames(f.clone()).unwrap();
        let wp = fs.wreath().clone();
        for w in wp.elements().unwrap().iter().step_by(7) {
            let iw = wreath_to_aut(w, 2, &s3).unwrap();
            for frame in fs.frames().iter().step_by(5) {
                let moved = fs.act(w, frame);
                let lhs = associated_map(&f, &moved).unwrap();
                let rhs = associated_map(&f, frame).unwrap();
                for p in 0..12 {
                    assert_eq!(lhs.apply(iw.apply(p)), rhs.apply(p));
                }
            }
        }
    }

    #[test]
    fn ses_examples() {
        let torsor = Arc::new(GSet::regular(z(3)));
        let r = ses_report(&torsor).unwrap();
        assert_eq!((r.aut_q, r.sym_x, r.aut_f), (3, 1, 3));
        assert!(r.passed());
        let r = ses_report(&std_set(z(2), 2)).unwrap();
        assert_eq!((r.aut_q, r.sym_x, r.aut_f), (4, 2, 8));
        assert!(r.passed());
        let trivial = Arc::new(GSet::trivial_action(Arc::new(FiniteGroup::trivial()), 3));
        let r = ses_report(&trivial).unwrap();
        assert_eq!((r.aut_q, r.sym_x, r.aut_f), (1, 6, 6));
        assert!(r.passed());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let f = std_set(z(2), 2);
        assert!(GSetAut::from_values(f.clone(), vec![0, 0, 2, 3]).is_err());
        assert!(GSetAut::from_values(f.clone(), vec![1, 0, 2, 3]).is_ok());
        assert!(GSetAut::from_values(f, vec![0, 2, 1, 3]).is_err());
        let torsor = Arc::new(GSet::regular(z(2)));
        let ok = GSetAut::identity(torsor);
        assert!(aut_to_wreath(&ok).is_ok());
        let odd = Arc::new(GSet::regular(make_symmetric(3).unwrap().group));
        assert!(GSetAut::from_values(odd.clone(), (0..6).collect()).is_ok());
        assert!(
            aut_to_wreath(&GSetAut::identity(Arc::new(GSet::trivial_action(z(2), 1)))).is_err()
        );
    }

    #[test]
    fn frame_clutching_round_trips_through_division() {
        let s3 = Arc::new(make_symmetric(3).unwrap().group.as_ref().clone());
        let f = Arc::new(
            standard_semitorsor(s3.clone(), 2)
                .unwrap()
                .relabel(&Perm::new(vec![3, 7, 0, 11, 5, 1, 9, 2, 10, 4, 6, 8]).unwrap())
                .unwrap(),
        );
        let fs = enumerate_frames(f.clone()).unwrap();
        for frame in fs.frames().iter().step_by(7) {
            for w in fs.wreath().elements().unwrap() {
                let psi = aut_with_frame_clutching(&f, frame, &w).unwrap();
                assert!(GSetAut::from_values(f.clone(), psi.values().to_vec()).is_ok());
                let image = Frame::new(frame.entries.iter().map(|&p| psi.apply(p)).collect());
                assert_eq!(image, fs.act(&w, frame));
            }
        }
    }
}
