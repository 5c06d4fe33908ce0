//! Named groups, G-sets and bundles used by the verification suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aut::{aut_group_of_gset, GSetAut};
use crate::bundles::{finite_winding_bundle, group_bundle_over_circle, FlatBundle};
use crate::error::{Error, Result};
use crate::group::{
    make_cyclic, make_dihedral, make_direct_product, make_quaternion, make_symmetric, FiniteGroup,
    SymmetricGroup,
};
use crate::gset::{standard_semitorsor, GSet};
use crate::hom::automorphisms;
use crate::perm::Perm;

/// A group together with the short name it is known by.
#[derive(Clone, Debug)]
pub struct GroupFixture {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

/// A free G-set together with a descriptive name.
#[derive(Clone, Debug)]
pub struct GSetFixture {
    pub name: String,
    pub gset: Arc<GSet>,
}

/// A bundle together with a descriptive name.
#[derive(Clone, Debug)]
pub struct BundleFixture {
    pub name: String,
    pub bundle: FlatBundle,
}

const NAMED: &[(&str, usize)] = &[
    ("z1", 1),
    ("z2", 2),
    ("z3", 3),
    ("z4", 4),
    ("z2xz2", 4),
    ("z5", 5),
    ("z6", 6),
    ("s3", 6),
    ("z7", 7),
    ("z8", 8),
    ("z4xz2", 8),
    ("z2xz2xz2", 8),
    ("d4", 8),
    ("q8", 8),
];

/// One group of each isomorphism type of order at most `max_order` (up to 8).
pub fn small_groups(max_order: usize) -> Result<Vec<GroupFixture>> {
    NAMED
        .iter()
        .filter(|(_, order)| *order <= max_order)
        .map(|(name, _)| {
            Ok(GroupFixture {
                name: (*name).to_string(),
                group: group_by_name(name)?,
            })
        })
        .collect()
}

/// Parses `trivial`, `z<n>`, `s<n>`, `d<n>`, `q8` and `x`-separated products
/// such as `z2xz2`.
pub fn group_by_name(name: &str) -> Result<Arc<FiniteGroup>> {
    let name = name.trim().to_ascii_lowercase();
    if name == "trivial" {
        return Ok(Arc::new(FiniteGroup::trivial().with_label("trivial")));
    }
    let mut acc: Option<FiniteGroup> = None;
    for factor in name.split('x') {
        let g = factor_by_name(factor)?;
        acc = Some(match acc {
            None => g,
            Some(a) => make_direct_product(&a, &g)?,
        });
    }
    let g = acc.ok_or_else(|| Error::InvalidArgument("empty group name".into()))?;
    Ok(Arc::new(g.with_label(name)))
}

fn factor_by_name(factor: &str) -> Result<FiniteGroup> {
    let bad = || Error::InvalidArgument(format!("unknown group {factor:?}"));
    if factor == "q8" {
        return Ok(make_quaternion());
    }
    let (kind, digits) =
        factor.split_at(factor.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let n: usize = digits.parse().map_err(|_| bad())?;
    match kind {
        "z" | "c" => make_cyclic(n),
        "s" => Ok(Arc::try_unwrap(make_symmetric(n)?.group).unwrap_or_else(|g| (*g).clone())),
        "d" => make_dihedral(n),
        _ => Err(bad()),
    }
}

/// A seeded random permutation of `0..n`.
pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::new(images).expect("a shuffle is a permutation")
}

/// For each group and orbit count `1..=max_orbits`: the standard semitorsor
/// `G × I_n` and a copy with its carrier shuffled.
pub fn free_fixtures(
    groups: &[GroupFixture],
    max_orbits: usize,
    seed: u64,
) -> Result<Vec<GSetFixture>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in groups {
        for n in 1..=max_orbits {
            let standard = standard_semitorsor(g.group.clone(), n)?;
            let shuffled = standard.relabel(&random_perm(&mut rng, standard.size()))?;
            out.push(GSetFixture {
                name: format!("{}xI{n}", g.name),
                gset: Arc::new(standard),
            });
            out.push(GSetFixture {
                name: format!("{}xI{n}~", g.name),
                gset: Arc::new(shuffled),
            });
        }
    }
    Ok(out)
}

/// Winding bundles, circle bundles of every group automorphism, and bundles
/// over wedges of two circles with seeded random clutching.
pub fn bundle_fixtures(
    groups: &[GroupFixture],
    max_orbits: usize,
    seed: u64,
) -> Result<Vec<BundleFixture>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in groups {
        for k in 1..=max_orbits {
            out.push(BundleFixture {
                name: format!("winding({},{k})", g.name),
                bundle: finite_winding_bundle(g.group.clone(), k)?,
            });
        }
        for (i, a) in automorphisms(&g.group)?.iter().enumerate() {
            out.push(BundleFixture {
                name: format!("circle({},aut#{i})", g.name),
                bundle: group_bundle_over_circle(g.group.clone(), a)?,
            });
        }
        for n in 1..=max_orbits {
            let fiber = Arc::new(standard_semitorsor(g.group.clone(), n)?);
            let auts = aut_group_of_gset(&fiber)?.auts;
            let clutching: Vec<GSetAut> = (0..2)
                .map(|_| auts[rng.gen_range(0..auts.len())].clone())
                .collect();
            out.push(BundleFixture {
                name: format!("wedge2({}xI{n})", g.name),
                bundle: FlatBundle::new(fiber, clutching)?,
            });
        }
    }
    Ok(out)
}

/// `S_6` acting on six points through its outer automorphism, which sends
/// each transposition `(1 k)` to a product of three disjoint transpositions.
pub fn exotic_s6_action(s6: &SymmetricGroup) -> Result<GSet> {
    if s6.degree() != 6 {
        return Err(Error::SizeMismatch {
            expected: 6,
            found: s6.degree(),
        });
    }
    let images: [[(usize, usize); 3]; 5] = [
        [(0, 1), (2, 3), (4, 5)],
        [(0, 2), (1, 4), (3, 5)],
        [(0, 3), (1, 5), (2, 4)],
        [(0, 4), (1, 3), (2, 5)],
        [(0, 5), (1, 2), (3, 4)],
    ];
    let gens: Vec<Perm> = (1..6).map(|k| Perm::transposition(6, 0, k)).collect();
    let targets: Vec<Perm> = images
        .iter()
        .map(|ts| {
            ts.iter().fold(Perm::identity(6), |acc, &(a, b)| {
                acc.compose(&Perm::transposition(6, a, b))
            })
        })
        .collect();
    let mut image: Vec<Option<Perm>> = vec![None; s6.perms.len()];
    image[0] = Some(Perm::identity(6));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (g, t) in gens.iter().zip(&targets) {
            let y = s6
                .index_of(&s6.perm(x).compose(g))
                .expect("closed under products");
            let fy = image[x].as_ref().expect("visited").compose(t);
            match &image[y] {
                None => {
                    image[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(existing) if *existing != fy => {
                    return Err(Error::InvalidAction(
                        "generator images are inconsistent".into(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let rows = image
        .into_iter()
        .map(|p| p.map(|p| p.images().to_vec()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidAction("generators do not reach every element".into()))?;
    GSet::new(s6.group.clone(), 6, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_group_orders() {
        let groups = small_groups(8).unwrap();
        assert_eq!(groups.len(), 14);
        for g in &groups {
            let expected = NAMED.iter().find(|(n, _)| *n == g.name).unwrap().1;
            assert_eq!(g.group.order(), expected, "{}", g.name);
            assert!(g.group.satisfies_axioms());
        }
        assert_eq!(small_groups(4).unwrap().len(), 5);
    }

    #[test]
    fn names_parse() {
        assert_eq!(group_by_name("Z2xZ2").unwrap().order(), 4);
        assert_eq!(group_by_name("trivial").unwrap().order(), 1);
        assert!(!group_by_name("s3").unwrap().is_abelian());
        assert!(group_by_name("y3").is_err());
        assert!(group_by_name("z").is_err());
    }

    #[test]
    fn shuffled_fixtures_stay_free() {
        let groups = small_groups(3).unwrap();
        let fx = free_fixtures(&groups, 2, 7).unwrap();
        assert_eq!(fx.len(), 3 * 2 * 2);
        assert!(fx.iter().all(|f| f.gset.is_free()));
        let again = free_fixtures(&groups, 2, 7).unwrap();
        assert!(fx.iter().zip(&again).all(|(a, b)| a.gset == b.gset));
    }

    #[test]
    fn exotic_action_is_transitive() {
        let s6 = make_symmetric(6).unwrap();
        let a = exotic_s6_action(&s6).unwrap();
        assert!(a.is_transitive());
    }
}
