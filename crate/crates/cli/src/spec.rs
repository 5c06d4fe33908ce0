//! JSON documents describing groups, G-sets, bundles and `U(1)` bundles.
//!
//! Every object rejects unknown fields.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use semitorsor::aut::{aut_with_frame_clutching, GSetAut};
use semitorsor::bundles::{finite_winding_bundle, FlatBundle};
use semitorsor::fixtures::group_by_name;
use semitorsor::frames::canonical_frame;
use semitorsor::group::{
    make_cyclic, make_dihedral, make_direct_product, make_symmetric, FiniteGroup,
};
use semitorsor::gset::{standard_semitorsor, GSet};
use semitorsor::hom::GroupHom;
use semitorsor::perm::Perm;
use semitorsor::transport::{Angle, U1FlatBundle, U1Wreath};
use semitorsor::wreath::WreathElement;

use crate::CliError;

/// A group, either by short name (`"z3"`, `"z2xz2"`, `"s3"`, `"trivial"`)
/// or as a document.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Doc(GroupDoc),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDoc {
    Cyclic { n: usize },
    Product { factors: Vec<GroupSpec> },
    Symmetric { n: usize },
    Dihedral { n: usize },
    Table { mul: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Arc<FiniteGroup>, CliError> {
        Ok(match self {
            GroupSpec::Name(name) => group_by_name(name)?,
            GroupSpec::Doc(GroupDoc::Cyclic { n }) => Arc::new(make_cyclic(*n)?),
            GroupSpec::Doc(GroupDoc::Symmetric { n }) => make_symmetric(*n)?.group,
            GroupSpec::Doc(GroupDoc::Dihedral { n }) => Arc::new(make_dihedral(*n)?),
            GroupSpec::Doc(GroupDoc::Table { mul }) => {
                Arc::new(FiniteGroup::from_table("G", mul.clone())?)
            }
            GroupSpec::Doc(GroupDoc::Product { factors }) => {
                let mut acc: Option<FiniteGroup> = None;
                for f in factors {
                    let g = f.build()?;
                    acc = Some(match acc {
                        None => (*g).clone(),
                        Some(a) => make_direct_product(&a, &g)?,
                    });
                }
                Arc::new(acc.ok_or_else(|| {
                    CliError::Schema("a product needs at least one factor".into())
                })?)
            }
        })
    }
}

/// A G-set.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GSetSpec {
    /// `G × I_n`.
    StandardSemitorsor { group: GroupSpec, orbits: usize },
    /// `n` points acted on by the trivial group: the fiber of an `n`-sheeted covering.
    Points { n: usize },
    /// Explicit action rows `act[g][p]`.
    Table {
        group: GroupSpec,
        act: Vec<Vec<usize>>,
    },
}

impl GSetSpec {
    pub fn build(&self) -> Result<Arc<GSet>, CliError> {
        Ok(Arc::new(match self {
            GSetSpec::StandardSemitorsor { group, orbits } => {
                standard_semitorsor(group.build()?, *orbits)?
            }
            GSetSpec::Points { n } => GSet::trivial_action(Arc::new(FiniteGroup::trivial()), *n),
            GSetSpec::Table { group, act } => {
                let size = act.first().map_or(0, Vec::len);
                GSet::new(group.build()?, size, act.clone())?
            }
        }))
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Group,
    Gspace,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathSpec {
    /// Group coordinates, one per slot.
    pub g: Vec<usize>,
    /// Forward image table of the slot permutation.
    pub perm: Vec<usize>,
}

/// One clutching map.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ClutchingSpec {
    /// The value table of a G-set automorphism (`gspace` mode).
    Perm(Vec<usize>),
    /// The frame-bundle clutching element relative to the canonical frame
    /// (`gspace` mode).
    Wreath(WreathSpec),
    /// The image table of a group automorphism (`group` mode).
    Automorphism(Vec<usize>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitBundle {
    pub mode: ModeSpec,
    /// A group document in `group` mode, a G-set document in `gspace` mode.
    pub fiber: Value,
    pub loops: usize,
    pub clutching: Vec<ClutchingSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindingSpec {
    pub group: GroupSpec,
    pub k: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindingDoc {
    winding: WindingSpec,
}

/// A bundle document: either explicit clutching data or the shorthand
/// `{"winding": {"group": ..., "k": ...}}`.
#[derive(Clone, Debug)]
pub enum BundleSpec {
    Explicit(ExplicitBundle),
    Winding(WindingSpec),
}

impl BundleSpec {
    pub fn parse(value: Value) -> Result<BundleSpec, CliError> {
        if value.get("winding").is_some() {
            let doc: WindingDoc = serde_json::from_value(value)?;
            Ok(BundleSpec::Winding(doc.winding))
        } else {
            Ok(BundleSpec::Explicit(serde_json::from_value(value)?))
        }
    }

    pub fn build(&self) -> Result<FlatBundle, CliError> {
        match self {
            BundleSpec::Winding(w) => Ok(finite_winding_bundle(w.group.build()?, w.k)?),
            BundleSpec::Explicit(b) => build_explicit(b),
        }
    }
}

fn build_explicit(b: &ExplicitBundle) -> Result<FlatBundle, CliError> {
    if b.clutching.len() != b.loops {
        return Err(CliError::Schema(format!(
            "{} loops but {} clutching maps",
            b.loops,
            b.clutching.len()
        )));
    }
    match b.mode {
        ModeSpec::Group => {
            let group = serde_json::from_value::<GroupSpec>(b.fiber.clone())?.build()?;
            let homs = b
                .clutching
                .iter()
                .map(|c| match c {
                    ClutchingSpec::Automorphism(images) => {
                        Ok(GroupHom::new(group.clone(), group.clone(), images.clone())?)
                    }
                    _ => Err(CliError::Schema(
                        "group bundles take \"automorphism\" clutching".into(),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FlatBundle::group_bundle(group, &homs)?)
        }
        ModeSpec::Gspace => {
            let fiber = serde_json::from_value::<GSetSpec>(b.fiber.clone())?.build()?;
            let frame = canonical_frame(&fiber);
            let maps = b
                .clutching
                .iter()
                .map(|c| match c {
                    ClutchingSpec::Perm(values) => {
                        Ok(GSetAut::from_values(fiber.clone(), values.clone())?)
                    }
                    ClutchingSpec::Wreath(w) => {
                        let w = WreathElement::new(w.g.clone(), Perm::new(w.perm.clone())?)?;
                        Ok(aut_with_frame_clutching(&fiber, &frame, &w)?)
                    }
                    ClutchingSpec::Automorphism(_) => Err(CliError::Schema(
                        "G-space bundles take \"perm\" or \"wreath\" clutching".into(),
                    )),
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(FlatBundle::new(fiber, maps)?)
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct U1GeneratorSpec {
    /// Exact angles in turns, `"p/q"` or `"p"`.
    pub angles: Vec<String>,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct U1Spec {
    pub k: usize,
    pub loops: usize,
    pub generators: Vec<U1GeneratorSpec>,
}

impl U1Spec {
    pub fn build(&self) -> Result<U1FlatBundle, CliError> {
        if self.generators.len() != self.loops {
            return Err(CliError::Schema(format!(
                "{} loops but {} generators",
                self.loops,
                self.generators.len()
            )));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let angles = g
                    .angles
                    .iter()
                    .map(|a| a.parse::<Angle>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(U1Wreath::new(angles, Perm::new(g.perm.clone())?)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(U1FlatBundle::new(self.k, gens)?)
    }
}
