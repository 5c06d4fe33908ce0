//! The wreath product `G ≀ I_n = G^n ⋊ S_n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::gset::{GSet, Point};
use crate::limits;
use crate::perm::Perm;

/// A pair `(g̃, σ)` with `g̃: I_n → G` and `σ ∈ S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub g: Vec<Elem>,
    pub sigma: Perm,
}

impl WreathElement {
    pub fn new(g: Vec<Elem>, sigma: Perm) -> Result<WreathElement> {
        if g.len() != sigma.degree() {
            return Err(Error::SizeMismatch {
                expected: sigma.degree(),
                found: g.len(),
            });
        }
        Ok(WreathElement { g, sigma })
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("((")?;
        for (i, g) in self.g.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "),{})", self.sigma)
    }
}

/// Arithmetic in `G ≀ I_n` for a fixed `G` and `n`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    group: Arc<FiniteGroup>,
    n: usize,
}

impl WreathProduct {
    pub fn new(group: Arc<FiniteGroup>, n: usize) -> WreathProduct {
        WreathProduct { group, n }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G|^n · n!`.
    pub fn order(&self) -> u128 {
        let g = self.group.order() as u128;
        let fact: u128 = (1..=self.n as u128).product();
        g.checked_pow(self.n as u32)
            .and_then(|p| p.checked_mul(fact))
            .unwrap_or(u128::MAX)
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            g: vec![self.group.identity(); self.n],
            sigma: Perm::identity(self.n),
        }
    }

    /// A pure permutation `(e, σ)`.
    pub fn from_perm(&self, sigma: Perm) -> WreathElement {
        WreathElement {
            g: vec![self.group.identity(); self.n],
            sigma,
        }
    }

    pub fn validate(&self, w: &WreathElement) -> Result<()> {
        if w.g.len() != self.n || w.sigma.degree() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: w.g.len().max(w.sigma.degree()),
            });
        }
        if w.g.iter().any(|&g| g >= self.group.order()) {
            return Err(Error::InvalidArgument(
                "tuple entry outside the group".into(),
            ));
        }
        Ok(())
    }

    /// `(g̃, σ)·(g̃′, σ′) = (g̃·(g̃′∘σ⁻¹), σσ′)`.
    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let s_inv = a.sigma.inverse();
        let g = (0..self.n)
            .map(|x| self.group.mul(a.g[x], b.g[s_inv.apply(x)]))
            .collect();
        WreathElement {
            g,
            sigma: a.sigma.compose(&b.sigma),
        }
    }

    /// `(g̃, σ)⁻¹ = (g̃⁻¹∘σ, σ⁻¹)`.
    pub fn inv(&self, a: &WreathElement) -> WreathElement {
        let g = (0..self.n)
            .map(|x| self.group.inv(a.g[a.sigma.apply(x)]))
            .collect();
        WreathElement {
            g,
            sigma: a.sigma.inverse(),
        }
    }

    /// `(w·t)(x) = g̃(x)·t(σ⁻¹(x))` for a tuple of points of `gset`.
    pub fn act_tuple(&self, w: &WreathElement, gset: &GSet, t: &[Point]) -> Vec<Point> {
        let s_inv = w.sigma.inverse();
        (0..self.n)
            .map(|x| gset.act(w.g[x], t[s_inv.apply(x)]))
            .collect()
    }

    /// Every element, ordered by `σ` (lexicographic) and then by `g̃`.
    pub fn elements(&self) -> Result<Vec<WreathElement>> {
        limits::check_enumeration("wreath product", self.order())?;
        let tuples = tuples(self.group.order(), self.n);
        let mut out = Vec::with_capacity(self.order() as usize);
        for sigma in Perm::all(self.n) {
            for g in &tuples {
                out.push(WreathElement {
                    g: g.clone(),
                    sigma: sigma.clone(),
                });
            }
        }
        Ok(out)
    }

    /// The wreath product as a table group, with element `i` denoting
    /// `elements[i]`.
    pub fn to_finite_group(&self) -> Result<MaterializedWreath> {
        limits::check_group_order("wreath product table", self.order())?;
        let elements = self.elements()?;
        let index: HashMap<WreathElement, Elem> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let order = elements.len();
        let mut mul = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                mul.push(index[&self.mul(a, b)]);
            }
        }
        let identity = index[&self.identity()];
        let group = FiniteGroup::from_trusted(
            format!("{}wr{}", self.group.label(), self.n),
            order,
            mul,
            identity,
        );
        Ok(MaterializedWreath {
            group: Arc::new(group),
            elements,
            index,
        })
    }
}

/// A wreath product with its Cayley table.
#[derive(Clone, Debug)]
pub struct MaterializedWreath {
    pub group: Arc<FiniteGroup>,
    pub elements: Vec<WreathElement>,
    index: HashMap<WreathElement, Elem>,
}

impl MaterializedWreath {
    pub fn index_of(&self, w: &WreathElement) -> Option<Elem> {
        self.index.get(w).copied()
    }
}

/// All tuples in `0..base` of length `n`, lexicographically.
pub(crate) fn tuples(base: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn check_same(a: &WreathElement, b: &WreathElement) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

pub fn wreath_mul(
    group: &Arc<FiniteGroup>,
    a: &WreathElement,
    b: &WreathElement,
) -> Result<WreathElement> {
    check_same(a, b)?;
    let w = WreathProduct::new(group.clone(), a.n());
    w.validate(a)?;
    w.validate(b)?;
    Ok(w.mul(a, b))
}

pub fn wreath_inv(group: &Arc<FiniteGroup>, a: &WreathElement) -> Result<WreathElement> {
    let w = WreathProduct::new(group.clone(), a.n());
    w.validate(a)?;
    Ok(w.inv(a))
}

/// `w·t` for a tuple of points of `gset`.
pub fn wreath_act(gset: &GSet, w: &WreathElement, t: &[Point]) -> Result<Vec<Point>> {
    if t.len() != w.n() {
        return Err(Error::SizeMismatch {
            expected: w.n(),
            found: t.len(),
        });
    }
    if t.iter().any(|&p| p >= gset.size()) {
        return Err(Error::InvalidArgument(
            "tuple entry outside the carrier".into(),
        ));
    }
    let wp = WreathProduct::new(gset.group().clone(), w.n());
    wp.validate(w)?;
    Ok(wp.act_tuple(w, gset, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric};

    /// Oracle: the generalized permutation matrix of `(g̃, σ)` over a group,
    /// with entry `(σ(y), y)` equal to `g̃(σ(y))` and all other entries empty.
    fn matrix(w: &WreathElement) -> Vec<Vec<Option<Elem>>> {
        let n = w.n();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (w.sigma.apply(y) == x).then(|| w.g[x]))
                    .collect()
            })
            .collect()
    }

    fn matmul(
        g: &FiniteGroup,
        a: &[Vec<Option<Elem>>],
        b: &[Vec<Option<Elem>>],
    ) -> Vec<Vec<Option<Elem>>> {
        let n = a.len();
        let mut out = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let (Some(x), Some(y)) = (a[i][k], b[k][j]) {
                        out[i][j] = Some(g.mul(x, y));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn z2_wreath_example() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let a = WreathElement::new(vec![1, 0], Perm::transposition(2, 0, 1)).unwrap();
        let b = WreathElement::new(vec![0, 1], Perm::identity(2)).unwrap();
        let ab = wreath_mul(&z2, &a, &b).unwrap();
        assert_eq!(
            ab,
            WreathElement::new(vec![0, 0], Perm::transposition(2, 0, 1)).unwrap()
        );
        let wp = WreathProduct::new(z2.clone(), 2);
        assert_eq!(wp.mul(&a, &wp.inv(&a)), wp.identity());
        assert_eq!(wp.mul(&wp.identity(), &a), a);
    }

    #[test]
    fn multiplication_matches_permutation_matrices() {
        let s3 = make_symmetric(3).unwrap().group;
        let wp = WreathProduct::new(s3.clone(), 2);
        let els = wp.elements().unwrap();
        assert_eq!(els.len(), 72);
        for a in els.iter().step_by(5) {
            for b in els.iter().step_by(7) {
                assert_eq!(matrix(&wp.mul(a, b)), matmul(&s3, &matrix(a), &matrix(b)));
            }
        }
    }

    #[test]
    fn materialized_table_is_a_group() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let m = WreathProduct::new(z2, 2).to_finite_group().unwrap();
        assert_eq!(m.group.order(), 8);
        assert!(m.group.satisfies_axioms());
        assert!(!m.group.is_abelian());
        let z3 = Arc::new(make_cyclic(3).unwrap());
        let m = WreathProduct::new(z3, 3).to_finite_group().unwrap();
        assert_eq!(m.group.order(), 27 * 6);
    }

    #[test]
    fn action_axioms_on_tuples() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let f = crate::gset::standard_semitorsor(z2.clone(), 2).unwrap();
        let wp = WreathProduct::new(z2, 2);
        let els = wp.elements().unwrap();
        let all_tuples = tuples(4, 2);
        for t in &all_tuples {
            assert_eq!(&wp.act_tuple(&wp.identity(), &f, t), t);
            for a in &els {
                for b in &els {
                    let lhs = wp.act_tuple(a, &f, &wp.act_tuple(b, &f, t));
                    assert_eq!(lhs, wp.act_tuple(&wp.mul(a, b), &f, t));
                }
            }
        }
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let z2 = Arc::new(make_cyclic(2).unwrap());
        let a = WreathElement::new(vec![0], Perm::identity(1)).unwrap();
        let b = WreathElement::new(vec![0, 0], Perm::identity(2)).unwrap();
        assert!(wreath_mul(&z2, &a, &b).is_err());
        assert!(WreathElement::new(vec![0], Perm::identity(2)).is_err());
    }

    #[test]
    fn display() {
        let w = WreathElement::new(vec![1, 0], Perm::transposition(2, 0, 1)).unwrap();
        assert_eq!(w.to_string(), "((1,0),(1 2))");
    }
}
