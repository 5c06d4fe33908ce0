//! Flat `U(1) ≀ I_k` bundles with exact rational rotation angles.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bundles::LoopWord;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub type Rational = Ratio<i64>;

/// A rotation number in `[0, 1)`, i.e. an element of `U(1) = ℝ/ℤ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Angle(Rational);

impl Angle {
    pub fn zero() -> Angle {
        Angle(Rational::zero())
    }

    /// Reduces `num/den` modulo 1.
    pub fn new(num: i64, den: i64) -> Result<Angle> {
        if den == 0 {
            return Err(Error::InvalidAngle("zero denominator".into()));
        }
        Ok(Angle::from_ratio(Rational::new(num, den)))
    }

    pub fn from_ratio(r: Rational) -> Angle {
        let frac = r - r.floor();
        Angle(frac)
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// The image under `z ↦ z^q`.
    pub fn scale(self, q: i64) -> Angle {
        Angle::from_ratio(self.0 * q)
    }

    /// The representative of the class in `[-1/2, 1/2)`.
    pub fn centered(self) -> Rational {
        let half = Rational::new(1, 2);
        if self.0 >= half {
            self.0 - Rational::one()
        } else {
            self.0
        }
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;

    fn add(self, other: Angle) -> Angle {
        Angle::from_ratio(self.0 + other.0)
    }
}

impl std::ops::Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        Angle::from_ratio(-self.0)
    }
}

impl std::ops::Sub for Angle {
    type Output = Angle;

    fn sub(self, other: Angle) -> Angle {
        self + -other
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `p/q` or an integer `p`.
    fn from_str(s: &str) -> Result<Angle> {
        let s = s.trim();
        let parsed = match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidAngle(s.into()))?;
                let d: i64 = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidAngle(s.into()))?;
                return Angle::new(n, d).map_err(|_| Error::InvalidAngle(s.into()));
            }
            None => s.parse::<i64>(),
        };
        parsed
            .map(|n| Angle::from_ratio(Rational::from_integer(n)))
            .map_err(|_| Error::InvalidAngle(s.into()))
    }
}

impl TryFrom<String> for Angle {
    type Error = Error;

    fn try_from(s: String) -> Result<Angle> {
        s.parse()
    }
}

impl From<Angle> for String {
    fn from(a: Angle) -> String {
        a.to_string()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

/// An element `(θ̃, σ)` of `U(1) ≀ I_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct U1Wreath {
    pub angles: Vec<Angle>,
    pub sigma: Perm,
}

impl U1Wreath {
    pub fn new(angles: Vec<Angle>, sigma: Perm) -> Result<U1Wreath> {
        if angles.len() != sigma.degree() {
            return Err(Error::SizeMismatch {
                expected: sigma.degree(),
                found: angles.len(),
            });
        }
        Ok(U1Wreath { angles, sigma })
    }

    pub fn identity(k: usize) -> U1Wreath {
        U1Wreath {
            angles: vec![Angle::zero(); k],
            sigma: Perm::identity(k),
        }
    }

    /// A pure rotation `(θ̃, id)`.
    pub fn rotation(angles: Vec<Angle>) -> U1Wreath {
        let k = angles.len();
        U1Wreath {
            angles,
            sigma: Perm::identity(k),
        }
    }

    pub fn k(&self) -> usize {
        self.angles.len()
    }

    /// `ξ!` for `ξ(z) = z^q`.
    pub fn scale(&self, q: i64) -> U1Wreath {
        U1Wreath {
            angles: self.angles.iter().map(|a| a.scale(q)).collect(),
            sigma: self.sigma.clone(),
        }
    }
}

impl fmt::Display for U1Wreath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.angles.iter().map(Angle::to_string).collect();
        write!(f, "(({}),{})", parts.join(","), self.sigma)
    }
}

fn check_k(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, found })
    }
}

/// `(θ̃, σ)·(θ̃′, σ′) = (θ̃ + θ̃′∘σ⁻¹, σσ′)`.
pub fn u1wreath_mul(a: &U1Wreath, b: &U1Wreath) -> Result<U1Wreath> {
    check_k(a.k(), b.k())?;
    let s_inv = a.sigma.inverse();
    let angles = (0..a.k())
        .map(|x| a.angles[x] + b.angles[s_inv.apply(x)])
        .collect();
    Ok(U1Wreath {
        angles,
        sigma: a.sigma.compose(&b.sigma),
    })
}

/// `(θ̃, σ)⁻¹ = (−θ̃∘σ, σ⁻¹)`.
pub fn u1wreath_inv(a: &U1Wreath) -> U1Wreath {
    U1Wreath {
        angles: (0..a.k()).map(|x| -a.angles[a.sigma.apply(x)]).collect(),
        sigma: a.sigma.inverse(),
    }
}

/// A point `(θ, x)` of `U(1) × I_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberPoint {
    pub angle: Angle,
    pub slot: usize,
}

impl FiberPoint {
    pub fn new(angle: Angle, slot: usize) -> FiberPoint {
        FiberPoint { angle, slot }
    }

    /// The left `U(1)` action.
    pub fn rotate(self, by: Angle) -> FiberPoint {
        FiberPoint::new(self.angle + by, self.slot)
    }
}

impl FromStr for FiberPoint {
    type Err = Error;

    /// `θ:slot` with a 0-based slot.
    fn from_str(s: &str) -> Result<FiberPoint> {
        let (a, x) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected angle:slot, got {s:?}")))?;
        let slot = x
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad slot {x:?}")))?;
        Ok(FiberPoint::new(a.parse()?, slot))
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.angle, self.slot)
    }
}

/// `(θ̃, σ)·(θ, x) = (θ̃(σ(x)) + θ, σ(x))`.
pub fn act_point(w: &U1Wreath, p: FiberPoint) -> Result<FiberPoint> {
    if p.slot >= w.k() {
        return Err(Error::SizeMismatch {
            expected: w.k(),
            found: p.slot + 1,
        });
    }
    let target = w.sigma.apply(p.slot);
    Ok(FiberPoint::new(p.angle + w.angles[target], target))
}

/// The left wreath action on tuples: `(w·t)(x) = θ̃(x)·t(σ⁻¹(x))`.
pub fn act_tuple(w: &U1Wreath, t: &[FiberPoint]) -> Result<Vec<FiberPoint>> {
    check_k(w.k(), t.len())?;
    let s_inv = w.sigma.inverse();
    Ok((0..w.k())
        .map(|x| t[s_inv.apply(x)].rotate(w.angles[x]))
        .collect())
}

/// An element of `u(1)^k = ℚ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVector {
    pub entries: Vec<Rational>,
}

impl AlgebraVector {
    pub fn new(entries: Vec<Rational>) -> AlgebraVector {
        AlgebraVector { entries }
    }
}

/// `Ad_{(θ̃,σ)} v = v∘σ⁻¹`; the rotation part acts trivially.
pub fn adjoint(w: &U1Wreath, v: &AlgebraVector) -> Result<AlgebraVector> {
    check_k(w.k(), v.entries.len())?;
    let s_inv = w.sigma.inverse();
    Ok(AlgebraVector::new(
        (0..w.k()).map(|x| v.entries[s_inv.apply(x)]).collect(),
    ))
}

/// A flat `U(1)`-bundle on `k` sheets over a wedge of circles, with one
/// holonomy generator per loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct U1FlatBundle {
    pub k: usize,
    pub generators: Vec<U1Wreath>,
}

impl U1FlatBundle {
    pub fn new(k: usize, generators: Vec<U1Wreath>) -> Result<U1FlatBundle> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "sheet count must be positive".into(),
            ));
        }
        if generators.is_empty() {
            return Err(Error::InvalidArgument(
                "a bundle needs at least one loop".into(),
            ));
        }
        for g in &generators {
            check_k(k, g.k())?;
        }
        Ok(U1FlatBundle { k, generators })
    }

    /// The flat winding model: sheet `x` continues into sheet `x + 1`.
    pub fn winding(k: usize) -> Result<U1FlatBundle> {
        U1FlatBundle::new(
            k,
            vec![U1Wreath::new(vec![Angle::zero(); k], Perm::cycle(k))?],
        )
    }

    pub fn loops(&self) -> usize {
        self.generators.len()
    }
}

/// Ordered product of the generators along `word`, first letter acting first.
pub fn holonomy_u1(b: &U1FlatBundle, word: &LoopWord) -> Result<U1Wreath> {
    word.check(b.loops())?;
    let mut out = U1Wreath::identity(b.k);
    for &l in &word.letters {
        let g = &b.generators[l.unsigned_abs() as usize - 1];
        let step = if l > 0 { g.clone() } else { u1wreath_inv(g) };
        out = u1wreath_mul(&step, &out)?;
    }
    Ok(out)
}

/// Parallel transport of a point along `word`.
pub fn transport(b: &U1FlatBundle, word: &LoopWord, start: FiberPoint) -> Result<FiberPoint> {
    act_point(&holonomy_u1(b, word)?, start)
}

/// Holonomy of the induced connection on the frame bundle. It acts on a
/// frame entry by entry, so it is the same wreath element as
/// [`holonomy_u1`].
pub fn frame_holonomy(b: &U1FlatBundle, word: &LoopWord) -> Result<U1Wreath> {
    holonomy_u1(b, word)
}

/// Parallel transport of a frame: each entry is transported as a point.
pub fn transport_frame(
    b: &U1FlatBundle,
    word: &LoopWord,
    frame: &[FiberPoint],
) -> Result<Vec<FiberPoint>> {
    check_k(b.k, frame.len())?;
    let h = frame_holonomy(b, word)?;
    frame.iter().map(|&p| act_point(&h, p)).collect()
}

/// Whether a tuple of points meets every sheet once.
pub fn is_u1_frame(k: usize, t: &[FiberPoint]) -> bool {
    let mut seen = vec![false; k];
    t.len() == k
        && t.iter()
            .all(|p| p.slot < k && !std::mem::replace(&mut seen[p.slot], true))
}

/// The connection induced along `z ↦ z^q`.
pub fn pushforward(b: &U1FlatBundle, q: i64) -> U1FlatBundle {
    U1FlatBundle {
        k: b.k,
        generators: b.generators.iter().map(|g| g.scale(q)).collect(),
    }
}

/// Discrete evaluation of the connection on a sampled path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionReport {
    pub sheet: usize,
    /// `[γ(t+h)/γ(t)] / h` for each consecutive pair, using the
    /// representative of the division in `[-1/2, 1/2)`.
    #[serde(serialize_with = "serialize_rationals")]
    pub rates: Vec<Rational>,
    /// The common rate when all forward differences agree.
    #[serde(serialize_with = "serialize_optional_rational")]
    pub uniform_rate: Option<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn serialize_optional_rational<S: serde::Serializer>(
    v: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Forward differences of the division `[γ(t)/γ(0)]` along a path sampled
/// every `step`.
pub fn division_form_check(path: &[FiberPoint], step: Rational) -> Result<DivisionReport> {
    if !step.is_positive() {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    if path.len() < 2 {
        return Err(Error::InvalidArgument(
            "a path needs at least two samples".into(),
        ));
    }
    let sheet = path[0].slot;
    if let Some(i) = path.iter().position(|p| p.slot != sheet) {
        return Err(Error::NoQuotient(i, 0));
    }
    let rates: Vec<Rational> = path
        .windows(2)
        .map(|w| (w[1].angle - w[0].angle).centered() / step)
        .collect();
    let uniform_rate = rates.iter().all(|r| *r == rates[0]).then_some(rates[0]);
    Ok(DivisionReport {
        sheet,
        rates,
        uniform_rate,
    })
}

/// Samples `t ↦ exp(t·rate)·start` at `t = 0, step, …, (samples-1)·step`.
pub fn exponential_path(
    start: FiberPoint,
    rate: Rational,
    step: Rational,
    samples: usize,
) -> Vec<FiberPoint> {
    (0..samples)
        .map(|i| {
            start.rotate(Angle::from_ratio(
                rate * step * Rational::from_integer(i as i64),
            ))
        })
        .collect()
}

/// The least common multiple of all angle denominators of `b`.
pub fn common_denominator(b: &U1FlatBundle) -> i64 {
    b.generators
        .iter()
        .flat_map(|g| g.angles.iter())
        .fold(1, |acc, a| acc.lcm(&a.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn swap() -> Perm {
        Perm::transposition(2, 0, 1)
    }

    #[test]
    fn angles_reduce_mod_one() {
        assert_eq!(a("5/4"), a("1/4"));
        assert_eq!(a("-1/3"), a("2/3"));
        assert_eq!(a("3"), Angle::zero());
        assert_eq!(a("2/4").to_string(), "1/2");
        assert_eq!(Angle::zero().to_string(), "0");
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x".parse::<Angle>().is_err());
        assert_eq!(a("3/4").centered(), r(-1, 4));
        assert_eq!(a("1/2").centered(), r(-1, 2));
        assert_eq!(a("1/3").scale(3), Angle::zero());
    }

    #[test]
    fn wreath_product_example() {
        let x = U1Wreath::new(vec![a("1/2"), a("0")], swap()).unwrap();
        let y = U1Wreath::new(vec![a("1/3"), a("0")], Perm::identity(2)).unwrap();
        let xy = u1wreath_mul(&x, &y).unwrap();
        assert_eq!(xy, U1Wreath::new(vec![a("1/2"), a("1/3")], swap()).unwrap());
        assert_eq!(u1wreath_mul(&U1Wreath::identity(2), &x).unwrap(), x);
        assert_eq!(
            u1wreath_mul(&x, &u1wreath_inv(&x)).unwrap(),
            U1Wreath::identity(2)
        );
        assert!(u1wreath_mul(&x, &U1Wreath::identity(3)).is_err());
    }

    #[test]
    fn point_action() {
        let p = FiberPoint::new(a("0"), 0);
        assert_eq!(act_point(&U1Wreath::identity(2), p).unwrap(), p);
        let w = U1Wreath::new(vec![a("0"), a("1/4")], swap()).unwrap();
        assert_eq!(act_point(&w, p).unwrap(), FiberPoint::new(a("1/4"), 1));
        assert!(act_point(&w, FiberPoint::new(a("0"), 2)).is_err());
    }

    #[test]
    fn winding_transport() {
        let b = U1FlatBundle::winding(2).unwrap();
        let start = FiberPoint::new(a("0"), 0);
        assert_eq!(transport(&b, &LoopWord::empty(), start).unwrap(), start);
        assert_eq!(
            transport(&b, &"1".parse().unwrap(), start).unwrap(),
            FiberPoint::new(a("0"), 1)
        );
        assert_eq!(
            transport(&b, &"1,1".parse().unwrap(), start).unwrap(),
            start
        );
    }

    #[test]
    fn winding_holonomy_closes_after_k_loops() {
        let k = 3;
        let b = U1FlatBundle::new(
            k,
            vec![U1Wreath::new(vec![a("1/12"), a("1/6"), a("1/4")], Perm::cycle(k)).unwrap()],
        )
        .unwrap();
        let h = holonomy_u1(&b, &"1 1 1".parse().unwrap()).unwrap();
        assert!(h.sigma.is_identity());
        // every sheet picks up each generator angle once
        assert!(h.angles.iter().all(|&x| x == a("1/2")));
        let w: LoopWord = "1,1,-1,1".parse().unwrap();
        assert_eq!(
            holonomy_u1(&b, &w.inverse()).unwrap(),
            u1wreath_inv(&holonomy_u1(&b, &w).unwrap())
        );
    }

    #[test]
    fn adjoint_examples() {
        let v = AlgebraVector::new(vec![r(1, 1), r(2, 1)]);
        let w = U1Wreath::new(vec![a("1/3"), a("0")], Perm::identity(2)).unwrap();
        assert_eq!(adjoint(&w, &v).unwrap(), v);
        let s = U1Wreath::new(vec![a("0"), a("0")], swap()).unwrap();
        assert_eq!(
            adjoint(&s, &v).unwrap(),
            AlgebraVector::new(vec![r(2, 1), r(1, 1)])
        );
    }

    #[test]
    fn pushforward_examples() {
        let b = U1FlatBundle::new(
            2,
            vec![U1Wreath::new(vec![a("1/3"), a("1/2")], swap()).unwrap()],
        )
        .unwrap();
        assert_eq!(pushforward(&b, 1), b);
        let w = U1FlatBundle::winding(2).unwrap();
        assert_eq!(pushforward(&w, 2), w);
        let c = U1FlatBundle::new(1, vec![U1Wreath::rotation(vec![a("1/3")])]).unwrap();
        assert_eq!(pushforward(&c, 3).generators[0].angles, vec![Angle::zero()]);
    }

    #[test]
    fn frame_transport_on_winding_model() {
        let b = U1FlatBundle::winding(3).unwrap();
        let frame: Vec<FiberPoint> = (0..3).map(|x| FiberPoint::new(Angle::zero(), x)).collect();
        let moved = transport_frame(&b, &"1".parse().unwrap(), &frame).unwrap();
        assert_eq!(
            moved,
            (0..3)
                .map(|x| FiberPoint::new(Angle::zero(), (x + 1) % 3))
                .collect::<Vec<_>>()
        );
        assert!(is_u1_frame(3, &moved));
        // relative to the starting frame the move is the wreath element
        // (0, σ⁻¹) acting on the left
        let rel = U1Wreath::new(vec![Angle::zero(); 3], Perm::cycle(3).inverse()).unwrap();
        assert_eq!(act_tuple(&rel, &frame).unwrap(), moved);
    }

    #[test]
    fn division_form() {
        let p = FiberPoint::new(a("1/3"), 1);
        let constant = vec![p; 5];
        let rep = division_form_check(&constant, r(1, 10)).unwrap();
        assert_eq!(rep.uniform_rate, Some(r(0, 1)));
        let path = exponential_path(FiberPoint::new(a("0"), 0), r(1, 4), r(1, 100), 50);
        let rep = division_form_check(&path, r(1, 100)).unwrap();
        assert_eq!(rep.uniform_rate, Some(r(1, 4)));
        assert_eq!(rep.rates.len(), 49);
        let mixed = vec![FiberPoint::new(a("0"), 0), FiberPoint::new(a("0"), 1)];
        assert_eq!(
            division_form_check(&mixed, r(1, 2)),
            Err(Error::NoQuotient(1, 0))
        );
        assert!(division_form_check(&path, r(0, 1)).is_err());
        assert!(division_form_check(&path[..1], r(1, 2)).is_err());
    }

    #[test]
    fn division_form_crosses_zero() {
        // a path wrapping through angle 0 still has a constant rate
        let path = exponential_path(FiberPoint::new(a("9/10"), 0), r(-3, 1), r(1, 20), 30);
        let rep = division_form_check(&path, r(1, 20)).unwrap();
        assert_eq!(rep.uniform_rate, Some(r(-3, 1)));
    }

    #[test]
    fn nonuniform_paths_report_exact_differences() {
        let path: Vec<FiberPoint> = [0, 1, 3, 6]
            .iter()
            .map(|&n| FiberPoint::new(Angle::new(n, 24).unwrap(), 2))
            .collect();
        let rep = division_form_check(&path, r(1, 2)).unwrap();
        assert_eq!(rep.rates, vec![r(1, 12), r(1, 6), r(1, 4)]);
        assert_eq!(rep.uniform_rate, None);
    }
}
