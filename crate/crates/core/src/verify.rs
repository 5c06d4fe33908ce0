//! Exhaustive and seeded property suites over generated fixtures.
//!
//! Every suite returns a [`SuiteReport`]: one row per (fixture, property)
//! with the number of individual checks made and how many of them failed.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aut::{aut_to_wreath, cq, ses_report, wreath_to_aut, GSetAut};
use crate::bundles::{
    conjugated_natural_action, is_trivializable, map_fiber_count, quotient_bundle, quotient_map,
    sn_action_on_bundle, sn_labelling, FlatBundle, LoopWord, SnActionOutcome,
};
use crate::error::{Error, Result};
use crate::fixtures::{
    bundle_fixtures, exotic_s6_action, free_fixtures, group_by_name, random_perm, small_groups,
    GSetFixture, GroupFixture,
};
use crate::frames::{
    check_equivalence, enumerate_frames, frame_divide, frame_functor_map, reconstruct_semitorsor,
    Frame,
};
use crate::group::make_symmetric;
use crate::gset::{
    compose_equivariant, disjoint_union, equivariant_maps, is_orbit_bijection, standard_semitorsor,
    EquivariantMap, GSet,
};
use crate::hom::{automorphisms, GroupHom};
use crate::perm::Perm;
use crate::transport::{
    act_point, act_tuple, adjoint, division_form_check, exponential_path, holonomy_u1, pushforward,
    transport, transport_frame, u1wreath_inv, u1wreath_mul, AlgebraVector, Angle, FiberPoint,
    Rational, U1FlatBundle, U1Wreath,
};
use crate::wreath::{tuples, WreathProduct};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Torsor,
    FunctorLaws,
    Ses,
    WreathIso,
    DivisionRules,
    Equivalence,
    SnLabelling,
    Decomposition,
    Transport,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Torsor,
        Suite::FunctorLaws,
        Suite::Ses,
        Suite::WreathIso,
        Suite::DivisionRules,
        Suite::Equivalence,
        Suite::SnLabelling,
        Suite::Decomposition,
        Suite::Transport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Torsor => "torsor",
            Suite::FunctorLaws => "functor-laws",
            Suite::Ses => "ses",
            Suite::WreathIso => "wreath-iso",
            Suite::DivisionRules => "division-rules",
            Suite::Equivalence => "equivalence",
            Suite::SnLabelling => "appendix-b",
            Suite::Decomposition => "decomposition",
            Suite::Transport => "transport",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size bounds and fixture selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest group order drawn from the fixture list.
    pub max_group: usize,
    /// Orbit counts `1..=max_orbits` are used.
    pub max_orbits: usize,
    /// Restrict to one named group instead of the fixture list.
    pub group: Option<String>,
    /// Restrict to one orbit count.
    pub orbits: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_group: 4,
            max_orbits: 3,
            group: None,
            orbits: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyOptions {
    fn groups(&self) -> Result<Vec<GroupFixture>> {
        match &self.group {
            Some(name) => Ok(vec![GroupFixture {
                name: name.to_ascii_lowercase(),
                group: group_by_name(name)?,
            }]),
            None => small_groups(self.max_group),
        }
    }

    fn orbit_counts(&self) -> Vec<usize> {
        match self.orbits {
            Some(n) => vec![n],
            None => (1..=self.max_orbits).collect(),
        }
    }

    /// Free fixtures for the selected groups and orbit counts.
    fn free_fixtures(&self) -> Result<Vec<GSetFixture>> {
        let groups = self.groups()?;
        let counts = self.orbit_counts();
        let max = counts.iter().copied().max().unwrap_or(0);
        Ok(free_fixtures(&groups, max, self.seed)?
            .into_iter()
            .filter(|f| counts.contains(&f.gset.orbit_count()))
            .collect())
    }
}

/// One (fixture, property) line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub fixture: String,
    pub property: String,
    pub checks: u64,
    pub failures: u64,
    /// Description of the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckRow {
    fn new(fixture: impl Into<String>, property: impl Into<String>) -> CheckRow {
        CheckRow {
            fixture: fixture.into(),
            property: property.into(),
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of one suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }

    pub fn total_checks(&self) -> u64 {
        self.rows.iter().map(|r| r.checks).sum()
    }

    pub fn total_failures(&self) -> u64 {
        self.rows.iter().map(|r| r.failures).sum()
    }

    /// Checks made for one property across all fixtures.
    pub fn checks_for(&self, property: &str) -> u64 {
        self.rows
            .iter()
            .filter(|r| r.property == property)
            .map(|r| r.checks)
            .sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        let fw = self
            .rows
            .iter()
            .map(|r| r.fixture.len())
            .max()
            .unwrap_or(0)
            .max(7);
        let pw = self
            .rows
            .iter()
            .map(|r| r.property.len())
            .max()
            .unwrap_or(0)
            .max(8);
        writeln!(
            f,
            "{:<fw$}  {:<pw$}  {:>9}  {:>8}  status",
            "fixture", "property", "checks", "failures"
        )?;
        for r in &self.rows {
            let status = if r.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{:<fw$}  {:<pw$}  {:>9}  {:>8}  {status}",
                r.fixture, r.property, r.checks, r.failures
            )?;
            if let Some(why) = &r.first_failure {
                writeln!(f, "    first failure: {why}")?;
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict}: {} checks, {} failures",
            self.total_checks(),
            self.total_failures()
        )
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let rows = match suite {
        Suite::Torsor => torsor(opts)?,
        Suite::FunctorLaws => functor_laws(opts)?,
        Suite::Ses => ses(opts)?,
        Suite::WreathIso => wreath_iso(opts)?,
        Suite::DivisionRules => division_rules(opts)?,
        Suite::Equivalence => equivalence(opts)?,
        Suite::SnLabelling => sn_labelling_rows()?,
        Suite::Decomposition => decomposition(opts)?,
        Suite::Transport => transport_suite(opts)?,
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        seed: opts.seed,
        rows,
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn expected_frames(order: usize, n: usize) -> usize {
    order.pow(n as u32) * factorial(n)
}

fn torsor(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for fx in opts.free_fixtures()? {
        let f = &fx.gset;
        let n = f.orbit_count();
        let order = f.group().order();
        let fs = enumerate_frames(f.clone())?;

        let mut count = CheckRow::new(&fx.name, "frame-count");
        count.check(fs.len() == expected_frames(order, n), || {
            format!(
                "{} frames, expected {}",
                fs.len(),
                expected_frames(order, n)
            )
        });
        rows.push(count);

        // a tuple is a basis exactly when it meets every orbit once
        let mut bases = CheckRow::new(&fx.name, "basis-criterion");
        for t in tuples(f.size(), n) {
            let orbits: HashSet<usize> = t.iter().map(|&p| f.q(p)).collect();
            let oracle = orbits.len() == n;
            let frame = Frame::new(t);
            bases.check(fs.contains(&frame) == oracle, || format!("{frame}"));
        }
        rows.push(bases);

        let elements = fs.wreath().elements()?;
        let identity = fs.wreath().identity();
        let mut closed = CheckRow::new(&fx.name, "closure");
        let mut free = CheckRow::new(&fx.name, "free");
        for w in &elements {
            for frame in fs.frames() {
                let image = fs.act(w, frame);
                closed.check(fs.contains(&image), || format!("{w} · {frame}"));
                if *w != identity {
                    free.check(image != *frame, || format!("{w} fixes {frame}"));
                }
            }
        }
        rows.push(closed);
        rows.push(free);

        let mut transitive = CheckRow::new(&fx.name, "transitive");
        for f1 in fs.frames() {
            for f2 in fs.frames() {
                let ok = frame_divide(&fs, f2, f1).is_ok_and(|w| fs.act(&w, f1) == *f2);
                transitive.check(ok, || format!("[{f2} / {f1}]"));
            }
        }
        rows.push(transitive);
    }
    Ok(rows)
}

/// Up to `cap` items, chosen by the seeded generator when there are more.
fn sample<T: Clone>(items: &[T], cap: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() <= cap {
        return items.to_vec();
    }
    rand::seq::index::sample(rng, items.len(), cap)
        .into_iter()
        .map(|i| items[i].clone())
        .collect()
}

const FUNCTOR_SAMPLE: usize = 8;

fn functor_laws(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    for g in opts.groups()? {
        let auts = automorphisms(&g.group)?;
        for n in opts.orbit_counts() {
            let a = Arc::new(standard_semitorsor(g.group.clone(), n)?);
            let b = Arc::new(a.relabel(&random_perm(&mut rng, a.size()))?);
            let c = Arc::new(a.relabel(&random_perm(&mut rng, a.size()))?);
            let fa = Arc::new(enumerate_frames(a.clone())?);
            let fb = Arc::new(enumerate_frames(b.clone())?);
            let fc = Arc::new(enumerate_frames(c.clone())?);
            let name = format!("{}xI{n}", g.name);

            let mut ident = CheckRow::new(&name, "identity-lift");
            for (gset, fs) in [(&a, &fa), (&b, &fb), (&c, &fc)] {
                let lift = frame_functor_map(&EquivariantMap::identity(gset.clone()), fs, fs)?;
                ident.check(lift.value.iter().enumerate().all(|(i, &v)| i == v), || {
                    "id! ≠ id".into()
                });
            }
            rows.push(ident);

            let maps =
                |src: &Arc<GSet>, dst: &Arc<GSet>, xi: &GroupHom| -> Result<Vec<EquivariantMap>> {
                    Ok(equivariant_maps(src, dst, xi)?
                        .into_iter()
                        .filter(is_orbit_bijection)
                        .collect())
                };
            let mut betas = Vec::new();
            let mut alphas = Vec::new();
            for xi in &auts {
                betas.extend(sample(&maps(&a, &b, xi)?, FUNCTOR_SAMPLE, &mut rng));
                alphas.extend(sample(&maps(&b, &c, xi)?, FUNCTOR_SAMPLE, &mut rng));
            }

            let mut equivariant = CheckRow::new(&name, "lift-equivariance");
            let lift_b = betas
                .iter()
                .map(|m| frame_functor_map(m, &fa, &fb))
                .collect::<Result<Vec<_>>>()?;
            let lift_a = alphas
                .iter()
                .map(|m| frame_functor_map(m, &fb, &fc))
                .collect::<Result<Vec<_>>>()?;
            for lift in lift_b.iter().chain(&lift_a) {
                equivariant.check(lift.check_equivariant()?, || {
                    "α! is not ξ!-equivariant".into()
                });
            }
            rows.push(equivariant);

            let mut composition = CheckRow::new(&name, "composition");
            for (alpha, la) in alphas.iter().zip(&lift_a) {
                for (beta, lb) in betas.iter().zip(&lift_b) {
                    let ab = compose_equivariant(alpha, beta)?;
                    let lab = frame_functor_map(&ab, &fa, &fc)?;
                    let composed: Vec<usize> = lb.value.iter().map(|&i| la.value[i]).collect();
                    composition.check(lab.value == composed, || "(αβ)! ≠ α!β!".into());
                }
            }
            rows.push(composition);
        }

        // folding two copies of the regular action is not an orbit bijection
        let regular = GSet::regular(g.group.clone());
        let doubled = Arc::new(disjoint_union(&regular, &regular)?);
        let regular = Arc::new(regular);
        let order = g.group.order();
        let fold = EquivariantMap::with_identity(
            doubled.clone(),
            regular.clone(),
            (0..doubled.size()).map(|p| p % order).collect(),
        )?;
        let mut obstruction = CheckRow::new(format!("{}+{}", g.name, g.name), "fold-obstruction");
        let outcome = frame_functor_map(
            &fold,
            &Arc::new(enumerate_frames(doubled)?),
            &Arc::new(enumerate_frames(regular)?),
        );
        obstruction.check(matches!(outcome, Err(Error::OrbitObstruction)), || {
            "fold map lifted to frames".into()
        });
        rows.push(obstruction);
    }
    Ok(rows)
}

fn ses(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for fx in opts.free_fixtures()? {
        let report = ses_report(&fx.gset)?;
        let expected = expected_frames(fx.gset.group().order(), fx.gset.orbit_count());
        let mut row = CheckRow::new(&fx.name, "split-ses");
        row.check(report.kernel_is_autq, || {
            "ker C_q differs from Aut(q)".into()
        });
        row.check(report.cq_surjective, || "C_q is not surjective".into());
        row.check(report.section_splits, || {
            "section is not a splitting".into()
        });
        row.check(report.orders_multiply, || {
            "|Aut(F)| ≠ |Aut(q)|·|Sym(X)|".into()
        });
        row.check(report.aut_f == expected, || {
            format!("|Aut(F)| = {}, expected {expected}", report.aut_f)
        });
        rows.push(row);
    }
    Ok(rows)
}

fn wreath_iso(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for g in opts.groups()? {
        for n in opts.orbit_counts() {
            let name = format!("{}xI{n}", g.name);
            let gset = Arc::new(standard_semitorsor(g.group.clone(), n)?);
            let wp = WreathProduct::new(g.group.clone(), n);
            let materialized = wp.to_finite_group()?;
            let elements = &materialized.elements;

            let mut is_aut = CheckRow::new(&name, "image-is-automorphism");
            let mut round_trip = CheckRow::new(&name, "aut_to_wreath∘I=id");
            let mut quotient = CheckRow::new(&name, "cq∘I=σ");
            let mut images = Vec::with_capacity(elements.len());
            for w in elements {
                let psi = wreath_to_aut(w, n, &g.group)?;
                is_aut.check(
                    GSetAut::from_values(gset.clone(), psi.values().to_vec()).is_ok(),
                    || format!("I{w}"),
                );
                round_trip.check(aut_to_wreath(&psi)? == *w, || format!("{w}"));
                quotient.check(cq(&psi) == w.sigma, || format!("{w}"));
                images.push(psi.values().to_vec());
            }

            let mut hom = CheckRow::new(&name, "homomorphism");
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    let k = materialized.index_of(&wp.mul(a, b)).expect("closed");
                    let composed: Vec<usize> = images[j].iter().map(|&p| images[i][p]).collect();
                    hom.check(images[k] == composed, || {
                        format!("I({a}·{b}) ≠ I({a})∘I({b})")
                    });
                }
            }

            // oracle: automorphisms found directly as equivariant bijections
            let id = GroupHom::identity(g.group.clone());
            let oracle: HashSet<Vec<usize>> = equivariant_maps(&gset, &gset, &id)?
                .into_iter()
                .filter(EquivariantMap::is_bijective)
                .map(|m| m.values().to_vec())
                .collect();
            let image_set: HashSet<Vec<usize>> = images.iter().cloned().collect();
            let mut bijective = CheckRow::new(&name, "bijective");
            bijective.check(image_set.len() == elements.len(), || {
                "I is not injective".into()
            });
            bijective.check(image_set == oracle, || {
                format!(
                    "image has {} elements, Aut(F) has {}",
                    image_set.len(),
                    oracle.len()
                )
            });
            let mut inverse = CheckRow::new(&name, "I∘aut_to_wreath=id");
            for values in &oracle {
                let psi = GSetAut::from_values(gset.clone(), values.clone())?;
                let w = aut_to_wreath(&psi)?;
                inverse.check(
                    wreath_to_aut(&w, n, &g.group)?.values() == &values[..],
                    || format!("{w}"),
                );
            }

            let report = ses_report(&gset)?;
            let mut ses = CheckRow::new(&name, "split-ses");
            ses.check(report.passed(), || "sequence does not split".into());
            ses.check(report.aut_f == expected_frames(g.group.order(), n), || {
                format!("|Aut(F)| = {}", report.aut_f)
            });
            rows.extend([is_aut, round_trip, quotient, hom, bijective, inverse, ses]);
        }
    }
    Ok(rows)
}

fn division_rules(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for fx in opts.free_fixtures()? {
        let f = &fx.gset;
        let g = f.group();
        let orbits = f.orbits().members();
        let mut inverse = CheckRow::new(&fx.name, "inverse");
        let mut cancel = CheckRow::new(&fx.name, "cancellation");
        let mut scaling = CheckRow::new(&fx.name, "scaling");
        for orbit in &orbits {
            for &f1 in orbit {
                for &f2 in orbit {
                    let d21 = f.divide(f2, f1)?;
                    inverse.check(d21 == g.inv(f.divide(f1, f2)?), || format!("[{f2}/{f1}]"));
                    for &m in orbit {
                        let rhs = g.mul(f.divide(f2, m)?, f.divide(m, f1)?);
                        cancel.check(d21 == rhs, || format!("[{f2}/{f1}] via {m}"));
                    }
                    for g1 in g.elements() {
                        for g2 in g.elements() {
                            let lhs = f.divide(f.act(g2, f2), f.act(g1, f1))?;
                            let rhs = g.mul(g.mul(g2, d21), g.inv(g1));
                            scaling.check(lhs == rhs, || format!("g1={g1}, g2={g2}, [{f2}/{f1}]"));
                        }
                    }
                }
            }
        }

        let mut invariance = CheckRow::new(&fx.name, "invariance");
        let id = GroupHom::identity(g.clone());
        for psi in equivariant_maps(f, f, &id)?
            .into_iter()
            .filter(EquivariantMap::is_bijective)
        {
            for orbit in &orbits {
                for &f1 in orbit {
                    for &f2 in orbit {
                        let lhs = f.divide(psi.apply(f2), psi.apply(f1))?;
                        invariance
                            .check(lhs == f.divide(f2, f1)?, || format!("ψ={:?}", psi.values()));
                    }
                }
            }
        }
        rows.extend([inverse, cancel, scaling, invariance]);
    }
    Ok(rows)
}

fn equivalence(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let fixtures = opts.free_fixtures()?;
    for fx in &fixtures {
        let f = &fx.gset;
        let n = f.orbit_count();
        let expected = expected_frames(f.group().order(), n);
        let standard = Arc::new(standard_semitorsor(f.group().clone(), n)?);

        let mut row = CheckRow::new(&fx.name, "hom-bijection");
        for target in [&standard, f] {
            let report = check_equivalence(f, target)?;
            row.check(report.semitorsor_maps == expected, || {
                format!(
                    "{} semitorsor maps, expected {expected}",
                    report.semitorsor_maps
                )
            });
            row.check(report.torsor_maps == expected, || {
                format!("{} torsor maps, expected {expected}", report.torsor_maps)
            });
            row.check(report.lift_is_bijective, || {
                "α ↦ α! is not a bijection".into()
            });
        }
        rows.push(row);

        // different orbit counts have no maps on either side
        if let Some(other) = fixtures
            .iter()
            .find(|o| **o.gset.group() == **f.group() && o.gset.orbit_count() == n + 1)
        {
            let mut empty = CheckRow::new(format!("{} vs {}", fx.name, other.name), "empty-homs");
            let report = check_equivalence(f, &other.gset)?;
            empty.check(
                report.semitorsor_maps == 0 && report.torsor_maps == 0,
                || format!("{} and {} maps", report.semitorsor_maps, report.torsor_maps),
            );
            rows.push(empty);
        }

        let fs = enumerate_frames(f.clone())?;
        let mut recon = CheckRow::new(&fx.name, "reconstruction");
        for x in 0..n {
            let r = reconstruct_semitorsor(&fs, x)?;
            recon.check(r.gset.size() == f.size(), || {
                format!("slot {x}: {} classes", r.gset.size())
            });
            recon.check(
                r.to_original.is_bijective() && r.to_original.check_equivariant(),
                || format!("slot {x}: witness to F is not an isomorphism"),
            );
            recon.check(
                r.to_standard.is_bijective() && r.to_standard.check_equivariant(),
                || format!("slot {x}: witness to G × I_n is not an isomorphism"),
            );
        }
        rows.push(recon);
    }
    Ok(rows)
}

fn sn_labelling_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for n in 3..=4 {
        let sn = make_symmetric(n)?;
        let mut label = CheckRow::new(format!("S{n}"), "labelling-recovers-τ");
        let mut equivariant = CheckRow::new(format!("S{n}"), "labelling-equivariance");
        for tau in Perm::all(n) {
            let action = conjugated_natural_action(&sn, &tau)?;
            match sn_labelling(&sn, &action) {
                Ok(l) => {
                    label.check(l == tau, || format!("τ={tau}, labelling {l}"));
                    for s in sn.group.elements() {
                        for a in 0..n {
                            let ok = l.apply(action.act(s, a)) == sn.perm(s).apply(l.apply(a));
                            equivariant.check(ok, || format!("τ={tau}, σ={}, a={a}", sn.perm(s)));
                        }
                    }
                }
                Err(e) => label.check(false, || format!("τ={tau}: {e}")),
            }
        }
        rows.extend([label, equivariant]);

        // coverings with one loop, and with two loops for three sheets
        let fiber = Arc::new(GSet::trivial_action(
            Arc::new(crate::group::FiniteGroup::trivial()),
            n,
        ));
        let perms = Perm::all(n);
        let mut clutchings: Vec<Vec<Perm>> = perms.iter().map(|p| vec![p.clone()]).collect();
        if n == 3 {
            for p in &perms {
                for q in &perms {
                    clutchings.push(vec![p.clone(), q.clone()]);
                }
            }
        }
        let mut covering = CheckRow::new(format!("{n}-sheet coverings"), "sn-action-iff-trivial");
        for c in clutchings {
            let maps = c
                .iter()
                .map(|p| GSetAut::from_values(fiber.clone(), p.images().to_vec()))
                .collect::<Result<Vec<_>>>()?;
            let b = FlatBundle::new(fiber.clone(), maps)?;
            let describe = || c.iter().map(Perm::to_string).collect::<Vec<_>>().join(",");
            match sn_action_on_bundle(&b, &sn)? {
                SnActionOutcome::Action { .. } => covering.check(is_trivializable(&b), describe),
                SnActionOutcome::Obstruction {
                    loop_index,
                    clutching,
                } => {
                    let named =
                        c.get(loop_index - 1) == Some(&clutching) && !clutching.is_identity();
                    covering.check(!is_trivializable(&b) && named, describe)
                }
            }
        }
        rows.push(covering);
    }

    let s3 = make_symmetric(3)?;
    let sign_rows = s3
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
    let sign = GSet::new(s3.group.clone(), 3, sign_rows)?;
    let mut faithful = CheckRow::new("S3 sign action", "rejects-unfaithful");
    faithful.check(
        matches!(sn_labelling(&s3, &sign), Err(Error::NotFaithful)),
        || "labelled an unfaithful action".into(),
    );
    rows.push(faithful);

    // the outer automorphism of S6 moves point stabilizers off point stabilizers
    let s6 = make_symmetric(6)?;
    let exotic = exotic_s6_action(&s6)?;
    let mut outer = CheckRow::new("S6 exotic action", "no-labelling");
    outer.check(
        matches!(sn_labelling(&s6, &exotic), Err(Error::NoFixedPoint(_))),
        || "labelled the exotic action".into(),
    );
    rows.push(outer);
    Ok(rows)
}

fn decomposition(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let groups = opts.groups()?;
    let max = opts.orbit_counts().into_iter().max().unwrap_or(1);
    let mut rows = Vec::new();
    for fx in bundle_fixtures(&groups, max, opts.seed)? {
        let b = &fx.bundle;
        let q = quotient_bundle(b)?;
        let mut row = CheckRow::new(&fx.name, "quotient");
        for (orig, quot) in b.clutching().iter().zip(q.clutching()) {
            row.check(quot.values() == cq(orig).images(), || {
                format!("quotient clutching {:?} vs C_q {}", quot.values(), cq(orig))
            });
        }
        let count = map_fiber_count(&quotient_map(b)?)?;
        let order = b.fiber().group().order();
        row.check(count == order, || {
            format!("fiber count {count}, expected {order}")
        });
        rows.push(row);
    }
    Ok(rows)
}

/// Flat `U(1)` fixtures: the winding models and seeded random bundles with
/// angles on grids of denominator at most 12.
pub fn u1_fixtures(max_k: usize, seed: u64) -> Result<Vec<(String, U1FlatBundle)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 1..=max_k {
        out.push((format!("winding({k})"), U1FlatBundle::winding(k)?));
        for (i, loops) in [1usize, 2, 2].into_iter().enumerate() {
            let gens = (0..loops)
                .map(|_| random_u1(&mut rng, k))
                .collect::<Result<Vec<_>>>()?;
            out.push((format!("random(k={k},#{i})"), U1FlatBundle::new(k, gens)?));
        }
    }
    Ok(out)
}

fn random_angle(rng: &mut ChaCha8Rng) -> Result<Angle> {
    let d = rng.gen_range(1..=12);
    Angle::new(rng.gen_range(0..d), d)
}

fn random_u1(rng: &mut ChaCha8Rng, k: usize) -> Result<U1Wreath> {
    let angles = (0..k)
        .map(|_| random_angle(rng))
        .collect::<Result<Vec<_>>>()?;
    U1Wreath::new(angles, random_perm(rng, k))
}

fn words_up_to(loops: usize, len: usize) -> Vec<LoopWord> {
    (0..=len)
        .flat_map(|l| LoopWord::all_of_length(loops, l))
        .collect()
}

/// Every element of `U(1) ≀ I_k` with angles in `(1/12)ℤ`.
fn grid_wreath(k: usize) -> Result<Vec<U1Wreath>> {
    let mut out = Vec::new();
    for sigma in Perm::all(k) {
        for t in tuples(12, k) {
            let angles = t
                .iter()
                .map(|&a| Angle::new(a as i64, 12))
                .collect::<Result<Vec<_>>>()?;
            out.push(U1Wreath::new(angles, sigma.clone())?);
        }
    }
    Ok(out)
}

fn grid_points(k: usize) -> Result<Vec<FiberPoint>> {
    let mut out = Vec::new();
    for slot in 0..k {
        for a in 0..12 {
            out.push(FiberPoint::new(Angle::new(a, 12)?, slot));
        }
    }
    Ok(out)
}

/// Number of grid elements sampled for the action axiom when `k = 3`.
const ACTION_SAMPLE: usize = 240;

fn transport_suite(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    let fixtures = u1_fixtures(3, opts.seed)?;
    let powers = [-1i64, 0, 1, 2, 3];

    for (name, b) in &fixtures {
        let mut push = CheckRow::new(name, "pushforward-holonomy");
        for word in words_up_to(b.loops(), 6) {
            let hol = holonomy_u1(b, &word)?;
            for q in powers {
                let lhs = holonomy_u1(&pushforward(b, q), &word)?;
                push.check(lhs == hol.scale(q), || format!("q={q}, word [{word}]"));
            }
        }
        rows.push(push);

        let frames: Vec<Vec<FiberPoint>> = (0..4)
            .map(|_| {
                let sigma = random_perm(&mut rng, b.k);
                (0..b.k)
                    .map(|x| random_angle(&mut rng).map(|a| FiberPoint::new(a, sigma.apply(x))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let movers = (0..4)
            .map(|_| random_u1(&mut rng, b.k))
            .collect::<Result<Vec<_>>>()?;
        let mut entrywise = CheckRow::new(name, "frame-entrywise");
        let mut frame_eq = CheckRow::new(name, "frame-wreath-equivariance");
        let mut point_eq = CheckRow::new(name, "point-rotation-equivariance");
        for word in words_up_to(b.loops(), 4) {
            for frame in &frames {
                let moved = transport_frame(b, &word, frame)?;
                let separately = frame
                    .iter()
                    .map(|&p| transport(b, &word, p))
                    .collect::<Result<Vec<_>>>()?;
                entrywise.check(moved == separately, || format!("word [{word}]"));
                for u in &movers {
                    let lhs = transport_frame(b, &word, &act_tuple(u, frame)?)?;
                    frame_eq.check(lhs == act_tuple(u, &moved)?, || {
                        format!("u={u}, word [{word}]")
                    });
                }
                for (&p, &tp) in frame.iter().zip(&moved) {
                    let theta = random_angle(&mut rng)?;
                    let lhs = transport(b, &word, p.rotate(theta))?;
                    point_eq.check(lhs == tp.rotate(theta), || {
                        format!("θ={theta}, word [{word}]")
                    });
                }
            }
        }
        rows.extend([entrywise, frame_eq, point_eq]);
    }

    for k in 1..=3 {
        let name = format!("U(1)≀I{k}");
        let grid = grid_wreath(k)?;
        let acting = if grid.len() > ACTION_SAMPLE {
            sample(&grid, ACTION_SAMPLE, &mut rng)
        } else {
            grid.clone()
        };
        let points = grid_points(k)?;
        let mut axiom = CheckRow::new(&name, "action-axiom");
        let mut group = CheckRow::new(&name, "group-axioms");
        let id = U1Wreath::identity(k);
        for w1 in &acting {
            group.check(u1wreath_mul(w1, &u1wreath_inv(w1))? == id, || {
                format!("{w1}·{w1}⁻¹")
            });
            group.check(u1wreath_mul(&id, w1)? == *w1, || format!("e·{w1}"));
            for w2 in &acting {
                let w12 = u1wreath_mul(w1, w2)?;
                for &p in &points {
                    let lhs = act_point(&w12, p)?;
                    axiom.check(lhs == act_point(w1, act_point(w2, p)?)?, || {
                        format!("{w1}, {w2}, {p}")
                    });
                }
            }
        }
        for _ in 0..200 {
            let (a, b, c) = (
                random_u1(&mut rng, k)?,
                random_u1(&mut rng, k)?,
                random_u1(&mut rng, k)?,
            );
            let lhs = u1wreath_mul(&u1wreath_mul(&a, &b)?, &c)?;
            group.check(lhs == u1wreath_mul(&a, &u1wreath_mul(&b, &c)?)?, || {
                format!("({a}{b}){c}")
            });
        }
        rows.extend([axiom, group]);

        let mut ad = CheckRow::new(&name, "adjoint-homomorphism");
        let vectors: Vec<AlgebraVector> = (0..4)
            .map(|_| {
                AlgebraVector::new(
                    (0..k)
                        .map(|_| Rational::new(rng.gen_range(-12..=12), rng.gen_range(1..=12)))
                        .collect(),
                )
            })
            .collect();
        let elems = (0..24)
            .map(|_| random_u1(&mut rng, k))
            .collect::<Result<Vec<_>>>()?;
        let perms: Vec<U1Wreath> = Perm::all(k)
            .into_iter()
            .map(|s| U1Wreath::new(vec![Angle::zero(); k], s))
            .collect::<Result<_>>()?;
        let elems: Vec<U1Wreath> = elems.into_iter().chain(perms).collect();
        for v in &vectors {
            ad.check(adjoint(&id, v)? == *v, || "Ad_e ≠ id".into());
            for a in &elems {
                for b in &elems {
                    let lhs = adjoint(&u1wreath_mul(a, b)?, v)?;
                    ad.check(lhs == adjoint(a, &adjoint(b, v)?)?, || {
                        format!("Ad_({a}{b})")
                    });
                }
            }
        }
        rows.push(ad);
    }

    let mut division = CheckRow::new("linear paths", "division-rate");
    let step = Rational::new(1, 12);
    for den in 1..=12i64 {
        for num in -3 * den..=3 * den {
            let rate = Rational::new(num, den);
            for slot in 0..3 {
                let start = FiberPoint::new(random_angle(&mut rng)?, slot);
                let path = exponential_path(start, rate, step, 13);
                let report = division_form_check(&path, step)?;
                division.check(
                    report.uniform_rate == Some(rate) && report.sheet == slot,
                    || format!("rate {rate} from {start}"),
                );
            }
        }
    }
    rows.push(division);

    let mut nonuniform = CheckRow::new("piecewise paths", "division-forward-difference");
    // increments stay inside (-1/2, 1/2), where the centered division is the true one
    for _ in 0..100 {
        let r1 = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=12));
        let r2 = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=12));
        let start = FiberPoint::new(random_angle(&mut rng)?, 0);
        let mut path = exponential_path(start, r1, step, 4);
        let corner = *path.last().expect("four samples");
        path.extend(exponential_path(corner, r2, step, 4).into_iter().skip(1));
        let report = division_form_check(&path, step)?;
        let expected = [vec![r1; 3], vec![r2; 3]].concat();
        let uniform = (r1 == r2).then_some(r1);
        nonuniform.check(
            report.rates == expected && report.uniform_rate == uniform,
            || format!("rates {r1} then {r2}"),
        );
    }
    let mixed = vec![
        FiberPoint::new(Angle::zero(), 0),
        FiberPoint::new(Angle::zero(), 1),
    ];
    nonuniform.check(division_form_check(&mixed, step).is_err(), || {
        "mixed sheets accepted".into()
    });
    rows.push(nonuniform);

    let mut doubling = CheckRow::new("winding models", "pushforward-q2-fixes-winding");
    for k in 1..=3 {
        let w = U1FlatBundle::winding(k)?;
        doubling.check(pushforward(&w, 2) == w, || format!("k={k}"));
    }
    rows.push(doubling);
    Ok(rows)
}
