//! One function per subcommand, each producing a [`Report`].

use std::sync::Arc;

use semitorsor::aut::cq;
use semitorsor::bundles::{
    bundle_isomorphic, canonical_clutching_wreath, clutching_wreath, component_partition,
    frame_bundle, group_bundle_over_circle, holonomy, map_fiber_count, quotient_bundle,
    quotient_map, sn_action_on_bundle, total_components, unit_component_is_circle, BundleMode,
    FlatBundle, LoopWord, SnActionOutcome,
};
use semitorsor::frames::canonical_frame;
use semitorsor::group::{make_symmetric, FiniteGroup};
use semitorsor::hom::{aut_group, homomorphisms};
use semitorsor::transport::{
    division_form_check, frame_holonomy, holonomy_u1, pushforward, transport, FiberPoint, Rational,
    U1FlatBundle,
};
use semitorsor::verify::{run_suite, Suite, VerifyOptions};

use crate::report::{Report, Table};
use crate::spec::{BundleSpec, U1Spec};
use crate::{load_document, load_group, CliError, Command};

pub fn dispatch(command: &Command, echo: &str) -> Result<Report, CliError> {
    let mut report = Report::new(echo);
    match command {
        Command::ClassifyCircle { group } => classify_circle(&mut report, group)?,
        Command::Components { bundle } => components(&mut report, &load_bundle(bundle)?)?,
        Command::FrameBundle {
            bundle,
            list_frames,
        } => frame_bundle_cmd(&mut report, &load_bundle(bundle)?, *list_frames)?,
        Command::Holonomy { bundle, word } => {
            holonomy_cmd(&mut report, &load_bundle(bundle)?, word)?
        }
        Command::SnAction { bundle } => sn_action(&mut report, &load_bundle(bundle)?)?,
        Command::Decompose { bundle } => decompose(&mut report, &load_bundle(bundle)?)?,
        Command::U1Holonomy { connection, word } => u1_holonomy(&mut report, &load_u1(connection)?, word)?,
        Command::U1Transport { connection, word, start } => {
            u1_transport(&mut report, &load_u1(connection)?, word, start)?
        }
        Command::Pushforward { connection, power } => {
            pushforward_cmd(&mut report, &load_u1(connection)?, *power)?
        }
        Command::DivisionCheck { connection, path, step } => {
            division_check(&mut report, &load_u1(connection)?, path, step)?
        }
        Command::Verify {
            suite,
            max_group,
            max_orbits,
            group,
            orbits,
            seed,
        } => {
            let suite: Suite = suite.parse().map_err(|_| {
                let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                CliError::Usage(format!(
                    "unknown suite {suite:?}; known suites: {}",
                    known.join(", ")
                ))
            })?;
            let opts = VerifyOptions {
                max_group: *max_group,
                max_orbits: *max_orbits,
                group: group.clone(),
                orbits: *orbits,
                seed: *seed,
            };
            verify(&mut report, suite, &opts)?
        }
    }
    Ok(report)
}

fn load_bundle(arg: &str) -> Result<FlatBundle, CliError> {
    BundleSpec::parse(load_document(arg)?)?.build()
}

fn load_u1(arg: &str) -> Result<U1FlatBundle, CliError> {
    serde_json::from_value::<U1Spec>(load_document(arg)?)?.build()
}

fn list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A short structural name: cyclic, symmetric, or just abelian/non-abelian.
pub fn describe_group(g: &Arc<FiniteGroup>) -> Result<String, CliError> {
    let n = g.order();
    if n == 1 {
        return Ok("trivial".into());
    }
    if g.elements().any(|a| g.element_order(a) == n) {
        return Ok(format!("Z{n}"));
    }
    for k in 3..=5usize {
        if (1..=k).product::<usize>() == n {
            let sk = make_symmetric(k)?.group;
            if homomorphisms(g, &sk)?.iter().any(|h| h.is_isomorphism()) {
                return Ok(format!("S{k}"));
            }
        }
    }
    Ok(if g.is_abelian() {
        "abelian"
    } else {
        "non-abelian"
    }
    .into())
}

fn classify_circle(report: &mut Report, group: &str) -> Result<(), CliError> {
    let g = load_group(group)?.build()?;
    let (autg, homs) = aut_group(&g)?;
    let autg = Arc::new(autg);
    let classes = autg.conjugacy_classes();
    report.fact("group", g.label());
    report.fact("order", g.order());
    report.fact("automorphisms", homs.len());
    report.fact("Aut(G)", describe_group(&autg)?);
    report.fact("isomorphism classes", classes.len());

    let mut table = Table::new(
        "bundles over the circle",
        &[
            "class",
            "size",
            "order",
            "representative",
            "components",
            "unit circle",
        ],
    );
    let mut reps = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        let rep = &homs[class[0]];
        let b = group_bundle_over_circle(g.clone(), rep)?;
        table.push(vec![
            (i + 1).to_string(),
            class.len().to_string(),
            autg.element_order(class[0]).to_string(),
            list(rep.image()),
            total_components(&b).to_string(),
            yes_no(unit_component_is_circle(&b)?).to_string(),
        ]);
        // every member of the class glues an isomorphic bundle
        for &m in class {
            let other = group_bundle_over_circle(g.clone(), &homs[m])?;
            tally(report, bundle_isomorphic(&b, &other)?);
        }
        reps.push(b);
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            tally(report, !bundle_isomorphic(a, b)?);
        }
    }
    report.tables.push(table);
    finish(report);
    Ok(())
}

fn tally(report: &mut Report, ok: bool) {
    if ok {
        report.passed += 1;
    } else {
        report.failed += 1;
    }
}

fn finish(report: &mut Report) {
    if report.failed > 0 {
        report.exit_status = 1;
    }
}

fn bundle_facts(report: &mut Report, b: &FlatBundle) {
    report.fact("mode", b.mode().name());
    if let BundleMode::Group(g) = b.mode() {
        report.fact("group", g.label());
    } else {
        report.fact(
            "acting group",
            format!(
                "{} (order {})",
                b.fiber().group().label(),
                b.fiber().group().order()
            ),
        );
    }
    report.fact("fiber points", b.fiber().size());
    report.fact("fiber orbits", b.fiber().orbit_count());
    report.fact("loops", b.loops());
}

fn components(report: &mut Report, b: &FlatBundle) -> Result<(), CliError> {
    bundle_facts(report, b);
    let parts = component_partition(b);
    report.fact("components", parts.len());
    if let BundleMode::Group(_) = b.mode() {
        report.fact(
            "unit component is a circle",
            yes_no(unit_component_is_circle(b)?),
        );
    }
    let mut table = Table::new("components", &["component", "points", "members"]);
    for (i, p) in parts.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), p.len().to_string(), list(p)]);
    }
    report.tables.push(table);
    Ok(())
}

fn frame_bundle_cmd(
    report: &mut Report,
    b: &FlatBundle,
    list_frames: bool,
) -> Result<(), CliError> {
    bundle_facts(report, b);
    let fb = frame_bundle(b)?;
    report.fact("canonical frame", canonical_frame(b.fiber()));
    report.fact("frames", fb.frames.len());
    report.fact("wreath order", fb.wreath.elements.len());
    let parts = component_partition(&fb.bundle);
    report.fact("frame bundle components", parts.len());

    let mut table = Table::new(
        "clutching relative to the canonical frame",
        &["loop", "wreath element"],
    );
    for (i, w) in canonical_clutching_wreath(b)?.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), w.to_string()]);
    }
    report.tables.push(table);

    let mut comps = Table::new("frame bundle components", &["component", "frames"]);
    for (i, p) in parts.iter().enumerate() {
        comps.push(vec![(i + 1).to_string(), p.len().to_string()]);
    }
    report.tables.push(comps);

    if list_frames {
        let mut component_of = vec![0; fb.frames.len()];
        for (i, p) in parts.iter().enumerate() {
            for &f in p {
                component_of[f] = i + 1;
            }
        }
        let mut order: Vec<usize> = (0..fb.frames.len()).collect();
        order.sort_by(|&a, &b| fb.frames.frame(a).cmp(fb.frames.frame(b)));
        let mut frames = Table::new("frames", &["frame", "component"]);
        for i in order {
            frames.push(vec![
                fb.frames.frame(i).to_string(),
                component_of[i].to_string(),
            ]);
        }
        report.tables.push(frames);
    }
    Ok(())
}

fn holonomy_cmd(report: &mut Report, b: &FlatBundle, word: &str) -> Result<(), CliError> {
    let w: LoopWord = word.parse()?;
    let h = holonomy(b, &w)?;
    bundle_facts(report, b);
    report.fact(
        "word",
        if w.is_empty() {
            "(empty)".to_string()
        } else {
            w.to_string()
        },
    );
    report.fact("identity", yes_no(h.is_identity()));
    let as_bundle = FlatBundle::new(b.fiber().clone(), vec![h.clone()])?;
    let frame = canonical_frame(b.fiber());
    let coords = clutching_wreath(&as_bundle, &frame)?;
    report.fact("wreath element", &coords[0]);
    report.fact("orbit permutation", cq(&h));
    let mut table = Table::new("holonomy", &["point", "image"]);
    for (p, v) in h.values().iter().enumerate() {
        table.push(vec![p.to_string(), v.to_string()]);
    }
    report.tables.push(table);
    Ok(())
}

fn sn_action(report: &mut Report, b: &FlatBundle) -> Result<(), CliError> {
    bundle_facts(report, b);
    let n = b.fiber().size();
    let sn = make_symmetric(n)?;
    match sn_action_on_bundle(b, &sn)? {
        SnActionOutcome::Action { .. } => {
            report.fact(
                "result",
                format!("S{n} acts on every fiber, commuting with all clutching maps"),
            );
        }
        SnActionOutcome::Obstruction {
            loop_index,
            clutching,
        } => {
            report.fact("result", "obstruction");
            report.fact("obstructing loop", loop_index);
            report.fact("clutching", &clutching);
            report.fact(
                "reason",
                format!(
                    "{clutching} is not the identity, and only the identity commutes with S{n}"
                ),
            );
            report.exit_status = 1;
        }
    }
    Ok(())
}

fn decompose(report: &mut Report, b: &FlatBundle) -> Result<(), CliError> {
    bundle_facts(report, b);
    let q = quotient_bundle(b)?;
    let count = map_fiber_count(&quotient_map(b)?)?;
    report.fact("covering sheets", q.fiber().size());
    report.fact("points over each sheet", count);
    report.fact("covering components", total_components(&q));
    report.fact("bundle components", total_components(b));
    let mut table = Table::new("covering clutching", &["loop", "orbit permutation"]);
    for (i, (orig, quot)) in b.clutching().iter().zip(q.clutching()).enumerate() {
        let perm = cq(orig);
        tally(report, quot.values() == perm.images());
        table.push(vec![(i + 1).to_string(), perm.to_string()]);
    }
    tally(report, count == b.fiber().group().order());
    report.tables.push(table);
    finish(report);
    Ok(())
}

fn u1_facts(report: &mut Report, b: &U1FlatBundle) {
    report.fact("sheets", b.k);
    report.fact("loops", b.loops());
}

fn u1_holonomy(report: &mut Report, b: &U1FlatBundle, word: &str) -> Result<(), CliError> {
    let w: LoopWord = word.parse()?;
    let h = holonomy_u1(b, &w)?;
    u1_facts(report, b);
    report.fact(
        "word",
        if w.is_empty() {
            "(empty)".to_string()
        } else {
            w.to_string()
        },
    );
    report.fact("holonomy", &h);
    tally(report, frame_holonomy(b, &w)? == h);
    let mut table = Table::new("action on sheets", &["sheet", "rotation", "target sheet"]);
    for x in 0..b.k {
        let target = h.sigma.apply(x);
        table.push(vec![
            x.to_string(),
            h.angles[target].to_string(),
            target.to_string(),
        ]);
    }
    report.tables.push(table);
    finish(report);
    Ok(())
}

fn u1_transport(
    report: &mut Report,
    b: &U1FlatBundle,
    word: &str,
    start: &str,
) -> Result<(), CliError> {
    let w: LoopWord = word.parse()?;
    let p: FiberPoint = start.parse()?;
    if p.slot >= b.k {
        return Err(CliError::Usage(format!(
            "sheet {} out of range for {} sheets",
            p.slot, b.k
        )));
    }
    u1_facts(report, b);
    report.fact(
        "word",
        if w.is_empty() {
            "(empty)".to_string()
        } else {
            w.to_string()
        },
    );
    report.fact("start", p);
    report.fact("end", transport(b, &w, p)?);
    Ok(())
}

fn pushforward_cmd(report: &mut Report, b: &U1FlatBundle, q: i64) -> Result<(), CliError> {
    let pushed = pushforward(b, q);
    u1_facts(report, b);
    report.fact("power", q);
    report.fact("equals original", yes_no(pushed == *b));
    let mut table = Table::new("generators", &["loop", "angles", "perm"]);
    for (i, g) in pushed.generators.iter().enumerate() {
        table.push(vec![
            (i + 1).to_string(),
            list(&g.angles),
            list(g.sigma.images()),
        ]);
    }
    report.tables.push(table);
    Ok(())
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("bad rational {s:?}")))
}

fn division_check(
    report: &mut Report,
    b: &U1FlatBundle,
    path: &str,
    step: &str,
) -> Result<(), CliError> {
    let samples = path
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<FiberPoint>())
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = samples.iter().find(|p| p.slot >= b.k) {
        return Err(CliError::Usage(format!(
            "sheet {} out of range for {} sheets",
            p.slot, b.k
        )));
    }
    let step = parse_rational(step)?;
    let r = division_form_check(&samples, step)?;
    u1_facts(report, b);
    report.fact("sheet", r.sheet);
    report.fact("step", step);
    report.fact(
        "uniform rate",
        r.uniform_rate
            .map_or_else(|| "none".to_string(), |x| x.to_string()),
    );
    let mut table = Table::new("forward differences", &["interval", "rate"]);
    for (i, rate) in r.rates.iter().enumerate() {
        table.push(vec![format!("{i}..{}", i + 1), rate.to_string()]);
    }
    report.tables.push(table);
    Ok(())
}

fn verify(report: &mut Report, suite: Suite, opts: &VerifyOptions) -> Result<(), CliError> {
    let r = run_suite(suite, opts)?;
    report.fact("suite", &r.suite);
    report.fact("seed", r.seed);
    report.fact("checks", r.total_checks());
    report.fact("failures", r.total_failures());
    report.fact("result", if r.passed() { "pass" } else { "FAIL" });
    let mut table = Table::new(
        "results",
        &["fixture", "property", "checks", "failures", "status"],
    );
    for row in &r.rows {
        table.push(vec![
            row.fixture.clone(),
            row.property.clone(),
            row.checks.to_string(),
            row.failures.to_string(),
            if row.passed() { "pass" } else { "FAIL" }.to_string(),
        ]);
        tally(report, row.passed());
    }
    report.tables.push(table);
    let failures: Vec<String> = r
        .rows
        .iter()
        .filter_map(|row| {
            row.first_failure
                .as_ref()
                .map(|f| format!("{} / {}: {f}", row.fixture, row.property))
        })
        .collect();
    if !failures.is_empty() {
        let mut t = Table::new("first failures", &["case"]);
        for f in failures {
            t.push(vec![f]);
        }
        report.tables.push(t);
    }
    finish(report);
    Ok(())
}
