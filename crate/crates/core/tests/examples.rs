//! Worked examples checked against hand-computed or brute-force values.

use std::sync::Arc;

use semitorsor::aut::GSetAut;
use semitorsor::bundles::{
    bundle_isomorphic, canonical_clutching_wreath, finite_winding_bundle, frame_bundle,
    group_bundle_over_circle, holonomy, sn_action_on_bundle, total_components, FlatBundle,
    LoopWord, SnActionOutcome,
};
use semitorsor::frames::{check_equivalence, enumerate_frames, reconstruct_semitorsor};
use semitorsor::group::{make_cyclic, make_direct_product, make_symmetric, FiniteGroup};
use semitorsor::gset::{standard_semitorsor, GSet};
use semitorsor::hom::automorphisms;

fn z(n: usize) -> Arc<FiniteGroup> {
    Arc::new(make_cyclic(n).unwrap())
}

/// Number of cycles of a permutation given by its image list.
fn cycle_count(image: &[usize]) -> usize {
    let mut seen = vec![false; image.len()];
    let mut cycles = 0;
    for start in 0..image.len() {
        if !seen[start] {
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = image[i];
            }
        }
    }
    cycles
}

/// Orbit count of the group generated by several permutations (union-find).
fn orbit_count(size: usize, gens: &[Vec<usize>]) -> usize {
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut parent: Vec<usize> = (0..size).collect();
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..size).filter(|&i| find(&mut parent, i) == i).count()
}

/// Classes of circle bundles and their component counts, sorted descending.
fn circle_classes(g: &Arc<FiniteGroup>) -> (usize, Vec<usize>) {
    let auts = automorphisms(g).unwrap();
    let bundles: Vec<FlatBundle> = auts
        .iter()
        .map(|a| group_bundle_over_circle(g.clone(), a).unwrap())
        .collect();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..bundles.len() {
        if !reps
            .iter()
            .any(|&r| bundle_isomorphic(&bundles[r], &bundles[i]).unwrap())
        {
            reps.push(i);
        }
    }
    for (a, b) in auts.iter().zip(&bundles) {
        assert_eq!(total_components(b), cycle_count(a.image()));
    }
    let mut comps: Vec<usize> = reps
        .iter()
        .map(|&r| total_components(&bundles[r]))
        .collect();
    comps.sort_unstable_by(|a, b| b.cmp(a));
    (auts.len(), comps)
}

#[test]
fn circle_bundles_over_z3() {
    let (auts, comps) = circle_classes(&z(3));
    assert_eq!(auts, 2);
    assert_eq!(comps, vec![3, 2]);
}

#[test]
fn circle_bundles_over_klein_four() {
    let g = Arc::new(make_direct_product(&z(2), &z(2)).unwrap());
    let (auts, comps) = circle_classes(&g);
    assert_eq!(auts, 6);
    assert_eq!(comps, vec![4, 3, 2]);
}

#[test]
fn winding_frame_bundle_over_z2() {
    let b = finite_winding_bundle(z(2), 2).unwrap();
    let w = canonical_clutching_wreath(&b).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].g, vec![0, 0]);
    assert_eq!(w[0].sigma.to_string(), "(1 2)");

    let fb = frame_bundle(&b).unwrap();
    assert_eq!(fb.frames.len(), 8);
    // brute force: apply the clutching entrywise to every frame
    let lifted: Vec<usize> = fb
        .frames
        .frames()
        .iter()
        .map(|f| {
            let image: Vec<usize> = f
                .entries
                .iter()
                .map(|&p| b.clutching()[0].apply(p))
                .collect();
            fb.frames
                .frames()
                .iter()
                .position(|h| h.entries == image)
                .unwrap()
        })
        .collect();
    assert_eq!(orbit_count(8, &[lifted]), 4);
    assert_eq!(total_components(&fb.bundle), 4);
}

#[test]
fn reconstruction_recovers_z2_times_two_points() {
    let f = Arc::new(standard_semitorsor(z(2), 2).unwrap());
    let fs = enumerate_frames(f.clone()).unwrap();
    assert_eq!(fs.len(), 8);
    for x in 0..2 {
        let r = reconstruct_semitorsor(&fs, x).unwrap();
        assert_eq!(r.gset.size(), 4);
        assert!(r.gset.is_free());
        assert_eq!(r.gset.orbit_count(), 2);
        assert!(r.to_original.is_bijective());
        assert!(r.to_standard.is_bijective());
    }
}

#[test]
fn equivalence_hom_set_sizes() {
    let torsor = Arc::new(GSet::regular(z(2)));
    let r = check_equivalence(&torsor, &torsor).unwrap();
    assert_eq!(
        (r.semitorsor_maps, r.torsor_maps, r.lift_is_bijective),
        (2, 2, true)
    );

    let f = Arc::new(standard_semitorsor(z(2), 2).unwrap());
    let r = check_equivalence(&f, &f).unwrap();
    assert_eq!(
        (r.semitorsor_maps, r.torsor_maps, r.lift_is_bijective),
        (8, 8, true)
    );
}

fn covering(sheets: usize, monodromy: Vec<usize>) -> FlatBundle {
    let fiber = Arc::new(GSet::trivial_action(
        Arc::new(FiniteGroup::trivial()),
        sheets,
    ));
    let psi = GSetAut::from_values(fiber.clone(), monodromy).unwrap();
    FlatBundle::new(fiber, vec![psi]).unwrap()
}

#[test]
fn sn_action_exists_only_on_trivial_coverings() {
    let s3 = make_symmetric(3).unwrap();
    match sn_action_on_bundle(&covering(3, vec![1, 2, 0]), &s3).unwrap() {
        SnActionOutcome::Obstruction { loop_index, .. } => assert_eq!(loop_index, 1),
        other => panic!("expected an obstruction, got {other:?}"),
    }
    assert!(matches!(
        sn_action_on_bundle(&covering(3, vec![0, 1, 2]), &s3).unwrap(),
        SnActionOutcome::Action { .. }
    ));
}

#[test]
fn holonomy_of_a_three_cycle() {
    let b = covering(3, vec![1, 2, 0]);
    let once = holonomy(&b, &LoopWord::new(vec![1]).unwrap()).unwrap();
    let thrice = holonomy(&b, &LoopWord::new(vec![1, 1, 1]).unwrap()).unwrap();
    assert_eq!(once.values(), &[1, 2, 0]);
    assert!(thrice.is_identity());
    assert!(holonomy(&b, &LoopWord::empty()).unwrap().is_identity());
}
