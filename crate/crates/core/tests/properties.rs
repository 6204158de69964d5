//! Structural invariants: adjacency axioms, generator guarantees, algebraic
//! relations between the map operations, and determinism of the reports.

use std::collections::BTreeSet;

use digicover::harness::{
    enumerate_continuous_surjections, harness_images, permuted_explicit_copy, random_image,
    run_equivalence_harness, HarnessConfig,
};
use digicover::image::{cu_adjacent, gen_cycle, Adjacency, DigitalImage, Point};
use digicover::lift::{check_unique_path_lifting, default_l_max};
use digicover::map::{graphs_isomorphic, restrict, DigitalMap};
use digicover::suite::{build_doubling_map, build_window_map, check_assertion_3_10};
use digicover::{check, pt1, MorphismClass};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point_pair() -> impl Strategy<Value = (Point, Point)> {
    (1usize..=3).prop_flat_map(|d| {
        let coords = || prop::collection::vec(-2i64..=2, d);
        (coords(), coords()).prop_map(|(a, b)| (Point::new(a), Point::new(b)))
    })
}

proptest! {
    #[test]
    fn cu_is_symmetric_and_irreflexive((x, y) in point_pair()) {
        let d = x.dim();
        for u in 1..=d {
            prop_assert_eq!(cu_adjacent(&x, &y, u).unwrap(), cu_adjacent(&y, &x, u).unwrap());
            prop_assert!(!cu_adjacent(&x, &x, u).unwrap());
        }
    }

    #[test]
    fn cu_nests_upward((x, y) in point_pair()) {
        let d = x.dim();
        for u in 1..d {
            if cu_adjacent(&x, &y, u).unwrap() {
                for bigger in u..=d {
                    prop_assert!(cu_adjacent(&x, &y, bigger).unwrap());
                }
            }
        }
    }

    #[test]
    fn lattice_images_respect_the_neighbor_bound(seed in 0u64..500, d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = rng.random_range(1..=d);
        let mut points: BTreeSet<Point> = BTreeSet::new();
        let n = rng.random_range(1..=6);
        for _ in 0..32 {
            if points.len() == n {
                break;
            }
            points.insert(Point::new((0..d).map(|_| rng.random_range(0..4i64)).collect()));
        }
        let image = DigitalImage::with_cu(d, points.into_iter().collect(), u).unwrap();
        let bound = 3usize.pow(d as u32) - 1;
        for i in 0..image.len() {
            prop_assert!(image.neighbor_indices(i).len() <= bound);
        }
    }
}

#[test]
fn adjacency_is_symmetric_and_irreflexive_on_generated_images() {
    for seed in 0..200u64 {
        let image = random_image(6, 1 + (seed % 2) as usize, seed);
        for i in 0..image.len() {
            assert!(!image.adjacent_idx(i, i));
            for &j in image.neighbor_indices(i) {
                assert!(image.adjacent_idx(j, i));
            }
        }
    }
}

#[test]
fn one_dimensional_c1_is_two_adjacency() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: BTreeSet<i64> = (0..rng.random_range(1..=8)).map(|_| rng.random_range(-6..6)).collect();
        let image = DigitalImage::with_cu(1, points.iter().copied().map(pt1).collect(), 1).unwrap();
        for &z in &points {
            let expected: BTreeSet<Point> = [z - 1, z + 1]
                .into_iter()
                .filter(|w| points.contains(w))
                .map(pt1)
                .collect();
            assert_eq!(image.neighbors_strict(&pt1(z)).unwrap(), expected);
        }
    }
}

#[test]
fn cycles_are_simple_closed_curves() {
    for n in 4..=16 {
        let c = gen_cycle(n).unwrap();
        assert!(c.is_connected());
        assert!(c.is_simple_closed_curve());
        for i in 0..c.len() {
            assert_eq!(c.neighbor_indices(i).len(), 2);
        }
    }
}

#[test]
fn breadth_first_paths_are_paths() {
    for seed in 0..60u64 {
        let image = random_image(7, 1, seed);
        for a in image.points() {
            for b in image.points() {
                let path = image.bfs_path(a, b).unwrap().expect("connected by construction");
                assert!(image.is_path(&path).unwrap());
                assert_eq!(path.first(), Some(a));
                assert_eq!(path.last(), Some(b));
            }
        }
    }
}

fn small_surjections() -> Vec<DigitalMap> {
    let images = harness_images(3);
    let mut maps = Vec::new();
    for x in &images {
        for y in &images {
            maps.extend(enumerate_continuous_surjections(x, y));
        }
    }
    maps
}

#[test]
fn composition_of_continuous_maps_is_continuous() {
    let maps = small_surjections();
    let mut checked = 0;
    for f in &maps {
        for g in &maps {
            if f.target() == g.source() {
                let composed = f.compose(g).unwrap();
                assert!(composed.is_continuous());
                checked += 1;
                if checked > 4000 {
                    return;
                }
            }
        }
    }
}

#[test]
fn isomorphisms_are_continuous_bijections() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for image in harness_images(4) {
        let mut perm: Vec<usize> = (0..image.len()).collect();
        perm.shuffle(&mut rng);
        let (_, iso) = permuted_explicit_copy(&image, &perm);
        assert!(iso.is_isomorphism());
        assert!(iso.is_continuous());
        assert!(iso.is_injective());
        assert!(iso.is_surjective());
        assert!(graphs_isomorphic(iso.source(), iso.target()));
    }
}

#[test]
fn neighborhood_isomorphy_is_an_equivalence_relation() {
    // Canonical representatives plus relabeled copies, mixing explicit and
    // lattice-embedded instances.
    let mut images = harness_images(4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..6 {
        let pick = images[k % images.len()].clone();
        let mut perm: Vec<usize> = (0..pick.len()).collect();
        perm.shuffle(&mut rng);
        images.push(permuted_explicit_copy(&pick, &perm).0);
    }
    for a in &images {
        assert!(graphs_isomorphic(a, a));
    }
    for a in &images {
        for b in &images {
            assert_eq!(graphs_isomorphic(a, b), graphs_isomorphic(b, a));
        }
    }
    for a in &images {
        for b in &images {
            if !graphs_isomorphic(a, b) {
                continue;
            }
            for c in &images {
                assert_eq!(graphs_isomorphic(b, c), graphs_isomorphic(a, c));
            }
        }
    }
}

#[test]
fn restriction_preserves_continuity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in small_surjections().iter().step_by(3) {
        assert!(p.is_continuous());
        for _ in 0..4 {
            let subset: BTreeSet<Point> = p
                .source()
                .points()
                .iter()
                .filter(|_| rng.random_bool(0.6))
                .cloned()
                .collect();
            if subset.is_empty() {
                continue;
            }
            let restricted = restrict(p, &subset).unwrap();
            assert!(restricted.is_continuous());
        }
    }
}

#[test]
fn verdicts_are_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut maps = vec![build_window_map(4, 2).unwrap(), build_doubling_map(4).unwrap()];
    maps.extend(small_surjections().into_iter().step_by(7));

    for p in &maps {
        let mut sigma: Vec<usize> = (0..p.source().len()).collect();
        sigma.shuffle(&mut rng);
        let mut tau: Vec<usize> = (0..p.target().len()).collect();
        tau.shuffle(&mut rng);

        let (_, iso_s) = permuted_explicit_copy(p.source(), &sigma);
        let (_, iso_t) = permuted_explicit_copy(p.target(), &tau);
        let inverse_pairs: Vec<(Point, Point)> = (0..p.source().len())
            .map(|i| (iso_s.apply(p.source().point(i)).unwrap().clone(), p.source().point(i).clone()))
            .collect();
        let iso_s_inv = DigitalMap::new(
            iso_s.target().clone(),
            p.source().clone(),
            &inverse_pairs,
        )
        .unwrap();
        let relabeled = iso_s_inv.compose(p).unwrap().compose(&iso_t).unwrap();

        for kind in MorphismClass::ALL {
            assert_eq!(
                check(kind, p, false).holds,
                check(kind, &relabeled, false).holds,
                "{} changed under relabeling",
                kind.name()
            );
        }
        if p.source().boundary().is_empty() {
            assert_eq!(
                check_unique_path_lifting(p, default_l_max(p)).holds,
                check_unique_path_lifting(&relabeled, default_l_max(&relabeled)).holds
            );
        }
    }
}

#[test]
fn coverings_lift_uniquely() {
    for n in 4..=8 {
        let p = build_doubling_map(n).unwrap();
        let report = check_unique_path_lifting(&p, 2 * p.source().len());
        assert!(report.holds.is_true(), "n={n}");
    }
    for image in harness_images(3) {
        let id = DigitalMap::identity(image);
        assert!(check_unique_path_lifting(&id, 2 * id.source().len()).holds.is_true());
    }
}

#[test]
fn assertion_rows_keep_fiber_hoods_inside_the_preimage() {
    for (n, q) in [(4, 3), (5, 3), (6, 3), (8, 3)] {
        let report = check_assertion_3_10(n, q).unwrap();
        for row in &report.per_b {
            let rhs: BTreeSet<usize> = row.rhs.iter().copied().collect();
            assert!(
                row.lhs.iter().all(|i| rhs.contains(i)),
                "n={n} q={q} b={}",
                row.b
            );
        }
    }
}

#[test]
fn cycle_embeddings_agree_on_classifier_verdicts() {
    // The doubling map rebuilt over the rectangle-perimeter embedding of the
    // target gives the same verdicts as over the abstract cycle.
    let abstract_map = build_doubling_map(4).unwrap();
    let rect = digicover::gen_cycle_rect(8).unwrap();
    let id_like = DigitalMap::identity(rect);
    for kind in MorphismClass::ALL {
        assert!(check(kind, &id_like, false).holds);
    }
    assert!(check(MorphismClass::Covering, &abstract_map, false).holds);
}

#[test]
fn explicit_adjacency_is_canonically_sorted() {
    let c = gen_cycle(6).unwrap();
    match c.adjacency() {
        Adjacency::Explicit(edges) => {
            let mut sorted = edges.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(&sorted, edges);
            assert!(edges.iter().all(|&(i, j)| i < j));
        }
        Adjacency::Cu(_) => panic!("cycles store explicit edges"),
    }
}

#[test]
fn harness_reports_are_deterministic() {
    let config = HarnessConfig::sampled(5, 40, 123);
    let a = run_equivalence_harness(&config);
    let b = run_equivalence_harness(&config);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a.sampled_maps, 40);
    assert!(a.divergences.is_empty());
}
