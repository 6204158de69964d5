//! Instance generation and the equivalence harness: enumerate or sample
//! continuous surjections, evaluate every classifier on each, and flag any
//! instance violating the relations that are provable for this class of
//! maps (covering <=> local iso <=> decomposition-with-WL-sheets <=>
//! WL-iso with unique path lifting; local iso => PL iso; covering =>
//! pseudocovering).

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{
    check_covering, check_han_pseudocover, check_local_iso, check_pak_pseudocover, check_pl_iso,
    check_wl_iso, verify_witness, ClassVerdict,
};
use crate::image::{gen_interval, pt1, pt2, DigitalImage, Point};
use crate::io::{map_to_file, MapFile};
use crate::lift::{check_unique_path_lifting, default_l_max, enumerate_lifts, UlpReport};
use crate::map::{graphs_isomorphic, DigitalMap};

/// Exhaustive enumeration is capped at this many points per image; larger
/// instances are covered by the sampled mode.
pub const EXHAUSTIVE_POINT_CAP: usize = 5;

/// All connected graphs on `1..=max_points` vertices up to isomorphism,
/// realized as explicit-adjacency images on abstract integer points. The
/// representative of each class is the one with the smallest edge mask.
pub fn connected_catalog_explicit(max_points: usize) -> Vec<DigitalImage> {
    let mut catalog = Vec::new();
    for n in 1..=max_points {
        let pairs: Vec<[usize; 2]> = (0..n).array_combinations().collect();
        let mut reps: Vec<DigitalImage> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(Point, Point)> = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &[i, j])| (pt1(i as i64), pt1(j as i64)))
                .collect();
            let points: Vec<Point> = (0..n as i64).map(pt1).collect();
            let image = DigitalImage::with_explicit(1, points, edges).expect("valid by construction");
            if !image.is_connected() {
                continue;
            }
            if !reps.iter().any(|r| graphs_isomorphic(r, &image)) {
                reps.push(image);
            }
        }
        catalog.extend(reps);
    }
    catalog
}

/// Lattice-embedded images under `c_u` adjacencies, up to 4 points. Together
/// they realize every connected graph on at most 4 vertices, so the harness
/// exercises both adjacency representations.
pub fn connected_catalog_cu(max_points: usize) -> Vec<DigitalImage> {
    let mut catalog: Vec<DigitalImage> = Vec::new();
    let mut push = |img: DigitalImage| {
        if img.len() <= max_points {
            catalog.push(img);
        }
    };
    for b in 0..4.min(max_points as i64) {
        push(gen_interval(0, b).expect("interval"));
    }
    let square = vec![pt2(0, 0), pt2(0, 1), pt2(1, 0), pt2(1, 1)];
    push(DigitalImage::with_cu(2, square.clone(), 1).expect("4-cycle"));
    push(DigitalImage::with_cu(2, square, 2).expect("complete"));
    push(DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1)], 2).expect("triangle"));
    push(
        DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(-1, 0), pt2(1, 0), pt2(0, 1)], 1)
            .expect("star"),
    );
    push(
        DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1), pt2(2, 2)], 2)
            .expect("triangle with a tail"),
    );
    push(
        DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(1, 0), pt2(2, 0), pt2(1, 1)], 2)
            .expect("diamond"),
    );
    catalog
}

/// The exhaustive harness instance images: both representations side by side.
pub fn harness_images(max_points: usize) -> Vec<DigitalImage> {
    let mut images = connected_catalog_explicit(max_points);
    images.extend(connected_catalog_cu(max_points));
    images
}

/// Every continuous surjection from `x` onto `y`, in lexicographic order of
/// the index assignment.
pub fn enumerate_continuous_surjections(x: &DigitalImage, y: &DigitalImage) -> Vec<DigitalMap> {
    let mut out = Vec::new();
    if x.len() < y.len() {
        return out;
    }
    let mut assignment = vec![usize::MAX; x.len()];
    let mut hits = vec![0usize; y.len()];
    let unhit = y.len();
    surjection_backtrack(x, y, 0, &mut assignment, &mut hits, unhit, &mut out);
    out
}

fn surjection_backtrack(
    x: &DigitalImage,
    y: &DigitalImage,
    i: usize,
    assignment: &mut Vec<usize>,
    hits: &mut Vec<usize>,
    unhit: usize,
    out: &mut Vec<DigitalMap>,
) {
    if x.len() - i < unhit {
        return; // too few points left to cover the target
    }
    if i == x.len() {
        out.push(
            DigitalMap::from_indices(x.clone(), y.clone(), assignment.clone())
                .expect("assignment is total and in range"),
        );
        return;
    }
    for cand in 0..y.len() {
        let compatible = x
            .neighbor_indices(i)
            .iter()
            .filter(|&&j| j < i)
            .all(|&j| y.adjeq_idx(assignment[j], cand));
        if !compatible {
            continue;
        }
        assignment[i] = cand;
        hits[cand] += 1;
        let next_unhit = if hits[cand] == 1 { unhit - 1 } else { unhit };
        surjection_backtrack(x, y, i + 1, assignment, hits, next_unhit, out);
        hits[cand] -= 1;
        assignment[i] = usize::MAX;
    }
}

/// A connected pseudo-random image with at most `max_points` points,
/// deterministic in the seed. Half the draws are abstract explicit-adjacency
/// graphs (a random spanning tree plus extra edges), half are lattice point
/// clouds under a random `c_u`, retried or rebuilt until connected.
pub fn random_image(max_points: usize, dim: usize, seed: u64) -> DigitalImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_points.max(1));
    if dim >= 2 && rng.random_bool(0.5) {
        // Lattice cloud: distinct points in a small box.
        for _ in 0..24 {
            let u = rng.random_range(1..=dim);
            let side = rng.random_range(2..=3) as i64;
            let mut points: Vec<Point> = Vec::new();
            let mut guard = 0;
            while points.len() < n && guard < 200 {
                guard += 1;
                let p = Point::new((0..dim).map(|_| rng.random_range(0..side)).collect());
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            if points.len() == n {
                let image = DigitalImage::with_cu(dim, points, u).expect("distinct points");
                if image.is_connected() {
                    return image;
                }
            }
        }
    }
    // Spanning tree plus random chords: connected by construction.
    let points: Vec<Point> = (0..n as i64).map(pt1).collect();
    let mut edges: Vec<(Point, Point)> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        edges.push((pt1(order[k] as i64), pt1(parent as i64)));
    }
    for [i, j] in (0..n).array_combinations() {
        if rng.random_bool(0.25) {
            edges.push((pt1(i as i64), pt1(j as i64)));
        }
    }
    DigitalImage::with_explicit(1, points, edges).expect("valid by construction")
}

const SURJECTION_SEARCH_BUDGET: usize = 100_000;

/// A pseudo-random continuous surjection from `x` onto `y`: randomized greedy
/// assignment with backtracking, `None` when none is found within the search
/// budget (in particular when none exists).
pub fn random_continuous_surjection(
    x: &DigitalImage,
    y: &DigitalImage,
    seed: u64,
) -> Option<DigitalMap> {
    if x.len() < y.len() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.shuffle(&mut rng);
    let mut position = vec![0usize; x.len()];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    let candidate_orders: Vec<Vec<usize>> = (0..x.len())
        .map(|_| {
            let mut cands: Vec<usize> = (0..y.len()).collect();
            cands.shuffle(&mut rng);
            cands
        })
        .collect();

    let mut assignment = vec![usize::MAX; x.len()];
    let mut hits = vec![0usize; y.len()];
    let mut budget = SURJECTION_SEARCH_BUDGET;
    let found = random_backtrack(
        x,
        y,
        0,
        &order,
        &position,
        &candidate_orders,
        &mut assignment,
        &mut hits,
        y.len(),
        &mut budget,
    );
    if !found {
        return None;
    }
    let map = DigitalMap::from_indices(x.clone(), y.clone(), assignment).expect("total");
    debug_assert!(map.is_continuous() && map.is_surjective());
    Some(map)
}

#[allow(clippy::too_many_arguments)]
fn random_backtrack(
    x: &DigitalImage,
    y: &DigitalImage,
    depth: usize,
    order: &[usize],
    position: &[usize],
    candidate_orders: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    hits: &mut Vec<usize>,
    unhit: usize,
    budget: &mut usize,
) -> bool {
    if x.len() - depth < unhit || *budget == 0 {
        return false;
    }
    *budget -= 1;
    if depth == x.len() {
        return true;
    }
    let i = order[depth];
    for &cand in &candidate_orders[depth] {
        let compatible = x
            .neighbor_indices(i)
            .iter()
            .filter(|&&j| position[j] < depth)
            .all(|&j| y.adjeq_idx(assignment[j], cand));
        if !compatible {
            continue;
        }
        assignment[i] = cand;
        hits[cand] += 1;
        let next_unhit = if hits[cand] == 1 { unhit - 1 } else { unhit };
        if random_backtrack(
            x,
            y,
            depth + 1,
            order,
            position,
            candidate_orders,
            assignment,
            hits,
            next_unhit,
            budget,
        ) {
            return true;
        }
        hits[cand] -= 1;
        assignment[i] = usize::MAX;
    }
    false
}

/// An isomorphic relabeling of an image: abstract points permuted by `perm`,
/// returned with the witnessing isomorphism from the original.
pub fn permuted_explicit_copy(image: &DigitalImage, perm: &[usize]) -> (DigitalImage, DigitalMap) {
    assert_eq!(perm.len(), image.len());
    let points: Vec<Point> = (0..image.len() as i64).map(pt1).collect();
    let mut edges = Vec::new();
    for i in 0..image.len() {
        for &j in image.neighbor_indices(i) {
            if j > i {
                edges.push((pt1(perm[i] as i64), pt1(perm[j] as i64)));
            }
        }
    }
    let copy = DigitalImage::with_explicit(1, points, edges).expect("permuted copy");
    let pairs: Vec<(Point, Point)> = (0..image.len())
        .map(|i| (image.point(i).clone(), pt1(perm[i] as i64)))
        .collect();
    let iso = DigitalMap::new(image.clone(), copy.clone(), &pairs).expect("bijective relabeling");
    (copy, iso)
}

/// All classifier verdicts plus the bounded lifting report for one map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceEvaluation {
    pub covering: ClassVerdict,
    pub local_iso: ClassVerdict,
    pub pl_iso: ClassVerdict,
    pub wl_iso: ClassVerdict,
    pub han_pseudo: ClassVerdict,
    pub pak_pseudo: ClassVerdict,
    pub ulp: UlpReport,
}

pub fn evaluate_instance(p: &DigitalMap, l_max: usize) -> InstanceEvaluation {
    InstanceEvaluation {
        covering: check_covering(p),
        local_iso: check_local_iso(p),
        pl_iso: check_pl_iso(p),
        wl_iso: check_wl_iso(p),
        han_pseudo: check_han_pseudocover(p),
        pak_pseudo: check_pak_pseudocover(p, false),
        ulp: check_unique_path_lifting(p, l_max),
    }
}

/// Relations that must hold for a continuous surjection. Returns a label per
/// violated relation; an empty vector is full agreement. Failure witnesses
/// are replayed here as well, so a non-reproducing witness counts as a
/// divergence.
pub fn relation_violations(p: &DigitalMap, eval: &InstanceEvaluation) -> Vec<String> {
    let mut violated = Vec::new();
    let covering = eval.covering.holds;
    if covering != eval.local_iso.holds {
        violated.push("covering<->local-iso".to_string());
    }
    if covering != eval.han_pseudo.holds {
        violated.push("covering<->han-pseudo".to_string());
    }
    if covering != (eval.wl_iso.holds && eval.ulp.holds.is_true()) {
        violated.push("covering<->wl-iso+ulp".to_string());
    }
    if eval.local_iso.holds && !eval.pl_iso.holds {
        violated.push("local-iso=>pl-iso".to_string());
    }
    if covering && !eval.pak_pseudo.holds {
        violated.push("covering=>pak-pseudo".to_string());
    }
    if covering && !eval.wl_iso.holds {
        violated.push("covering=>wl-iso".to_string());
    }
    for verdict in [
        &eval.covering,
        &eval.local_iso,
        &eval.pl_iso,
        &eval.wl_iso,
        &eval.han_pseudo,
        &eval.pak_pseudo,
    ] {
        if let Err(msg) = verify_witness(p, verdict) {
            violated.push(format!("replay:{msg}"));
        }
    }
    if let Some(ce) = &eval.ulp.counterexample {
        let base: Vec<Point> = ce
            .base_path
            .iter()
            .map(|&i| p.target().point(i).clone())
            .collect();
        let replayed = enumerate_lifts(p, &base, p.source().point(ce.start))
            .map(|lifts| lifts.len())
            .unwrap_or(usize::MAX);
        if replayed != ce.lift_count || replayed == 1 {
            violated.push("replay:ulp-counterexample".to_string());
        }
    }
    violated
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub max_points: usize,
    pub samples: usize,
    pub seed: u64,
    /// Run the exhaustive enumeration (capped at [`EXHAUSTIVE_POINT_CAP`]).
    pub exhaustive: bool,
    /// Override for the lifting bound; default is twice the larger image.
    pub l_max: Option<usize>,
}

impl HarnessConfig {
    pub fn exhaustive_up_to(max_points: usize) -> Self {
        HarnessConfig {
            max_points,
            samples: 0,
            seed: 0,
            exhaustive: true,
            l_max: None,
        }
    }

    pub fn sampled(max_points: usize, samples: usize, seed: u64) -> Self {
        HarnessConfig {
            max_points,
            samples,
            seed,
            exhaustive: false,
            l_max: None,
        }
    }
}

/// One instance on which a mandated relation failed, with everything needed
/// to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub map: MapFile,
    pub violated: Vec<String>,
    pub verdicts: InstanceEvaluation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessSummary {
    pub max_points: usize,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive_images: usize,
    pub exhaustive_maps: usize,
    pub sampled_maps: usize,
    pub instances_checked: usize,
    pub agreements: usize,
    pub divergences: Vec<Divergence>,
}

/// Runs the harness: exhaustive continuous surjections between catalog
/// images, then sampled instances, evaluating every classifier and the
/// bounded lifting check on each.
pub fn run_equivalence_harness(config: &HarnessConfig) -> HarnessSummary {
    let mut summary = HarnessSummary {
        max_points: config.max_points,
        samples: config.samples,
        seed: config.seed,
        exhaustive_images: 0,
        exhaustive_maps: 0,
        sampled_maps: 0,
        instances_checked: 0,
        agreements: 0,
        divergences: Vec::new(),
    };

    let consider = |p: &DigitalMap, summary: &mut HarnessSummary| {
        let l_max = config.l_max.unwrap_or_else(|| default_l_max(p));
        let eval = evaluate_instance(p, l_max);
        let violated = relation_violations(p, &eval);
        summary.instances_checked += 1;
        if violated.is_empty() {
            summary.agreements += 1;
        } else {
            summary.divergences.push(Divergence {
                map: map_to_file(p),
                violated,
                verdicts: eval,
            });
        }
    };

    if config.exhaustive {
        let images = harness_images(config.max_points.min(EXHAUSTIVE_POINT_CAP));
        summary.exhaustive_images = images.len();
        for x in &images {
            for y in &images {
                for p in enumerate_continuous_surjections(x, y) {
                    summary.exhaustive_maps += 1;
                    consider(&p, &mut summary);
                }
            }
        }
    }

    for p in sampled_instances(config.max_points, config.samples, config.seed) {
        summary.sampled_maps += 1;
        consider(&p, &mut summary);
    }

    summary
}

/// The deterministic stream of sampled instances the harness evaluates:
/// pseudo-random connected images and a continuous surjection between each
/// pair, all derived from the seed.
pub fn sampled_instances(max_points: usize, samples: usize, seed: u64) -> Vec<DigitalMap> {
    let mut out = Vec::new();
    if samples == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    while out.len() < samples && attempts < samples * 40 {
        attempts += 1;
        let sx = rng.next_u64();
        let sy = rng.next_u64();
        let sm = rng.next_u64();
        let dim_x = if rng.random_bool(0.5) { 1 } else { 2 };
        let dim_y = if rng.random_bool(0.5) { 1 } else { 2 };
        let x = random_image(max_points, dim_x, sx);
        let y = random_image(x.len(), dim_y, sy);
        if let Some(p) = random_continuous_surjection(&x, &y, sm) {
            out.push(p);
        }
    }
    out
}
