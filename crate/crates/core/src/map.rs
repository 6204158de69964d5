//! Maps between digital images: continuity, injectivity/surjectivity,
//! isomorphism, restrictions, and induced subimages.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::image::{Adjacency, DigitalImage, Point};

/// A total map between two digital images, stored extensionally so that
/// arbitrary counterexample maps are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalMap {
    source: DigitalImage,
    target: DigitalImage,
    // assignment[i] = target index of the image of source point i.
    assignment: Vec<usize>,
}

impl DigitalMap {
    /// Builds a map from explicit point pairs; every source point must be
    /// assigned exactly once and every value must lie in the target.
    pub fn new(source: DigitalImage, target: DigitalImage, pairs: &[(Point, Point)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x)?;
            let j = target.index_of(y)?;
            if assignment[i] != usize::MAX {
                return Err(Error::InvalidMap(format!("{x} is assigned twice")));
            }
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "{} has no assigned value",
                source.point(i)
            )));
        }
        Ok(DigitalMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from an index-based assignment over canonical orders.
    pub fn from_indices(source: DigitalImage, target: DigitalImage, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "assignment covers {} of {} source points",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&j) = assignment.iter().find(|&&j| j >= target.len()) {
            return Err(Error::InvalidMap(format!("target index {j} out of range")));
        }
        Ok(DigitalMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map by evaluating a function on every source point.
    pub fn from_fn(
        source: DigitalImage,
        target: DigitalImage,
        f: impl Fn(&Point) -> Point,
    ) -> Result<Self> {
        let mut assignment = Vec::with_capacity(source.len());
        for p in source.points() {
            assignment.push(target.index_of(&f(p))?);
        }
        Ok(DigitalMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(image: DigitalImage) -> Self {
        let assignment = (0..image.len()).collect();
        DigitalMap {
            source: image.clone(),
            target: image,
            assignment,
        }
    }

    pub fn source(&self) -> &DigitalImage {
        &self.source
    }

    pub fn target(&self) -> &DigitalImage {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn apply(&self, x: &Point) -> Result<&Point> {
        let i = self.source.index_of(x)?;
        Ok(self.target.point(self.assignment[i]))
    }

    /// All source indices mapping onto the given target index, ascending.
    pub fn fiber_idx(&self, target_idx: usize) -> Vec<usize> {
        (0..self.source.len())
            .filter(|&i| self.assignment[i] == target_idx)
            .collect()
    }

    /// Source indices of `p^{-1}(N(b))`, where `N(b)` is the closed
    /// neighborhood of a target point under the target adjacency.
    pub fn preimage_of_closed_hood(&self, b: usize) -> BTreeSet<usize> {
        let hood: BTreeSet<usize> = self.target.neighborhood_closed_idx(b).into_iter().collect();
        (0..self.source.len())
            .filter(|&i| hood.contains(&self.assignment[i]))
            .collect()
    }

    /// The first adjacent source pair whose images are neither equal nor
    /// adjacent, if the map is not continuous.
    pub fn continuity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.source.len() {
            for &j in self.source.neighbor_indices(i) {
                if j > i && !self.target.adjeq_idx(self.assignment[i], self.assignment[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Adjacent points land on equal-or-adjacent points.
    pub fn is_continuous(&self) -> bool {
        self.continuity_violation().is_none()
    }

    /// The first target index with an empty fiber, if any.
    pub fn surjectivity_gap(&self) -> Option<usize> {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.assignment {
            hit[j] = true;
        }
        hit.iter().position(|&h| !h)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjectivity_gap().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &j in &self.assignment {
            if hit[j] {
                return false;
            }
            hit[j] = true;
        }
        true
    }

    /// A bijection preserving adjacency in both directions. For bijections
    /// this coincides with "continuous with continuous inverse".
    pub fn is_isomorphism(&self) -> bool {
        if self.source.len() != self.target.len() || !self.is_injective() {
            return false;
        }
        for i in 0..self.source.len() {
            for j in (i + 1)..self.source.len() {
                if self.source.adjacent_idx(i, j)
                    != self.target.adjacent_idx(self.assignment[i], self.assignment[j])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Composition `other . self` for `self: X -> Y`, `other: Y -> Z`.
    pub fn compose(&self, other: &DigitalMap) -> Result<DigitalMap> {
        if self.target != *other.source() {
            return Err(Error::InvalidMap(
                "composition requires matching middle image".into(),
            ));
        }
        let assignment = self.assignment.iter().map(|&j| other.assignment[j]).collect();
        DigitalMap::from_indices(self.source.clone(), other.target.clone(), assignment)
    }

    /// The image of a source subset, as a set of target points.
    pub fn image_of(&self, subset: &BTreeSet<Point>) -> Result<BTreeSet<Point>> {
        let mut out = BTreeSet::new();
        for p in subset {
            out.insert(self.apply(p)?.clone());
        }
        Ok(out)
    }
}

/// An induced subimage: a subset of a parent image with the parent adjacency
/// restricted to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubImage {
    image: DigitalImage,
    parent_indices: Vec<usize>,
}

impl SubImage {
    pub fn image(&self) -> &DigitalImage {
        &self.image
    }

    pub fn into_image(self) -> DigitalImage {
        self.image
    }

    /// Indices of the chosen points in the parent's canonical order.
    pub fn parent_indices(&self) -> &[usize] {
        &self.parent_indices
    }
}

/// The subimage induced on a nonempty subset of an image's points.
pub fn sub_image(parent: &DigitalImage, subset: &BTreeSet<Point>) -> Result<SubImage> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut parent_indices = Vec::with_capacity(subset.len());
    for p in subset {
        parent_indices.push(parent.index_of(p)?);
    }
    parent_indices.sort_unstable();
    let points: Vec<Point> = parent_indices.iter().map(|&i| parent.point(i).clone()).collect();
    let image = match parent.adjacency() {
        Adjacency::Cu(u) => DigitalImage::with_cu(parent.dim(), points, *u)?,
        Adjacency::Explicit(edges) => {
            let edge_points: Vec<(Point, Point)> = edges
                .iter()
                .filter(|(i, j)| parent_indices.binary_search(i).is_ok() && parent_indices.binary_search(j).is_ok())
                .map(|&(i, j)| (parent.point(i).clone(), parent.point(j).clone()))
                .collect();
            DigitalImage::with_explicit(parent.dim(), points, edge_points)?
        }
    };
    let labels: Vec<(Point, String)> = parent_indices
        .iter()
        .filter_map(|&i| parent.label(i).map(|l| (parent.point(i).clone(), l.to_string())))
        .collect();
    let boundary: Vec<Point> = parent_indices
        .iter()
        .filter(|&&i| parent.is_boundary(i))
        .map(|&i| parent.point(i).clone())
        .collect();
    let image = image.with_labels(&labels)?.with_boundary(&boundary)?;
    Ok(SubImage {
        image,
        parent_indices,
    })
}

/// Restricts a map to a source subset; the codomain becomes the induced
/// image of the subset. Callers needing a larger codomain use [`restrict_to`].
pub fn restrict(f: &DigitalMap, subset: &BTreeSet<Point>) -> Result<DigitalMap> {
    let image = f.image_of(subset)?;
    restrict_to(f, subset, &image)
}

/// Restricts a map to a source subset with an explicitly chosen codomain,
/// which must contain the image of the subset.
pub fn restrict_to(
    f: &DigitalMap,
    subset: &BTreeSet<Point>,
    codomain: &BTreeSet<Point>,
) -> Result<DigitalMap> {
    let src = sub_image(f.source(), subset)?.into_image();
    let tgt = sub_image(f.target(), codomain)?.into_image();
    let mut assignment = Vec::with_capacity(src.len());
    for p in src.points() {
        let y = f.apply(p)?;
        assignment.push(tgt.index_of(y).map_err(|_| {
            Error::InvalidMap(format!("image point {y} lies outside the chosen codomain"))
        })?);
    }
    DigitalMap::from_indices(src, tgt, assignment)
}

/// Whether some bijection between the two images preserves adjacency in both
/// directions. Instances here are radius-1 neighborhoods or desk-scale
/// images, so backtracking with a degree pre-check is exhaustive and cheap.
pub fn graphs_isomorphic(a: &DigitalImage, b: &DigitalImage) -> bool {
    find_graph_isomorphism(a, b).is_some()
}

/// See [`graphs_isomorphic`].
pub fn subgraphs_isomorphic(a: &SubImage, b: &SubImage) -> bool {
    graphs_isomorphic(a.image(), b.image())
}

/// The first adjacency-preserving bijection `a -> b` in canonical candidate
/// order, as target indices per source index.
pub fn find_graph_isomorphism(a: &DigitalImage, b: &DigitalImage) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let deg = |img: &DigitalImage, i: usize| img.neighbor_indices(i).len();
    let mut deg_a: Vec<usize> = (0..n).map(|i| deg(a, i)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|i| deg(b, i)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return None;
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, 0, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

fn assign(a: &DigitalImage, b: &DigitalImage, i: usize, mapping: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.len() {
        return true;
    }
    for cand in 0..b.len() {
        if used[cand] || a.neighbor_indices(i).len() != b.neighbor_indices(cand).len() {
            continue;
        }
        let consistent = (0..i).all(|prev| {
            a.adjacent_idx(prev, i) == b.adjacent_idx(mapping[prev], cand)
        });
        if consistent {
            mapping[i] = cand;
            used[cand] = true;
            if assign(a, b, i + 1, mapping, used) {
                return true;
            }
            mapping[i] = usize::MAX;
            used[cand] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{gen_cycle, gen_interval, pt1, pt2};

    fn window_map_4_3() -> DigitalMap {
        let src = crate::image::gen_window(3, 4).unwrap();
        let tgt = gen_cycle(4).unwrap();
        DigitalMap::from_fn(src, tgt, |p| pt1(p.coords()[0].rem_euclid(4))).unwrap()
    }

    #[test]
    fn continuity() {
        let c4 = gen_cycle(4).unwrap();
        let konst = DigitalMap::from_fn(gen_interval(0, 5).unwrap(), c4.clone(), |_| pt1(0)).unwrap();
        assert!(konst.is_continuous());

        assert!(window_map_4_3().is_continuous());

        let jump = DigitalMap::new(
            gen_interval(0, 1).unwrap(),
            gen_interval(0, 3).unwrap(),
            &[(pt1(0), pt1(0)), (pt1(1), pt1(3))],
        )
        .unwrap();
        assert!(!jump.is_continuous());
        assert_eq!(jump.continuity_violation(), Some((0, 1)));
    }

    #[test]
    fn surjective_injective() {
        let c4 = gen_cycle(4).unwrap();
        let id = DigitalMap::identity(c4.clone());
        assert!(id.is_surjective() && id.is_injective());

        let wrap = window_map_4_3();
        assert!(wrap.is_surjective());
        assert!(!wrap.is_injective());

        let incl = DigitalMap::from_fn(
            gen_interval(0, 1).unwrap(),
            gen_interval(0, 3).unwrap(),
            |p| p.clone(),
        )
        .unwrap();
        assert!(incl.is_injective());
        assert!(!incl.is_surjective());
        assert_eq!(incl.surjectivity_gap(), Some(2));
    }

    #[test]
    fn isomorphisms() {
        let c5 = gen_cycle(5).unwrap();
        assert!(DigitalMap::identity(c5.clone()).is_isomorphism());

        let rot = DigitalMap::from_fn(c5.clone(), c5.clone(), |p| {
            pt1((p.coords()[0] + 1).rem_euclid(5))
        })
        .unwrap();
        assert!(rot.is_isomorphism());

        // Bijection onto pairwise non-adjacent targets: inverse continuity fails.
        let spread = DigitalMap::new(
            gen_interval(0, 2).unwrap(),
            DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(1, 1), pt2(2, 0)], 1).unwrap(),
            &[(pt1(0), pt2(0, 0)), (pt1(1), pt2(1, 1)), (pt1(2), pt2(2, 0))],
        )
        .unwrap();
        assert!(!spread.is_isomorphism());
    }

    #[test]
    fn map_validation() {
        let src = gen_interval(0, 1).unwrap();
        let tgt = gen_interval(0, 1).unwrap();
        assert!(DigitalMap::new(src.clone(), tgt.clone(), &[(pt1(0), pt1(0))]).is_err());
        assert!(DigitalMap::new(
            src.clone(),
            tgt.clone(),
            &[(pt1(0), pt1(0)), (pt1(0), pt1(1)), (pt1(1), pt1(0))]
        )
        .is_err());
        assert!(DigitalMap::from_indices(src, tgt, vec![0, 7]).is_err());
    }

    #[test]
    fn induced_subimages() {
        let c5 = gen_cycle(5).unwrap();
        let hood = c5.neighborhood_closed(&pt1(0)).unwrap();
        let sub = sub_image(&c5, &hood).unwrap();
        assert_eq!(sub.image().len(), 3);
        // c4 - c0 - c1 is a 3-point path.
        assert!(sub.image().adjacent(&pt1(4), &pt1(0)).unwrap());
        assert!(sub.image().adjacent(&pt1(0), &pt1(1)).unwrap());
        assert!(!sub.image().adjacent(&pt1(1), &pt1(4)).unwrap());
        assert_eq!(sub.image().label(0), Some("c0"));

        let whole = sub_image(&c5, &c5.points().iter().cloned().collect()).unwrap();
        assert_eq!(whole.image(), &c5.clone());

        let gaps = sub_image(&c5, &BTreeSet::from([pt1(0), pt1(2)])).unwrap();
        assert!(!gaps.image().adjacent(&pt1(0), &pt1(2)).unwrap());

        assert_eq!(sub_image(&c5, &BTreeSet::new()), Err(Error::EmptySubset));
    }

    #[test]
    fn restriction() {
        let p = window_map_4_3();
        let hood = p.source().neighborhood_closed(&pt1(4)).unwrap();
        let r = restrict(&p, &hood).unwrap();
        assert_eq!(r.source().len(), 3);
        assert_eq!(r.target().len(), 3);
        assert_eq!(r.apply(&pt1(3)).unwrap(), &pt1(3));
        assert_eq!(r.apply(&pt1(4)).unwrap(), &pt1(0));
        assert_eq!(r.apply(&pt1(5)).unwrap(), &pt1(1));

        let id = DigitalMap::identity(gen_interval(0, 3).unwrap());
        let hood = id.source().neighborhood_closed(&pt1(1)).unwrap();
        let r = restrict(&id, &hood).unwrap();
        assert!(r.is_isomorphism());

        let single = restrict(&p, &BTreeSet::from([pt1(7)])).unwrap();
        assert_eq!(single.source().len(), 1);

        // restrict_to rejects codomains missing image points.
        let hood = p.source().neighborhood_closed(&pt1(4)).unwrap();
        assert!(restrict_to(&p, &hood, &BTreeSet::from([pt1(0)])).is_err());
    }

    #[test]
    fn small_isomorphism_search() {
        let path_a = gen_interval(0, 2).unwrap();
        let path_b = gen_interval(5, 7).unwrap();
        assert!(graphs_isomorphic(&path_a, &path_b));

        let triangle = DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(1, 0), pt2(1, 1)], 2).unwrap();
        assert!(!graphs_isomorphic(&path_a, &triangle));

        let c5 = gen_cycle(5).unwrap();
        let n0 = sub_image(&c5, &c5.neighborhood_closed(&pt1(0)).unwrap()).unwrap();
        let n2 = sub_image(&c5, &c5.neighborhood_closed(&pt1(2)).unwrap()).unwrap();
        assert!(subgraphs_isomorphic(&n0, &n2));
    }

    #[test]
    fn cycle_representations_agree() {
        for n in [8, 10, 12] {
            let abstract_cycle = gen_cycle(n).unwrap();
            let rect = crate::image::gen_cycle_rect(n).unwrap();
            assert!(graphs_isomorphic(&abstract_cycle, &rect), "n={n}");
        }
    }
}
