//! Finite digital images: lattice points with a `c_u` or explicit adjacency,
//! neighborhoods, paths, connectivity, and generators for the standard spaces
//! (intervals, cycles, truncation windows).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point in `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for a 1-dimensional point.
pub fn pt1(x: i64) -> Point {
    Point::new(vec![x])
}

/// Shorthand for a 2-dimensional point.
pub fn pt2(x: i64, y: i64) -> Point {
    Point::new(vec![x, y])
}

/// Decides `c_u` adjacency: `x != y`, every coordinate differs by at most 1,
/// and at most `u` coordinates differ at all.
pub fn cu_adjacent(x: &Point, y: &Point, u: usize) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let d = x.dim();
    if u == 0 || u > d {
        return Err(Error::UOutOfRange { u, dim: d });
    }
    let mut changed = 0usize;
    for (a, b) in x.coords().iter().zip(y.coords()) {
        match (a - b).abs() {
            0 => {}
            1 => changed += 1,
            _ => return Ok(false),
        }
    }
    Ok(changed >= 1 && changed <= u)
}

/// The adjacency relation an image carries: a `c_u` rule evaluated on
/// coordinates, or an explicit edge list over the image's points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjacency {
    Cu(usize),
    /// Unordered edges as index pairs `(i, j)` with `i < j` into the
    /// image's canonical point order.
    Explicit(Vec<(usize, usize)>),
}

/// A finite digital image: points of `Z^d` plus an adjacency relation.
///
/// Immutable after construction. Points are held in canonical (lexicographic)
/// order and all witness indices throughout the crate refer to that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalImage {
    dim: usize,
    points: Vec<Point>,
    adjacency: Adjacency,
    labels: Vec<Option<String>>,
    boundary: BTreeSet<usize>,
    // Derived: sorted neighbor indices per point.
    neighbors: Vec<Vec<usize>>,
}

impl DigitalImage {
    /// Builds an image with `c_u` adjacency.
    pub fn with_cu(dim: usize, points: Vec<Point>, u: usize) -> Result<Self> {
        if u == 0 || u > dim {
            return Err(Error::UOutOfRange { u, dim });
        }
        Self::build(dim, points, Adjacency::Cu(u), Vec::new())
    }

    /// Builds an image with an explicit edge list given as point pairs.
    pub fn with_explicit(dim: usize, points: Vec<Point>, edges: Vec<(Point, Point)>) -> Result<Self> {
        Self::build(dim, points, Adjacency::Explicit(Vec::new()), edges)
    }

    fn build(
        dim: usize,
        mut points: Vec<Point>,
        adjacency: Adjacency,
        edge_points: Vec<(Point, Point)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidImage("dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidImage("an image must contain a point".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidImage("duplicate point".into()));
        }

        let index_of = |p: &Point| points.binary_search(p);
        let adjacency = match adjacency {
            Adjacency::Cu(u) => Adjacency::Cu(u),
            Adjacency::Explicit(_) => {
                let mut edges = BTreeSet::new();
                for (a, b) in &edge_points {
                    if a == b {
                        return Err(Error::InvalidImage(format!("self-loop at {a}")));
                    }
                    let i = index_of(a).map_err(|_| Error::PointNotInImage(a.to_string()))?;
                    let j = index_of(b).map_err(|_| Error::PointNotInImage(b.to_string()))?;
                    edges.insert((i.min(j), i.max(j)));
                }
                Adjacency::Explicit(edges.into_iter().collect())
            }
        };

        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        match &adjacency {
            Adjacency::Cu(u) => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        if cu_adjacent(&points[i], &points[j], *u)? {
                            neighbors[i].push(j);
                            neighbors[j].push(i);
                        }
                    }
                }
            }
            Adjacency::Explicit(edges) => {
                for &(i, j) in edges {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        Ok(DigitalImage {
            dim,
            labels: vec![None; n],
            boundary: BTreeSet::new(),
            points,
            adjacency,
            neighbors,
        })
    }

    /// Attaches human-readable labels to the given points.
    pub fn with_labels(mut self, labels: &[(Point, String)]) -> Result<Self> {
        for (p, name) in labels {
            let i = self.index_of(p)?;
            self.labels[i] = Some(name.clone());
        }
        Ok(self)
    }

    /// Marks points as window-boundary artifacts of a truncated image.
    pub fn with_boundary(mut self, pts: &[Point]) -> Result<Self> {
        for p in pts {
            let i = self.index_of(p)?;
            self.boundary.insert(i);
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &Point {
        &self.points[idx]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> Option<&str> {
        self.labels[idx].as_deref()
    }

    /// Formats a point for witnesses: its label when present, its
    /// coordinates otherwise.
    pub fn describe(&self, idx: usize) -> String {
        match self.label(idx) {
            Some(name) => name.to_string(),
            None => self.points[idx].to_string(),
        }
    }

    /// Indices of window-boundary points (empty for non-window images).
    pub fn boundary(&self) -> &BTreeSet<usize> {
        &self.boundary
    }

    pub fn is_boundary(&self, idx: usize) -> bool {
        self.boundary.contains(&idx)
    }

    /// Canonical index of a point.
    pub fn index_of(&self, p: &Point) -> Result<usize> {
        self.points
            .binary_search(p)
            .map_err(|_| Error::PointNotInImage(p.to_string()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Looks a point up by label, falling back to a bare index.
    pub fn resolve(&self, token: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l.as_deref() == Some(token)) {
            return Some(i);
        }
        token.parse::<usize>().ok().filter(|&i| i < self.points.len())
    }

    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        i != j && self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Whether two points of the image are adjacent.
    pub fn adjacent(&self, x: &Point, y: &Point) -> Result<bool> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        Ok(self.adjacent_idx(i, j))
    }

    /// Equal-or-adjacent, the closeness relation of digital continuity.
    pub fn adjeq_idx(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent_idx(i, j)
    }

    pub fn neighbor_indices(&self, idx: usize) -> &[usize] {
        &self.neighbors[idx]
    }

    /// Strict neighborhood: all points adjacent to `x`, never `x` itself.
    pub fn neighbors_strict(&self, x: &Point) -> Result<BTreeSet<Point>> {
        let i = self.index_of(x)?;
        Ok(self.neighbors[i].iter().map(|&j| self.points[j].clone()).collect())
    }

    /// Closed neighborhood `N(x)`: the strict neighbors together with `x`.
    /// This single notion also serves the radius-1 ball `N(x,1)`.
    pub fn neighborhood_closed(&self, x: &Point) -> Result<BTreeSet<Point>> {
        let mut set = self.neighbors_strict(x)?;
        set.insert(x.clone());
        Ok(set)
    }

    /// Closed neighborhood as sorted indices.
    pub fn neighborhood_closed_idx(&self, idx: usize) -> Vec<usize> {
        let mut v = self.neighbors[idx].clone();
        let pos = v.binary_search(&idx).unwrap_err();
        v.insert(pos, idx);
        v
    }

    /// Whether the adjacency graph on the image's points is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.points.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbors[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == n
    }

    /// Whether consecutive entries of the sequence are equal-or-adjacent.
    pub fn is_path(&self, seq: &[Point]) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::InvalidPath("a path holds at least one point".into()));
        }
        let mut idx = Vec::with_capacity(seq.len());
        for p in seq {
            idx.push(self.index_of(p)?);
        }
        Ok(idx.windows(2).all(|w| self.adjeq_idx(w[0], w[1])))
    }

    /// A shortest path between two points by breadth-first search, if any.
    pub fn bfs_path(&self, a: &Point, b: &Point) -> Result<Option<Vec<Point>>> {
        let start = self.index_of(a)?;
        let goal = self.index_of(b)?;
        let mut prev = vec![usize::MAX; self.points.len()];
        prev[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            if i == goal {
                let mut path = vec![goal];
                let mut cur = goal;
                while cur != start {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Ok(Some(path.into_iter().map(|i| self.points[i].clone()).collect()));
            }
            for &j in &self.neighbors[i] {
                if prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        Ok(None)
    }

    /// Whether the image is a simple closed curve: at least 4 points whose
    /// circular order realizes every strict neighborhood as exactly the two
    /// circular neighbors. Equivalently the graph is connected and 2-regular.
    pub fn is_simple_closed_curve(&self) -> bool {
        self.points.len() >= 4
            && self.neighbors.iter().all(|v| v.len() == 2)
            && self.is_connected()
    }
}

/// The digital interval `[a, b]` in `Z` with `c_1` adjacency.
///
/// Points carry their coordinate as a label.
pub fn gen_interval(a: i64, b: i64) -> Result<DigitalImage> {
    if a > b {
        return Err(Error::ParamOutOfRange(format!("interval [{a},{b}] is empty")));
    }
    let points: Vec<Point> = (a..=b).map(pt1).collect();
    let labels: Vec<(Point, String)> = (a..=b).map(|z| (pt1(z), z.to_string())).collect();
    DigitalImage::with_cu(1, points, 1)?.with_labels(&labels)
}

/// A simple closed curve of `n >= 4` points `c_0, ..., c_{n-1}` indexed
/// circularly, held abstractly as points of `Z` with explicit cyclic edges.
pub fn gen_cycle(n: usize) -> Result<DigitalImage> {
    if n < 4 {
        return Err(Error::ParamOutOfRange(format!(
            "a simple closed curve needs at least 4 points, got {n}"
        )));
    }
    let points: Vec<Point> = (0..n as i64).map(pt1).collect();
    let edges: Vec<(Point, Point)> = (0..n as i64)
        .map(|i| (pt1(i), pt1((i + 1) % n as i64)))
        .collect();
    let labels: Vec<(Point, String)> = (0..n as i64).map(|i| (pt1(i), format!("c{i}"))).collect();
    DigitalImage::with_explicit(1, points, edges)?.with_labels(&labels)
}

/// The perimeter of a lattice rectangle under `c_1`, an embedded realization
/// of the `n`-point simple closed curve for even `n >= 8`. Agrees with
/// [`gen_cycle`] up to isomorphism.
pub fn gen_cycle_rect(n: usize) -> Result<DigitalImage> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::ParamOutOfRange(format!(
            "rectangle embedding needs an even n >= 8, got {n}"
        )));
    }
    // 2(w + h) - 4 = n; sides >= 3 keep c_1 free of chords.
    let half = (n + 4) / 2;
    let w = (half / 2).max(3) as i64;
    let h = (half - half / 2).max(3) as i64;
    let mut points = Vec::new();
    for x in 0..w {
        for y in 0..h {
            if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                points.push(pt2(x, y));
            }
        }
    }
    debug_assert_eq!(points.len(), n);
    DigitalImage::with_cu(2, points, 1)
}

/// A finite window `[0, q*n]` of the half-line with `c_1` adjacency.
///
/// The two points within one adjacency step of the cut, `q*n - 1` and `q*n`,
/// are tagged as boundary artifacts; point `0` is a genuine endpoint and is
/// not tagged. Radius-1 neighborhood computations at tagged points may
/// disagree with the untruncated half-line.
pub fn gen_window(q: usize, n: usize) -> Result<DigitalImage> {
    if q < 2 {
        return Err(Error::ParamOutOfRange(format!("window factor q={q} must be >= 2")));
    }
    if n < 4 {
        return Err(Error::ParamOutOfRange(format!("cycle size n={n} must be >= 4")));
    }
    let cut = (q * n) as i64;
    gen_interval(0, cut)?.with_boundary(&[pt1(cut - 1), pt1(cut)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cu_adjacency_axis_and_diagonal() {
        assert!(cu_adjacent(&pt2(0, 0), &pt2(1, 0), 1).unwrap());
        assert!(!cu_adjacent(&pt2(0, 0), &pt2(0, 0), 2).unwrap());
        assert!(!cu_adjacent(&pt2(0, 0), &pt2(1, 1), 1).unwrap());
        assert!(cu_adjacent(&pt2(0, 0), &pt2(1, 1), 2).unwrap());
        assert!(!cu_adjacent(&pt2(0, 0), &pt2(2, 0), 2).unwrap());
    }

    #[test]
    fn cu_adjacency_errors() {
        assert_eq!(
            cu_adjacent(&pt1(0), &pt2(0, 0), 1),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        );
        assert_eq!(
            cu_adjacent(&pt2(0, 0), &pt2(1, 0), 3),
            Err(Error::UOutOfRange { u: 3, dim: 2 })
        );
        assert_eq!(
            cu_adjacent(&pt2(0, 0), &pt2(1, 0), 0),
            Err(Error::UOutOfRange { u: 0, dim: 2 })
        );
    }

    #[test]
    fn adjacency_dispatch() {
        let c4 = gen_cycle(4).unwrap();
        assert!(c4.adjacent(&pt1(0), &pt1(3)).unwrap());
        assert!(!c4.adjacent(&pt1(0), &pt1(2)).unwrap());
        let i3 = gen_interval(0, 3).unwrap();
        assert!(i3.adjacent(&pt1(1), &pt1(2)).unwrap());
        assert!(matches!(
            i3.adjacent(&pt1(1), &pt1(9)),
            Err(Error::PointNotInImage(_))
        ));
    }

    #[test]
    fn neighborhoods() {
        let i3 = gen_interval(0, 3).unwrap();
        assert_eq!(i3.neighbors_strict(&pt1(0)).unwrap(), BTreeSet::from([pt1(1)]));
        assert_eq!(
            i3.neighbors_strict(&pt1(1)).unwrap(),
            BTreeSet::from([pt1(0), pt1(2)])
        );
        assert_eq!(
            i3.neighborhood_closed(&pt1(0)).unwrap(),
            BTreeSet::from([pt1(0), pt1(1)])
        );

        let c5 = gen_cycle(5).unwrap();
        assert_eq!(
            c5.neighbors_strict(&pt1(0)).unwrap(),
            BTreeSet::from([pt1(1), pt1(4)])
        );
        assert_eq!(
            c5.neighbors_strict(&pt1(4)).unwrap(),
            BTreeSet::from([pt1(3), pt1(0)])
        );
        assert_eq!(
            c5.neighborhood_closed(&pt1(0)).unwrap(),
            BTreeSet::from([pt1(4), pt1(0), pt1(1)])
        );

        let single = gen_interval(0, 0).unwrap();
        assert_eq!(
            single.neighborhood_closed(&pt1(0)).unwrap(),
            BTreeSet::from([pt1(0)])
        );
    }

    #[test]
    fn connectivity() {
        assert!(gen_cycle(6).unwrap().is_connected());
        assert!(gen_interval(0, 0).unwrap().is_connected());
        let split = DigitalImage::with_cu(2, vec![pt2(0, 0), pt2(5, 5)], 1).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn paths() {
        let i3 = gen_interval(0, 3).unwrap();
        assert!(i3.is_path(&[pt1(0), pt1(1), pt1(2)]).unwrap());
        assert!(i3.is_path(&[pt1(0), pt1(0), pt1(1)]).unwrap());
        assert!(!i3.is_path(&[pt1(0), pt1(2)]).unwrap());
        assert!(i3.is_path(&[pt1(3)]).unwrap());
        assert!(i3.is_path(&[]).is_err());
    }

    #[test]
    fn simple_closed_curves() {
        assert!(gen_cycle(6).unwrap().is_simple_closed_curve());
        assert!(gen_cycle(4).unwrap().is_simple_closed_curve());
        assert!(!gen_interval(0, 5).unwrap().is_simple_closed_curve());
        // Under c_2 the 2x2 square is complete: degree 3 everywhere.
        let square = DigitalImage::with_cu(
            2,
            vec![pt2(0, 0), pt2(0, 1), pt2(1, 0), pt2(1, 1)],
            2,
        )
        .unwrap();
        assert!(!square.is_simple_closed_curve());
        // Under c_1 the same square is a 4-cycle.
        let square_c1 = DigitalImage::with_cu(
            2,
            vec![pt2(0, 0), pt2(0, 1), pt2(1, 0), pt2(1, 1)],
            1,
        )
        .unwrap();
        assert!(square_c1.is_simple_closed_curve());
    }

    #[test]
    fn interval_generator() {
        let i = gen_interval(0, 2).unwrap();
        assert_eq!(i.len(), 3);
        assert_eq!(gen_interval(0, 0).unwrap().len(), 1);
        let long = gen_interval(0, 12).unwrap();
        assert_eq!(long.len(), 13);
        for z in 1..12 {
            assert_eq!(long.neighbors_strict(&pt1(z)).unwrap().len(), 2);
        }
        assert!(gen_interval(3, 1).is_err());
    }

    #[test]
    fn cycle_generator() {
        assert_eq!(gen_cycle(4).unwrap().len(), 4);
        assert!(gen_cycle(3).is_err());
        assert!(gen_cycle(8).unwrap().is_simple_closed_curve());
        let c5 = gen_cycle(5).unwrap();
        assert_eq!(c5.label(0), Some("c0"));
        assert_eq!(c5.resolve("c3"), Some(3));
    }

    #[test]
    fn rect_embedding_is_a_curve() {
        for n in [8, 10, 12, 16] {
            let rect = gen_cycle_rect(n).unwrap();
            assert_eq!(rect.len(), n);
            assert!(rect.is_simple_closed_curve(), "n={n}");
        }
        assert!(gen_cycle_rect(6).is_err());
        assert!(gen_cycle_rect(9).is_err());
    }

    #[test]
    fn window_generator() {
        let w = gen_window(3, 4).unwrap();
        assert_eq!(w.len(), 13);
        let flagged: Vec<usize> = w.boundary().iter().copied().collect();
        assert_eq!(flagged, vec![11, 12]);
        assert!(!w.is_boundary(0));
        assert_eq!(gen_window(2, 5).unwrap().len(), 11);
        assert!(gen_window(1, 4).is_err());
        assert!(gen_window(2, 3).is_err());
    }
}
