//! Path lifting through a map: exhaustive lift enumeration and the bounded
//! unique-path-lifting check.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::Point;
use crate::map::DigitalMap;

/// A lifted point sequence paired with the base path it projects to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLift {
    pub base_path: Vec<Point>,
    pub lift: Vec<Point>,
    pub start: Point,
}

/// Three-valued outcome of the bounded unique-path-lifting check. On images
/// with window-boundary points a verdict is only reported when it is immune
/// to truncation artifacts; otherwise the check is `Inconclusive`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlpHolds {
    True,
    False,
    Inconclusive,
}

impl UlpHolds {
    pub fn is_true(&self) -> bool {
        matches!(self, UlpHolds::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, UlpHolds::False)
    }
}

impl Serialize for UlpHolds {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            UlpHolds::True => s.serialize_bool(true),
            UlpHolds::False => s.serialize_bool(false),
            UlpHolds::Inconclusive => s.serialize_str("inconclusive"),
        }
    }
}

impl<'de> Deserialize<'de> for UlpHolds {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = UlpHolds;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a boolean or the string \"inconclusive\"")
            }

            fn visit_bool<E>(self, v: bool) -> std::result::Result<UlpHolds, E> {
                Ok(if v { UlpHolds::True } else { UlpHolds::False })
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<UlpHolds, E> {
                if v == "inconclusive" {
                    Ok(UlpHolds::Inconclusive)
                } else {
                    Err(E::custom("expected \"inconclusive\""))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// A based path with a lift count other than one. Indices refer to the
/// canonical point orders of target (`base_path`) and source (the rest).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlpCounterexample {
    pub base_path: Vec<usize>,
    pub start: usize,
    pub lift_count: usize,
    pub lifts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlpReport {
    pub holds: UlpHolds,
    pub max_length_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<UlpCounterexample>,
}

/// All lifts of `base` through `p` starting at `start`, in lexicographic
/// order of source indices: depth-first extension where each next lift point
/// must be equal-or-adjacent to the previous one and project to the next
/// base point.
pub fn enumerate_lifts(p: &DigitalMap, base: &[Point], start: &Point) -> Result<Vec<PathLift>> {
    if !p.target().is_path(base)? {
        return Err(Error::InvalidPath("base sequence is not a path".into()));
    }
    let base_idx: Vec<usize> = base
        .iter()
        .map(|b| p.target().index_of(b))
        .collect::<Result<_>>()?;
    let start_idx = p.source().index_of(start)?;
    if p.apply_idx(start_idx) != base_idx[0] {
        return Err(Error::StartNotInFiber);
    }
    let (lifts, _) = enumerate_lifts_idx(p, &base_idx, start_idx);
    Ok(lifts
        .into_iter()
        .map(|lift| PathLift {
            base_path: base.to_vec(),
            lift: lift.into_iter().map(|i| p.source().point(i).clone()).collect(),
            start: start.clone(),
        })
        .collect())
}

/// Index-level enumeration; also reports every source point explored as part
/// of some partial lift, which the boundary-taint analysis consumes.
pub(crate) fn enumerate_lifts_idx(
    p: &DigitalMap,
    base_idx: &[usize],
    start_idx: usize,
) -> (Vec<Vec<usize>>, BTreeSet<usize>) {
    let mut lifts = Vec::new();
    let mut touched = BTreeSet::from([start_idx]);
    let mut prefix = vec![start_idx];
    extend(p, base_idx, &mut prefix, &mut lifts, &mut touched);
    (lifts, touched)
}

fn extend(
    p: &DigitalMap,
    base_idx: &[usize],
    prefix: &mut Vec<usize>,
    lifts: &mut Vec<Vec<usize>>,
    touched: &mut BTreeSet<usize>,
) {
    if prefix.len() == base_idx.len() {
        lifts.push(prefix.clone());
        return;
    }
    let here = *prefix.last().unwrap();
    let want = base_idx[prefix.len()];
    for next in p.source().neighborhood_closed_idx(here) {
        if p.apply_idx(next) == want {
            touched.insert(next);
            prefix.push(next);
            extend(p, base_idx, prefix, lifts, touched);
            prefix.pop();
        }
    }
}

/// Bounded unique-path-lifting check.
///
/// Every based path must have exactly one lift per starting fiber point.
/// Only steps of length one are enumerated: two lifts of a longer path first
/// branch at a single step, a zero-lift path dies at a single step, and
/// stepwise uniqueness extends any lift uniquely by induction - so lengths
/// >= 2 cannot change the verdict, at this or any larger bound. Base steps
/// repeat a point only in full-stuttering mode; lifts may always stutter
/// where equal-or-adjacent permits.
///
/// On a source with window-boundary points, a zero-lift step from a flagged
/// start may be a truncation artifact; such failures are set aside and the
/// report is `Inconclusive` when no clean counterexample exists. Multi-lift
/// failures are never artifacts: the lifts found remain lifts in any
/// extension of the window.
pub fn check_unique_path_lifting(p: &DigitalMap, l_max: usize) -> UlpReport {
    check_unique_path_lifting_with(p, l_max, false)
}

/// As [`check_unique_path_lifting`], optionally enumerating stuttering base
/// steps as well.
pub fn check_unique_path_lifting_with(p: &DigitalMap, l_max: usize, full_stuttering: bool) -> UlpReport {
    let mut tainted_failure: Option<UlpCounterexample> = None;
    let mut suspect_pass = false;

    if l_max >= 1 {
        for b0 in 0..p.target().len() {
            let steps: Vec<usize> = if full_stuttering {
                p.target().neighborhood_closed_idx(b0)
            } else {
                p.target().neighbor_indices(b0).to_vec()
            };
            for &b1 in &steps {
                let base_idx = [b0, b1];
                for start in p.fiber_idx(b0) {
                    let (lifts, touched) = enumerate_lifts_idx(p, &base_idx, start);
                    match lifts.len() {
                        1 => {
                            // A flagged start may have unseen neighbors past
                            // the cut, so uniqueness there is unverifiable.
                            if p.source().is_boundary(start) {
                                suspect_pass = true;
                            }
                        }
                        0 if touched.iter().any(|&i| p.source().is_boundary(i)) => {
                            tainted_failure.get_or_insert(UlpCounterexample {
                                base_path: base_idx.to_vec(),
                                start,
                                lift_count: 0,
                                lifts,
                            });
                        }
                        n => {
                            return UlpReport {
                                holds: UlpHolds::False,
                                max_length_checked: l_max,
                                counterexample: Some(UlpCounterexample {
                                    base_path: base_idx.to_vec(),
                                    start,
                                    lift_count: n,
                                    lifts,
                                }),
                            };
                        }
                    }
                }
            }
        }
    }

    match tainted_failure {
        Some(ce) => UlpReport {
            holds: UlpHolds::Inconclusive,
            max_length_checked: l_max,
            counterexample: Some(ce),
        },
        None => UlpReport {
            holds: if suspect_pass {
                UlpHolds::Inconclusive
            } else {
                UlpHolds::True
            },
            max_length_checked: l_max,
            counterexample: None,
        },
    }
}

/// The harness default bound: long enough to traverse any cycle of either
/// image twice.
pub fn default_l_max(p: &DigitalMap) -> usize {
    2 * p.source().len().max(p.target().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{gen_cycle, gen_interval, gen_window, pt1};

    fn doubling_map(n: usize) -> DigitalMap {
        let src = gen_cycle(2 * n).unwrap();
        let tgt = gen_cycle(n).unwrap();
        DigitalMap::from_fn(src, tgt, |p| pt1(p.coords()[0].rem_euclid(n as i64))).unwrap()
    }

    fn window_map(n: usize, q: usize) -> DigitalMap {
        let src = gen_window(q, n).unwrap();
        let tgt = gen_cycle(n).unwrap();
        DigitalMap::from_fn(src, tgt, |p| pt1(p.coords()[0].rem_euclid(n as i64))).unwrap()
    }

    #[test]
    fn identity_lifts_are_the_path_itself() {
        let id = DigitalMap::identity(gen_cycle(5).unwrap());
        let base = vec![pt1(0), pt1(1), pt1(2)];
        let lifts = enumerate_lifts(&id, &base, &pt1(0)).unwrap();
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].lift, base);
    }

    #[test]
    fn doubling_map_lifts_uniquely() {
        let p = doubling_map(4);
        let lifts = enumerate_lifts(&p, &[pt1(0), pt1(1)], &pt1(0)).unwrap();
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].lift, vec![pt1(0), pt1(1)]);
    }

    #[test]
    fn window_map_has_a_liftless_path() {
        let p = window_map(4, 3);
        let lifts = enumerate_lifts(&p, &[pt1(0), pt1(3)], &pt1(0)).unwrap();
        assert!(lifts.is_empty());
    }

    #[test]
    fn lift_errors() {
        let p = window_map(4, 3);
        assert_eq!(
            enumerate_lifts(&p, &[pt1(0), pt1(1)], &pt1(1)),
            Err(Error::StartNotInFiber)
        );
        assert!(matches!(
            enumerate_lifts(&p, &[pt1(0), pt1(2)], &pt1(0)),
            Err(Error::InvalidPath(_))
        ));
        assert!(enumerate_lifts(&p, &[], &pt1(0)).is_err());
    }

    #[test]
    fn stuttering_base_steps_lift_through_collapsed_edges() {
        // 0,1 -> 0 collapses an edge; the stuttering base (0,0) has two lifts.
        let src = gen_interval(0, 1).unwrap();
        let tgt = gen_interval(0, 0).unwrap();
        let p = DigitalMap::from_fn(src, tgt, |_| pt1(0)).unwrap();
        let lifts = enumerate_lifts(&p, &[pt1(0), pt1(0)], &pt1(0)).unwrap();
        assert_eq!(lifts.len(), 2);

        let destuttered = check_unique_path_lifting(&p, 4);
        assert!(destuttered.holds.is_true());
        let full = check_unique_path_lifting_with(&p, 4, true);
        assert!(full.holds.is_false());
    }

    #[test]
    fn ulp_identity_and_covering() {
        let id = DigitalMap::identity(gen_cycle(4).unwrap());
        assert!(check_unique_path_lifting(&id, 3).holds.is_true());

        let p = doubling_map(4);
        let report = check_unique_path_lifting(&p, 8);
        assert!(report.holds.is_true());
        assert_eq!(report.max_length_checked, 8);
    }

    #[test]
    fn ulp_window_map_fails_cleanly() {
        let p = window_map(4, 3);
        let report = check_unique_path_lifting(&p, 2);
        assert!(report.holds.is_false());
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.base_path, vec![0, 3]);
        assert_eq!(ce.start, 0);
        assert_eq!(ce.lift_count, 0);

        // Monotone in the bound.
        for l in [1, 4, 26] {
            assert!(check_unique_path_lifting(&p, l).holds.is_false());
        }
    }

    #[test]
    fn ulp_counterexample_replays() {
        let p = window_map(6, 2);
        let report = check_unique_path_lifting(&p, default_l_max(&p));
        let ce = report.counterexample.unwrap();
        let base: Vec<_> = ce.base_path.iter().map(|&i| p.target().point(i).clone()).collect();
        let lifts = enumerate_lifts(&p, &base, p.source().point(ce.start)).unwrap();
        assert_eq!(lifts.len(), ce.lift_count);
    }

    #[test]
    fn report_serialization() {
        let p = window_map(4, 3);
        let report = check_unique_path_lifting(&p, 2);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["holds"], false);
        assert_eq!(json["counterexample"]["base_path"], serde_json::json!([0, 3]));
        let back: UlpReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);

        let id = DigitalMap::identity(gen_cycle(4).unwrap());
        let json = serde_json::to_value(check_unique_path_lifting(&id, 2)).unwrap();
        assert_eq!(json["holds"], true);
    }
}
