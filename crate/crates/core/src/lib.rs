//! Digital-image morphisms at desk scale: finite subsets of `Z^d` with a
//! `c_u` or explicit adjacency, maps between them, membership checks for six
//! morphism classes (covering, local isomorphism, PL and WL isomorphism, and
//! two pseudocovering variants), exhaustive path-lift enumeration, and a
//! verification suite that reproduces or refutes the published claims about
//! the wrap-around map onto a simple closed curve.
//!
//! Everything is deterministic: points live in canonical lexicographic
//! order, witnesses cite canonical indices, and identical inputs serialize
//! to identical bytes.

pub mod classify;
pub mod error;
pub mod harness;
pub mod image;
pub mod io;
pub mod lift;
pub mod map;
pub mod suite;

pub use classify::{
    check, check_covering, check_han_pseudocover, check_local_iso, check_pak_pseudocover,
    check_pak_pseudocover_full_fiber, check_pl_iso, check_wl_iso, verify_witness, ClassVerdict,
    MorphismClass, SheetRecord, Violation, ViolationReason, Witness,
};
pub use error::{Error, Result};
pub use harness::{
    enumerate_continuous_surjections, evaluate_instance, random_continuous_surjection,
    random_image, relation_violations, run_equivalence_harness, sampled_instances, HarnessConfig,
    HarnessSummary, InstanceEvaluation,
};
pub use image::{
    cu_adjacent, gen_cycle, gen_cycle_rect, gen_interval, gen_window, pt1, pt2, Adjacency,
    DigitalImage, Point,
};
pub use lift::{
    check_unique_path_lifting, check_unique_path_lifting_with, default_l_max, enumerate_lifts,
    PathLift, UlpCounterexample, UlpHolds, UlpReport,
};
pub use map::{
    graphs_isomorphic, restrict, restrict_to, sub_image, subgraphs_isomorphic, DigitalMap,
    SubImage,
};
pub use suite::{
    build_doubling_map, build_window_map, check_assertion_3_10, run_paper_grid, run_suite,
    suite_passes, verify_corollary_3_11, verify_pak_separation, AssertionReport, AssertionRow,
    AssertionVerdict, CorollaryReport, PakSeparationReport, PaperReport, SuiteReport,
};
