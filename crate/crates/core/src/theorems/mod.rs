//! Constructive witnesses and sampled verification of how bisector
//! intersections separate Euclidean, strictly convex and non-strictly
//! convex planes.

mod frame;
mod suites;
mod witness;

use serde::Serialize;

pub use frame::{build_lemma_frame, LemmaFrame, FRAME_TOL};
pub use suites::{
    lemma_suite, unit_pair_angles, verify_pairs, verify_prop_strict, PairCheck, PairReport, SuiteReport, Violation,
    INTERIOR_MARGIN, LEMMA_SUITES,
};
pub use witness::{
    deviation_scan, witness_nonstrict_prop, witness_nonstrict_prop_from, witness_nonstrict_theorem,
    witness_nonstrict_theorem_from, witness_strictconvex_theorem, SearchConfig, Witness, WitnessRecord, LINE_TOL,
    WITNESS_TOL,
};

use crate::error::Result;
use crate::norm::{Convexity, FlatSegment, Norm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormClass {
    Euclidean,
    StrictlyConvexNonEuclidean,
    NotStrictlyConvex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: NormClass,
    pub parallelogram_residual: f64,
    pub flat_segment: Option<FlatSegment>,
}

/// Samples used by [`classify`] for the parallelogram probe.
pub const CLASSIFY_SAMPLES: usize = 1000;

pub fn classify(n: &Norm) -> Result<Classification> {
    let (euclidean, residual) = n.is_euclidean(CLASSIFY_SAMPLES)?;
    let flat = match n.is_strictly_convex(1024)? {
        Convexity::StrictlyConvex => None,
        Convexity::NotStrictlyConvex(seg) => Some(seg),
    };
    let class = match (&flat, euclidean) {
        (Some(_), _) => NormClass::NotStrictlyConvex,
        (None, true) => NormClass::Euclidean,
        (None, false) => NormClass::StrictlyConvexNonEuclidean,
    };
    Ok(Classification { class, parallelogram_residual: residual, flat_segment: flat })
}
