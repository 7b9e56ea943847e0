//! Witnesses: nonzero common points of two symmetric bisectors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bisector::{bisector_residual, deviation_from_line, trace_symmetric, BisectorTrace, NONZERO_FILTER};
use crate::error::{Error, Result};
use crate::norm::{FlatSegment, Norm};
use crate::ortho::{find_iso_orthogonal, iso_residual};
use crate::vec2::Vec2;

/// Both bisector equations must hold to this residual.
pub const WITNESS_TOL: f64 = 1e-9;

/// A point `z != 0` on `B(-x, x) ∩ B(-y, y)` with `x`, `y` independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: Vec2,
    pub y: Vec2,
    pub z: Vec2,
    /// `||y|| / ||x||`.
    pub lambda: f64,
    pub residual_x: f64,
    pub residual_y: f64,
    /// `|det(x, y)|`.
    pub independence: f64,
}

impl Witness {
    /// Measures and validates a candidate triple.
    pub fn new(n: &Norm, x: Vec2, y: Vec2, z: Vec2) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("witness coordinates"));
        }
        let gx = n.gauge(x);
        if gx == 0.0 {
            return Err(Error::InvalidWitness("x = 0".into()));
        }
        let w = Witness {
            x,
            y,
            z,
            lambda: n.gauge(y) / gx,
            residual_x: bisector_residual(n, x, z).abs(),
            residual_y: bisector_residual(n, y, z).abs(),
            independence: x.det(y).abs(),
        };
        if n.gauge(z) <= NONZERO_FILTER * gx {
            return Err(Error::InvalidWitness(format!("z = {z:?} is the trivial common point")));
        }
        if w.residual_x > WITNESS_TOL || w.residual_y > WITNESS_TOL {
            return Err(Error::InvalidWitness(format!(
                "residuals {:e}, {:e} exceed {WITNESS_TOL:e}",
                w.residual_x, w.residual_y
            )));
        }
        if w.independence <= 1e-9 {
            return Err(Error::InvalidWitness(format!("x and y are dependent (|det| = {:e})", w.independence)));
        }
        Ok(w)
    }

    pub fn record(&self) -> WitnessRecord {
        WitnessRecord {
            x: self.x,
            y: self.y,
            z: self.z,
            lambda: self.lambda,
            residuals: [self.residual_x, self.residual_y],
        }
    }
}

/// Serialized form of a [`Witness`]. Reloading recomputes every measured
/// field through [`Witness::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub x: Vec2,
    pub y: Vec2,
    pub z: Vec2,
    pub lambda: f64,
    pub residuals: [f64; 2],
}

impl WitnessRecord {
    pub fn revalidate(&self, n: &Norm) -> Result<Witness> {
        Witness::new(n, self.x, self.y, self.z)
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

fn first_flat_segment(n: &Norm) -> Result<FlatSegment> {
    n.detect_flat_segments(1024)?.into_iter().next().ok_or(Error::NoFlatSegment)
}

/// Witness built from the first flat segment of the sphere.
pub fn witness_nonstrict_prop(n: &Norm) -> Result<Witness> {
    witness_nonstrict_prop_from(n, &first_flat_segment(n)?)
}

/// From `[c, c'] ⊂ S_X`: `a = (3c + c')/4`, `a' = -(3c' + c)/4`, `b = c`,
/// `b' = -(c + c')/2`. Then `a + a' = b + b' = 2z`, and `z` lies on
/// `B(-x, x) ∩ B(-y, y)` with `x = a - z`, `y = b - z`.
pub fn witness_nonstrict_prop_from(n: &Norm, seg: &FlatSegment) -> Result<Witness> {
    let (c, cp) = (seg.c, seg.c_prime);
    let a = (c * 3.0 + cp) * 0.25;
    let a_prime = -(cp * 3.0 + c) * 0.25;
    let b = c;
    let b_prime = -(c + cp) * 0.5;
    let z = a.midpoint(a_prime);
    debug_assert!(z.dist(b.midpoint(b_prime)) <= 1e-15 * (c.euclid() + cp.euclid()));
    Witness::new(n, a - z, b - z, z)
}

/// Witness with `||y|| = lambda ||x||` for a norm with a flat segment.
pub fn witness_nonstrict_theorem(n: &Norm, lambda: f64) -> Result<Witness> {
    check_lambda(lambda)?;
    witness_nonstrict_theorem_from(n, &first_flat_segment(n)?, lambda)
}

/// From `[a, b] ⊂ S_X`: `x = (3a + b)/4`, `w = (a + 3b)/4`, `y = lambda w`.
/// The segment between `±(w - x)/2` lies in both `B(-x, x)` and
/// `B(-w, w)`, so the common point is `lambda (w - x)/2` for `lambda <= 1`
/// and `(w - x)/2` for `lambda >= 1`.
pub fn witness_nonstrict_theorem_from(n: &Norm, seg: &FlatSegment, lambda: f64) -> Result<Witness> {
    check_lambda(lambda)?;
    let (a, b) = (seg.c, seg.c_prime);
    let x = (a * 3.0 + b) * 0.25;
    let w = (a + b * 3.0) * 0.25;
    let half = (w - x) * 0.5;
    let z = if lambda <= 1.0 { half * lambda } else { half };
    Witness::new(n, x, w * lambda, z)
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Precondition(format!("lambda must be positive, got {lambda}")));
    }
    if lambda == 1.0 {
        return Err(Error::Precondition("lambda must differ from 1".into()));
    }
    Ok(())
}

/// Budget for [`witness_strictconvex_theorem`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Unit directions in `[0, pi)` scanned for the most curved bisector.
    pub angles: usize,
    /// Points of each bisector trace on either side of the origin.
    pub p_samples: usize,
    pub t_max: f64,
    /// Smallest `|det(x, y)|` accepted.
    pub min_independence: f64,
    /// How many of the most curved directions are walked before giving up.
    pub candidates: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { angles: 90, p_samples: 40, t_max: 2.0, min_independence: 1e-3, candidates: 8 }
    }
}

/// Bisectors deviating less than this from a straight line count as lines.
pub const LINE_TOL: f64 = 1e-9;

/// `(theta, deviation_from_line)` for `angles` unit directions in `[0, pi)`.
pub fn deviation_scan(n: &Norm, angles: usize, t_max: f64, count: usize) -> Result<Vec<(f64, f64)>> {
    Ok(scan_traces(n, angles, t_max, count)?.into_iter().map(|(t, d, _)| (t, d)).collect())
}

fn scan_traces(n: &Norm, angles: usize, t_max: f64, count: usize) -> Result<Vec<(f64, f64, BisectorTrace)>> {
    (0..angles)
        .into_par_iter()
        .map(|i| {
            let theta = std::f64::consts::PI * i as f64 / angles as f64;
            let trace = trace_symmetric(n, n.unit_point(theta), t_max, count)?;
            Ok((theta, deviation_from_line(&trace)?, trace))
        })
        .collect()
}

/// Search for a witness with `||y|| = lambda ||x||` in a strictly convex
/// plane: pick `x0` whose bisector is most curved, walk `p` outward along
/// `B(-x0, x0)` skipping points that also lie on `B(-lambda x0, lambda x0)`,
/// and take the `y` of gauge `lambda ||x0||` with `p` on `B(-y, y)`.
pub fn witness_strictconvex_theorem(n: &Norm, lambda: f64, search: SearchConfig) -> Result<Witness> {
    check_lambda(lambda)?;
    if search.angles == 0 || search.p_samples == 0 {
        return Err(Error::Precondition("search budget must be nonzero".into()));
    }
    let mut scanned = scan_traces(n, search.angles, search.t_max, 2 * search.p_samples + 1)?;
    scanned.sort_by(|a, b| b.1.total_cmp(&a.1));
    let best_dev = scanned.first().map_or(0.0, |s| s.1);
    if best_dev <= LINE_TOL {
        return Err(Error::SearchExhausted(format!(
            "every scanned bisector is a straight line (max deviation {best_dev:e} <= {LINE_TOL:e}); \
             the norm looks Euclidean"
        )));
    }
    let mut best_independence = 0.0f64;
    let mut tried = 0usize;
    for (_, dev, trace) in scanned.iter().take(search.candidates) {
        if *dev <= LINE_TOL {
            break;
        }
        let x0 = trace.x;
        let r = lambda * n.gauge(x0);
        let c = trace.center();
        let order = (1..=c).flat_map(|k| [c + k, c - k]);
        for k in order {
            let p = trace.roots[k].mid(x0);
            if iso_residual(n, x0 * lambda, p).abs() <= WITNESS_TOL {
                continue;
            }
            tried += 1;
            for sol in find_iso_orthogonal(n, p, r)? {
                if let Ok(w) = Witness::new(n, x0, sol.y, p) {
                    best_independence = best_independence.max(w.independence);
                    if w.independence >= search.min_independence {
                        return Ok(w);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no witness among {tried} admissible bisector points (best deviation {best_dev:e}, \
         best independence {best_independence:e} < {:e})",
        search.min_independence
    )))
}
