//! Flat segments of the unit sphere.

use std::f64::consts::PI;

use serde::Serialize;

use super::Norm;
use crate::vec2::Vec2;

/// Midpoints with `1 - gauge <= FLATNESS_TOL` count as lying on the sphere.
pub const FLATNESS_TOL: f64 = 1e-10;

/// A segment `[c, c_prime]` contained in the unit sphere. `certified` is
/// true when the endpoints are exact polygon vertices; scanned segments are
/// limited by the scan resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatSegment {
    pub c: Vec2,
    pub c_prime: Vec2,
    pub certified: bool,
}

impl FlatSegment {
    pub fn midpoint(&self) -> Vec2 {
        self.c.midpoint(self.c_prime)
    }

    /// Largest deviation of `c`, `c'` and their midpoint from the sphere.
    pub fn sphere_defect(&self, n: &Norm) -> f64 {
        [self.c, self.c_prime, self.midpoint()].into_iter().map(|p| (n.gauge(p) - 1.0).abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Convexity {
    StrictlyConvex,
    NotStrictlyConvex(FlatSegment),
}

impl Convexity {
    pub fn is_strict(&self) -> bool {
        matches!(self, Convexity::StrictlyConvex)
    }
}

/// Midpoint scan over `resolution` sphere points. Consecutive sample pairs
/// whose midpoints stay on the sphere are merged into one uncertified
/// segment for as long as the midpoint of the whole run stays on the sphere
/// too, so a sample sitting exactly on a corner splits the run there. Works
/// for any kind; flat pieces shorter than the sample spacing are missed.
pub fn scan_flat_segments(n: &Norm, resolution: usize) -> Vec<FlatSegment> {
    let len = resolution;
    let pts: Vec<Vec2> = (0..len).map(|k| n.unit_point(2.0 * PI * k as f64 / len as f64)).collect();
    let p = |k: usize| pts[k % len];
    let on_sphere = |a: Vec2, b: Vec2| 1.0 - n.gauge(a.midpoint(b)) <= FLATNESS_TOL;
    let flat: Vec<bool> = (0..len).map(|k| on_sphere(p(k), p(k + 1))).collect();
    // begin where a run cannot continue from the previous pair
    let Some(start) = (0..len).find(|&k| {
        let prev = (k + len - 1) % len;
        !flat[prev] || !flat[k] || !on_sphere(p(prev), p(k + 1))
    }) else {
        return Vec::new();
    };
    let mut segments = Vec::new();
    let mut run: Option<usize> = None;
    for step in 0..=len {
        let k = start + step;
        let extends = step < len && flat[k % len];
        match run {
            Some(s) if extends && on_sphere(p(s), p(k + 1)) => {}
            Some(s) => {
                segments.push(FlatSegment { c: p(s), c_prime: p(k), certified: false });
                run = extends.then_some(k);
            }
            None => run = extends.then_some(k),
        }
    }
    segments
}
