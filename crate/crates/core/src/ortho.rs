//! Isosceles orthogonality and chord-midpoint pairs.
//!
//! `x` is isosceles orthogonal to `y` when `||x + y|| = ||x - y||`, which is
//! the same as `y` lying on the bisector `B(-x, x)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::norm::Norm;
use crate::roots::{bisect_predicate, MAX_BISECTIONS};
use crate::scan::{reduce_half_turn, scan_antisymmetric, Root};
use crate::vec2::Vec2;

/// Default number of `t` samples on `[0, pi)`.
pub const DEFAULT_RESOLUTION: usize = 2048;

/// Samples with `|g| <= FLAT_TOL * scale` count as exact zeros.
pub const FLAT_TOL: f64 = 1e-12;

/// Roots are refined until `|g| <= ROOT_TOL * scale`.
pub const ROOT_TOL: f64 = 1e-10;

/// Signed `||x + y|| - ||x - y||`; zero iff `x` is isosceles orthogonal to `y`.
pub fn iso_residual(n: &Norm, x: Vec2, y: Vec2) -> f64 {
    n.gauge(x + y) - n.gauge(x - y)
}

/// A vector `y` of prescribed gauge with `z` isosceles orthogonal to `y`.
/// When a whole arc of the sphere solves the equation, `interval` holds its
/// endpoints and `y` a point inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoSolution {
    pub y: Vec2,
    /// Angle of `y` in `[0, pi)`.
    pub t: f64,
    pub residual: f64,
    pub interval: Option<(Vec2, Vec2)>,
}

/// Every `y` with `||y|| = r` and `||z + y|| = ||z - y||`, up to sign.
pub fn find_iso_orthogonal(n: &Norm, z: Vec2, r: f64) -> Result<Vec<IsoSolution>> {
    find_iso_orthogonal_with(n, z, r, DEFAULT_RESOLUTION)
}

pub fn find_iso_orthogonal_with(n: &Norm, z: Vec2, r: f64, resolution: usize) -> Result<Vec<IsoSolution>> {
    ensure_finite(z, "z")?;
    if z == Vec2::ZERO {
        return Err(Error::Precondition("z must be nonzero".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Precondition(format!("radius must be positive, got {r}")));
    }
    let scale = r.max(n.gauge(z));
    let point = |t: f64| n.unit_point(t) * r;
    let g = |t: f64| iso_residual(n, z, point(t));
    let roots = scan_antisymmetric(g, 0.0, resolution, FLAT_TOL * scale, ROOT_TOL * scale);
    if roots.is_empty() {
        return Err(Error::Internal(format!(
            "no sign change of the isosceles residual for z = {z:?} at resolution {resolution}"
        )));
    }
    Ok(roots
        .into_iter()
        .map(|root| {
            let (t, odd) = reduce_half_turn(root.representative(), 0.0);
            let sign = if odd { -1.0 } else { 1.0 };
            let y = point(t);
            let interval = match root {
                Root::Arc { t_lo, t_hi, .. } => Some((point(t_lo) * sign, point(t_hi) * sign)),
                Root::Point { .. } => None,
            };
            IsoSolution { y, t, residual: g(t).abs(), interval }
        })
        .collect())
}

/// Two sphere points `x`, `x'` with midpoint `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordPair {
    pub x: Vec2,
    pub x_prime: Vec2,
    /// Direction angle of `x - z`, reduced to the scan window.
    pub t: f64,
    /// False when the scan saw a second solution or an arc of solutions.
    pub unique: bool,
}

impl ChordPair {
    /// Same pair up to swapping the two points.
    pub fn matches(&self, other: &ChordPair, tol: f64) -> bool {
        let direct = self.x.dist(other.x).max(self.x_prime.dist(other.x_prime));
        let swapped = self.x.dist(other.x_prime).max(self.x_prime.dist(other.x));
        direct.min(swapped) <= tol
    }
}

/// Grid used by [`chord_midpoint_pair_with`]; `offset` shifts the window
/// `[offset, offset + pi)` so independent restarts see different samples.
#[derive(Debug, Clone, Copy)]
pub struct ChordScan {
    pub resolution: usize,
    pub offset: f64,
}

impl Default for ChordScan {
    fn default() -> Self {
        Self { resolution: 1024, offset: 0.0 }
    }
}

/// Far intersection of the ray `z + lambda d`, `lambda > 0`, with the unit
/// sphere, for `z` interior. Returns `lambda`.
fn ray_exit(n: &Norm, z: Vec2, d: Vec2) -> f64 {
    let hi = (1.0 + n.gauge(z)) / n.gauge(d);
    let (inside, outside) = bisect_predicate(0.0, hi, MAX_BISECTIONS, |l| n.gauge(z + d * l) < 1.0);
    let err = |l: f64| (n.gauge(z + d * l) - 1.0).abs();
    if err(inside) <= err(outside) {
        inside
    } else {
        outside
    }
}

pub fn chord_midpoint_pair(n: &Norm, z: Vec2) -> Result<ChordPair> {
    chord_midpoint_pair_with(n, z, ChordScan::default())
}

/// Finds `x, x'` on the unit sphere with `(x + x') / 2 = z` by locating a
/// root of `h(t) = f(t + pi) - f(t)`, where `f(t)` is the distance from `z`
/// to the sphere along direction `t`. `h(t + pi) = -h(t)`, so a root always
/// exists.
pub fn chord_midpoint_pair_with(n: &Norm, z: Vec2, scan: ChordScan) -> Result<ChordPair> {
    ensure_finite(z, "z")?;
    if z == Vec2::ZERO {
        return Err(Error::Precondition("z = 0 is the midpoint of every diameter".into()));
    }
    let gz = n.gauge(z);
    if gz >= 1.0 {
        return Err(Error::Precondition(format!("z must be interior, gauge(z) = {gz}")));
    }
    let reach = |t: f64| {
        let d = Vec2::from_angle(t);
        d * ray_exit(n, z, d)
    };
    let f = |t: f64| n.gauge(reach(t));
    let h = |t: f64| f(t + PI) - f(t);
    let roots = scan_antisymmetric(h, scan.offset, scan.resolution, FLAT_TOL, 1e-15);
    let first = roots.first().ok_or_else(|| Error::Internal(format!("chord scan found no root for z = {z:?}")))?;
    let unique = roots.len() == 1 && matches!(first, Root::Point { .. });
    // point roots are already bisected down to adjacent floats
    let (t, _) = reduce_half_turn(first.representative(), scan.offset);
    let x = z + reach(t);
    let x_prime = z + reach(t + PI);
    let mid_err = x.midpoint(x_prime).dist(z);
    if mid_err > 1e-10 {
        return Err(Error::Internal(format!("chord midpoint misses z by {mid_err:e}")));
    }
    Ok(ChordPair { x, x_prime, t, unique })
}
