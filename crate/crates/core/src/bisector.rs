//! Bisectors `B(-x, x) = { z : ||z - x|| = ||z + x|| }`.
//!
//! A bisector is traced by intersecting it with a family of lines parallel
//! to `x`. On the line `base + s x` the function
//! `phi(s) = ||base + (s-1)x|| - ||base + (s+1)x||` is the difference of a
//! convex function and its shift, hence non-increasing, positive for
//! `s -> -inf` and negative for `s -> +inf`. Its zero set is an interval,
//! degenerate unless the sphere has a flat piece.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::norm::Norm;
use crate::ortho::{find_iso_orthogonal, iso_residual};
use crate::roots::{bisect_predicate, bisect_root, expand_symmetric, MAX_BISECTIONS};
use crate::vec2::Vec2;

/// Zero test for `phi` on a line, relative to `max(1, ||x||, ||base||)`.
const LINE_ZERO_TOL: f64 = 1e-12;

/// Common points must satisfy both bisector equations to this residual.
pub const COMMON_TOL: f64 = 1e-9;

/// Samples with `|psi| <= COMMON_ZERO_TOL * scale` are treated as lying on
/// the second bisector during the intersection scan.
const COMMON_ZERO_TOL: f64 = 1e-11;

/// Points closer to the origin than this fraction of the scale are the
/// trivial common point `0`.
pub const NONZERO_FILTER: f64 = 1e-6;

/// Solution set `{ base + s x : s in [s_lo, s_hi] }` of the bisector
/// equation on one line parallel to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineRoot {
    pub base: Vec2,
    pub s_lo: f64,
    pub s_hi: f64,
}

impl LineRoot {
    pub fn width(&self) -> f64 {
        self.s_hi - self.s_lo
    }

    pub fn point(&self, x: Vec2, s: f64) -> Vec2 {
        self.base + x * s
    }

    pub fn lo(&self, x: Vec2) -> Vec2 {
        self.point(x, self.s_lo)
    }

    pub fn hi(&self, x: Vec2) -> Vec2 {
        self.point(x, self.s_hi)
    }

    pub fn mid(&self, x: Vec2) -> Vec2 {
        self.point(x, 0.5 * (self.s_lo + self.s_hi))
    }
}

/// `||z - x|| - ||z + x||`.
pub fn bisector_residual(n: &Norm, x: Vec2, z: Vec2) -> f64 {
    n.gauge(z - x) - n.gauge(z + x)
}

/// Intersection of `B(-x, x)` with the line `base + s x`.
pub fn line_root(n: &Norm, x: Vec2, base: Vec2) -> Result<LineRoot> {
    ensure_finite(x, "x")?;
    ensure_finite(base, "base")?;
    if x == Vec2::ZERO {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let gx = n.gauge(x);
    let tol = LINE_ZERO_TOL * 1f64.max(gx).max(n.gauge(base));
    let phi = |s: f64| bisector_residual(n, x, base + x * s);

    let reach = expand_symmetric(1.0, 1100, |s| phi(-s) > tol && phi(s) < -tol)
        .ok_or_else(|| Error::Internal(format!("no sign change of phi on the line through {base:?}")))?;
    let (lo, hi) = (-reach, reach);
    // s_lo: first s where phi has dropped to the zero band; s_hi: last s
    // still inside it.
    let (_, s_lo) = bisect_predicate(lo, hi, MAX_BISECTIONS, |s| phi(s) > tol);
    let (s_hi, _) = bisect_predicate(lo, hi, MAX_BISECTIONS, |s| phi(s) >= -tol);
    if s_lo <= s_hi {
        return Ok(LineRoot { base, s_lo, s_hi });
    }
    // phi jumps across the band between adjacent floats
    let s = if phi(s_lo).abs() <= phi(s_hi).abs() { s_lo } else { s_hi };
    Ok(LineRoot { base, s_lo: s, s_hi: s })
}

/// Sampled bisector `B(-x, x)`: one [`LineRoot`] per offset along the
/// transversal direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BisectorTrace {
    pub x: Vec2,
    pub transversal: Vec2,
    pub offsets: Vec<f64>,
    pub roots: Vec<LineRoot>,
}

impl BisectorTrace {
    pub fn midpoints(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.roots.iter().map(|r| r.mid(self.x))
    }

    /// Index of the offset-zero line.
    pub fn center(&self) -> usize {
        self.offsets.len() / 2
    }
}

/// The coordinate axis least aligned with `x`.
pub fn transversal_for(x: Vec2) -> Vec2 {
    if x.u.abs() >= x.w.abs() {
        Vec2::new(0.0, 1.0)
    } else {
        Vec2::new(1.0, 0.0)
    }
}

/// `count` evenly spaced offsets in `[-t_max, t_max]`, with an exact zero.
pub fn symmetric_offsets(t_max: f64, count: usize) -> Vec<f64> {
    let half = (count - 1) as f64;
    (0..count).map(|k| t_max * (2.0 * k as f64 - half) / half).collect()
}

pub fn trace_symmetric(n: &Norm, x: Vec2, t_max: f64, count: usize) -> Result<BisectorTrace> {
    if count < 3 || count.is_multiple_of(2) {
        return Err(Error::Precondition(format!("count must be odd and >= 3, got {count}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::Precondition(format!("t_max must be positive, got {t_max}")));
    }
    ensure_finite(x, "x")?;
    if x == Vec2::ZERO {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let transversal = transversal_for(x);
    let offsets = symmetric_offsets(t_max, count);
    let roots = offsets.par_iter().map(|&o| line_root(n, x, transversal * o)).collect::<Result<Vec<_>>>()?;
    Ok(BisectorTrace { x, transversal, offsets, roots })
}

/// Rewrites `B(a, b)` as `center + scale * B(-u, u)` with `||u|| = 1`:
/// `z` lies on `B(-u, u)` iff `center + scale * z` lies on `B(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reduction {
    pub center: Vec2,
    pub scale: f64,
    pub u: Vec2,
}

impl Reduction {
    pub fn to_general(&self, z: Vec2) -> Vec2 {
        self.center + z * self.scale
    }

    pub fn to_symmetric(&self, p: Vec2) -> Vec2 {
        (p - self.center) * self.scale.recip()
    }
}

pub fn reduce_general(n: &Norm, a: Vec2, b: Vec2) -> Result<Reduction> {
    ensure_finite(a, "a")?;
    ensure_finite(b, "b")?;
    if a == b {
        return Err(Error::Precondition("a and b must differ".into()));
    }
    let d = n.gauge(a - b);
    Ok(Reduction { center: a.midpoint(b), scale: 0.5 * d, u: (a - b) * d.recip() })
}

/// Nonzero points of `B(-x, x) ∩ B(-y, y)` found along a trace of the
/// first bisector. Common arcs are reported by their refined endpoints plus
/// the sampled points inside them.
pub fn intersect_symmetric(n: &Norm, x: Vec2, y: Vec2, t_max: f64, count: usize) -> Result<Vec<Vec2>> {
    ensure_finite(x, "x")?;
    ensure_finite(y, "y")?;
    let (gx, gy) = (n.gauge(x), n.gauge(y));
    if x.det(y).abs() <= 1e-9 * gx * gy {
        return Err(Error::Precondition("x and y must be linearly independent".into()));
    }
    let trace = trace_symmetric(n, x, t_max, count)?;
    let scale = gx.max(gy);
    let zero_tol = COMMON_ZERO_TOL * scale;
    let psi = |z: Vec2| bisector_residual(n, y, z);
    let on_line = |o: f64| line_root(n, x, trace.transversal * o).map(|r| r.mid(x));

    let mut found = Vec::new();
    let mids: Vec<Vec2> = trace.midpoints().collect();
    let vals: Vec<f64> = mids.iter().map(|&m| psi(m)).collect();
    let is_zero = |v: f64| v.abs() <= zero_tol;

    for (k, (&m, &v)) in mids.iter().zip(&vals).enumerate() {
        if is_zero(v) {
            found.push(m);
        }
        if k + 1 == mids.len() {
            break;
        }
        let (o0, o1, v1) = (trace.offsets[k], trace.offsets[k + 1], vals[k + 1]);
        if is_zero(v) != is_zero(v1) {
            // boundary of a common arc; keep the point on the zero side
            let pred = |o: f64| on_line(o).map(|p| is_zero(psi(p))).unwrap_or(false);
            let (inside, _) = if is_zero(v) {
                bisect_predicate(o0, o1, MAX_BISECTIONS, pred)
            } else {
                bisect_predicate(o1, o0, MAX_BISECTIONS, pred)
            };
            found.push(on_line(inside)?);
        } else if !is_zero(v) && (v < 0.0) != (v1 < 0.0) {
            let o = bisect_root(o0, o1, 0.0, |o| on_line(o).map(psi).unwrap_or(f64::NAN));
            found.push(on_line(o)?);
        }
    }
    // Wide line roots are 2D pieces of the bisector; look along them too.
    for r in &trace.roots {
        if r.width() <= 1e-9 * scale {
            continue;
        }
        let (a, b) = (r.lo(x), r.hi(x));
        let (va, vb) = (psi(a), psi(b));
        for (p, v) in [(a, va), (b, vb)] {
            if is_zero(v) {
                found.push(p);
            }
        }
        if !is_zero(va) && !is_zero(vb) && (va < 0.0) != (vb < 0.0) {
            let s = bisect_root(0.0, 1.0, 0.0, |s| psi(a.lerp(b, s)));
            found.push(a.lerp(b, s));
        }
    }

    let floor = NONZERO_FILTER * scale;
    let mut out: Vec<Vec2> = Vec::new();
    for z in found {
        let ok = n.gauge(z) > floor
            && bisector_residual(n, x, z).abs() <= COMMON_TOL
            && psi(z).abs() <= COMMON_TOL
            && !out.iter().any(|q| q.dist(z) <= 1e-12 * scale);
        if ok {
            out.push(z);
        }
    }
    Ok(out)
}

/// Largest Euclidean-chart distance of trace midpoints from the line
/// through the origin and the midpoint at the largest offset.
pub fn deviation_from_line(trace: &BisectorTrace) -> Result<f64> {
    if trace.roots.len() < 3 {
        return Err(Error::Precondition("trace needs at least 3 offsets".into()));
    }
    let far = trace.roots.last().unwrap().mid(trace.x);
    let len = far.euclid();
    if len == 0.0 {
        return Err(Error::Internal("far trace point is the origin".into()));
    }
    Ok(trace.midpoints().map(|m| far.det(m).abs() / len).fold(0.0, f64::max))
}

/// Directions (angles in `[0, pi)`) where `B(-z, z)` meets the sphere of
/// radius `s`, for each radius. Isolated directions are reported as
/// degenerate intervals.
pub fn origin_direction_cone(n: &Norm, z: Vec2, radii: &[f64]) -> Result<Vec<Vec<(f64, f64)>>> {
    ensure_finite(z, "z")?;
    if z == Vec2::ZERO {
        return Err(Error::Precondition("z must be nonzero".into()));
    }
    let gz = n.gauge(z);
    if radii.iter().any(|&r| !(r > 0.0 && r < gz)) {
        return Err(Error::Precondition("radii must be positive and below gauge(z)".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("radii must be strictly decreasing".into()));
    }
    radii
        .iter()
        .map(|&s| {
            let sols = find_iso_orthogonal(n, z, s)?;
            Ok(sols
                .into_iter()
                .filter(|sol| iso_residual(n, z, sol.y).abs() <= COMMON_TOL)
                .map(|sol| match sol.interval {
                    None => (sol.t, sol.t),
                    Some((a, b)) => arc_angles(a, b),
                })
                .collect())
        })
        .collect()
}

/// Angle range of an arc given by its endpoints, expressed so that
/// `lo <= hi` with `lo` in `[0, pi)` (`hi` may exceed `pi` for arcs that
/// straddle the half-turn).
fn arc_angles(a: Vec2, b: Vec2) -> (f64, f64) {
    use std::f64::consts::PI;
    let lo = a.angle().rem_euclid(PI);
    let mut hi = b.angle().rem_euclid(PI);
    if hi < lo {
        hi += PI;
    }
    (lo, hi)
}
