//! The chord frame `{z, (a - a')/2}` and sampled checks of the inclusions
//! between the unit ball, the triangle `conv{d, d', c}` and the shrunken
//! ball `(alpha, 0) + B_X / delta`.
//!
//! Frame coordinates `(p1, p2)` stand for `p1 z + p2 (a - a')/2`. In them
//! `a = (m, 1)`, `a' = (m, -1)` where `m = alpha / 2` is the frame abscissa
//! of the chord midpoint, `d = (0, delta)`, and the lines
//! `r+(t) = delta + (1 - delta) t / m`, `r- = -r+` meet at
//! `c = (delta m / (delta - 1), 0)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::ortho::chord_midpoint_pair;
use crate::vec2::{Mat2, Vec2};

/// Invariant tolerance for frame points on the sphere.
pub const FRAME_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaFrame {
    pub basis_e1: Vec2,
    pub basis_e2: Vec2,
    /// `a + a' = alpha z`.
    pub alpha: f64,
    /// `b + b' = beta z`.
    pub beta: f64,
    /// `2 / ||a - a'||`.
    pub delta: f64,
    pub a: Vec2,
    pub a_prime: Vec2,
    pub b: Vec2,
    pub b_prime: Vec2,
    pub c: Vec2,
    pub d: Vec2,
    pub d_prime: Vec2,
    pub r_plus_slope: f64,
    pub r_minus_slope: f64,
    #[serde(skip)]
    to_frame: Mat2,
}

impl LemmaFrame {
    /// Frame abscissa of `(a + a')/2`.
    pub fn alpha_mid(&self) -> f64 {
        0.5 * self.alpha
    }

    pub fn beta_mid(&self) -> f64 {
        0.5 * self.beta
    }

    pub fn to_frame(&self, p: Vec2) -> Vec2 {
        self.to_frame.apply(p)
    }

    pub fn from_frame(&self, q: Vec2) -> Vec2 {
        self.basis_e1 * q.u + self.basis_e2 * q.w
    }

    /// `r+(t)` in frame coordinates.
    pub fn r_plus(&self, t: f64) -> f64 {
        self.delta + self.r_plus_slope * t
    }

    pub fn r_minus(&self, t: f64) -> f64 {
        -self.delta + self.r_minus_slope * t
    }

    /// Names of violated frame invariants (empty when the frame is sound).
    pub fn check(&self, n: &Norm) -> Vec<String> {
        let mut bad = Vec::new();
        let on_sphere = [
            ("a", self.a),
            ("a'", self.a_prime),
            ("b", self.b),
            ("b'", self.b_prime),
            ("d", self.d),
            ("d'", self.d_prime),
        ];
        for (name, p) in on_sphere {
            if (n.gauge(p) - 1.0).abs() > FRAME_TOL {
                bad.push(format!("{name} off the sphere by {:e}", n.gauge(p) - 1.0));
            }
        }
        let z = self.basis_e1;
        if (self.a + self.a_prime).dist(z * self.alpha) > FRAME_TOL {
            bad.push("a + a' != alpha z".into());
        }
        if (self.b + self.b_prime).dist(z * self.beta) > FRAME_TOL {
            bad.push("b + b' != beta z".into());
        }
        if self.delta <= 1.0 {
            bad.push(format!("delta = {} <= 1", self.delta));
        }
        let m = self.alpha_mid();
        let c_frame = self.to_frame(self.c);
        if c_frame.dist(Vec2::new(self.delta * m / (self.delta - 1.0), 0.0)) > FRAME_TOL * c_frame.euclid().max(1.0) {
            bad.push("c misplaced".into());
        }
        if (self.r_plus(m) - 1.0).abs() > FRAME_TOL {
            bad.push("r+(alpha) != 1".into());
        }
        if self.to_frame(self.a).dist(Vec2::new(m, 1.0)) > FRAME_TOL {
            bad.push("a != (alpha, 1) in frame coordinates".into());
        }
        bad
    }
}

/// Builds the frame for the unit `z` at angle `z_dir` with chord midpoints
/// `alpha z / 2` and `beta z / 2`.
pub fn build_lemma_frame(n: &Norm, z_dir: f64, alpha: f64, beta: f64) -> Result<LemmaFrame> {
    if !(alpha > 0.0 && alpha <= beta) {
        return Err(Error::Precondition(format!("need 0 < alpha <= beta, got {alpha}, {beta}")));
    }
    if !n.detect_flat_segments(1024)?.is_empty() {
        return Err(Error::Precondition("lemma frames need a strictly convex norm".into()));
    }
    let z = n.unit_point(z_dir);
    if n.gauge(z * (0.5 * beta)) >= 1.0 {
        return Err(Error::Precondition(format!("beta z / 2 is not interior (beta = {beta})")));
    }
    let oriented = |mid: Vec2| -> Result<(Vec2, Vec2)> {
        let pair = chord_midpoint_pair(n, mid)?;
        Ok(if z.det(pair.x - pair.x_prime) >= 0.0 { (pair.x, pair.x_prime) } else { (pair.x_prime, pair.x) })
    };
    let (a, a_prime) = oriented(z * (0.5 * alpha))?;
    let (b, b_prime) = oriented(z * (0.5 * beta))?;
    let e2 = (a - a_prime) * 0.5;
    let delta = 2.0 / n.gauge(a - a_prime);
    let m = 0.5 * alpha;
    let to_frame =
        Mat2([[z.u, e2.u], [z.w, e2.w]]).inverse().ok_or_else(|| Error::Internal("chord is parallel to z".into()))?;
    Ok(LemmaFrame {
        basis_e1: z,
        basis_e2: e2,
        alpha,
        beta,
        delta,
        a,
        a_prime,
        b,
        b_prime,
        c: z * (delta * m / (delta - 1.0)),
        d: e2 * delta,
        d_prime: e2 * -delta,
        r_plus_slope: (1.0 - delta) / m,
        r_minus_slope: (delta - 1.0) / m,
        to_frame,
    })
}
