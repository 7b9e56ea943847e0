//! Points and vectors of the plane in a fixed coordinate basis.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or vector) of the plane. Serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub u: f64,
    pub w: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { u: 0.0, w: 0.0 };

    pub const fn new(u: f64, w: f64) -> Self {
        Self { u, w }
    }

    /// Unit vector `(cos theta, sin theta)` in the Euclidean chart.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { u: c, w: s }
    }

    pub fn is_finite(self) -> bool {
        self.u.is_finite() && self.w.is_finite()
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.u * other.u + self.w * other.w
    }

    /// `det[self, other]`; zero iff the two vectors are linearly dependent.
    pub fn det(self, other: Vec2) -> f64 {
        self.u * other.w - self.w * other.u
    }

    /// Euclidean length in coordinates. Only used as a chart-level measurement.
    pub fn euclid(self) -> f64 {
        self.u.hypot(self.w)
    }

    pub fn angle(self) -> f64 {
        self.w.atan2(self.u)
    }

    pub fn midpoint(self, other: Vec2) -> Vec2 {
        Vec2::new(0.5 * (self.u + other.u), 0.5 * (self.w + other.w))
    }

    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }

    /// Euclidean coordinate distance, used for tolerance checks between points.
    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).euclid()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.u, v.w]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.u + rhs.u, self.w + rhs.w)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.u - rhs.u, self.w - rhs.w)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.u, -self.w)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, t: f64) -> Vec2 {
        Vec2::new(self.u * t, self.w * t)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// A 2x2 real matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        let m = &self.0;
        Vec2::new(m[0][0] * v.u + m[0][1] * v.w, m[1][0] * v.u + m[1][1] * v.w)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl From<[[f64; 2]; 2]> for Mat2 {
    fn from(m: [[f64; 2]; 2]) -> Self {
        Mat2(m)
    }
}

impl From<Mat2> for [[f64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        m.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_detects_dependence() {
        let a = Vec2::new(1.0, 2.0);
        assert_eq!(a.det(a * -3.0), 0.0);
        assert_eq!(Vec2::new(1.0, 0.0).det(Vec2::new(0.0, 1.0)), 1.0);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat2([[1.0, 0.5], [0.0, 1.0]]);
        let inv = m.inverse().unwrap();
        let v = Vec2::new(0.3, -2.0);
        let back = inv.apply(m.apply(v));
        assert!(back.dist(v) < 1e-15);
        assert!(Mat2([[1.0, 2.0], [2.0, 4.0]]).inverse().is_none());
    }

    #[test]
    fn serializes_as_pair() {
        let s = serde_json::to_string(&Vec2::new(1.0, -0.5)).unwrap();
        assert_eq!(s, "[1.0,-0.5]");
        let v: Vec2 = serde_json::from_str("[2, 3]").unwrap();
        assert_eq!(v, Vec2::new(2.0, 3.0));
    }
}
