//! Norms on the plane and their gauges.
//!
//! A [`Norm`] is immutable after construction. Every kind evaluates its
//! gauge in closed form, so evaluation is pure and thread-safe.

mod def;
mod flat;

use std::f64::consts::PI;

pub use def::{InfTag, NormDef, PValue};
pub use flat::{scan_flat_segments, Convexity, FlatSegment, FLATNESS_TOL};

use crate::error::{ensure_finite, Error, Result};
use crate::sampling::r2_point;
use crate::vec2::{Mat2, Vec2};

/// Parallelogram-law residual at or below which a norm is called Euclidean.
pub const EUCLIDEAN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Norm {
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Quadratic(Mat2),
    PNorm(Exponent),
    Polygon(Polygon),
    LinearImage { inner: Box<Norm>, map: Mat2 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Exponent {
    One,
    Finite(f64),
    Infinity,
}

/// Symmetric convex polygon as unit ball. The gauge is the maximum of the
/// edge-supporting functionals `|<n_i, v>| / h_i`, precomputed once.
#[derive(Debug, Clone, PartialEq)]
struct Polygon {
    vertices: Vec<Vec2>,
    normals: Vec<Vec2>,
    heights: Vec<f64>,
}

impl Polygon {
    fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidNorm(format!("polygon needs an even number of at least 4 vertices, got {n}")));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidNorm(format!("vertex {i} is not finite")));
            }
            if *v == Vec2::ZERO {
                return Err(Error::InvalidNorm(format!("vertex {i} is the origin")));
            }
        }
        for i in 0..n / 2 {
            if vertices[i + n / 2] != -vertices[i] {
                return Err(Error::InvalidNorm(format!(
                    "vertices {i} and {} are not antipodal (polygon must be centrally symmetric)",
                    i + n / 2
                )));
            }
        }
        let mut turn = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if a.det(b) <= 0.0 {
                return Err(Error::InvalidNorm(format!(
                    "vertices {i} and {} are not in counter-clockwise angular order",
                    (i + 1) % n
                )));
            }
            if (b - a).det(c - b) <= 0.0 {
                return Err(Error::InvalidNorm(format!("vertex {} is not in strictly convex position", (i + 1) % n)));
            }
            turn += a.det(b).atan2(a.dot(b));
        }
        if (turn - 2.0 * PI).abs() > 1e-9 {
            return Err(Error::InvalidNorm("vertices wind more than once around the origin".into()));
        }
        let mut normals = Vec::with_capacity(n);
        let mut heights = Vec::with_capacity(n);
        for i in 0..n {
            let e = vertices[(i + 1) % n] - vertices[i];
            let normal = Vec2::new(e.w, -e.u);
            normals.push(normal);
            heights.push(normal.dot(vertices[i]));
        }
        Ok(Self { vertices, normals, heights })
    }

    fn gauge(&self, v: Vec2) -> f64 {
        self.normals.iter().zip(&self.heights).map(|(n, h)| n.dot(v).abs() / h).fold(0.0, f64::max)
    }
}

const SQUARE: [Vec2; 4] = [Vec2::new(1.0, -1.0), Vec2::new(1.0, 1.0), Vec2::new(-1.0, 1.0), Vec2::new(-1.0, -1.0)];
const DIAMOND: [Vec2; 4] = [Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0), Vec2::new(0.0, -1.0)];

impl Norm {
    /// `sqrt(v^T A v)` for a symmetric positive-definite `A`.
    pub fn quadratic(form: Mat2) -> Result<Self> {
        let m = form.0;
        if !form.is_finite() {
            return Err(Error::InvalidNorm("quadratic form has non-finite entries".into()));
        }
        if m[0][1] != m[1][0] {
            return Err(Error::InvalidNorm("quadratic form is not symmetric".into()));
        }
        if m[0][0] <= 0.0 || form.det() <= 0.0 {
            return Err(Error::InvalidNorm("quadratic form is not positive definite".into()));
        }
        Ok(Self { kind: Kind::Quadratic(form) })
    }

    pub fn euclidean() -> Self {
        Self { kind: Kind::Quadratic(Mat2::IDENTITY) }
    }

    /// The `l_p` norm; pass `f64::INFINITY` for the max norm.
    pub fn pnorm(p: f64) -> Result<Self> {
        let exp = if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidNorm(format!("p must be >= 1 or inf, got {p}")));
        } else if p == 1.0 {
            Exponent::One
        } else if p == f64::INFINITY {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        };
        Ok(Self { kind: Kind::PNorm(exp) })
    }

    /// Polygonal unit ball. Vertices must be listed counter-clockwise,
    /// strictly convex, with `vertices[i + n/2] == -vertices[i]` exactly.
    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Ok(Self { kind: Kind::Polygon(Polygon::new(vertices)?) })
    }

    /// Regular polygon with an even number of sides and a vertex at `(1, 0)`.
    pub fn regular_polygon(sides: usize) -> Result<Self> {
        if sides < 4 || !sides.is_multiple_of(2) {
            return Err(Error::InvalidNorm(format!("regular polygon needs an even side count >= 4, got {sides}")));
        }
        let half: Vec<Vec2> = (0..sides / 2).map(|k| Vec2::from_angle(2.0 * PI * k as f64 / sides as f64)).collect();
        let vertices = half.iter().copied().chain(half.iter().map(|&v| -v)).collect();
        Self::polygon(vertices)
    }

    /// The norm `v -> inner(map v)`; its unit ball is `map^-1(B_inner)`.
    pub fn linear_image(inner: Norm, map: Mat2) -> Result<Self> {
        if !map.is_finite() || map.det() == 0.0 {
            return Err(Error::InvalidNorm("linear image map must be finite and invertible".into()));
        }
        Ok(Self { kind: Kind::LinearImage { inner: Box::new(inner), map } })
    }

    pub fn from_def(def: &NormDef) -> Result<Self> {
        match def {
            NormDef::Quadratic { form } => Self::quadratic(*form),
            NormDef::Pnorm { p } => Self::pnorm(p.value()),
            NormDef::Polygon { vertices } => Self::polygon(vertices.clone()),
            NormDef::LinearImage { inner, map } => Self::linear_image(Self::from_def(inner)?, *map),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_def(&NormDef::from_json(text)?)
    }

    pub fn to_def(&self) -> NormDef {
        match &self.kind {
            Kind::Quadratic(form) => NormDef::Quadratic { form: *form },
            Kind::PNorm(e) => NormDef::Pnorm {
                p: PValue::from_value(match e {
                    Exponent::One => 1.0,
                    Exponent::Finite(p) => *p,
                    Exponent::Infinity => f64::INFINITY,
                }),
            },
            Kind::Polygon(poly) => NormDef::Polygon { vertices: poly.vertices.clone() },
            Kind::LinearImage { inner, map } => NormDef::LinearImage { inner: Box::new(inner.to_def()), map: *map },
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Quadratic(_) => "quadratic",
            Kind::PNorm(_) => "pnorm",
            Kind::Polygon(_) => "polygon",
            Kind::LinearImage { .. } => "linear_image",
        }
    }

    /// `||v||`. Inputs are assumed finite; see [`Norm::checked_gauge`].
    pub fn gauge(&self, v: Vec2) -> f64 {
        match &self.kind {
            Kind::Quadratic(form) => v.dot(form.apply(v)).max(0.0).sqrt(),
            Kind::PNorm(Exponent::One) => v.u.abs() + v.w.abs(),
            Kind::PNorm(Exponent::Infinity) => v.u.abs().max(v.w.abs()),
            Kind::PNorm(Exponent::Finite(p)) => {
                let (a, b) = (v.u.abs(), v.w.abs());
                let m = a.max(b);
                if m == 0.0 {
                    return 0.0;
                }
                m * ((a / m).powf(*p) + (b / m).powf(*p)).powf(p.recip())
            }
            Kind::Polygon(poly) => poly.gauge(v),
            Kind::LinearImage { inner, map } => inner.gauge(map.apply(v)),
        }
    }

    pub fn checked_gauge(&self, v: Vec2) -> Result<f64> {
        ensure_finite(v, "gauge argument")?;
        Ok(self.gauge(v))
    }

    /// Point of the unit sphere in direction `theta`.
    pub fn unit_point(&self, theta: f64) -> Vec2 {
        let dir = Vec2::from_angle(theta);
        dir * self.gauge(dir).recip()
    }

    /// The unique `lambda (cos theta, sin theta)`, `lambda > 0`, of gauge `r`.
    pub fn sphere_point(&self, theta: f64, r: f64) -> Result<Vec2> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("sphere_point angle"));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Precondition(format!("sphere_point radius must be positive, got {r}")));
        }
        Ok(self.unit_point(theta) * r)
    }

    /// True when the kind is strictly convex by construction: inner-product
    /// norms, `l_p` with `1 < p < inf`, and linear images of those.
    pub fn is_strictly_convex_kind(&self) -> bool {
        match &self.kind {
            Kind::Quadratic(_) | Kind::PNorm(Exponent::Finite(_)) => true,
            Kind::PNorm(_) | Kind::Polygon(_) => false,
            Kind::LinearImage { inner, .. } => inner.is_strictly_convex_kind(),
        }
    }

    /// Vertices (counter-clockwise) of the unit ball when it is a polygon.
    pub fn polygon_vertices(&self) -> Option<Vec<Vec2>> {
        match &self.kind {
            Kind::Polygon(poly) => Some(poly.vertices.clone()),
            Kind::PNorm(Exponent::Infinity) => Some(SQUARE.to_vec()),
            Kind::PNorm(Exponent::One) => Some(DIAMOND.to_vec()),
            Kind::Quadratic(_) | Kind::PNorm(Exponent::Finite(_)) => None,
            Kind::LinearImage { inner, map } => {
                let inv = map.inverse()?;
                let mut verts: Vec<Vec2> = inner.polygon_vertices()?.into_iter().map(|v| inv.apply(v)).collect();
                if map.det() < 0.0 {
                    verts.reverse();
                }
                Some(verts)
            }
        }
    }

    /// Maximal flat segments of the unit sphere.
    ///
    /// Polygonal balls (including `p = 1`, `p = inf` and their linear
    /// images) report their edges exactly; strictly convex kinds report
    /// none; anything else falls back to a midpoint scan at `resolution`.
    pub fn detect_flat_segments(&self, resolution: usize) -> Result<Vec<FlatSegment>> {
        if resolution < 64 {
            return Err(Error::Precondition(format!("resolution must be >= 64, got {resolution}")));
        }
        if self.is_strictly_convex_kind() {
            return Ok(Vec::new());
        }
        if let Some(verts) = self.polygon_vertices() {
            let n = verts.len();
            return Ok((0..n)
                .map(|i| FlatSegment { c: verts[(i + 1) % n], c_prime: verts[i], certified: true })
                .collect());
        }
        Ok(scan_flat_segments(self, resolution))
    }

    pub fn is_strictly_convex(&self, resolution: usize) -> Result<Convexity> {
        Ok(match self.detect_flat_segments(resolution)?.into_iter().next() {
            None => Convexity::StrictlyConvex,
            Some(seg) => Convexity::NotStrictlyConvex(seg),
        })
    }

    /// Parallelogram-law probe over `samples` unit pairs drawn from an R2
    /// low-discrepancy angle sequence. Returns `(is_euclidean, residual)`.
    pub fn is_euclidean(&self, samples: usize) -> Result<(bool, f64)> {
        if samples < 100 {
            return Err(Error::Precondition(format!("is_euclidean needs >= 100 samples, got {samples}")));
        }
        let residual = (0..samples as u64)
            .map(|i| {
                let (a, b) = r2_point(i, 0);
                parallelogram_defect(self, self.unit_point(2.0 * PI * a), self.unit_point(2.0 * PI * b))
            })
            .fold(0.0, f64::max);
        Ok((residual <= EUCLIDEAN_TOL, residual))
    }
}

/// `| ||u+v||^2 + ||u-v||^2 - 2||u||^2 - 2||v||^2 |`.
pub fn parallelogram_defect(n: &Norm, u: Vec2, v: Vec2) -> f64 {
    let sq = |x: Vec2| {
        let g = n.gauge(x);
        g * g
    };
    (sq(u + v) + sq(u - v) - 2.0 * sq(u) - 2.0 * sq(v)).abs()
}
