//! Computational geometry of two-dimensional normed planes: gauges,
//! isosceles orthogonality, bisectors `B(-x, x)`, and numerical checks of
//! how bisector intersections separate strictly convex, non-strictly convex
//! and Euclidean norms.

pub mod bisector;
pub mod cli;
pub mod error;
pub mod norm;
pub mod ortho;
pub mod report;
pub mod roots;
pub mod sampling;
mod scan;
pub mod svg;
pub mod theorems;
pub mod vec2;

pub use error::{Error, Result};
pub use norm::{Convexity, FlatSegment, Norm, NormDef};
pub use vec2::{Mat2, Vec2};
