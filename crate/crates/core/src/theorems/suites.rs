//! Sampled verification suites over many pairs or frames.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::frame::{build_lemma_frame, LemmaFrame};
use super::witness::Witness;
use crate::bisector::intersect_symmetric;
use crate::error::Result;
use crate::norm::Norm;
use crate::sampling::{r2_point, seeded_rng};
use crate::vec2::Vec2;

/// A sampled point counts as interior only when inside by this margin.
pub const INTERIOR_MARGIN: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Pair or frame index.
    pub index: usize,
    pub point: Option<Vec2>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub margins: BTreeMap<String, f64>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), checked: 0, violations: Vec::new(), margins: BTreeMap::new() }
    }

    fn min_margin(&mut self, key: &str, value: f64) {
        let slot = self.margins.entry(key.into()).or_insert(f64::INFINITY);
        *slot = slot.min(value);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Parameters of [`verify_prop_strict`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCheck {
    pub pairs: usize,
    pub t_max: f64,
    pub count: usize,
    pub seed: u64,
}

impl Default for PairCheck {
    fn default() -> Self {
        Self { pairs: 200, t_max: 8.0, count: 201, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub pairs_checked: usize,
    /// One witness per pair whose bisectors share a nonzero point.
    pub violations: Vec<Witness>,
}

impl PairReport {
    pub fn to_suite(&self) -> SuiteReport {
        SuiteReport {
            name: "unit_pair_bisectors_meet_only_at_origin".into(),
            checked: self.pairs_checked,
            violations: self
                .violations
                .iter()
                .enumerate()
                .map(|(i, w)| Violation { index: i, point: Some(w.z), detail: format!("x = {:?}, y = {:?}", w.x, w.y) })
                .collect(),
            margins: BTreeMap::new(),
        }
    }
}

/// Angle pairs in `[0, pi)^2` from the R2 sequence, skipping nearly
/// parallel directions.
pub fn unit_pair_angles(pairs: usize, seed: u64) -> Vec<(f64, f64)> {
    (0u64..)
        .map(|i| {
            let (a, b) = r2_point(i, seed);
            (PI * a, PI * b)
        })
        .filter(|(s, t)| (s - t).sin().abs() >= 1e-2)
        .take(pairs)
        .collect()
}

/// Runs [`intersect_symmetric`] on unit pairs; for a strictly convex norm
/// no pair may share a nonzero bisector point.
pub fn verify_prop_strict(n: &Norm, check: PairCheck) -> Result<PairReport> {
    verify_pairs(n, &unit_pair_angles(check.pairs, check.seed), check)
}

/// As [`verify_prop_strict`] on an explicit list of direction pairs.
pub fn verify_pairs(n: &Norm, angles: &[(f64, f64)], check: PairCheck) -> Result<PairReport> {
    let found = angles
        .par_iter()
        .map(|&(s, t)| {
            let (x, y) = (n.unit_point(s), n.unit_point(t));
            let pts = intersect_symmetric(n, x, y, check.t_max, check.count)?;
            Ok(pts.into_iter().find_map(|z| Witness::new(n, x, y, z).ok()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairReport { pairs_checked: angles.len(), violations: found.into_iter().flatten().collect() })
}

/// One frame of the lemma suite: where it sits and whether the two chord
/// midpoints coincide.
#[derive(Debug, Clone, Copy)]
struct FrameSpec {
    z_dir: f64,
    alpha: f64,
    beta: f64,
}

fn frame_specs(frames: usize, seed: u64) -> Vec<FrameSpec> {
    let mut rng = seeded_rng(seed);
    (0..frames)
        .map(|i| {
            let z_dir = rng.random_range(0.0..2.0 * PI);
            let alpha = rng.random_range(0.05..1.8);
            let beta = if i % 5 == 4 { alpha } else { rng.random_range(alpha..1.9) };
            FrameSpec { z_dir, alpha, beta }
        })
        .collect()
}

pub const LEMMA_SUITES: [&str; 7] = [
    "frame_invariants",
    "hull_left_part_in_ball",
    "ball_right_part_in_hull",
    "ball_right_part_in_shrunk_ball",
    "shrunk_ball_left_part_in_ball",
    "chord_width_decreases_outward",
    "equal_midpoints_share_chord",
];

/// Samples the inclusions of the chord frame over `frames` random frames
/// with `samples` points per inclusion and frame.
pub fn lemma_suite(n: &Norm, frames: usize, samples: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    let specs = frame_specs(frames, seed);
    let per_frame = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let frame = build_lemma_frame(n, spec.z_dir, spec.alpha, spec.beta)?;
            let mut rng = seeded_rng(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1)));
            Ok(check_frame(n, &frame, i, samples, &mut rng))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut merged: Vec<SuiteReport> = LEMMA_SUITES.iter().map(|s| SuiteReport::new(s)).collect();
    for reports in per_frame {
        for (acc, r) in merged.iter_mut().zip(reports) {
            acc.checked += r.checked;
            acc.violations.extend(r.violations);
            for (k, v) in r.margins {
                acc.min_margin(&k, v);
            }
        }
    }
    Ok(merged)
}

fn check_frame<R: Rng>(n: &Norm, f: &LemmaFrame, index: usize, samples: usize, rng: &mut R) -> Vec<SuiteReport> {
    let mut out: Vec<SuiteReport> = LEMMA_SUITES.iter().map(|s| SuiteReport::new(s)).collect();
    let m = f.alpha_mid();
    let violation = |point: Option<Vec2>, detail: String| Violation { index, point, detail };

    let [inv, hull_left, ball_right, shrunk_right, shrunk_left, chord, equal] = &mut out[..] else { unreachable!() };

    inv.checked += 1;
    for problem in f.check(n) {
        inv.violations.push(violation(None, problem));
    }

    // conv{d, d', c} restricted to 0 < p1 < m lies in the open ball.
    for k in 0..samples {
        let t = rng.random_range(0.0..m);
        if t == 0.0 {
            continue;
        }
        let (lo, hi) = (f.r_minus(t), f.r_plus(t));
        let s = match k % 4 {
            0 => hi,
            1 => lo,
            _ => rng.random_range(lo..=hi),
        };
        let p = f.from_frame(Vec2::new(t, s));
        let margin = 1.0 - n.gauge(p);
        hull_left.checked += 1;
        hull_left.min_margin("interior", margin);
        if margin <= INTERIOR_MARGIN {
            hull_left.violations.push(violation(Some(p), format!("gauge {} not below 1", 1.0 - margin)));
        }
    }

    // Points of the ball beyond the chord: half on the sphere arc, half
    // inside the cap.
    let arc = sphere_arc_beyond_chord(f);
    for k in 0..samples {
        let theta = arc.0 + rng.random_range(0.0..arc.1);
        let mut q = n.unit_point(theta);
        if k % 2 == 1 {
            let chord_pt = f.a_prime.lerp(f.a, rng.random_range(0.0..=1.0));
            q = q.lerp(chord_pt, rng.random_range(0.0..1.0));
        }
        let qf = f.to_frame(q);
        if qf.u <= m {
            continue;
        }
        let hull_margin = (f.r_plus(qf.u) - qf.w).min(qf.w - f.r_minus(qf.u));
        ball_right.checked += 1;
        ball_right.min_margin("interior", hull_margin);
        if hull_margin <= INTERIOR_MARGIN {
            ball_right.violations.push(violation(Some(q), format!("outside conv(d, d', c) by {:e}", -hull_margin)));
        }
        let shrunk = 1.0 - n.gauge((q - f.basis_e1 * m) * f.delta);
        shrunk_right.checked += 1;
        shrunk_right.min_margin("interior", shrunk);
        if shrunk <= INTERIOR_MARGIN {
            shrunk_right.violations.push(violation(Some(q), format!("outside the shrunk ball by {:e}", -shrunk)));
        }
    }

    // (m, 0) + B_X / delta restricted to p1 < m lies in the open ball.
    let mut drawn = 0;
    while drawn < samples {
        let mut q = n.unit_point(rng.random_range(0.0..2.0 * PI));
        if drawn % 2 == 1 {
            q = q * rng.random_range(0.0f64..1.0).sqrt();
        }
        if f.to_frame(q).u >= 0.0 {
            continue;
        }
        drawn += 1;
        let p = f.basis_e1 * m + q * f.delta.recip();
        let margin = 1.0 - n.gauge(p);
        shrunk_left.checked += 1;
        shrunk_left.min_margin("interior", margin);
        if margin <= INTERIOR_MARGIN {
            shrunk_left.violations.push(violation(Some(p), format!("gauge {} not below 1", 1.0 - margin)));
        }
    }

    let width_a = n.gauge(f.a - f.a_prime);
    let width_b = n.gauge(f.b - f.b_prime);
    if f.beta > f.alpha {
        chord.checked += 1;
        let margin = width_a - width_b;
        chord.min_margin("width_drop", margin);
        if margin <= 0.0 {
            chord.violations.push(violation(None, format!("||b - b'|| = {width_b} >= ||a - a'|| = {width_a}")));
        }
    } else {
        equal.checked += 1;
        let gap = f.a.dist(f.b).max(f.a_prime.dist(f.b_prime));
        equal.min_margin("negative_gap", -gap);
        if gap > 1e-9 {
            equal.violations.push(violation(Some(f.b), format!("two chords with the same midpoint, gap {gap:e}")));
        }
    }
    out
}

/// `(start, span)` of the sphere arc from `a'` to `a` that lies beyond the
/// chord, i.e. on the side of `z`.
fn sphere_arc_beyond_chord(f: &LemmaFrame) -> (f64, f64) {
    let start = f.a_prime.angle();
    let span = (f.a.angle() - start).rem_euclid(2.0 * PI);
    let z_at = (f.basis_e1.angle() - start).rem_euclid(2.0 * PI);
    if z_at < span {
        (start, span)
    } else {
        (f.a.angle(), 2.0 * PI - span)
    }
}
