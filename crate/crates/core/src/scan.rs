//! Root isolation for continuous functions with `g(t + pi) = -g(t)`.
//!
//! Such a function always changes sign on any half-turn window, so a grid
//! scan plus bisection finds every root separated by more than the grid
//! spacing. Samples with `|g| <= zero_tol` are treated as exact zeros; three
//! or more consecutive zero samples are reported as an arc of roots.

use std::f64::consts::PI;

use crate::roots::{bisect_predicate, bisect_root, MAX_BISECTIONS};

/// Minimum number of consecutive zero samples reported as an arc.
pub const MIN_ARC_SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Root {
    Point {
        t: f64,
    },
    /// `[t_lo, t_hi]` with `t_mid` the central zero sample.
    Arc {
        t_lo: f64,
        t_hi: f64,
        t_mid: f64,
    },
}

impl Root {
    pub fn representative(&self) -> f64 {
        match *self {
            Root::Point { t } => t,
            Root::Arc { t_mid, .. } => t_mid,
        }
    }
}

/// Reduces an angle to `[offset, offset + pi)`; the flag reports whether an
/// odd number of half turns was removed (the point must then be negated).
pub fn reduce_half_turn(t: f64, offset: f64) -> (f64, bool) {
    let k = ((t - offset) / PI).floor();
    let mut r = t - k * PI;
    let mut odd = (k as i64).rem_euclid(2) == 1;
    if r >= offset + PI {
        r -= PI;
        odd = !odd;
    }
    (r, odd)
}

/// Scans `g` on `resolution` samples of `[offset, offset + pi)` and returns
/// roots ordered by their reduced representative angle. Angles inside a
/// returned root may lie outside the window (arcs can straddle it); use
/// [`reduce_half_turn`] on them.
pub fn scan_antisymmetric<G>(g: G, offset: f64, resolution: usize, zero_tol: f64, root_tol: f64) -> Vec<Root>
where
    G: Fn(f64) -> f64,
{
    let n = resolution;
    let step = PI / n as f64;
    let base: Vec<f64> = (0..n).map(|k| g(offset + step * k as f64)).collect();
    let is_zero = |v: f64| v.abs() <= zero_tol;
    if base.iter().all(|&v| is_zero(v)) {
        return vec![Root::Arc { t_lo: offset, t_hi: offset + PI, t_mid: offset + 0.5 * PI }];
    }
    // Walk a window of n + 1 samples that begins at a non-zero sample, so
    // neither a zero run nor a sign change is split by the window edge.
    let first = base.iter().position(|&v| !is_zero(v)).unwrap();
    let value = |j: usize| {
        let k = first + j;
        let v = base[k % n];
        if (k / n) % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let angle = |j: usize| offset + step * (first + j) as f64;

    let mut roots = Vec::new();
    let mut j = 0;
    while j < n {
        let (a, b) = (value(j), value(j + 1));
        if is_zero(b) {
            let run_start = j + 1;
            let mut run_end = run_start;
            while is_zero(value(run_end + 1)) {
                run_end += 1;
            }
            let len = run_end - run_start + 1;
            if len >= MIN_ARC_SAMPLES {
                let zero_at = |t: f64| is_zero(g(t));
                let (t_lo, _) = bisect_predicate(angle(run_start), angle(j), MAX_BISECTIONS, zero_at);
                let (t_hi, _) = bisect_predicate(angle(run_end), angle(run_end + 1), MAX_BISECTIONS, zero_at);
                roots.push(Root::Arc { t_lo, t_hi, t_mid: angle((run_start + run_end) / 2) });
            } else {
                let best = (run_start..=run_end).min_by(|&p, &q| value(p).abs().total_cmp(&value(q).abs())).unwrap();
                roots.push(Root::Point { t: angle(best) });
            }
            j = run_end + 1;
            continue;
        }
        if (a < 0.0) != (b < 0.0) {
            let t = bisect_root(angle(j), angle(j + 1), root_tol, &g);
            roots.push(Root::Point { t });
        }
        j += 1;
    }
    roots.sort_by(|p, q| {
        reduce_half_turn(p.representative(), offset).0.total_cmp(&reduce_half_turn(q.representative(), offset).0)
    });
    roots
}
