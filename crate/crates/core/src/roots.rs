//! Derivative-free bracketing and bisection on monotone or sign-changing
//! scalar functions. Gauges are in general not differentiable (polygons,
//! p = 1, p = inf), so nothing here relies on derivatives.

/// Hard cap on bisection steps. Doubles have 64 bits, so more steps than
/// this cannot shrink a finite bracket further.
pub const MAX_BISECTIONS: usize = 200;

/// Locates the boundary of a predicate that is `true` at `lo` and `false` at
/// `hi`. Returns `(last_true, first_false)` after bisecting until the two
/// points are adjacent floats (or `max_iter` runs out).
pub fn bisect_predicate<F>(mut lo: f64, mut hi: f64, max_iter: usize, mut pred: F) -> (f64, f64)
where
    F: FnMut(f64) -> bool,
{
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Bisection for a root of `f` on `[a, b]` where `f(a)` and `f(b)` have
/// opposite signs (or one is zero). Stops once `|f| <= ftol` or the bracket
/// collapses. Returns the abscissa with the smallest `|f|` seen among the
/// final bracket ends.
pub fn bisect_root<F>(a: f64, b: f64, ftol: f64, mut f: F) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid);
        if fm.abs() <= ftol {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if flo.abs() <= fhi.abs() {
        lo
    } else {
        hi
    }
}

/// Expands `[-s, s]` by powers of two until `neg_side(-s)` and `pos_side(s)`
/// both hold. Returns `None` after `max_doublings` failures.
pub fn expand_symmetric<F>(start: f64, max_doublings: usize, mut holds_at: F) -> Option<f64>
where
    F: FnMut(f64) -> bool,
{
    let mut s = start;
    for _ in 0..max_doublings {
        if holds_at(s) {
            return Some(s);
        }
        s *= 2.0;
    }
    None
}
