//! Deterministic sampling: low-discrepancy angle sequences and seeded RNGs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Reciprocal powers of the plastic number, the generators of the R2
/// sequence.
const R2_A1: f64 = 0.754_877_666_246_692_8;
const R2_A2: f64 = 0.569_840_290_998_053_3;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `i`-th point of the R2 sequence in the unit square, shifted by `seed`.
pub fn r2_point(i: u64, seed: u64) -> (f64, f64) {
    let k = (i + seed) as f64;
    ((0.5 + k * R2_A1).fract(), (0.5 + k * R2_A2).fract())
}

/// Evenly spaced angles `offset + k * span / count` for `k in 0..count`.
pub fn angle_grid(count: usize, span: f64, offset: f64) -> impl Iterator<Item = f64> {
    (0..count).map(move |k| offset + span * k as f64 / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_points_fill_the_square() {
        let mut cells = [[0u32; 4]; 4];
        for i in 0..1600 {
            let (a, b) = r2_point(i, 0);
            assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
            cells[(a * 4.0) as usize][(b * 4.0) as usize] += 1;
        }
        for row in cells {
            for c in row {
                assert!((80..=120).contains(&c), "{c}");
            }
        }
    }

    #[test]
    fn seeded_rng_repeats() {
        use rand::Rng;
        let a: Vec<f64> = (0..4).map(|_| 0.0).scan(seeded_rng(7), |r, _| Some(r.random())).collect();
        let b: Vec<f64> = (0..4).map(|_| 0.0).scan(seeded_rng(7), |r, _| Some(r.random())).collect();
        assert_eq!(a, b);
    }
}
