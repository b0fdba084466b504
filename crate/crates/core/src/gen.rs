//! Deterministic instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Color, GeomError, Instance};

const MAX_ATTEMPTS: usize = 200_000;

fn check_counts(r: usize, b: usize) -> Result<(), GeomError> {
    if b < r || !(b - r).is_multiple_of(2) || r + b == 0 {
        return Err(GeomError::ColorImbalance { r, b });
    }
    Ok(())
}

/// Rejection-sample `r` red and `b` blue integer points in `[-bound, bound]^2`.
///
/// Points are drawn one at a time; a candidate is rejected if it repeats an
/// abscissa or is collinear with any pair already accepted. The same seed
/// always produces the same instance.
pub fn gen_random(seed: u64, r: usize, b: usize, bound: i64) -> Result<Instance, GeomError> {
    check_counts(r, b)?;
    let n = r + b;
    let side = 2 * bound as i128 + 1;
    if bound < 1 || (bound as i128) * (bound as i128) < n as i128 || side < n as i128 {
        return Err(GeomError::BoundTooSmall { bound, n });
    }
    sample(seed, r, b, |_| bound)
}

/// Like [`gen_random`], but points of color `inner` are drawn from the
/// smaller box `[-inner_bound, inner_bound]^2`, clustering them inside the
/// other color's spread.
pub fn gen_clustered(seed: u64, r: usize, b: usize, bound: i64, inner: Color, inner_bound: i64) -> Result<Instance, GeomError> {
    check_counts(r, b)?;
    let n = r + b;
    let inner_n = if inner == Color::Red { r } else { b };
    for (bd, m) in [(bound, n), (inner_bound, inner_n.max(1))] {
        if bd < 1 || (bd as i128) * (bd as i128) < m as i128 || 2 * bd as i128 + 1 < m as i128 {
            return Err(GeomError::BoundTooSmall { bound: bd, n: m });
        }
    }
    if inner_bound > bound || 2 * bound as i128 + 1 < n as i128 {
        return Err(GeomError::BoundTooSmall { bound, n });
    }
    sample(seed, r, b, |c| if c == inner { inner_bound } else { bound })
}

fn sample(seed: u64, r: usize, b: usize, bound_of: impl Fn(Color) -> i64) -> Result<Instance, GeomError> {
    let n = r + b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<Color> = std::iter::repeat_n(Color::Red, r).chain(std::iter::repeat_n(Color::Blue, b)).collect();
    colors.shuffle(&mut rng);

    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(GeomError::GenerationFailed(MAX_ATTEMPTS));
        }
        let bound = bound_of(colors[pts.len()]);
        let c = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if pts.iter().any(|p| p.0 == c.0) {
            continue;
        }
        let collinear = pts.iter().enumerate().any(|(i, a)| {
            pts[i + 1..].iter().any(|b| {
                (b.0 - a.0) as i128 * (c.1 - a.1) as i128 == (b.1 - a.1) as i128 * (c.0 - a.0) as i128
            })
        });
        if !collinear {
            pts.push(c);
        }
    }
    Instance::from_coords(pts.into_iter().zip(colors).map(|((x, y), c)| (x, y, c)))
}

/// Color counts for one instance of a batch: `delta` in 0..=3 and `2 <= r + b <= max_n`.
pub fn batch_params(seed: u64, max_n: usize) -> Option<(usize, usize)> {
    if max_n < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let delta = rng.gen_range(0..=3usize).min(max_n / 2);
    let r = rng.gen_range(0..=(max_n - 2 * delta) / 2);
    let (r, b) = (r, r + 2 * delta);
    Some(if r + b < 2 { (1, 1) } else { (r, b) })
}

/// Reds and blues in convex position on the parabola `y = x^2`, reds at
/// negative abscissae and blues at positive ones, so the vertical axis
/// separates the colors.
pub fn gen_separated_convex(r: usize, b: usize) -> Result<Instance, GeomError> {
    check_counts(r, b)?;
    let reds = (1..=r as i64).rev().map(|i| (-i, i * i, Color::Red));
    let blues = (1..=b as i64).map(|i| (i, i * i, Color::Blue));
    Instance::from_coords(reds.chain(blues))
}
