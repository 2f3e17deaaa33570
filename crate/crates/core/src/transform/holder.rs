//! Discrete Hölder norms.
//!
//! `‖f‖ = sup|f| + sup_{x≠y} |f(x) - f(y)| / |x - y|^λ` over grid nodes, taken over all
//! pairs up to [`EXHAUSTIVE_LIMIT`] nodes and over a fixed-seed sample of
//! [`SAMPLED_PAIRS`] pairs above that (a lower bound on the exhaustive value).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::deriv;
use super::grid::DiskGrid;
use crate::{Error, Result, C64};

pub const EXHAUSTIVE_LIMIT: usize = 10_000;
pub const SAMPLED_PAIRS: usize = 1_000_000;
const PAIR_SEED: u64 = 0x5e_ed0f_4a1d;

pub fn holder_norm(f: &DiskGrid, lambda: f64) -> Result<f64> {
    let points: Vec<C64> = (0..f.node_count()).map(|k| f.node(k)).collect();
    let values: Vec<Vec<C64>> = (0..f.node_count()).map(|k| f.at(k)).collect();
    holder_norm_points(&points, &values, lambda)
}

/// `max(‖∂f‖, ‖∂̄f‖)` with the grid's own exponent.
pub fn holder_prime_norm(f: &DiskGrid) -> Result<f64> {
    let a = holder_norm(&deriv::dz(f)?, f.lambda())?;
    let b = holder_norm(&deriv::dbar(f)?, f.lambda())?;
    Ok(a.max(b))
}

/// Hölder norm of vector values sampled at arbitrary distinct points.
pub fn holder_norm_points(points: &[C64], values: &[Vec<C64>], lambda: f64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidInput(format!("Hölder exponent {lambda} not in (0, 1)")));
    }
    let diff = |a: usize, b: usize| -> f64 {
        values[a]
            .iter()
            .zip(&values[b])
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let sup = values
        .iter()
        .map(|v| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let quotient = |a: usize, b: usize| -> f64 {
        let d = (points[a] - points[b]).norm();
        if d == 0.0 {
            0.0
        } else {
            diff(a, b) / d.powf(lambda)
        }
    };
    let n = points.len();
    let mut semi: f64 = 0.0;
    if n <= EXHAUSTIVE_LIMIT {
        for a in 0..n {
            for b in a + 1..n {
                semi = semi.max(quotient(a, b));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
        for _ in 0..SAMPLED_PAIRS {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            semi = semi.max(quotient(a, b));
        }
    }
    Ok(sup + semi)
}
