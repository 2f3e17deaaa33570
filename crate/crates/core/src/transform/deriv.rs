//! Wirtinger derivatives on polar grids.
//!
//! In polar coordinates `∂ = e^{-iθ}/2 (∂_r - (i/r) ∂_θ)` and
//! `∂̄ = e^{iθ}/2 (∂_r + (i/r) ∂_θ)`. The radial derivative is a centered difference
//! (three-point one-sided on the boundary ring); the angular derivative is the centered
//! difference divided by `2 sin Δθ` instead of `2Δθ`, which makes it exact on
//! `1, e^{±iθ}`. Both derivatives are therefore exact on every function affine in
//! `(ζ, ζ̄)`. At the center the first Fourier mode of rings 1 and 2 is extrapolated.

use super::grid::DiskGrid;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, PartialEq)]
enum Which {
    Dz,
    Dbar,
}

pub fn check_resolution(g: &DiskGrid) -> Result<()> {
    if g.n_r() < 4 || g.n_theta() < 4 {
        return Err(Error::GridTooCoarse {
            n_r: g.n_r(),
            n_theta: g.n_theta(),
        });
    }
    Ok(())
}

/// `∂̄f` at every node.
pub fn dbar(f: &DiskGrid) -> Result<DiskGrid> {
    derivative(f, Which::Dbar)
}

/// `∂f` at every node.
pub fn dz(f: &DiskGrid) -> Result<DiskGrid> {
    derivative(f, Which::Dz)
}

/// `∂f(0)` and `∂̄f(0)` of one component.
pub fn center_derivatives(g: &DiskGrid, values: &[C64]) -> (C64, C64) {
    let n_t = g.n_theta();
    let f0 = values[0];
    let mode = |ring: usize, sign: f64| -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for j in 0..n_t {
            let th = j as f64 * g.dtheta();
            s += (values[g.index(ring, j)] - f0) * C64::from_polar(1.0, -sign * th);
        }
        s / (n_t as f64 * ring as f64 * g.dr())
    };
    let d1 = mode(1, 1.0);
    let d2 = mode(2, 1.0);
    let b1 = mode(1, -1.0);
    let b2 = mode(2, -1.0);
    ((d1 * 4.0 - d2) / 3.0, (b1 * 4.0 - b2) / 3.0)
}

fn derivative(f: &DiskGrid, which: Which) -> Result<DiskGrid> {
    check_resolution(f)?;
    let out = f
        .components()
        .iter()
        .map(|c| component_derivative(f, c, which))
        .collect();
    Ok(f.with_values(out))
}

fn component_derivative(g: &DiskGrid, v: &[C64], which: Which) -> Vec<C64> {
    let n_r = g.n_r();
    let n_t = g.n_theta();
    let dr = g.dr();
    let dth = g.dtheta();
    let sin2 = 2.0 * dth.sin();
    let i = C64::new(0.0, 1.0);
    let mut out = vec![C64::new(0.0, 0.0); g.node_count()];
    let (d0, b0) = center_derivatives(g, v);
    out[0] = match which {
        Which::Dz => d0,
        Which::Dbar => b0,
    };
    for ring in 1..=n_r {
        let r = ring as f64 * dr;
        for j in 0..n_t {
            let k = g.index(ring, j);
            let fr = if ring < n_r {
                (v[g.index(ring + 1, j)] - v[g.index(ring - 1, j)]) / (2.0 * dr)
            } else {
                (v[k] * 3.0 - v[g.index(ring - 1, j)] * 4.0 + v[g.index(ring - 2, j)]) / (2.0 * dr)
            };
            let ft = (v[g.index(ring, j + 1)] - v[g.index(ring, j + n_t - 1)]) / sin2;
            let th = j as f64 * dth;
            out[k] = match which {
                Which::Dz => C64::from_polar(0.5, -th) * (fr - i * ft / r),
                Which::Dbar => C64::from_polar(0.5, th) * (fr + i * ft / r),
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_err(g: &DiskGrid, exact: impl Fn(C64) -> C64) -> f64 {
        (0..g.node_count())
            .map(|k| (g.component(0)[k] - exact(g.node(k))).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_has_zero_derivatives() {
        let f = DiskGrid::scalar(1.0, 8, 16, 0.5, |_| C64::new(2.0, -1.0));
        assert_eq!(max_err(&dbar(&f).unwrap(), |_| C64::new(0.0, 0.0)), 0.0);
        assert_eq!(max_err(&dz(&f).unwrap(), |_| C64::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn affine_functions_are_exact() {
        let a = C64::new(0.3, -1.2);
        let b = C64::new(-0.7, 0.4);
        let f = DiskGrid::scalar(1.7, 8, 12, 0.5, |z| C64::new(0.2, 0.1) + a * z + b * z.conj());
        assert!(max_err(&dz(&f).unwrap(), |_| a) < 1e-13);
        assert!(max_err(&dbar(&f).unwrap(), |_| b) < 1e-13);
    }

    #[test]
    fn holomorphic_square_second_order() {
        let mut prev = None;
        for (n_r, n_t) in [(16, 32), (32, 64), (64, 128)] {
            let f = DiskGrid::scalar(1.0, n_r, n_t, 0.5, |z| z * z);
            let e_bar = max_err(&dbar(&f).unwrap(), |_| C64::new(0.0, 0.0));
            let e_z = max_err(&dz(&f).unwrap(), |z| z * 2.0);
            let e = e_bar.max(e_z);
            assert!(e < 0.2 * f.mesh().powi(2) * 10.0, "error {e} at {n_r}");
            if let Some(p) = prev {
                assert!(p / e > 3.5, "ratio {}", p / e);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn modulus_squared() {
        // |ζ|² = r²: both derivatives exact on the polar grid
        let f = DiskGrid::scalar(1.0, 16, 32, 0.5, |z| C64::new(z.norm_sqr(), 0.0));
        assert!(max_err(&dbar(&f).unwrap(), |z| z) < 1e-12);
        assert!(max_err(&dz(&f).unwrap(), |z| z.conj()) < 1e-12);
    }

    #[test]
    fn coarse_grid_rejected() {
        let f = DiskGrid::scalar(1.0, 3, 16, 0.5, |z| z);
        assert!(matches!(dbar(&f), Err(Error::GridTooCoarse { .. })));
    }
}
