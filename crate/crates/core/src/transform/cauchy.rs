//! The Cauchy–Green transform
//!
//! ```text
//! Tf(w) = 1/(2πi) ∫_{𝔻_R} f(ζ)/(ζ - w) dζ∧dζ̄ = -(1/π) ∫_{𝔻_R} f(ζ)/(ζ - w) dA(ζ)
//! ```
//!
//! evaluated at every node of a polar grid. The kernel is integrated exactly in the
//! angle: expanding `1/(ζ - w)` in powers of `w/ζ` (for `|ζ| > |w|`) or `ζ/w`
//! (for `|ζ| < |w|`) turns the angular Fourier mode `f_m(ρ) e^{imφ}` into the output
//! mode `e^{i(m-1)θ}` with radial profile
//!
//! ```text
//! m ≥ 1:  U_m(r) = -2 ∫_r^R f_m(ρ) (r/ρ)^{m-1} dρ
//! m ≤ 0:  U_m(r) =  2 ∫_0^r f_m(ρ) (ρ/r)^{1-m} dρ
//! ```
//!
//! The radial integrals use product integration: `f_m` is linear between rings and the
//! power kernels are integrated in closed form. The singular point `ζ = w` never needs a
//! separate rule since it only appears as the break point between the two expansions.
//! Angular modes come from a direct DFT with a fixed summation order, so results are
//! bit-identical whatever the thread count.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;

use super::grid::DiskGrid;
use crate::{Error, Result, C64};

/// Kernel values below this are dropped from the radial sums.
const KERNEL_CUTOFF: f64 = 1e-18;

#[derive(Debug)]
struct Plan {
    n_r: usize,
    n_theta: usize,
    /// `twiddle[k] = e^{2πik/n_theta}`
    twiddle: Vec<C64>,
    /// `weights[mode_slot][ring - 1]` lists `(l, A, B)`: the contribution of the radial
    /// interval `[l, l+1]` (in units of `Δr`) is `A·f_m(l) + B·f_m(l+1)`.
    weights: Vec<Vec<Vec<(u32, f64, f64)>>>,
}

type PlanCache = Mutex<HashMap<(usize, usize), Arc<Plan>>>;

static PLANS: Lazy<PlanCache> = Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(n_r: usize, n_theta: usize) -> Arc<Plan> {
    let mut cache = PLANS.lock().expect("plan cache poisoned");
    cache
        .entry((n_r, n_theta))
        .or_insert_with(|| Arc::new(Plan::new(n_r, n_theta)))
        .clone()
}

/// Angular modes in slot order: `-n/2, …, n/2 - 1`.
fn modes(n_theta: usize) -> impl Iterator<Item = i64> {
    let h = (n_theta / 2) as i64;
    -h..(n_theta as i64 - h)
}

impl Plan {
    fn new(n_r: usize, n_theta: usize) -> Self {
        let twiddle = (0..n_theta)
            .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n_theta as f64))
            .collect();
        let weights = modes(n_theta)
            .map(|m| {
                (1..=n_r)
                    .map(|i| {
                        if m >= 1 {
                            outer_weights(i, n_r, (m - 1) as u32)
                        } else {
                            inner_weights(i, (1 - m) as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        Plan {
            n_r,
            n_theta,
            twiddle,
            weights,
        }
    }
}

/// `∫_l^{l+1} s^k (i/s)^q ds` for `k ∈ {0, 1}`, `l ≥ i ≥ 1`.
fn outer_moment(i: f64, l: f64, k: i32, q: u32) -> f64 {
    let e = k + 1 - q as i32;
    if e == 0 {
        i.powi(q as i32) * ((l + 1.0) / l).ln()
    } else {
        let hi = (l + 1.0).powi(k + 1) * (i / (l + 1.0)).powi(q as i32);
        let lo = l.powi(k + 1) * (i / l).powi(q as i32);
        (hi - lo) / e as f64
    }
}

/// `∫_l^{l+1} s^k (s/i)^p ds` for `k ∈ {0, 1}`, `0 ≤ l < i`.
fn inner_moment(i: f64, l: f64, k: i32, p: u32) -> f64 {
    let e = (k + 1 + p as i32) as f64;
    let hi = (l + 1.0).powi(k + 1) * ((l + 1.0) / i).powi(p as i32);
    let lo = if l == 0.0 {
        0.0
    } else {
        l.powi(k + 1) * (l / i).powi(p as i32)
    };
    (hi - lo) / e
}

fn hat_weights(l: f64, m0: f64, m1: f64) -> (f64, f64) {
    ((l + 1.0) * m0 - m1, m1 - l * m0)
}

fn outer_weights(i: usize, n_r: usize, q: u32) -> Vec<(u32, f64, f64)> {
    let fi = i as f64;
    let mut out = Vec::new();
    for l in i..n_r {
        let fl = l as f64;
        if (fi / fl).powi(q as i32) < KERNEL_CUTOFF {
            break;
        }
        let (a, b) = hat_weights(fl, outer_moment(fi, fl, 0, q), outer_moment(fi, fl, 1, q));
        out.push((l as u32, a, b));
    }
    out
}

fn inner_weights(i: usize, p: u32) -> Vec<(u32, f64, f64)> {
    let fi = i as f64;
    let mut out = Vec::new();
    for l in (0..i).rev() {
        let fl = l as f64;
        if ((fl + 1.0) / fi).powi(p as i32) < KERNEL_CUTOFF {
            break;
        }
        let (a, b) = hat_weights(fl, inner_moment(fi, fl, 0, p), inner_moment(fi, fl, 1, p));
        out.push((l as u32, a, b));
    }
    out.reverse();
    out
}

/// `T f` on the same grid, componentwise.
pub fn apply_t(f: &DiskGrid) -> Result<DiskGrid> {
    if !f.is_finite() {
        return Err(Error::InvalidInput("transform input has non-finite values".into()));
    }
    if f.n_r() < 2 || f.n_theta() < 2 {
        return Err(Error::GridTooCoarse {
            n_r: f.n_r(),
            n_theta: f.n_theta(),
        });
    }
    let p = plan(f.n_r(), f.n_theta());
    let out = f
        .components()
        .iter()
        .map(|c| {
            if c.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                c.clone()
            } else {
                transform_component(&p, f, c)
            }
        })
        .collect();
    Ok(f.with_values(out))
}

fn transform_component(p: &Plan, g: &DiskGrid, v: &[C64]) -> Vec<C64> {
    let n_r = p.n_r;
    let n_t = p.n_theta;
    let dr = g.dr();
    let mode_list: Vec<i64> = modes(n_t).collect();
    let zero = C64::new(0.0, 0.0);

    // spectra[ring][slot], ring 0 is the center
    let mut spectra: Vec<Vec<C64>> = (0..=n_r)
        .into_par_iter()
        .map(|ring| {
            let mut row = vec![zero; n_t];
            if ring == 0 {
                let slot0 = mode_list.iter().position(|&m| m == 0).expect("mode 0 present");
                row[slot0] = v[0];
                return row;
            }
            for (slot, &m) in mode_list.iter().enumerate() {
                let mut s = zero;
                for j in 0..n_t {
                    let tw = p.twiddle[((-m * j as i64).rem_euclid(n_t as i64)) as usize];
                    s += v[g.index(ring, j)] * tw;
                }
                row[slot] = s / n_t as f64;
            }
            row
        })
        .collect();

    // profiles[ring][slot] = U_m(r_ring), rings 1..=n_r
    let profiles: Vec<Vec<C64>> = (1..=n_r)
        .into_par_iter()
        .map(|ring| {
            mode_list
                .iter()
                .enumerate()
                .map(|(slot, &m)| {
                    let mut s = zero;
                    for &(l, a, b) in &p.weights[slot][ring - 1] {
                        let l = l as usize;
                        s += spectra[l][slot] * a + spectra[l + 1][slot] * b;
                    }
                    let sign = if m >= 1 { -2.0 } else { 2.0 };
                    s * (sign * dr)
                })
                .collect()
        })
        .collect();

    let mut out = vec![zero; g.node_count()];

    // only the m = 1 mode survives at the center: -2 ∫_0^R f_1(ρ) dρ (trapezoid is exact
    // for the piecewise-linear profile)
    let slot1 = mode_list.iter().position(|&m| m == 1).expect("mode 1 present");
    let mut c = zero;
    for l in 0..n_r {
        c += (spectra[l][slot1] + spectra[l + 1][slot1]) * 0.5;
    }
    out[0] = c * (-2.0 * dr);

    let rings: Vec<Vec<C64>> = (1..=n_r)
        .into_par_iter()
        .map(|ring| {
            let prof = &profiles[ring - 1];
            (0..n_t)
                .map(|j| {
                    let mut s = zero;
                    for (slot, &m) in mode_list.iter().enumerate() {
                        let k = ((m - 1) * j as i64).rem_euclid(n_t as i64) as usize;
                        s += prof[slot] * p.twiddle[k];
                    }
                    s
                })
                .collect()
        })
        .collect();
    for (ring, vals) in rings.into_iter().enumerate() {
        for (j, x) in vals.into_iter().enumerate() {
            out[g.index(ring + 1, j)] = x;
        }
    }
    spectra.clear();
    out
}
