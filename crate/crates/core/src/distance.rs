//! Pseudodistances: the integrated form `d̄_M(p, q) = inf_γ ∫₀¹ F_M(γ̇) dt` and the
//! disk-chain sum along a partitioned path.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acs::{euclidean_norm, ChartSpec, TangentVector};
use crate::pseudonorm::{estimate_F, leading_phase, SearchConfig};
use crate::{Error, Result, C64};

/// A path sampled at `t_i = i/k`, `i = 0..=k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub nodes: Vec<Vec<C64>>,
    /// `γ̇(t_i)` in chart units per unit parameter.
    pub tangents: Vec<Vec<C64>>,
}

impl PathSpec {
    /// Polyline through `nodes`; tangents by second-order finite differences.
    pub fn polyline(nodes: Vec<Vec<C64>>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput("a path needs at least two nodes".into()));
        }
        let n = nodes[0].len();
        if nodes.iter().any(|x| x.len() != n) {
            return Err(Error::InvalidInput("path nodes differ in dimension".into()));
        }
        let k = nodes.len() - 1;
        let kf = k as f64;
        let comb = |terms: &[(usize, f64)]| -> Vec<C64> {
            (0..n)
                .map(|c| terms.iter().map(|&(i, w)| nodes[i][c] * (w * kf)).sum())
                .collect()
        };
        let tangents = (0..=k)
            .map(|i| {
                if k == 1 {
                    comb(&[(1, 1.0), (0, -1.0)])
                } else if i == 0 {
                    comb(&[(0, -1.5), (1, 2.0), (2, -0.5)])
                } else if i == k {
                    comb(&[(k, 1.5), (k - 1, -2.0), (k - 2, 0.5)])
                } else {
                    comb(&[(i + 1, 0.5), (i - 1, -0.5)])
                }
            })
            .collect();
        Ok(PathSpec { nodes, tangents })
    }

    /// Straight segment from `p` to `q` with `k` pieces.
    pub fn straight(p: &[C64], q: &[C64], k: usize) -> Result<Self> {
        Self::from_fn(
            |t| p.iter().zip(q).map(|(a, b)| a + (b - a) * t).collect(),
            |_| p.iter().zip(q).map(|(a, b)| b - a).collect(),
            k,
        )
    }

    /// Samples `γ` and `γ̇` at `k + 1` uniform parameters.
    pub fn from_fn(gamma: impl Fn(f64) -> Vec<C64>, velocity: impl Fn(f64) -> Vec<C64>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("a path needs at least one segment".into()));
        }
        let ts: Vec<f64> = (0..=k).map(|i| i as f64 / k as f64).collect();
        Ok(PathSpec {
            nodes: ts.iter().map(|&t| gamma(t)).collect(),
            tangents: ts.iter().map(|&t| velocity(t)).collect(),
        })
    }

    pub fn segments(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.segments() as f64
    }

    pub fn start(&self) -> &[C64] {
        &self.nodes[0]
    }

    pub fn end(&self) -> &[C64] {
        &self.nodes[self.segments()]
    }

    pub fn reversed(&self) -> Self {
        PathSpec {
            nodes: self.nodes.iter().rev().cloned().collect(),
            tangents: self
                .tangents
                .iter()
                .rev()
                .map(|v| v.iter().map(|z| -z).collect())
                .collect(),
        }
    }

    pub fn check_in(&self, chart: &ChartSpec) -> Result<()> {
        if self.nodes.len() < 2 || self.nodes.len() != self.tangents.len() {
            return Err(Error::InvalidInput("path needs ≥ 2 nodes, one tangent per node".into()));
        }
        for (i, x) in self.nodes.iter().enumerate() {
            if !chart.contains(x) {
                return Err(Error::InvalidInput(format!(
                    "path node {i} lies outside chart `{}`",
                    chart.name
                )));
            }
        }
        Ok(())
    }

    fn midpoint(&self, i: usize) -> TangentVector {
        let a = &self.nodes[i];
        let b = &self.nodes[i + 1];
        let k = self.segments() as f64;
        TangentVector::new(
            a.iter().zip(b).map(|(x, y)| (x + y) * 0.5).collect(),
            a.iter().zip(b).map(|(x, y)| (y - x) * k).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PathIntegral,
    DiskChain,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PathIntegral => "path-integral",
            Method::DiskChain => "disk-chain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDetail {
    pub segment: usize,
    pub contribution: f64,
    /// Certified disk radius for the segment's vector.
    pub radius: f64,
    /// Disk-chain only: `|û(t; δt) - γ(t + δt)|`.
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub value: f64,
    pub method: Method,
    /// Number of path nodes.
    pub partition: usize,
    pub details: Vec<SegmentDetail>,
    /// False when the optimizer ran out of budget.
    pub converged: bool,
    pub nodes: Vec<Vec<C64>>,
}

impl DistanceEstimate {
    pub fn max_defect(&self) -> f64 {
        self.details.iter().map(|d| d.defect).fold(0.0, f64::max)
    }

    fn from_details(method: Method, path: &PathSpec, details: Vec<SegmentDetail>, converged: bool) -> Self {
        DistanceEstimate {
            value: details.iter().map(|d| d.contribution).sum(),
            method,
            partition: path.nodes.len(),
            details,
            converged,
            nodes: path.nodes.clone(),
        }
    }
}

fn segment_cost(chart: &ChartSpec, path: &PathSpec, i: usize, cfg: &SearchConfig) -> Result<SegmentDetail> {
    let tv = path.midpoint(i);
    let est = estimate_F(chart, &tv, cfg).map_err(|e| e.in_segment(i))?;
    Ok(SegmentDetail {
        segment: i,
        contribution: est.value * path.dt(),
        radius: est.witness_r,
        defect: 0.0,
    })
}

/// `Σ_i F(γ(t_{i+½}), chord_i/Δt)·Δt`, the midpoint rule on the polyline through the nodes.
pub fn path_length_detailed(chart: &ChartSpec, path: &PathSpec, cfg: &SearchConfig) -> Result<DistanceEstimate> {
    path.check_in(chart)?;
    let details = (0..path.segments())
        .into_par_iter()
        .map(|i| segment_cost(chart, path, i, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceEstimate::from_details(
        Method::PathIntegral,
        path,
        details,
        true,
    ))
}

pub fn path_length(chart: &ChartSpec, path: &PathSpec, cfg: &SearchConfig) -> Result<f64> {
    Ok(path_length_detailed(chart, path, cfg)?.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub segments: usize,
    /// Maximum number of sweeps over all interior node coordinates.
    pub sweeps: usize,
    /// Initial perturbation, relative to `|q - p|`.
    pub initial_step: f64,
    /// Search stops once the step falls below this (relative to `|q - p|`).
    pub min_step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            segments: 16,
            sweeps: 40,
            initial_step: 0.05,
            min_step: 1e-3,
            seed: 0x6a64_6973_6b00,
        }
    }
}

/// Best polyline length found by deterministic coordinatewise local search from the
/// straight segment `p → q`.
pub fn estimate_dbar(
    chart: &ChartSpec,
    p: &[C64],
    q: &[C64],
    opt: &OptimizerConfig,
    cfg: &SearchConfig,
) -> Result<DistanceEstimate> {
    let k = opt.segments.max(1);
    let mut path = PathSpec::straight(p, q, k)?;
    path.check_in(chart)?;
    let span = euclidean_norm(&p.iter().zip(q).map(|(a, b)| b - a).collect::<Vec<_>>());
    let mut details = path_length_detailed(chart, &path, cfg)?.details;
    if span == 0.0 || k < 2 {
        return Ok(DistanceEstimate::from_details(
            Method::PathIntegral,
            &path,
            details,
            true,
        ));
    }
    let n = p.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut step = opt.initial_step * span;
    let floor = opt.min_step * span;
    let mut coords: Vec<(usize, usize)> = (1..k).flat_map(|i| (0..2 * n).map(move |c| (i, c))).collect();
    let mut converged = false;
    for _ in 0..opt.sweeps {
        if step < floor {
            converged = true;
            break;
        }
        coords.shuffle(&mut rng);
        let mut improved = false;
        for &(i, c) in &coords {
            let first = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            for sign in [first, -first] {
                let delta = if c % 2 == 0 {
                    C64::new(sign * step, 0.0)
                } else {
                    C64::new(0.0, sign * step)
                };
                let mut trial = path.clone();
                trial.nodes[i][c / 2] += delta;
                if !chart.contains(&trial.nodes[i]) {
                    continue;
                }
                let (a, b) = match (
                    segment_cost(chart, &trial, i - 1, cfg),
                    segment_cost(chart, &trial, i, cfg),
                ) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => continue,
                };
                if a.contribution + b.contribution < details[i - 1].contribution + details[i].contribution {
                    details[i - 1] = a;
                    details[i] = b;
                    path = trial;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    if step < floor {
        converged = true;
    }
    let tangents = PathSpec::polyline(path.nodes.clone())?.tangents;
    path.tangents = tangents;
    Ok(DistanceEstimate::from_details(
        Method::PathIntegral,
        &path,
        details,
        converged,
    ))
}

/// Disk-chain sum `Σ_i arctanh(δt / R_i)` along `path`, where `R_i` is the certified radius
/// for `(γ(t_i), γ̇(t_i))`; each segment also reports the displacement defect
/// `|u_i(δt) - γ(t_{i+1})|` of its witness disk `u_i`.
pub fn estimate_d_chain(chart: &ChartSpec, path: &PathSpec, cfg: &SearchConfig) -> Result<DistanceEstimate> {
    path.check_in(chart)?;
    let dt = path.dt();
    let details = (0..path.segments())
        .into_par_iter()
        .map(|i| chain_segment(chart, path, i, dt, cfg).map_err(|e| e.in_segment(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceEstimate::from_details(Method::DiskChain, path, details, true))
}

fn chain_segment(chart: &ChartSpec, path: &PathSpec, i: usize, dt: f64, cfg: &SearchConfig) -> Result<SegmentDetail> {
    let tv = TangentVector::new(path.nodes[i].clone(), path.tangents[i].clone());
    let est = estimate_F(chart, &tv, cfg)?;
    let next = &path.nodes[i + 1];
    let Some(witness) = est.witness.as_ref() else {
        // zero velocity: the chain stays put
        let defect = euclidean_norm(&tv.base.iter().zip(next).map(|(a, b)| a - b).collect::<Vec<_>>());
        return Ok(SegmentDetail {
            segment: i,
            contribution: 0.0,
            radius: f64::INFINITY,
            defect,
        });
    };
    let r = est.witness_r;
    if !(dt < r) {
        return Err(Error::InvalidInput(format!(
            "step {dt} exceeds the certified radius {r}"
        )));
    }
    let phase = leading_phase(&tv.dir).expect("nonzero velocity");
    let zeta = phase * (dt * tv.norm());
    let u = witness.eval(zeta);
    let defect = euclidean_norm(&u.iter().zip(next).map(|(a, b)| a - b).collect::<Vec<_>>());
    Ok(SegmentDetail {
        segment: i,
        contribution: (dt / r).atanh(),
        radius: r,
        defect,
    })
}

/// Least-squares slope of `log defect` against `log δt`.
pub fn loglog_slope(dts: &[f64], defects: &[f64]) -> f64 {
    let xs: Vec<f64> = dts.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = defects.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
