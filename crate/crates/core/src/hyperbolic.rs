//! Hyperbolicity evidence from `F^{(1)}` on sampled unit tangent vectors, and reduced
//! distances between the leaves of a fibered chart.
//!
//! All pseudonorm values are upper bounds. A small `sup F^{(1)}` is therefore genuine
//! evidence of nonhyperbolicity, while a large `inf F^{(1)}` supports hyperbolicity only as
//! far as the disk search is complete. Reports state this and never claim proof. Unit
//! vectors are measured in the Euclidean norm of the chart.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acs::{euclidean_norm, ChartSpec, ModelId, TangentVector};
use crate::distance::{estimate_dbar, OptimizerConfig};
use crate::pseudonorm::{estimate_F, SearchConfig};
use crate::solver::{fmt_vec, residual};
use crate::transform::DiskGrid;
use crate::{Error, Result, C64};

pub const NOTE: &str = "estimates are upper bounds restricted to single-chart disks; \
hyperbolic-evidence holds only up to search completeness";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HyperbolicEvidence,
    NonhyperbolicEvidence,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HyperbolicEvidence => "hyperbolic-evidence",
            Verdict::NonhyperbolicEvidence => "nonhyperbolic-evidence",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::HyperbolicEvidence => 0,
            Verdict::NonhyperbolicEvidence => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// `inf ≥ τ` → hyperbolic evidence, `sup ≤ τ/10` → nonhyperbolic evidence.
pub fn verdict(inf_f1: f64, sup_f1: f64, tau: f64) -> Verdict {
    if inf_f1 >= tau {
        Verdict::HyperbolicEvidence
    } else if sup_f1 <= tau / 10.0 {
        Verdict::NonhyperbolicEvidence
    } else {
        Verdict::Inconclusive
    }
}

/// `m` unit directions in `ℂⁿ`. The first `n` are the coordinate axes, the rest are drawn
/// from a fixed-seed stream, so a larger fan always extends a smaller one.
pub fn direction_fan(n: usize, m: usize) -> Vec<Vec<C64>> {
    let mut out = Vec::with_capacity(m);
    for k in 0..m.min(n) {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[k] = C64::new(1.0, 0.0);
        out.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x66_616e);
    while out.len() < m {
        let v: Vec<C64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re, im)
            })
            .collect();
        let norm = euclidean_norm(&v);
        if norm > 1e-6 {
            out.push(v.iter().map(|z| z / norm).collect());
        }
    }
    out
}

/// Polar lattice on the closed disk `𝔻̄_r`: the center plus `rings` circles with
/// `4i` points on ring `i`.
pub fn disk_lattice(r: f64, rings: usize) -> Vec<C64> {
    let mut pts = vec![C64::new(0.0, 0.0)];
    for i in 1..=rings {
        let rad = r * i as f64 / rings as f64;
        let m = 4 * i;
        for j in 0..m {
            pts.push(C64::from_polar(rad, std::f64::consts::TAU * j as f64 / m as f64));
        }
    }
    pts
}

/// Cartesian product of per-coordinate samples.
pub fn product_lattice(factors: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = vec![Vec::new()];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                f.iter().map(move |z| {
                    let mut p = prefix.clone();
                    p.push(*z);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub directions: usize,
    pub tau: f64,
    pub search: SearchConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            directions: 4,
            tau: 0.5,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub point: usize,
    pub direction: usize,
    pub p: Vec<C64>,
    pub v: Vec<C64>,
    /// `F^{(1)}` upper bound, or `None` when the estimate failed.
    pub value: Option<f64>,
    pub witness_r: f64,
    pub iterations: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub chart: String,
    pub chart_hash: String,
    pub points: Vec<Vec<C64>>,
    pub directions: Vec<Vec<C64>>,
    pub inf_f1: f64,
    pub sup_f1: f64,
    pub verdict: Verdict,
    pub tau: f64,
    pub samples: Vec<ScanSample>,
    pub failures: Vec<String>,
    pub note: String,
}

impl ScanReport {
    pub fn summary_line(&self) -> String {
        format!(
            "{}: inf_F1={:e} sup_F1={:e} tau={} over {} points x {} directions ({} failures); {}",
            self.verdict.as_str(),
            self.inf_f1,
            self.sup_f1,
            self.tau,
            self.points.len(),
            self.directions.len(),
            self.failures.len(),
            self.note
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# chart={} hash={}", self.chart, self.chart_hash);
        let _ = writeln!(
            s,
            "# verdict={} inf_F1={:e} sup_F1={:e} tau={:e}",
            self.verdict.as_str(),
            self.inf_f1,
            self.sup_f1,
            self.tau
        );
        s.push_str("point,direction,p,v,value,witness_R,iterations,status\n");
        for r in &self.samples {
            let value = r.value.map_or_else(|| "nan".to_string(), |x| format!("{x:e}"));
            let _ = writeln!(
                s,
                "{},{},{},{},{},{:e},{},{}",
                r.point,
                r.direction,
                fmt_vec(&r.p),
                fmt_vec(&r.v),
                value,
                r.witness_r,
                r.iterations,
                r.status.replace(',', ";")
            );
        }
        s
    }
}

/// Estimates `F^{(1)}` on `points × direction_fan(n, cfg.directions)`.
pub fn scan(chart: &ChartSpec, points: &[Vec<C64>], cfg: &ScanConfig) -> Result<ScanReport> {
    if points.is_empty() || cfg.directions == 0 {
        return Err(Error::InvalidInput(
            "scan needs at least one point and one direction".into(),
        ));
    }
    for (i, p) in points.iter().enumerate() {
        if !chart.contains(p) {
            return Err(Error::InvalidInput(format!(
                "sample point {i} lies outside chart `{}`",
                chart.name
            )));
        }
    }
    let dirs = direction_fan(chart.n, cfg.directions);
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..dirs.len()).map(move |j| (i, j)))
        .collect();
    let samples: Vec<ScanSample> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let tv = TangentVector::new(points[i].clone(), dirs[j].clone());
            match estimate_F(chart, &tv, &cfg.search) {
                Ok(e) => ScanSample {
                    point: i,
                    direction: j,
                    iterations: e.iterations(),
                    p: tv.base,
                    v: tv.dir,
                    value: Some(e.value),
                    witness_r: e.witness_r,
                    status: if e.hit_r_max { "r-max".into() } else { "ok".into() },
                },
                Err(err) => ScanSample {
                    point: i,
                    direction: j,
                    p: tv.base,
                    v: tv.dir,
                    value: None,
                    witness_r: f64::NAN,
                    iterations: 0,
                    status: err.to_string(),
                },
            }
        })
        .collect();
    let values: Vec<f64> = samples.iter().filter_map(|s| s.value).collect();
    let failures: Vec<String> = samples
        .iter()
        .filter(|s| s.value.is_none())
        .map(|s| format!("point {} direction {}: {}", s.point, s.direction, s.status))
        .collect();
    let inf_f1 = values.iter().copied().fold(f64::INFINITY, f64::min);
    let sup_f1 = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let v = if failures.is_empty() {
        verdict(inf_f1, sup_f1, cfg.tau)
    } else {
        Verdict::Inconclusive
    };
    Ok(ScanReport {
        chart: chart.name.clone(),
        chart_hash: chart.hash(),
        points: points.to_vec(),
        directions: dirs,
        inf_f1,
        sup_f1,
        verdict: v,
        tau: cfg.tau,
        samples,
        failures,
        note: NOTE.to_string(),
    })
}

/// A chart fibered by the coordinate slices `{z_B = x}`, `B = base`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibrationSpec {
    pub name: String,
    pub base: Vec<usize>,
    pub fiber: Vec<usize>,
}

impl FibrationSpec {
    pub fn coordinate(name: impl Into<String>, n: usize, base: Vec<usize>) -> Result<Self> {
        if base.iter().any(|&i| i >= n) || base.is_empty() || base.len() >= n {
            return Err(Error::InvalidInput(
                "base coordinates must be a proper nonempty subset".into(),
            ));
        }
        let fiber = (0..n).filter(|i| !base.contains(i)).collect();
        Ok(FibrationSpec {
            name: name.into(),
            base,
            fiber,
        })
    }

    /// The fibration a gallery chart ships with, if any.
    pub fn for_chart(chart: &ChartSpec) -> Result<Self> {
        match chart.model {
            Some(ModelId::DiskTimesPlane) => Self::coordinate("disk-x-plane leaves {x} x C", chart.n, vec![0]),
            _ => Err(Error::InvalidInput(format!(
                "chart `{}` has no declared fibration",
                chart.name
            ))),
        }
    }

    pub fn project(&self, z: &[C64]) -> Vec<C64> {
        self.base.iter().map(|&i| z[i]).collect()
    }

    /// The point of leaf `x` with fiber coordinates `w`.
    pub fn leaf_point(&self, x: &[C64], w: &[C64]) -> Vec<C64> {
        let mut z = vec![C64::new(0.0, 0.0); self.base.len() + self.fiber.len()];
        for (k, &i) in self.base.iter().enumerate() {
            z[i] = x[k];
        }
        for (k, &i) in self.fiber.iter().enumerate() {
            z[i] = w[k];
        }
        z
    }

    /// Residual of a disk in leaf `x` through `w` along each fiber axis.
    pub fn verify_leaf(&self, chart: &ChartSpec, x: &[C64], w: &[C64], tol: f64) -> Result<f64> {
        let z0 = self.leaf_point(x, w);
        if !chart.contains(&z0) {
            return Err(Error::InvalidInput("leaf point lies outside the chart".into()));
        }
        let mut worst: f64 = 0.0;
        for (k, &i) in self.fiber.iter().enumerate() {
            let room = chart.domain[i] - w[k].norm();
            let r = if room.is_finite() { 0.5 * room } else { 1.0 };
            let grid = DiskGrid::from_fn(r, 16, 32, chart.n, chart.holder_lambda, |zeta| {
                let mut ww = w.to_vec();
                ww[k] += zeta;
                self.leaf_point(x, &ww)
            });
            worst = worst.max(residual(chart, &grid)?);
        }
        if worst > tol {
            return Err(Error::InvalidInput(format!(
                "leaf through base {x:?} is not pseudoholomorphic (residual {worst:e})"
            )));
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedDistance {
    pub value: f64,
    /// Spread `max - min` over all representative pairs tried.
    pub defect: f64,
    /// `(w_a, w_b, distance)` for the primary pair first, then the alternatives.
    pub samples: Vec<(Vec<C64>, Vec<C64>, f64)>,
}

/// `d([f_a], [f_b]) = d(p_a, p_b)` for representatives `p_a ∈ leaf(x_a)`, `p_b ∈ leaf(x_b)`.
/// `reps[0]` is the primary choice of fiber coordinates; the rest measure the defect.
pub fn reduced_distance(
    chart: &ChartSpec,
    fib: &FibrationSpec,
    x_a: &[C64],
    x_b: &[C64],
    reps: &[(Vec<C64>, Vec<C64>)],
    opt: &OptimizerConfig,
    cfg: &SearchConfig,
) -> Result<ReducedDistance> {
    if reps.is_empty() {
        return Err(Error::InvalidInput("need at least one representative pair".into()));
    }
    for (wa, wb) in reps {
        fib.verify_leaf(chart, x_a, wa, cfg.solver.tol)?;
        fib.verify_leaf(chart, x_b, wb, cfg.solver.tol)?;
    }
    let samples = reps
        .par_iter()
        .map(|(wa, wb)| {
            let d = estimate_dbar(chart, &fib.leaf_point(x_a, wa), &fib.leaf_point(x_b, wb), opt, cfg)?;
            Ok((wa.clone(), wb.clone(), d.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let lo = samples.iter().map(|s| s.2).fold(f64::INFINITY, f64::min);
    let hi = samples.iter().map(|s| s.2).fold(f64::NEG_INFINITY, f64::max);
    Ok(ReducedDistance {
        value: samples[0].2,
        defect: hi - lo,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::gallery;

    #[test]
    fn verdict_thresholds() {
        assert_eq!(verdict(0.6, 2.0, 0.5), Verdict::HyperbolicEvidence);
        assert_eq!(verdict(0.01, 0.05, 0.5), Verdict::NonhyperbolicEvidence);
        assert_eq!(verdict(0.01, 0.3, 0.5), Verdict::Inconclusive);
    }

    #[test]
    fn fan_is_prefix_stable_and_unit() {
        let a = direction_fan(2, 3);
        let b = direction_fan(2, 7);
        assert_eq!(a[..], b[..3]);
        for v in &b {
            assert!((euclidean_norm(v) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(disk_lattice(0.9, 3).len(), 1 + 4 + 8 + 12);
        let p = product_lattice(&[disk_lattice(0.5, 1), vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]]);
        assert_eq!(p.len(), 10);
        assert_eq!(p[1], vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    }

    #[test]
    fn fibration_round_trip() {
        let chart = gallery::disk_times_plane();
        let fib = FibrationSpec::for_chart(&chart).unwrap();
        let z = fib.leaf_point(&[C64::new(0.2, 0.0)], &[C64::new(5.0, 1.0)]);
        assert_eq!(fib.project(&z), vec![C64::new(0.2, 0.0)]);
        assert!(
            fib.verify_leaf(&chart, &[C64::new(0.2, 0.0)], &[C64::new(5.0, 1.0)], 1e-12)
                .unwrap()
                < 1e-12
        );
        assert!(FibrationSpec::for_chart(&gallery::unit_disk()).is_err());
    }

    #[test]
    fn plane_scan_is_nonhyperbolic() {
        let chart = gallery::std_cn(2);
        let pts = product_lattice(&[disk_lattice(1.0, 1), vec![C64::new(0.0, 0.0)]]);
        let rep = scan(&chart, &pts, &ScanConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NonhyperbolicEvidence);
        assert!(rep.sup_f1 <= 1e-3);
    }
}
