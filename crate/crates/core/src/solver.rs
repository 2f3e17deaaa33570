//! Pseudoholomorphic disks by fixed-point iteration.
//!
//! In chart coordinates a map `z: 𝔻_ρ → ℂⁿ` is `J`-holomorphic iff
//!
//! ```text
//! ∂̄z^i + Σ_m a^i_m̄(z) ∂̄(z̄^m) = 0.
//! ```
//!
//! With `θ^i(f, g) = -T(Σ_m a^i_m̄(g) ∂̄ f̄^m)` and
//! `Θ(f, g)(ζ) = θ(f, g)(ζ) - θ(f, g)(0) - ζ ∂θ(f, g)(0)`, a solution through `p` with
//! `∂z(0) = v` is the limit of
//!
//! ```text
//! z_1 = p + ζv,    z_{k+1} = p + ζv + Θ(z_k, z_k).
//! ```
//!
//! `Θ` removes the value and the `∂`-derivative at the center, so every iterate keeps
//! `z(0) = p` and `∂z(0) = v`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::acs::{ChartSpec, CoeffField, TangentVector};
use crate::transform::deriv::center_derivatives;
use crate::transform::{apply_t, dz, holder_norm, holder_prime_norm, DiskGrid};
use crate::{Error, Result, C64};

/// Nodes with `|ζ| ≤ INTERIOR_FRACTION·ρ` count as interior for residuals.
pub const INTERIOR_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Residual target; the iteration stops once successive iterates differ by `tol/10`.
    pub tol: f64,
    pub max_iter: usize,
    /// Boundary shrink: `solve_disk` with radius `R` computes the disk on `𝔻_{R-ε}`.
    pub epsilon: f64,
    /// `(n_r, n_theta)`.
    pub resolution: (usize, usize),
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-8,
            max_iter: 100,
            epsilon: 0.01,
            resolution: (128, 256),
        }
    }
}

impl SolverConfig {
    pub fn with_resolution(mut self, n_r: usize, n_theta: usize) -> Self {
        self.resolution = (n_r, n_theta);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn check(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput("solver tolerance must be positive".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidInput("boundary shrink must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub difference: f64,
    pub residual: f64,
}

/// A converged disk `z: 𝔻_{R-ε} → ℂⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSolution {
    pub grid: DiskGrid,
    pub center: Vec<C64>,
    pub direction: Vec<C64>,
    /// Nominal radius `R`; the grid covers `𝔻_{R-ε}`.
    pub radius: f64,
    pub epsilon: f64,
    pub residual: f64,
    pub iterations: usize,
    pub norm_prime: f64,
    pub log: Vec<IterationRecord>,
}

impl DiskSolution {
    /// Radius of the disk actually computed.
    pub fn grid_radius(&self) -> f64 {
        self.grid.radius()
    }

    /// `z(t)` for real `t ∈ [0, R-ε]`.
    pub fn eval_real(&self, t: f64) -> Vec<C64> {
        self.grid.eval_on_ray(t)
    }

    /// `|z(0) - p|` and `|∂z(0) - v|`.
    pub fn initial_condition_errors(&self) -> (f64, f64) {
        initial_condition_errors(&self.grid, &self.center, &self.direction)
    }

    /// Tolerance `10 h²` for the initial conditions.
    pub fn tol_ic(&self) -> f64 {
        10.0 * self.grid.mesh().powi(2)
    }
}

pub fn initial_condition_errors(z: &DiskGrid, p: &[C64], v: &[C64]) -> (f64, f64) {
    let mut e0: f64 = 0.0;
    let mut e1: f64 = 0.0;
    for c in 0..z.dim() {
        e0 = e0.max((z.component(c)[0] - p[c]).norm());
        let (d, _) = center_derivatives(z, z.component(c));
        e1 = e1.max((d - v[c]).norm());
    }
    (e0, e1)
}

fn check_in_domain(chart: &ChartSpec, g: &DiskGrid) -> Result<()> {
    for (c, &bound) in chart.domain.iter().enumerate() {
        for (node, z) in g.component(c).iter().enumerate() {
            let modulus = z.norm();
            if !(modulus < bound) {
                return Err(Error::DomainEscape {
                    node,
                    component: c,
                    modulus,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// `Σ_m a^i_m̄(g) ∂̄ f̄^m` at every node.
fn coupling(a: &CoeffField, f: &DiskGrid, g: &DiskGrid) -> Result<DiskGrid> {
    let n = a.n();
    if f.dim() != n || !f.same_shape(g) {
        return Err(Error::InvalidInput(
            "θ needs two grids of the chart's dimension on the same disk".into(),
        ));
    }
    if a.is_zero() {
        return Ok(DiskGrid::zeros(f.radius(), f.n_r(), f.n_theta(), n, f.lambda()));
    }
    // ∂̄(f̄) = conj(∂f)
    let df = dz(f)?;
    let mut out = vec![vec![C64::new(0.0, 0.0); f.node_count()]; n];
    for k in 0..f.node_count() {
        let coeffs = a.eval(&g.at(k));
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for m in 0..n {
                s += coeffs[i * n + m] * df.component(m)[k].conj();
            }
            out[i][k] = s;
        }
    }
    Ok(f.with_values(out))
}

/// `θ(f, g) = -T(Σ_m a_m̄(g) ∂̄ f̄^m)`; `g` must stay inside the chart.
pub fn theta(chart: &ChartSpec, f: &DiskGrid, g: &DiskGrid) -> Result<DiskGrid> {
    check_in_domain(chart, g)?;
    let q = coupling(&chart.coeff, f, g)?;
    let t = apply_t(&q)?;
    let neg = t.components().iter().map(|c| c.iter().map(|x| -x).collect()).collect();
    Ok(t.with_values(neg))
}

/// `Θ(f, g)(ζ) = θ(ζ) - θ(0) - ζ ∂θ(0)`.
pub fn big_theta(chart: &ChartSpec, f: &DiskGrid, g: &DiskGrid) -> Result<DiskGrid> {
    let th = theta(chart, f, g)?;
    Ok(remove_one_jet(&th))
}

fn remove_one_jet(th: &DiskGrid) -> DiskGrid {
    let mut out = Vec::with_capacity(th.dim());
    for c in 0..th.dim() {
        let vals = th.component(c);
        let v0 = vals[0];
        let (d0, _) = center_derivatives(th, vals);
        out.push(
            vals.iter()
                .enumerate()
                .map(|(k, &x)| {
                    if k == 0 {
                        C64::new(0.0, 0.0)
                    } else {
                        x - v0 - th.node(k) * d0
                    }
                })
                .collect(),
        );
    }
    th.with_values(out)
}

/// `sup |∂̄z + Σ a(z) ∂̄z̄|` over interior nodes.
pub fn residual(chart: &ChartSpec, z: &DiskGrid) -> Result<f64> {
    let n = chart.n;
    let d = dz(z)?;
    let b = crate::transform::dbar(z)?;
    let mut worst: f64 = 0.0;
    for k in z.interior_nodes(INTERIOR_FRACTION) {
        let a = if chart.coeff.is_zero() {
            Vec::new()
        } else {
            chart.coeff.eval(&z.at(k))
        };
        let mut s2 = 0.0;
        for i in 0..n {
            let mut s = b.component(i)[k];
            if !a.is_empty() {
                for m in 0..n {
                    s += a[i * n + m] * d.component(m)[k].conj();
                }
            }
            s2 += s.norm_sqr();
        }
        worst = worst.max(s2.sqrt());
    }
    Ok(worst)
}

fn linear_disk(tv: &TangentVector, rho: f64, res: (usize, usize), lambda: f64) -> DiskGrid {
    let p = tv.base.clone();
    let v = tv.dir.clone();
    DiskGrid::from_fn(rho, res.0, res.1, p.len(), lambda, |zeta| {
        p.iter().zip(&v).map(|(pi, vi)| pi + zeta * vi).collect()
    })
}

struct Run {
    solution: DiskSolution,
    iterates: Vec<DiskGrid>,
}

fn iterate(
    chart: &ChartSpec,
    tv: &TangentVector,
    rho: f64,
    nominal: f64,
    cfg: &SolverConfig,
    keep: bool,
) -> Result<Run> {
    cfg.check()?;
    tv.check_in(chart)?;
    if !(rho > 0.0) {
        return Err(Error::InvalidInput(format!(
            "disk radius after shrinking must be positive, got {rho}"
        )));
    }
    let (n_r, n_t) = cfg.resolution;
    if n_r < 4 || n_t < 4 {
        return Err(Error::GridTooCoarse { n_r, n_theta: n_t });
    }
    // the first iterate p + ζv reaches |p_i| + ρ|v_i| on the boundary circle
    for (c, &bound) in chart.domain.iter().enumerate() {
        let reach = tv.base[c].norm() + rho * tv.dir[c].norm();
        if !(reach < bound) {
            return Err(Error::DomainEscape {
                node: 0,
                component: c,
                modulus: reach,
                bound,
            });
        }
    }
    let base = linear_disk(tv, rho, cfg.resolution, chart.holder_lambda);
    let mut z = base.clone();
    let mut iterates = if keep { vec![z.clone()] } else { Vec::new() };
    let mut log = Vec::new();
    let mut diffs: Vec<f64> = Vec::new();
    let mut converged = None;
    for k in 1..=cfg.max_iter {
        let next = if chart.coeff.is_zero() {
            base.clone()
        } else {
            let corr = big_theta(chart, &z, &z)?;
            base.combine(C64::new(1.0, 0.0), &corr, C64::new(1.0, 0.0))
        };
        let diff = next.sup_distance(&z);
        if !diff.is_finite() {
            return Err(Error::Diverged {
                iteration: k,
                difference: diff,
            });
        }
        check_in_domain(chart, &next)?;
        let res = residual(chart, &next)?;
        log.push(IterationRecord {
            iteration: k,
            difference: diff,
            residual: res,
        });
        z = next;
        if keep {
            iterates.push(z.clone());
        }
        diffs.push(diff);
        if diff <= cfg.tol / 10.0 {
            converged = Some((k, res));
            break;
        }
        let len = diffs.len();
        if len >= 4 && diffs[len - 1] > diffs[len - 2] && diffs[len - 2] > diffs[len - 3] && diffs[len - 1] > diffs[0] {
            return Err(Error::Diverged {
                iteration: k,
                difference: diff,
            });
        }
    }
    let (iterations, res) = match converged {
        Some(x) => x,
        None => {
            let len = diffs.len();
            let last_ratio = if len >= 2 && diffs[len - 2] > 0.0 {
                diffs[len - 1] / diffs[len - 2]
            } else {
                f64::NAN
            };
            return Err(Error::NotConverged {
                iterations: cfg.max_iter,
                last_difference: diffs.last().copied().unwrap_or(f64::NAN),
                last_ratio,
            });
        }
    };
    if res > cfg.tol {
        return Err(Error::ResidualAboveTolerance {
            residual: res,
            tol: cfg.tol,
        });
    }
    let norm_prime = holder_prime_norm(&z)?;
    Ok(Run {
        solution: DiskSolution {
            grid: z,
            center: tv.base.clone(),
            direction: tv.dir.clone(),
            radius: nominal,
            epsilon: nominal - rho,
            residual: res,
            iterations,
            norm_prime,
            log,
        },
        iterates,
    })
}

/// Solves on `𝔻_{R-ε}` with `z(0) = p`, `∂z(0) = v`.
pub fn solve_disk(chart: &ChartSpec, tv: &TangentVector, radius: f64, cfg: &SolverConfig) -> Result<DiskSolution> {
    if !(cfg.epsilon < radius) {
        return Err(Error::InvalidInput(format!(
            "boundary shrink {} must be smaller than the radius {radius}",
            cfg.epsilon
        )));
    }
    Ok(iterate(chart, tv, radius - cfg.epsilon, radius, cfg, false)?.solution)
}

/// Solves directly on `𝔻_ρ` (nominal radius `ρ + ε`).
pub fn solve_on_radius(chart: &ChartSpec, tv: &TangentVector, rho: f64, cfg: &SolverConfig) -> Result<DiskSolution> {
    Ok(iterate(chart, tv, rho, rho + cfg.epsilon, cfg, false)?.solution)
}

/// Solution together with every iterate `z_1, z_2, …`.
pub fn solve_with_iterates(
    chart: &ChartSpec,
    tv: &TangentVector,
    radius: f64,
    cfg: &SolverConfig,
) -> Result<(DiskSolution, Vec<DiskGrid>)> {
    if !(cfg.epsilon < radius) {
        return Err(Error::InvalidInput(
            "boundary shrink must be smaller than the radius".into(),
        ));
    }
    let run = iterate(chart, tv, radius - cfg.epsilon, radius, cfg, true)?;
    Ok((run.solution, run.iterates))
}

fn offset(tv: &TangentVector, tv0: &TangentVector) -> f64 {
    tv.dir
        .iter()
        .zip(&tv0.dir)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Iterate differences below this are treated as converged noise.
const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    /// `sup_k ‖Θ(z_{k+1}) - Θ(z_k)‖ / (|v - v0|^λ ‖z_{k+1} - z_k‖)`.
    pub ratio: f64,
    /// `|v - v0|`.
    pub offset: f64,
    /// Largest observed `‖z_{k+2} - z_{k+1}‖ / ‖z_{k+1} - z_k‖`.
    pub factor: f64,
    pub pairs: usize,
}

/// Measures the contraction of `f ↦ Θ(f, f)` along the iterates for direction `tv`.
pub fn measure_contraction(
    chart: &ChartSpec,
    tv: &TangentVector,
    tv0: &TangentVector,
    radius: f64,
    cfg: &SolverConfig,
) -> Result<ContractionReport> {
    let (_, iterates) = solve_with_iterates(chart, tv, radius, cfg)?;
    let off = offset(tv, tv0);
    let lambda = chart.holder_lambda;
    let scale = off.powf(lambda);
    let mut ratio: f64 = 0.0;
    let mut factor: f64 = 0.0;
    let mut pairs = 0;
    for w in iterates.windows(3) {
        if w[1].sup_distance(&w[0]) <= NOISE_FLOOR || w[2].sup_distance(&w[1]) <= NOISE_FLOOR {
            break;
        }
        // z_{k+2} - z_{k+1} = Θ(z_{k+1}) - Θ(z_k)
        let num = holder_norm(&w[2].sub(&w[1]), lambda)?;
        let den = holder_norm(&w[1].sub(&w[0]), lambda)?;
        factor = factor.max(num / den);
        ratio = ratio.max(num / (scale * den));
        pairs += 1;
    }
    Ok(ContractionReport {
        ratio,
        offset: off,
        factor,
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientBounds {
    /// `sup_k ‖a(z_k)‖ / |v - v0|^λ`.
    pub c2: f64,
    /// `sup_k ‖a(z_{k+1}) - a(z_k)‖ / (|v - v0| ‖z_{k+1} - z_k‖)`.
    pub c3: f64,
    pub offset: f64,
}

/// Empirical constants for the coefficient bounds along the iterate family.
pub fn measure_coefficient_bounds(
    chart: &ChartSpec,
    tv: &TangentVector,
    tv0: &TangentVector,
    radius: f64,
    cfg: &SolverConfig,
) -> Result<CoefficientBounds> {
    let (_, iterates) = solve_with_iterates(chart, tv, radius, cfg)?;
    let off = offset(tv, tv0);
    let lambda = chart.holder_lambda;
    let n = chart.n;
    let coeff_grid = |z: &DiskGrid| -> DiskGrid {
        let mut vals = vec![vec![C64::new(0.0, 0.0); z.node_count()]; n * n];
        for k in 0..z.node_count() {
            for (e, a) in chart.coeff.eval(&z.at(k)).into_iter().enumerate() {
                vals[e][k] = a;
            }
        }
        DiskGrid::from_components(z.radius(), z.n_r(), z.n_theta(), z.lambda(), vals).expect("consistent shape")
    };
    let grids: Vec<DiskGrid> = iterates.iter().map(coeff_grid).collect();
    let mut c2: f64 = 0.0;
    for g in &grids {
        c2 = c2.max(holder_norm(g, lambda)? / off.powf(lambda));
    }
    let mut c3: f64 = 0.0;
    for k in 0..iterates.len().saturating_sub(1) {
        if iterates[k + 1].sup_distance(&iterates[k]) <= NOISE_FLOOR {
            break;
        }
        let num = holder_norm(&grids[k + 1].sub(&grids[k]), lambda)?;
        let den = holder_norm(&iterates[k + 1].sub(&iterates[k]), lambda)?;
        c3 = c3.max(num / (off * den));
    }
    Ok(CoefficientBounds { c2, c3, offset: off })
}

/// Solver run record: inputs plus the per-iteration log, as CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub chart_hash: String,
    pub center: Vec<C64>,
    pub direction: Vec<C64>,
    pub radius: f64,
    pub config: SolverConfig,
    pub log: Vec<IterationRecord>,
}

impl SolveRecord {
    pub fn new(chart: &ChartSpec, sol: &DiskSolution, cfg: &SolverConfig) -> Self {
        SolveRecord {
            chart_hash: chart.hash(),
            center: sol.center.clone(),
            direction: sol.direction.clone(),
            radius: sol.radius,
            config: cfg.clone(),
            log: sol.log.clone(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# chart_hash={}", self.chart_hash);
        let _ = writeln!(s, "# p={}", fmt_vec(&self.center));
        let _ = writeln!(s, "# v={}", fmt_vec(&self.direction));
        let _ = writeln!(
            s,
            "# R={:e} tol={:e} max_iter={} epsilon={:e} resolution={}x{}",
            self.radius,
            self.config.tol,
            self.config.max_iter,
            self.config.epsilon,
            self.config.resolution.0,
            self.config.resolution.1
        );
        s.push_str("iteration,difference,residual\n");
        for r in &self.log {
            let _ = writeln!(s, "{},{:e},{:e}", r.iteration, r.difference, r.residual);
        }
        s
    }
}

pub fn fmt_complex(z: C64) -> String {
    format!("{:e}{:+e}i", z.re, z.im)
}

pub fn fmt_vec(v: &[C64]) -> String {
    v.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::gallery;

    fn tv(p: &[(f64, f64)], v: &[(f64, f64)]) -> TangentVector {
        TangentVector::new(
            p.iter().map(|&(a, b)| C64::new(a, b)).collect(),
            v.iter().map(|&(a, b)| C64::new(a, b)).collect(),
        )
    }

    fn small() -> SolverConfig {
        SolverConfig::default().with_resolution(16, 32)
    }

    #[test]
    fn theta_vanishes_for_standard_structure() {
        let chart = gallery::std_cn(2);
        let f = DiskGrid::from_fn(1.0, 8, 16, 2, 0.5, |z| vec![z * z, z.conj()]);
        assert_eq!(theta(&chart, &f, &f).unwrap().sup_norm(), 0.0);
        assert_eq!(big_theta(&chart, &f, &f).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn theta_of_constant_is_zero() {
        let chart = gallery::perturbed_r4(0.05);
        let f = DiskGrid::from_fn(1.0, 8, 16, 2, 0.5, |_| vec![C64::new(0.1, 0.0), C64::new(0.2, 0.1)]);
        assert!(theta(&chart, &f, &f).unwrap().sup_norm() < 1e-15);
    }

    #[test]
    fn theta_with_constant_coefficients() {
        // a^1_1̄ ≡ c, f = ζv: θ^1 = -T(c v̄_1) = -c v̄_1 w̄
        let c = C64::new(0.03, -0.02);
        let coeff = CoeffField::new(1, vec![crate::acs::poly::Polynomial::constant(1, c)], &[2.0]).unwrap();
        let chart = ChartSpec::new("const", vec![2.0], coeff, 0.5, 1).unwrap();
        let v = C64::new(0.8, 0.6);
        let f = DiskGrid::scalar(1.0, 16, 32, 0.5, |z| z * v);
        let th = theta(&chart, &f, &f).unwrap();
        for k in 0..th.node_count() {
            let w = th.node(k);
            assert!((th.component(0)[k] + c * v.conj() * w.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn big_theta_kills_center_jet() {
        let chart = gallery::perturbed_r4(0.05);
        let f = DiskGrid::from_fn(1.0, 16, 32, 2, 0.5, |z| {
            vec![z + z * z * 0.1, z * C64::new(0.1, 0.05) + z.conj() * 0.02]
        });
        let th = big_theta(&chart, &f, &f).unwrap();
        let (e0, e1) = initial_condition_errors(&th, &[C64::new(0.0, 0.0); 2], &[C64::new(0.0, 0.0); 2]);
        assert_eq!(e0, 0.0);
        assert!(e1 < 1e-15, "{e1}");
    }

    #[test]
    fn axis_disk_is_a_fixed_point() {
        let chart = gallery::perturbed_r4(0.05);
        let z0 = DiskGrid::from_fn(1.0, 16, 32, 2, 0.5, |z| vec![z, C64::new(0.0, 0.0)]);
        assert_eq!(big_theta(&chart, &z0, &z0).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn standard_structure_converges_in_one_step() {
        let chart = gallery::std_cn(2);
        let t = tv(&[(0.3, -0.2), (1.0, 0.5)], &[(0.7, 0.1), (-0.4, 0.9)]);
        let sol = solve_disk(&chart, &t, 2.0, &small()).unwrap();
        assert_eq!(sol.iterations, 1);
        assert!(sol.residual <= 1e-12);
        let (e0, e1) = sol.initial_condition_errors();
        assert!(e0 == 0.0 && e1 < 1e-13);
    }

    #[test]
    fn domain_escape_is_reported() {
        let chart = gallery::perturbed_r4(0.05);
        let t = tv(&[(0.0, 0.0), (0.0, 0.0)], &[(2.0, 0.0), (0.0, 0.0)]);
        let err = solve_disk(&chart, &t, 1.0, &small()).unwrap_err();
        assert!(matches!(err, Error::DomainEscape { component: 0, .. }), "{err}");
    }

    #[test]
    fn perturbed_offset_converges() {
        let chart = gallery::perturbed_r4(0.05);
        let t = tv(&[(0.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (0.0, 0.05)]);
        let sol = solve_disk(&chart, &t, 1.0, &small().with_tol(1e-4)).unwrap();
        assert!(sol.iterations > 1 && sol.iterations <= 50, "{}", sol.iterations);
        let (e0, e1) = sol.initial_condition_errors();
        assert!(e0 <= sol.tol_ic() && e1 <= sol.tol_ic());
        let again = residual(&chart, &sol.grid).unwrap();
        assert!((again - sol.residual).abs() <= 1e-12);
    }

    #[test]
    fn rejects_bad_config() {
        let chart = gallery::std_cn(1);
        let t = tv(&[(0.0, 0.0)], &[(1.0, 0.0)]);
        let mut cfg = small();
        cfg.epsilon = 2.0;
        assert!(solve_disk(&chart, &t, 1.0, &cfg).is_err());
        let cfg = small().with_resolution(3, 32);
        assert!(matches!(
            solve_disk(&chart, &t, 1.0, &cfg),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn record_csv_has_header_and_rows() {
        let chart = gallery::std_cn(1);
        let t = tv(&[(0.0, 0.0)], &[(1.0, 0.0)]);
        let cfg = small();
        let sol = solve_disk(&chart, &t, 1.0, &cfg).unwrap();
        let csv = SolveRecord::new(&chart, &sol, &cfg).to_csv();
        assert!(csv.contains("iteration,difference,residual\n1,0e0,"));
        assert!(csv.starts_with("# chart_hash="));
    }
}
