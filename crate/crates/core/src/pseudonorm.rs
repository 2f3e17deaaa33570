//! Upper bounds on the Kobayashi–Royden pseudonorm
//! `F_M(v) = inf { 1/r : f: 𝔻 → M pseudoholomorphic, f(0) = p, f_*(0)e = rv }`.
//!
//! A disk of radius `R` with derivative `v` at the center rescales to a unit disk with
//! derivative `Rv`, so every certified radius `R` gives `F_M(v) ≤ 1/R`. The search runs in
//! the normalized direction `u = v/|v|` (phase removed) and bisects geometrically on the
//! radius; the result is rescaled by `|v|`.
//!
//! Certification uses the disk solver, except on charts that declare an integrable model:
//! there the candidates are the product Möbius maps, which are holomorphic in closed form.
//! All estimates are restricted to disks inside one chart.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acs::{euclidean_norm, ChartSpec, ModelId, TangentVector};
use crate::solver::{solve_on_radius, DiskSolution, SolverConfig};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Smallest radius tried, for a unit direction.
    pub r_min: f64,
    pub r_max: f64,
    /// Stop once `hi/lo ≤ 1 + rel_tol`.
    pub rel_tol: f64,
    pub solver: SolverConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            r_min: 1e-3,
            r_max: 1e3,
            rel_tol: 0.01,
            solver: SolverConfig {
                tol: 1e-6,
                ..SolverConfig::default()
            },
        }
    }
}

impl SearchConfig {
    fn check(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "need 0 < R_min < R_max < inf, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidInput("bisection tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Closed-form candidate `f_i(ζ) = r_i M_{p_i/r_i}(c_i ζ / r_i)` on disk factors and
/// `f_i(ζ) = p_i + c_i ζ` on plane factors, defined on `𝔻_ρ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDisk {
    pub center: Vec<C64>,
    /// `c_i = r_i² v_i/(r_i² - |p_i|²)` on disk factors, `v_i` on plane factors.
    pub scale: Vec<C64>,
    pub radii: Vec<f64>,
    pub rho: f64,
}

impl ModelDisk {
    fn new(chart: &ChartSpec, tv: &TangentVector, rho: f64) -> Self {
        let scale = chart
            .domain
            .iter()
            .zip(tv.base.iter().zip(&tv.dir))
            .map(|(&r, (p, v))| {
                if r.is_finite() {
                    v * (r * r / (r * r - p.norm_sqr()))
                } else {
                    *v
                }
            })
            .collect();
        ModelDisk {
            center: tv.base.clone(),
            scale,
            radii: chart.domain.clone(),
            rho,
        }
    }

    /// Strictly inside the chart on the closed disk `𝔻̄_ρ`.
    fn admissible(&self) -> bool {
        self.radii
            .iter()
            .zip(&self.scale)
            .all(|(&r, c)| !r.is_finite() || self.rho * c.norm() < r)
    }

    pub fn eval(&self, zeta: C64) -> Vec<C64> {
        self.radii
            .iter()
            .zip(self.center.iter().zip(&self.scale))
            .map(|(&r, (p, c))| {
                if r.is_finite() {
                    let a = p / r;
                    let w = c * zeta / r;
                    (w + a) / (C64::new(1.0, 0.0) + a.conj() * w) * r
                } else {
                    p + c * zeta
                }
            })
            .collect()
    }
}

/// The disk that certifies an estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Closed-form holomorphic candidate; residual is zero.
    Model(ModelDisk),
    /// Solver output on the grid `𝔻_ρ`.
    Grid(Box<DiskSolution>),
}

impl Witness {
    /// Witness disk at `ζ`, for the normalized direction.
    pub fn eval(&self, zeta: C64) -> Vec<C64> {
        match self {
            Witness::Model(m) => m.eval(zeta),
            Witness::Grid(s) => s.grid.eval_at(zeta),
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            Witness::Model(_) => 0.0,
            Witness::Grid(s) => s.residual,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            Witness::Model(_) => 0,
            Witness::Grid(s) => s.iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStep {
    /// Radius for the given (unnormalized) vector.
    pub radius: f64,
    pub solvable: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudonormEstimate {
    /// Upper bound on `F_M(v)`.
    pub value: f64,
    /// Largest certified radius for `v`; `value · witness_r = 1` up to rounding.
    pub witness_r: f64,
    pub tv: TangentVector,
    /// Normalized direction the search was run in.
    pub unit_dir: Vec<C64>,
    /// Estimate for `unit_dir`, i.e. `1/ρ` for the certified unit-direction radius `ρ`.
    pub unit_value: f64,
    pub witness: Option<Witness>,
    pub search_log: Vec<SearchStep>,
    /// True when `R_max` itself was certified, so the value is only `≤ 1/R_max`.
    pub hit_r_max: bool,
}

impl PseudonormEstimate {
    pub fn iterations(&self) -> usize {
        self.witness.as_ref().map_or(0, Witness::iterations)
    }

    pub fn residual(&self) -> f64 {
        self.witness.as_ref().map_or(0.0, Witness::residual)
    }
}

/// Unit phase of the first nonzero component of `v`.
pub fn leading_phase(v: &[C64]) -> Option<C64> {
    let lead = *v.iter().find(|z| z.norm() > 0.0)?;
    Some(lead / lead.norm())
}

/// `u = v/|v|` with the phase of the first nonzero component removed, so that
/// `v = |v|·leading_phase(v)·u`.
pub fn normalize_direction(v: &[C64]) -> Option<(f64, Vec<C64>)> {
    let norm = euclidean_norm(v);
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    let ph = leading_phase(v)?.conj();
    Some((norm, v.iter().map(|z| z * ph / norm).collect()))
}

enum Outcome {
    Solved(Witness),
    Failed(String),
}

fn try_radius(chart: &ChartSpec, tv: &TangentVector, rho: f64, cfg: &SearchConfig) -> Outcome {
    if chart.integrable_model().is_some() {
        let m = ModelDisk::new(chart, tv, rho);
        return if m.admissible() {
            Outcome::Solved(Witness::Model(m))
        } else {
            Outcome::Failed("model candidate leaves the chart".into())
        };
    }
    match solve_on_radius(chart, tv, rho, &cfg.solver) {
        Ok(s) => Outcome::Solved(Witness::Grid(Box::new(s))),
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

/// Upper bound on `F_M(v)` from the largest certified disk radius.
#[allow(non_snake_case)]
pub fn estimate_F(chart: &ChartSpec, tv: &TangentVector, cfg: &SearchConfig) -> Result<PseudonormEstimate> {
    cfg.check()?;
    tv.check_in(chart)?;
    let Some((norm, u)) = normalize_direction(&tv.dir) else {
        return Ok(PseudonormEstimate {
            value: 0.0,
            witness_r: f64::INFINITY,
            tv: tv.clone(),
            unit_dir: tv.dir.clone(),
            unit_value: 0.0,
            witness: None,
            search_log: Vec::new(),
            hit_r_max: false,
        });
    };
    let unit = TangentVector::new(tv.base.clone(), u.clone());
    let mut log = Vec::new();
    let mut record = |rho: f64, out: &Outcome| {
        let (solvable, detail) = match out {
            Outcome::Solved(w) => (true, format!("certified, residual {:e}", w.residual())),
            Outcome::Failed(d) => (false, d.clone()),
        };
        log.push(SearchStep {
            radius: rho / norm,
            solvable,
            detail,
        });
    };

    let first = try_radius(chart, &unit, cfg.r_min, cfg);
    record(cfg.r_min, &first);
    let mut best = match first {
        Outcome::Solved(w) => w,
        Outcome::Failed(detail) => {
            return Err(Error::UnsolvableAtScale {
                r_min: cfg.r_min,
                detail,
            })
        }
    };
    let mut lo = cfg.r_min;
    let mut hi = cfg.r_max;
    let top = try_radius(chart, &unit, hi, cfg);
    record(hi, &top);
    let hit_r_max = match top {
        Outcome::Solved(w) => {
            best = w;
            lo = hi;
            true
        }
        Outcome::Failed(_) => {
            while hi / lo > 1.0 + cfg.rel_tol {
                let mid = (lo * hi).sqrt();
                let out = try_radius(chart, &unit, mid, cfg);
                record(mid, &out);
                match out {
                    Outcome::Solved(w) => {
                        best = w;
                        lo = mid;
                    }
                    Outcome::Failed(_) => hi = mid,
                }
            }
            false
        }
    };
    let unit_value = 1.0 / lo;
    Ok(PseudonormEstimate {
        value: norm * unit_value,
        witness_r: lo / norm,
        tv: tv.clone(),
        unit_dir: u,
        unit_value,
        witness: Some(best),
        search_log: log,
        hit_r_max,
    })
}

/// `estimate_F` over many vectors, in parallel; order of the output matches the input.
pub fn estimate_many(chart: &ChartSpec, tvs: &[TangentVector], cfg: &SearchConfig) -> Vec<Result<PseudonormEstimate>> {
    tvs.par_iter().map(|tv| estimate_F(chart, tv, cfg)).collect()
}

/// Exact pseudonorm of a model with unit radii.
#[allow(non_snake_case)]
pub fn exact_F_model(model: ModelId, tv: &TangentVector) -> f64 {
    let radii: Vec<f64> = match model {
        ModelId::StdCn => vec![f64::INFINITY; tv.dim()],
        ModelId::UnitDisk | ModelId::Polydisk => vec![1.0; tv.dim()],
        ModelId::DiskTimesPlane => (0..tv.dim())
            .map(|i| if i == 0 { 1.0 } else { f64::INFINITY })
            .collect(),
    };
    exact_F_polydisc(&radii, tv)
}

/// `max_i r_i|v_i|/(r_i² - |p_i|²)` over the finite factors of a product of disks and planes.
#[allow(non_snake_case)]
pub fn exact_F_polydisc(radii: &[f64], tv: &TangentVector) -> f64 {
    radii
        .iter()
        .zip(tv.base.iter().zip(&tv.dir))
        .filter(|(r, _)| r.is_finite())
        .map(|(&r, (p, v))| r * v.norm() / (r * r - p.norm_sqr()))
        .fold(0.0, f64::max)
}

/// Exact pseudonorm of an integrable chart with a declared model.
#[allow(non_snake_case)]
pub fn exact_F_chart(chart: &ChartSpec, tv: &TangentVector) -> Result<f64> {
    if chart.integrable_model().is_none() {
        return Err(Error::InvalidInput(format!(
            "chart `{}` declares no integrable model",
            chart.name
        )));
    }
    tv.check_in(chart)?;
    Ok(exact_F_polydisc(&chart.domain, tv))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    /// Estimate on the small chart at `tv`.
    pub small: f64,
    /// Estimate on the big chart at `ι_* tv`.
    pub big: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// Checks `F_big(ι_* v) ≤ F_small(v)` for a pseudoholomorphic inclusion `ι`.
pub fn check_monotonicity(
    small: &ChartSpec,
    big: &ChartSpec,
    inclusion: impl Fn(&TangentVector) -> TangentVector,
    tv: &TangentVector,
    cfg: &SearchConfig,
) -> Result<MonotonicityReport> {
    let fs = estimate_F(small, tv, cfg)?;
    let fb = estimate_F(big, &inclusion(tv), cfg)?;
    // each value is within rel_tol above its own certified bound
    let tolerance = cfg.rel_tol * fs.value.max(fb.value);
    Ok(MonotonicityReport {
        small: fs.value,
        big: fb.value,
        tolerance,
        holds: fb.value <= fs.value + tolerance,
    })
}

/// `max value/|v|` over the given vectors: an empirical Schwarz constant `C_K`.
pub fn schwarz_constant(chart: &ChartSpec, tvs: &[TangentVector], cfg: &SearchConfig) -> Result<f64> {
    let mut c: f64 = 0.0;
    for est in estimate_many(chart, tvs, cfg) {
        let est = est?;
        let n = est.tv.norm();
        if n > 0.0 {
            c = c.max(est.value / n);
        }
    }
    Ok(c)
}
