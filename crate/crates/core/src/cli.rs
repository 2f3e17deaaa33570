//! The `jdisk` command line.
//!
//! Every subcommand prints a one-line summary, writes its CSV output under `--out` and a
//! `manifest.json` echoing the full configuration. Exit codes: 0 on success, 64 for usage
//! and configuration errors, 1 for numerical failures; `scan` returns 0/1/2 for
//! hyperbolic/nonhyperbolic/inconclusive evidence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::acs::{coeffs_from_j, gallery, validate_structure, ChartSpec, JMatrixField, TangentVector, TOL_J};
use crate::distance::{estimate_d_chain, estimate_dbar, DistanceEstimate, OptimizerConfig, PathSpec};
use crate::hyperbolic::{disk_lattice, product_lattice, reduced_distance, scan, FibrationSpec, ScanConfig};
use crate::pseudonorm::{estimate_F, SearchConfig};
use crate::solver::{fmt_vec, solve_disk, SolveRecord, SolverConfig};
use crate::{Error, Result, C64};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(
    name = "jdisk",
    version,
    about = "Pseudoholomorphic disks and Kobayashi-Royden estimates"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output directory for CSVs and the run manifest.
    #[arg(long, global = true, default_value = "jdisk-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Check J² = -Id on sample points of the chart.
    Validate(ChartArgs),
    /// Solve for the disk through (p, v) on radius R.
    SolveDisk(SolveArgs),
    /// Estimate F(p, v).
    Norm(NormArgs),
    /// F over a lattice of base points and a fan of directions.
    Sweep(SweepArgs),
    /// Distance estimate between p and q.
    Dist(DistArgs),
    /// Hyperbolicity scan over a lattice.
    Scan(SweepArgs),
    /// Reduced distance between the leaves through p and q.
    Reduce(ReduceArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::SolveDisk(_) => "solve-disk",
            Command::Norm(_) => "norm",
            Command::Sweep(_) => "sweep",
            Command::Dist(_) => "dist",
            Command::Scan(_) => "scan",
            Command::Reduce(_) => "reduce",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ChartArgs {
    /// Gallery name (std-Cn, std-C<n>, unit-disk, disk(r), polydisk, disk-x-plane,
    /// perturbed-R4(eps)) or a chart TOML file.
    #[arg(long)]
    pub chart: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SolverArgs {
    #[arg(long)]
    pub tol: Option<f64>,
    /// Grid resolution NRxNT.
    #[arg(long)]
    pub resolution: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    /// Disk radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SearchArgs {
    /// Largest disk radius tried (R_max).
    #[arg(long = "R")]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub r_min: Option<f64>,
    /// Relative bisection tolerance on the radius.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct NormArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    /// Lattice radius in every coordinate.
    #[arg(long, default_value_t = 0.5)]
    pub lattice_radius: f64,
    /// Rings per coordinate lattice (ring i carries 4i points).
    #[arg(long, default_value_t = 2)]
    pub rings: usize,
    #[arg(long, default_value_t = 4)]
    pub directions: usize,
    /// Verdict threshold (scan only).
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
pub enum DistMethod {
    Path,
    Chain,
    Both,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DistArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, value_enum, default_value_t = DistMethod::Path)]
    pub method: DistMethod,
    #[arg(long, default_value_t = 16)]
    pub segments: usize,
    #[arg(long, default_value_t = 40)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    /// Representative on the first leaf.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    /// Representative on the second leaf.
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Alternative representative pairs used for the well-definedness defect.
    #[arg(long, default_value_t = 3)]
    pub alternatives: usize,
    #[arg(long, default_value_t = 16)]
    pub segments: usize,
    #[arg(long, default_value_t = 40)]
    pub sweeps: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

/// Run record written next to the outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub chart_hash: String,
    pub config: Cli,
    pub tool_version: String,
    pub elapsed_seconds: f64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Parses `re+imi`, `re`, `imi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidInput(format!("cannot parse `{s}` as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            Ok(C64::new(re, num(&body[k..])?))
        }
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

/// Comma-separated complex components.
pub fn parse_vector(s: &str) -> Result<Vec<C64>> {
    s.split(',').map(parse_complex).collect()
}

fn parse_resolution(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidInput(format!("resolution `{s}` is not of the form NRxNT"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Deterministic sample points of a chart's domain box (unbounded factors sampled in `𝔻₂`).
pub fn sample_points(chart: &ChartSpec, count: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            chart
                .domain
                .iter()
                .map(|&r| {
                    let r = if r.is_finite() { r } else { 2.0 };
                    let rad = 0.95 * r * rng.gen::<f64>().sqrt();
                    C64::from_polar(rad, std::f64::consts::TAU * rng.gen::<f64>())
                })
                .collect()
        })
        .collect()
}

/// Degree of the coefficient fit for charts given by raw `J` entries.
const FIT_DEGREE: u32 = 3;

/// Resolves a gallery name or reads a chart file; raw `J` charts are validated and their
/// coefficient field is fitted.
pub fn load_chart(arg: &str) -> Result<ChartSpec> {
    let path = Path::new(arg);
    if !path.exists() {
        return gallery::by_name(arg);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut chart = ChartSpec::from_toml(&text)?;
    if chart.j_offset.is_some() {
        let j = JMatrixField::of_chart(&chart);
        let pts = sample_points(&chart, 200, 7);
        let rep = validate_structure(&j, &pts, TOL_J)?;
        if !rep.passed() {
            return Err(Error::NotAlmostComplex {
                deviation: rep.max_deviation,
                tol: rep.tol,
                point: rep.worst_point,
            });
        }
        chart.coeff = coeffs_from_j(&j, &pts, &chart.domain, FIT_DEGREE)?.field;
    }
    Ok(chart)
}

fn solver_config(a: &SolverArgs, base: SolverConfig) -> Result<SolverConfig> {
    let mut cfg = base;
    if let Some(t) = a.tol {
        cfg.tol = t;
    }
    if let Some(r) = &a.resolution {
        cfg.resolution = parse_resolution(r)?;
    }
    if let Some(e) = a.epsilon {
        cfg.epsilon = e;
    }
    if let Some(m) = a.max_iter {
        cfg.max_iter = m;
    }
    Ok(cfg)
}

fn search_config(a: &SearchArgs) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default();
    if let Some(r) = a.r_max {
        cfg.r_max = r;
    }
    if let Some(r) = a.r_min {
        cfg.r_min = r;
    }
    if let Some(t) = a.rel_tol {
        cfg.rel_tol = t;
    }
    cfg.solver = solver_config(&a.solver, cfg.solver)?;
    Ok(cfg)
}

fn tangent(chart: &ChartSpec, p: &str, v: &str) -> Result<TangentVector> {
    let tv = TangentVector::new(parse_vector(p)?, parse_vector(v)?);
    tv.check_in(chart)?;
    Ok(tv)
}

fn point(chart: &ChartSpec, s: &str) -> Result<Vec<C64>> {
    let p = parse_vector(s)?;
    if !chart.contains(&p) {
        return Err(Error::InvalidInput(format!(
            "point `{s}` lies outside chart `{}`",
            chart.name
        )));
    }
    Ok(p)
}

struct Outcome {
    summary: String,
    chart_hash: String,
    files: Vec<(String, String)>,
    code: i32,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Config(_) | Error::UnknownModel(_) | Error::GridTooCoarse { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("jdisk {}: {e}", cli.command.name());
            exit_code_for(&e)
        }
    }
}

/// Executes a parsed command line (also used to replay a manifest).
pub fn run_cli(cli: &Cli) -> Result<i32> {
    let start = Instant::now();
    let outcome = match cli.jobs {
        Some(n) => {
            if n == 0 {
                return Err(Error::InvalidInput("--jobs must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            pool.install(|| dispatch(&cli.command))?
        }
        None => dispatch(&cli.command)?,
    };
    std::fs::create_dir_all(&cli.out)?;
    let mut outputs = Vec::new();
    for (name, body) in &outcome.files {
        std::fs::write(cli.out.join(name), body)?;
        outputs.push(name.clone());
    }
    let manifest = RunManifest {
        command: cli.command.name().to_string(),
        chart_hash: outcome.chart_hash,
        config: cli.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_seconds: start.elapsed().as_secs_f64(),
        outputs,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(cli.out.join("manifest.json"), json + "\n")?;
    println!("{}", outcome.summary);
    Ok(outcome.code)
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate(a) => validate(a),
        Command::SolveDisk(a) => solve(a),
        Command::Norm(a) => norm(a),
        Command::Sweep(a) => sweep(a, false),
        Command::Scan(a) => sweep(a, true),
        Command::Dist(a) => dist(a),
        Command::Reduce(a) => reduce(a),
    }
}

fn validate(a: &ChartArgs) -> Result<Outcome> {
    let path = Path::new(&a.chart);
    let chart = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(e.to_string()))?;
        ChartSpec::from_toml(&text)?
    } else {
        gallery::by_name(&a.chart)?
    };
    let j = JMatrixField::of_chart(&chart);
    let pts = sample_points(&chart, 200, 7);
    let rep = validate_structure(&j, &pts, TOL_J)?;
    let mut csv = String::from("sample,z,deviation\n");
    let id = nalgebra::DMatrix::<f64>::identity(2 * chart.n, 2 * chart.n);
    for (k, z) in pts.iter().enumerate() {
        let m = j.at(z);
        let _ = writeln!(csv, "{k},{},{:e}", fmt_vec(z), (&m * &m + &id).norm());
    }
    let (summary, code) = if rep.passed() {
        (
            format!(
                "ok: max |J^2 + I| = {:e} over {} samples (tol {:e})",
                rep.max_deviation, rep.points, rep.tol
            ),
            0,
        )
    } else {
        (
            format!(
                "not almost complex: max |J^2 + I| = {:e} at sample {} (tol {:e})",
                rep.max_deviation, rep.worst_point, rep.tol
            ),
            EXIT_FAILURE,
        )
    };
    Ok(Outcome {
        summary,
        chart_hash: chart.hash(),
        files: vec![("validate.csv".into(), csv)],
        code,
    })
}

fn solve(a: &SolveArgs) -> Result<Outcome> {
    let chart = load_chart(&a.chart.chart)?;
    let tv = tangent(&chart, &a.p, &a.v)?;
    let cfg = solver_config(&a.solver, SolverConfig::default())?;
    let sol = solve_disk(&chart, &tv, a.radius, &cfg)?;
    let record = SolveRecord::new(&chart, &sol, &cfg);
    Ok(Outcome {
        summary: format!(
            "converged in {} iterations on radius {}: residual {:e}, |z|' = {:e}",
            sol.iterations,
            sol.grid_radius(),
            sol.residual,
            sol.norm_prime
        ),
        chart_hash: chart.hash(),
        files: vec![
            ("solve.csv".into(), record.to_csv()),
            ("disk.txt".into(), sol.grid.to_text()),
        ],
        code: 0,
    })
}

fn norm(a: &NormArgs) -> Result<Outcome> {
    let chart = load_chart(&a.chart.chart)?;
    let tv = tangent(&chart, &a.p, &a.v)?;
    let cfg = search_config(&a.search)?;
    let est = estimate_F(&chart, &tv, &cfg)?;
    let mut csv = String::from("radius,solvable,detail\n");
    for s in &est.search_log {
        let _ = writeln!(csv, "{:e},{},{}", s.radius, s.solvable, s.detail.replace(',', ";"));
    }
    Ok(Outcome {
        summary: format!(
            "F = {:e} (witness radius {:e}{})",
            est.value,
            est.witness_r,
            if est.hit_r_max { ", R_max reached" } else { "" }
        ),
        chart_hash: chart.hash(),
        files: vec![("norm.csv".into(), csv)],
        code: 0,
    })
}

fn lattice(chart: &ChartSpec, a: &SweepArgs) -> Result<Vec<Vec<C64>>> {
    if !(a.lattice_radius >= 0.0) {
        return Err(Error::InvalidInput("lattice radius must be nonnegative".into()));
    }
    if chart.domain.iter().any(|&r| !(a.lattice_radius < r)) {
        return Err(Error::InvalidInput(format!(
            "lattice radius {} does not fit inside chart `{}`",
            a.lattice_radius, chart.name
        )));
    }
    let factor = disk_lattice(a.lattice_radius, a.rings);
    Ok(product_lattice(&vec![factor; chart.n]))
}

fn sweep(a: &SweepArgs, verdict: bool) -> Result<Outcome> {
    let chart = load_chart(&a.chart.chart)?;
    let pts = lattice(&chart, a)?;
    let cfg = ScanConfig {
        directions: a.directions,
        tau: a.tau,
        search: search_config(&a.search)?,
    };
    let rep = scan(&chart, &pts, &cfg)?;
    if verdict {
        return Ok(Outcome {
            summary: rep.summary_line(),
            chart_hash: rep.chart_hash.clone(),
            files: vec![("scan.csv".into(), rep.to_csv())],
            code: rep.verdict.exit_code(),
        });
    }
    let mut csv = String::from("p,v,value,witness_R,iterations\n");
    for s in &rep.samples {
        let value = s.value.map_or_else(|| "nan".to_string(), |x| format!("{x:e}"));
        let _ = writeln!(
            csv,
            "{},{},{},{:e},{}",
            fmt_vec(&s.p),
            fmt_vec(&s.v),
            value,
            s.witness_r,
            s.iterations
        );
    }
    let code = if rep.failures.is_empty() { 0 } else { EXIT_FAILURE };
    Ok(Outcome {
        summary: format!(
            "{} estimates: min {:e}, max {:e}, {} failures",
            rep.samples.len(),
            rep.inf_f1,
            rep.sup_f1,
            rep.failures.len()
        ),
        chart_hash: rep.chart_hash,
        files: vec![("sweep.csv".into(), csv)],
        code,
    })
}

fn trace_csv(est: &DistanceEstimate) -> String {
    let mut s = String::from("method,segment,contribution,radius,defect\n");
    for d in &est.details {
        let _ = writeln!(
            s,
            "{},{},{:e},{:e},{:e}",
            est.method.as_str(),
            d.segment,
            d.contribution,
            d.radius,
            d.defect
        );
    }
    s
}

fn dist(a: &DistArgs) -> Result<Outcome> {
    let chart = load_chart(&a.chart.chart)?;
    let p = point(&chart, &a.p)?;
    let q = point(&chart, &a.q)?;
    if p.len() != q.len() {
        return Err(Error::InvalidInput("p and q differ in dimension".into()));
    }
    let cfg = search_config(&a.search)?;
    let mut rows = String::from("method,value,partition,converged,max_defect\n");
    let mut traces = String::new();
    let mut parts = Vec::new();
    if matches!(a.method, DistMethod::Path | DistMethod::Both) {
        let opt = OptimizerConfig {
            segments: a.segments,
            sweeps: a.sweeps,
            seed: a.seed,
            ..OptimizerConfig::default()
        };
        let est = estimate_dbar(&chart, &p, &q, &opt, &cfg)?;
        let _ = writeln!(
            rows,
            "path-integral,{:e},{},{},0e0",
            est.value, est.partition, est.converged
        );
        traces.push_str(&trace_csv(&est));
        parts.push(format!(
            "d_bar = {:e}{}",
            est.value,
            if est.converged { "" } else { " (budget exhausted)" }
        ));
    }
    if matches!(a.method, DistMethod::Chain | DistMethod::Both) {
        let path = PathSpec::straight(&p, &q, a.segments)?;
        let est = estimate_d_chain(&chart, &path, &cfg)?;
        let _ = writeln!(
            rows,
            "disk-chain,{:e},{},true,{:e}",
            est.value,
            est.partition,
            est.max_defect()
        );
        traces.push_str(&trace_csv(&est));
        parts.push(format!("d_chain = {:e} (max defect {:e})", est.value, est.max_defect()));
    }
    Ok(Outcome {
        summary: parts.join(", "),
        chart_hash: chart.hash(),
        files: vec![("dist.csv".into(), rows), ("dist_trace.csv".into(), traces)],
        code: 0,
    })
}

/// Fiber offsets for alternative representatives.
const ALT_OFFSETS: [(f64, f64); 6] = [
    (0.25, 0.0),
    (0.0, 0.25),
    (-0.25, 0.0),
    (0.0, -0.25),
    (0.2, 0.2),
    (-0.2, 0.2),
];

fn reduce(a: &ReduceArgs) -> Result<Outcome> {
    let chart = load_chart(&a.chart.chart)?;
    let fib = FibrationSpec::for_chart(&chart)?;
    let p = point(&chart, &a.p)?;
    let q = point(&chart, &a.q)?;
    let fiber = |z: &[C64]| -> Vec<C64> { fib.fiber.iter().map(|&i| z[i]).collect() };
    let (xa, xb) = (fib.project(&p), fib.project(&q));
    let mut reps = vec![(fiber(&p), fiber(&q))];
    for &(re, im) in ALT_OFFSETS.iter().take(a.alternatives) {
        let d = C64::new(re, im);
        reps.push((
            fiber(&p).iter().map(|w| w + d).collect(),
            fiber(&q).iter().map(|w| w - d).collect(),
        ));
    }
    let cfg = search_config(&a.search)?;
    let opt = OptimizerConfig {
        segments: a.segments,
        sweeps: a.sweeps,
        ..OptimizerConfig::default()
    };
    let red = reduced_distance(&chart, &fib, &xa, &xb, &reps, &opt, &cfg)?;
    let mut csv = String::from("w_a,w_b,distance\n");
    for (wa, wb, d) in &red.samples {
        let _ = writeln!(csv, "{},{},{:e}", fmt_vec(wa), fmt_vec(wb), d);
    }
    Ok(Outcome {
        summary: format!(
            "reduced distance = {:e}, representative defect = {:e} (leaves over {} and {})",
            red.value,
            red.defect,
            fmt_vec(&xa),
            fmt_vec(&xb)
        ),
        chart_hash: chart.hash(),
        files: vec![("reduce.csv".into(), csv)],
        code: 0,
    })
}
