//! Named charts: `std-Cn`, `unit-disk`, `disk(r)`, `polydisk`, `perturbed-R4(ε)`,
//! `disk-x-plane`.

use super::chart::{ChartSpec, CoeffField, ModelId};
use super::poly::Polynomial;
use crate::{Error, Result, C64};

const LAMBDA: f64 = 0.5;

/// `ℂⁿ` with the standard structure.
pub fn std_cn(n: usize) -> ChartSpec {
    ChartSpec::new(
        format!("std-C{n}"),
        vec![f64::INFINITY; n],
        CoeffField::zero(n),
        LAMBDA,
        1,
    )
    .expect("valid chart")
    .with_model(ModelId::StdCn)
}

pub fn unit_disk() -> ChartSpec {
    disk(1.0).with_name("unit-disk")
}

/// The disk `𝔻_r ⊂ ℂ`.
pub fn disk(r: f64) -> ChartSpec {
    ChartSpec::new(format!("disk({r})"), vec![r], CoeffField::zero(1), LAMBDA, 1)
        .expect("valid chart")
        .with_model(ModelId::UnitDisk)
}

/// The bidisk `𝔻 × 𝔻`.
pub fn polydisk() -> ChartSpec {
    ChartSpec::new("polydisk", vec![1.0, 1.0], CoeffField::zero(2), LAMBDA, 1)
        .expect("valid chart")
        .with_model(ModelId::Polydisk)
}

/// `𝔻 × ℂ`, fibered by the leaves `{x} × ℂ`.
pub fn disk_times_plane() -> ChartSpec {
    ChartSpec::new("disk-x-plane", vec![1.0, f64::INFINITY], CoeffField::zero(2), LAMBDA, 1)
        .expect("valid chart")
        .with_model(ModelId::DiskTimesPlane)
}

/// A non-standard structure on `𝔻_{1.5} × 𝔻_{0.5} ⊂ ℂ²` whose coefficients vanish on
/// the axis `{z_2 = 0}`:
///
/// ```text
/// a^1_1̄ = ε z_2,   a^1_2̄ = ε z̄_2,   a^2_1̄ = ε z_1 z_2,   a^2_2̄ = 0.
/// ```
pub fn perturbed_r4(eps: f64) -> ChartSpec {
    let domain = vec![1.5, 0.5];
    let e = C64::new(eps, 0.0);
    let entries = vec![
        Polynomial::monomial(vec![0, 1], vec![0, 0], e),
        Polynomial::monomial(vec![0, 0], vec![0, 1], e),
        Polynomial::monomial(vec![1, 1], vec![0, 0], e),
        Polynomial::zero(),
    ];
    let coeff = CoeffField::new(2, entries, &domain).expect("valid field");
    ChartSpec::new(format!("perturbed-R4({eps})"), domain, coeff, LAMBDA, 1).expect("valid chart")
}

/// Resolves a gallery name.
pub fn by_name(name: &str) -> Result<ChartSpec> {
    let name = name.trim();
    if name == "std-Cn" {
        return Ok(std_cn(2));
    }
    if let Some(rest) = name.strip_prefix("std-C") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad dimension in `{name}`")))?;
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        return Ok(std_cn(n));
    }
    match name {
        "unit-disk" => return Ok(unit_disk()),
        "polydisk" => return Ok(polydisk()),
        "disk-x-plane" => return Ok(disk_times_plane()),
        "perturbed-R4" => return Ok(perturbed_r4(0.05)),
        _ => {}
    }
    if let Some(arg) = call_arg(name, "perturbed-R4") {
        return Ok(perturbed_r4(parse_f64(arg, name)?));
    }
    if let Some(arg) = call_arg(name, "disk") {
        let r = parse_f64(arg, name)?;
        if !(r > 0.0) {
            return Err(Error::InvalidInput("disk radius must be positive".into()));
        }
        return Ok(disk(r));
    }
    Err(Error::UnknownModel(name.to_string()))
}

pub const NAMES: &[&str] = &[
    "std-Cn",
    "unit-disk",
    "polydisk",
    "perturbed-R4(ε)",
    "disk(r)",
    "disk-x-plane",
];

fn call_arg<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_f64(s: &str, name: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad parameter in `{name}`")))
}

impl ChartSpec {
    fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}
