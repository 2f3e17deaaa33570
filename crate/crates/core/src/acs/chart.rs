use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::poly::{Polynomial, Term};
use crate::{Error, Result, C64};

/// Field `a(z)` of anti-linear coefficients `a^i_{m̄}`; entry `(i, m)` lives at `i * n + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffField {
    n: usize,
    entries: Vec<Polynomial>,
    sup_bound: f64,
}

impl CoeffField {
    /// The standard structure `J0`: all coefficients vanish.
    pub fn zero(n: usize) -> Self {
        CoeffField {
            n,
            entries: vec![Polynomial::zero(); n * n],
            sup_bound: 0.0,
        }
    }

    /// Builds a field and caches its sup bound over the polydisc `radii`.
    pub fn new(n: usize, entries: Vec<Polynomial>, radii: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "coefficient field needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for (k, e) in entries.iter().enumerate() {
            if !e.check_arity(n) {
                return Err(Error::InvalidInput(format!(
                    "coefficient ({}, {}) has multi-indices of the wrong length",
                    k / n,
                    k % n
                )));
            }
        }
        let sup_bound = entries.iter().map(|p| p.sup_bound(radii)).fold(0.0, f64::max);
        Ok(CoeffField { n, entries, sup_bound })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, m: usize) -> &Polynomial {
        &self.entries[i * self.n + m]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Row-major `n×n` matrix `a(z)`.
    pub fn eval(&self, z: &[C64]) -> Vec<C64> {
        self.entries.iter().map(|p| p.eval(z)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.iter().map(Polynomial::degree).max().unwrap_or(0)
    }
}

/// Integrable models for which exact pseudonorms are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelId {
    /// `ℂⁿ` with the standard structure.
    #[serde(rename = "std-Cn")]
    StdCn,
    /// A disk `𝔻_r ⊂ ℂ` (the unit disk when `r = 1`).
    #[serde(rename = "unit-disk")]
    UnitDisk,
    /// A polydisc `𝔻_{r_1} × … × 𝔻_{r_n}`.
    #[serde(rename = "polydisk")]
    Polydisk,
    /// Products of disks and planes, e.g. `𝔻 × ℂ`.
    #[serde(rename = "disk-x-plane")]
    DiskTimesPlane,
}

impl ModelId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "std-Cn" => Ok(ModelId::StdCn),
            "unit-disk" => Ok(ModelId::UnitDisk),
            "polydisk" => Ok(ModelId::Polydisk),
            "disk-x-plane" => Ok(ModelId::DiskTimesPlane),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelId::StdCn => "std-Cn",
            ModelId::UnitDisk => "unit-disk",
            ModelId::Polydisk => "polydisk",
            ModelId::DiskTimesPlane => "disk-x-plane",
        }
    }
}

/// An almost complex structure on a polydisc box in `ℂⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub name: String,
    pub n: usize,
    /// Radii of the box: the chart is `{ |z_i| < domain[i] }`; `inf` for an unbounded factor.
    pub domain: Vec<f64>,
    pub coeff: CoeffField,
    pub holder_lambda: f64,
    pub smoothness_k: u32,
    pub model: Option<ModelId>,
    /// Raw `J(z) - J0` entries when the chart was given in matrix form.
    pub j_offset: Option<Vec<JEntry>>,
}

/// One entry of a raw matrix field: `J(z)[row][col] += Re p(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<Term>,
}

impl ChartSpec {
    pub fn new(
        name: impl Into<String>,
        domain: Vec<f64>,
        coeff: CoeffField,
        holder_lambda: f64,
        smoothness_k: u32,
    ) -> Result<Self> {
        let n = domain.len();
        if n == 0 {
            return Err(Error::InvalidInput("chart dimension must be at least 1".into()));
        }
        if coeff.n() != n {
            return Err(Error::InvalidInput(format!(
                "coefficient field is {0}x{0} but the chart has dimension {1}",
                coeff.n(),
                n
            )));
        }
        if !(holder_lambda > 0.0 && holder_lambda < 1.0) {
            return Err(Error::InvalidInput(format!(
                "Hölder exponent must lie in (0, 1), got {holder_lambda}"
            )));
        }
        if domain.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::InvalidInput("domain radii must be positive".into()));
        }
        Ok(ChartSpec {
            name: name.into(),
            n,
            domain,
            coeff,
            holder_lambda,
            smoothness_k,
            model: None,
            j_offset: None,
        })
    }

    pub fn with_model(mut self, model: ModelId) -> Self {
        self.model = Some(model);
        self
    }

    pub fn contains(&self, z: &[C64]) -> bool {
        z.len() == self.n && z.iter().zip(&self.domain).all(|(zi, &r)| zi.norm() < r)
    }

    /// True when the structure is the standard one and a model id is declared, so the
    /// model's exact candidate disks may be used.
    pub fn integrable_model(&self) -> Option<ModelId> {
        if self.coeff.is_zero() && self.j_offset.is_none() {
            self.model
        } else {
            None
        }
    }

    /// SHA-256 of the canonical TOML form.
    pub fn hash(&self) -> String {
        let text = self.to_toml();
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn to_file(&self) -> ChartFile {
        let mut coeff = Vec::new();
        for i in 0..self.n {
            for m in 0..self.n {
                let p = self.coeff.entry(i, m);
                if !p.is_zero() {
                    coeff.push(CoeffEntry {
                        row: i,
                        col: m,
                        terms: p.terms.clone(),
                    });
                }
            }
        }
        ChartFile {
            name: self.name.clone(),
            n: self.n,
            domain: self.domain.clone(),
            holder_lambda: self.holder_lambda,
            smoothness_k: self.smoothness_k,
            model: self.model.map(|m| m.as_str().to_string()),
            coeff,
            j_offset: self.j_offset.clone().unwrap_or_default(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("chart serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ChartFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.into_chart()
    }
}

/// On-disk chart layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartFile {
    pub name: String,
    pub n: usize,
    pub domain: Vec<f64>,
    pub holder_lambda: f64,
    #[serde(default)]
    pub smoothness_k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeff: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub j_offset: Vec<JEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<Term>,
}

impl ChartFile {
    pub fn into_chart(self) -> Result<ChartSpec> {
        let n = self.n;
        if self.domain.len() != n {
            return Err(Error::Config(format!(
                "domain lists {} radii for dimension {}",
                self.domain.len(),
                n
            )));
        }
        let mut entries = vec![Polynomial::zero(); n * n];
        for e in self.coeff {
            if e.row >= n || e.col >= n {
                return Err(Error::Config(format!(
                    "coefficient index ({}, {}) out of range",
                    e.row, e.col
                )));
            }
            entries[e.row * n + e.col].terms.extend(e.terms);
        }
        for e in &self.j_offset {
            if e.row >= 2 * n || e.col >= 2 * n {
                return Err(Error::Config(format!("J entry ({}, {}) out of range", e.row, e.col)));
            }
            if !(Polynomial { terms: e.terms.clone() }).check_arity(n) {
                return Err(Error::Config("J entry multi-index of the wrong length".into()));
            }
        }
        let coeff = CoeffField::new(n, entries, &self.domain).map_err(|e| Error::Config(e.to_string()))?;
        let mut chart = ChartSpec::new(self.name, self.domain, coeff, self.holder_lambda, self.smoothness_k)
            .map_err(|e| Error::Config(e.to_string()))?;
        if let Some(m) = self.model {
            chart.model = Some(ModelId::parse(&m)?);
        }
        if !self.j_offset.is_empty() {
            chart.j_offset = Some(self.j_offset);
        }
        Ok(chart)
    }
}

/// A tangent vector `v ∈ T_pℂⁿ` in chart coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub base: Vec<C64>,
    pub dir: Vec<C64>,
}

impl TangentVector {
    pub fn new(base: Vec<C64>, dir: Vec<C64>) -> Self {
        TangentVector { base, dir }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.dir)
    }

    pub fn scaled(&self, t: C64) -> Self {
        TangentVector {
            base: self.base.clone(),
            dir: self.dir.iter().map(|d| d * t).collect(),
        }
    }

    pub fn check_in(&self, chart: &ChartSpec) -> Result<()> {
        if self.base.len() != chart.n || self.dir.len() != chart.n {
            return Err(Error::InvalidInput(format!(
                "tangent vector has dimension {}/{} but chart `{}` has dimension {}",
                self.base.len(),
                self.dir.len(),
                chart.name,
                chart.n
            )));
        }
        if !chart.contains(&self.base) {
            return Err(Error::InvalidInput(format!(
                "base point lies outside chart `{}`",
                chart.name
            )));
        }
        Ok(())
    }
}

pub fn euclidean_norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
