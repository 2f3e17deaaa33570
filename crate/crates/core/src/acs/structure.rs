//! Matrix form `J(z)` of an almost complex structure and its conversions to and from
//! the anti-linear coefficient form `a(z)`.
//!
//! Real coordinates on `ℂⁿ` are ordered `(x_1, y_1, …, x_n, y_n)`, so the standard
//! structure `J0` is block diagonal with blocks `[[0, -1], [1, 0]]`.
//!
//! A map `f` from the disk is `J`-holomorphic iff `dbar f + a(f) · conj(∂f) = 0`, where
//! `a(z)` is the complex matrix of the anti-linear map `(J0 + J(z))⁻¹ (J(z) - J0)`.
//! Conversely `J = J0 (1 + K)(1 - K)⁻¹` with `K ξ = a ξ̄`.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::chart::{ChartSpec, CoeffField};
use super::poly::{monomials_up_to, Polynomial, Term};
use crate::{Error, Result, C64};

/// Default tolerance for `J² = -I`.
pub const TOL_J: f64 = 1e-9;

type JFn = dyn Fn(&[C64]) -> DMatrix<f64> + Send + Sync;

/// A field `z ↦ J(z)` of real `2n×2n` matrices.
#[derive(Clone)]
pub struct JMatrixField {
    n: usize,
    f: Arc<JFn>,
}

impl std::fmt::Debug for JMatrixField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JMatrixField").field("n", &self.n).finish()
    }
}

impl JMatrixField {
    pub fn from_fn(n: usize, f: impl Fn(&[C64]) -> DMatrix<f64> + Send + Sync + 'static) -> Self {
        JMatrixField { n, f: Arc::new(f) }
    }

    pub fn standard(n: usize) -> Self {
        let j0 = standard_j(n);
        Self::from_fn(n, move |_| j0.clone())
    }

    /// The constant field `L⁻¹ J0 L`.
    pub fn conjugated(lin: &DMatrix<f64>) -> Result<Self> {
        let n = lin.nrows() / 2;
        let inv = lin
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        let j = &inv * standard_j(n) * lin;
        Ok(Self::from_fn(n, move |_| j.clone()))
    }

    /// `J(z) = J0 (1 + K(z)) (1 - K(z))⁻¹` built from a coefficient field.
    pub fn from_coeffs(coeff: &CoeffField) -> Self {
        let coeff = coeff.clone();
        let n = coeff.n();
        Self::from_fn(n, move |z| j_from_a(n, &coeff.eval(z)))
    }

    /// The structure of a chart: its raw matrix entries if present, else built from `a`.
    pub fn of_chart(chart: &ChartSpec) -> Self {
        match &chart.j_offset {
            Some(entries) => {
                let n = chart.n;
                let entries = entries.clone();
                let j0 = standard_j(n);
                Self::from_fn(n, move |z| {
                    let mut j = j0.clone();
                    for e in &entries {
                        let p = Polynomial { terms: e.terms.clone() };
                        j[(e.row, e.col)] += p.eval(z).re;
                    }
                    j
                })
            }
            None => Self::from_coeffs(&chart.coeff),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, z: &[C64]) -> DMatrix<f64> {
        (self.f)(z)
    }
}

/// Standard structure `J0` on `ℝ^{2n}`.
pub fn standard_j(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

/// Real matrix of the complex-linear map `ξ ↦ P ξ` (`P` row-major `n×n`).
pub fn realify_linear(n: usize, p: &[C64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for k in 0..n {
            let c = p[i * n + k];
            m[(2 * i, 2 * k)] = c.re;
            m[(2 * i, 2 * k + 1)] = -c.im;
            m[(2 * i + 1, 2 * k)] = c.im;
            m[(2 * i + 1, 2 * k + 1)] = c.re;
        }
    }
    m
}

/// Real matrix of the anti-linear map `ξ ↦ Q ξ̄`.
pub fn realify_antilinear(n: usize, q: &[C64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for k in 0..n {
            let c = q[i * n + k];
            m[(2 * i, 2 * k)] = c.re;
            m[(2 * i, 2 * k + 1)] = c.im;
            m[(2 * i + 1, 2 * k)] = c.im;
            m[(2 * i + 1, 2 * k + 1)] = -c.re;
        }
    }
    m
}

/// Complex matrix `Q` of the anti-linear part `(M + J0 M J0) / 2` of a real matrix.
pub fn antilinear_part(n: usize, m: &DMatrix<f64>) -> Vec<C64> {
    let j0 = standard_j(n);
    let a = (m + &j0 * m * &j0) * 0.5;
    let mut q = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            q[i * n + k] = C64::new(a[(2 * i, 2 * k)], a[(2 * i + 1, 2 * k)]);
        }
    }
    q
}

pub fn to_real(z: &[C64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

pub fn to_complex(x: &[f64]) -> Vec<C64> {
    x.chunks(2).map(|c| C64::new(c[0], c[1])).collect()
}

fn j_from_a(n: usize, a: &[C64]) -> DMatrix<f64> {
    let k = realify_antilinear(n, a);
    let id = DMatrix::<f64>::identity(2 * n, 2 * n);
    let inv = (&id - &k)
        .try_inverse()
        .unwrap_or_else(|| DMatrix::from_element(2 * n, 2 * n, f64::NAN));
    standard_j(n) * (&id + &k) * inv
}

/// Outcome of [`validate_structure`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub max_deviation: f64,
    pub worst_point: usize,
    pub tol: f64,
    pub points: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tol
    }
}

/// Largest Frobenius norm of `J(z)² + I` over the sample points.
pub fn validate_structure(j: &JMatrixField, points: &[Vec<C64>], tol: f64) -> Result<ValidationReport> {
    let id = DMatrix::<f64>::identity(2 * j.n(), 2 * j.n());
    let mut max_deviation = 0.0;
    let mut worst_point = 0;
    for (k, z) in points.iter().enumerate() {
        if z.len() != j.n() {
            return Err(Error::InvalidInput(format!(
                "sample {k} has dimension {} instead of {}",
                z.len(),
                j.n()
            )));
        }
        let m = j.at(z);
        if m.nrows() != 2 * j.n() || m.ncols() != 2 * j.n() || m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("J could not be evaluated at sample {k}")));
        }
        let dev = (&m * &m + &id).norm();
        if dev > max_deviation {
            max_deviation = dev;
            worst_point = k;
        }
    }
    Ok(ValidationReport {
        max_deviation,
        worst_point,
        tol,
        points: points.len(),
    })
}

/// Returns an invertible `L` with `L Jp L⁻¹ = J0`.
///
/// The `+i` eigenspace of `Jp` is spanned by the vectors `u - i Jp u`; its real form is
/// a sum of `Jp`-invariant planes `span(u, Jp u)`. Picking `u` greedily among the
/// standard basis vectors (Gram–Schmidt against the planes chosen so far) gives
/// `B = [u_1, Jp u_1, …]` with `Jp B = B J0`, and `L = B⁻¹`.
pub fn frame_normalize(jp: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let dim = jp.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || jp.ncols() != dim {
        return Err(Error::InvalidInput(format!(
            "expected an even square matrix, got {}x{}",
            jp.nrows(),
            jp.ncols()
        )));
    }
    let id = DMatrix::<f64>::identity(dim, dim);
    let dev = (jp * jp + &id).norm();
    if !(dev <= TOL_J) {
        return Err(Error::NotAlmostComplex {
            deviation: dev,
            tol: TOL_J,
            point: 0,
        });
    }
    let n = dim / 2;
    let mut ortho: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(dim);
    let mut b = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..n {
        // pick the standard vector with the largest component off the current span
        let mut best: Option<(f64, nalgebra::DVector<f64>)> = None;
        for e in 0..dim {
            let mut u = nalgebra::DVector::<f64>::zeros(dim);
            u[e] = 1.0;
            let mut r = u.clone();
            for q in &ortho {
                let c = q.dot(&r);
                r -= q * c;
            }
            let nr = r.norm();
            if best.as_ref().is_none_or(|(s, _)| nr > *s) {
                best = Some((nr, r));
            }
        }
        let (_, mut u) = best.expect("dim > 0");
        u /= u.norm();
        let ju = jp * &u;
        for v in [&u, &ju] {
            let mut r = v.clone();
            for q in &ortho {
                let c = q.dot(&r);
                r -= q * c;
            }
            let nr = r.norm();
            if nr < 1e-12 {
                return Err(Error::InvalidInput("could not complete a complex frame".into()));
            }
            ortho.push(r / nr);
        }
        b.set_column(2 * k, &u);
        b.set_column(2 * k + 1, &ju);
    }
    b.try_inverse()
        .ok_or_else(|| Error::InvalidInput("frame matrix is singular".into()))
}

/// Result of [`coeffs_from_j`].
#[derive(Debug, Clone)]
pub struct CoeffFit {
    pub field: CoeffField,
    /// Largest `|a_fit(z) - a(z)|` over the samples.
    pub fit_residual: f64,
    /// Largest `|dbar f + a_fit conj(∂f)|` over samples and test vectors, where
    /// `∂f = (X - iJX)/2`, `dbar f = (X + iJX)/2` for real basis vectors `X`.
    pub resubstitution_residual: f64,
}

/// Reads `a(z)` off `(J0 + J)⁻¹ (J - J0)` at each sample and fits every entry by a
/// least-squares polynomial in `(z, z̄)` of total degree `≤ degree`.
pub fn coeffs_from_j(j: &JMatrixField, samples: &[Vec<C64>], domain: &[f64], degree: u32) -> Result<CoeffFit> {
    let n = j.n();
    let j0 = standard_j(n);
    let mut sampled: Vec<Vec<C64>> = Vec::with_capacity(samples.len());
    for (k, z) in samples.iter().enumerate() {
        let m = j.at(z);
        let s = &j0 + &m;
        let svd = s.clone().svd(false, false);
        let smin = svd.singular_values.min();
        if !(smin > 1e-8 * s.norm().max(1.0)) {
            return Err(Error::TooFarFromStandard { point: k });
        }
        let inv = s.try_inverse().ok_or(Error::TooFarFromStandard { point: k })?;
        let kmat = inv * (&m - &j0);
        sampled.push(antilinear_part(n, &kmat));
    }

    let monos = monomials_up_to(n, degree);
    if samples.len() < monos.len() {
        return Err(Error::InvalidInput(format!(
            "need at least {} samples to fit degree {degree}, got {}",
            monos.len(),
            samples.len()
        )));
    }
    let design = DMatrix::<C64>::from_fn(samples.len(), monos.len(), |r, c| {
        Polynomial::monomial(monos[c].0.clone(), monos[c].1.clone(), C64::new(1.0, 0.0)).eval(&samples[r])
    });
    let svd = design.clone().svd(true, true);
    let mut entries = Vec::with_capacity(n * n);
    for e in 0..n * n {
        let rhs = DMatrix::<C64>::from_fn(samples.len(), 1, |r, _| sampled[r][e]);
        let sol = svd.solve(&rhs, 1e-12).map_err(|m| Error::InvalidInput(m.to_string()))?;
        let terms: Vec<Term> = monos
            .iter()
            .zip(sol.iter())
            .filter(|(_, c)| c.norm() > 1e-14)
            .map(|((a, b), c)| Term::new(a.clone(), b.clone(), *c))
            .collect();
        entries.push(Polynomial { terms });
    }
    let field = CoeffField::new(n, entries, domain)?;

    let mut fit_residual: f64 = 0.0;
    let mut resub: f64 = 0.0;
    for (k, z) in samples.iter().enumerate() {
        let a = field.eval(z);
        for e in 0..n * n {
            fit_residual = fit_residual.max((a[e] - sampled[k][e]).norm());
        }
        let m = j.at(z);
        for col in 0..2 * n {
            let mut x = vec![0.0; 2 * n];
            x[col] = 1.0;
            let xr = nalgebra::DVector::from_vec(x.clone());
            let y = &m * xr;
            let xc = to_complex(&x);
            let yc = to_complex(y.as_slice());
            let i = C64::new(0.0, 1.0);
            let del: Vec<C64> = xc.iter().zip(&yc).map(|(x, y)| (x - i * y) * 0.5).collect();
            let dbar: Vec<C64> = xc.iter().zip(&yc).map(|(x, y)| (x + i * y) * 0.5).collect();
            for r in 0..n {
                let mut s = dbar[r];
                for c in 0..n {
                    s += a[r * n + c] * del[c].conj();
                }
                resub = resub.max(s.norm());
            }
        }
    }
    Ok(CoeffFit {
        field,
        fit_residual,
        resubstitution_residual: resub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(rng: &mut ChaCha8Rng, dim: usize, max_cond: f64) -> DMatrix<f64> {
        loop {
            let m = DMatrix::<f64>::from_fn(dim, dim, |r, c| {
                let x: f64 = rng.gen_range(-0.5..0.5);
                if r == c {
                    1.0 + x
                } else {
                    x
                }
            });
            let sv = m.clone().svd(false, false).singular_values;
            if sv.max() / sv.min() <= max_cond {
                return m;
            }
        }
    }

    #[test]
    fn standard_j_squares_to_minus_identity() {
        let j = JMatrixField::standard(3);
        let pts: Vec<Vec<C64>> = (0..5).map(|k| vec![C64::new(k as f64, 0.0); 3]).collect();
        let rep = validate_structure(&j, &pts, TOL_J).unwrap();
        assert_eq!(rep.max_deviation, 0.0);
        assert!(rep.passed());
    }

    #[test]
    fn conjugated_structure_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = random_invertible(&mut rng, 4, 10.0);
        let j = JMatrixField::conjugated(&l).unwrap();
        let pts = vec![vec![C64::new(0.1, 0.2), C64::new(-0.3, 0.0)]];
        let rep = validate_structure(&j, &pts, TOL_J).unwrap();
        assert!(rep.max_deviation < 1e-12, "{}", rep.max_deviation);
    }

    #[test]
    fn symmetric_perturbation_is_rejected() {
        // J0 + 0.01 S with S symmetric: (J0 + εS)² + I = ε(J0 S + S J0) + ε² S²
        let s = DMatrix::<f64>::from_fn(2, 2, |r, c| if r == c { 1.0 } else { 0.5 });
        let jm = standard_j(1) + s.clone() * 0.01;
        let oracle = (&jm * &jm + DMatrix::<f64>::identity(2, 2)).norm();
        let field = JMatrixField::from_fn(1, move |_| jm.clone());
        let rep = validate_structure(&field, &[vec![C64::new(0.0, 0.0)]], TOL_J).unwrap();
        assert_eq!(rep.max_deviation, oracle);
        assert!(oracle > 1e-4);
        assert!(!rep.passed());
    }

    #[test]
    fn subset_never_increases_deviation() {
        let field = JMatrixField::from_fn(1, |z: &[C64]| {
            let mut j = standard_j(1);
            j[(0, 0)] += 0.01 * z[0].re;
            j
        });
        let pts: Vec<Vec<C64>> = (0..10).map(|k| vec![C64::new(k as f64 * 0.1, 0.0)]).collect();
        let full = validate_structure(&field, &pts, TOL_J).unwrap();
        let sub = validate_structure(&field, &pts[..4], TOL_J).unwrap();
        assert!(sub.max_deviation <= full.max_deviation);
    }

    #[test]
    fn frame_normalize_identity_case() {
        let j0 = standard_j(2);
        let l = frame_normalize(&j0).unwrap();
        let inv = l.clone().try_inverse().unwrap();
        assert!((&l * &j0 * inv - &j0).norm() <= 1e-10);
    }

    #[test]
    fn frame_normalize_random_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let dim = 2 * rng.gen_range(1..=3);
            let m = random_invertible(&mut rng, dim, 10.0);
            let jp = &m * standard_j(dim / 2) * m.clone().try_inverse().unwrap();
            let l = frame_normalize(&jp).unwrap();
            let inv = l.clone().try_inverse().unwrap();
            let err = (&l * &jp * inv - standard_j(dim / 2)).norm();
            assert!(err <= 1e-10, "conjugation error {err}");
        }
    }

    #[test]
    fn frame_normalize_sheared_plane() {
        // rotation by +90° in the basis (1, 0), (1, 1): closed form B⁻¹ J0 B
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let jp = b.clone().try_inverse().unwrap() * standard_j(1) * &b;
        let l = frame_normalize(&jp).unwrap();
        let err = (&l * &jp * l.clone().try_inverse().unwrap() - standard_j(1)).norm();
        assert!(err <= 1e-10);
    }

    #[test]
    fn frame_normalize_rejects_non_structure() {
        let bad = DMatrix::<f64>::identity(2, 2);
        assert!(matches!(frame_normalize(&bad), Err(Error::NotAlmostComplex { .. })));
    }

    fn grid_samples(n: usize, count: usize, radius: f64) -> Vec<Vec<C64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| C64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..6.3)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn standard_structure_has_zero_coefficients() {
        let pts = grid_samples(2, 120, 0.5);
        let fit = coeffs_from_j(&JMatrixField::standard(2), &pts, &[0.5, 0.5], 2).unwrap();
        assert!(fit.field.sup_bound() < 1e-12);
        assert!(fit.resubstitution_residual < 1e-12);
    }

    #[test]
    fn linear_complex_pullback_has_zero_coefficients() {
        // L complex-linear: L⁻¹ J0 L = J0
        let l = realify_linear(
            2,
            &[
                C64::new(1.0, 0.5),
                C64::new(0.2, 0.0),
                C64::new(0.0, -0.3),
                C64::new(0.8, 0.1),
            ],
        );
        let j = JMatrixField::conjugated(&l).unwrap();
        let pts = grid_samples(2, 120, 0.5);
        let fit = coeffs_from_j(&j, &pts, &[0.5, 0.5], 2).unwrap();
        assert!(fit.field.sup_bound() < 1e-12, "{}", fit.field.sup_bound());
    }

    #[test]
    fn nilpotent_antilinear_perturbation() {
        // J = J0 + ε N, N anti-linear and nilpotent: ξ ↦ (conj ξ_2, 0)
        let eps = 0.05;
        let nmat = realify_antilinear(
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!((&nmat * &nmat).norm() < 1e-15);
        let jm = standard_j(2) + nmat * eps;
        let id = DMatrix::<f64>::identity(4, 4);
        assert!((&jm * &jm + &id).norm() < 1e-15);
        let field = JMatrixField::from_fn(2, move |_| jm.clone());
        let pts = grid_samples(2, 120, 0.5);
        let fit = coeffs_from_j(&field, &pts, &[0.5, 0.5], 1).unwrap();
        assert!(fit.resubstitution_residual <= 1e-8, "{}", fit.resubstitution_residual);
        let a = fit.field.eval(&pts[0]);
        assert!(a[1].norm() > 0.1 * eps && a[1].norm() < 10.0 * eps);
    }

    #[test]
    fn coefficients_round_trip_through_matrix_form() {
        let chart = crate::acs::gallery::perturbed_r4(0.05);
        let j = JMatrixField::from_coeffs(&chart.coeff);
        let pts = grid_samples(2, 200, 0.45);
        let rep = validate_structure(&j, &pts, TOL_J).unwrap();
        assert!(rep.passed(), "{}", rep.max_deviation);
        let fit = coeffs_from_j(&j, &pts, &chart.domain, 4).unwrap();
        assert!(fit.fit_residual < 1e-10, "{}", fit.fit_residual);
        assert!(fit.resubstitution_residual < 1e-10);
        for z in &pts[..20] {
            let a0 = chart.coeff.eval(z);
            let a1 = fit.field.eval(z);
            for (x, y) in a0.iter().zip(&a1) {
                assert!((x - y).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_sum_reports_too_far() {
        // J = -J0 makes J0 + J vanish
        let jm = -standard_j(1);
        let field = JMatrixField::from_fn(1, move |_| jm.clone());
        let err = coeffs_from_j(&field, &[vec![C64::new(0.0, 0.0)]], &[1.0], 0).unwrap_err();
        assert!(matches!(err, Error::TooFarFromStandard { point: 0 }));
    }
}
