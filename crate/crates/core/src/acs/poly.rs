//! Polynomials in `(z, z̄)` with complex coefficients.

use serde::{Deserialize, Serialize};

use crate::C64;

/// One monomial `c · z^α · z̄^β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl Term {
    pub fn new(z: Vec<u32>, zbar: Vec<u32>, c: C64) -> Self {
        Term {
            z,
            zbar,
            re: c.re,
            im: c.im,
        }
    }

    pub fn coeff(&self) -> C64 {
        C64::new(self.re, self.im)
    }

    pub fn degree(&self) -> u32 {
        self.z.iter().chain(&self.zbar).sum()
    }
}

/// Polynomial on `ℂⁿ` in the variables `z_1..z_n, z̄_1..z̄_n`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        Polynomial {
            terms: vec![Term::new(vec![0; n], vec![0; n], c)],
        }
    }

    pub fn monomial(z: Vec<u32>, zbar: Vec<u32>, c: C64) -> Self {
        Polynomial {
            terms: vec![Term::new(z, zbar, c)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.re == 0.0 && t.im == 0.0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// Checks that every multi-index has length `n`.
    pub fn check_arity(&self, n: usize) -> bool {
        self.terms.iter().all(|t| t.z.len() == n && t.zbar.len() == n)
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for t in &self.terms {
            let mut m = t.coeff();
            if m == C64::new(0.0, 0.0) {
                continue;
            }
            for (i, &zi) in z.iter().enumerate() {
                let a = t.z.get(i).copied().unwrap_or(0);
                let b = t.zbar.get(i).copied().unwrap_or(0);
                if a > 0 {
                    m *= zi.powu(a);
                }
                if b > 0 {
                    m *= zi.conj().powu(b);
                }
            }
            acc += m;
        }
        acc
    }

    /// Upper bound of `|p|` on the polydisc with the given radii.
    pub fn sup_bound(&self, radii: &[f64]) -> f64 {
        let mut s = 0.0;
        for t in &self.terms {
            let c = t.coeff().norm();
            if c == 0.0 {
                continue;
            }
            let mut m = c;
            for (i, &r) in radii.iter().enumerate() {
                let e = t.z.get(i).copied().unwrap_or(0) + t.zbar.get(i).copied().unwrap_or(0);
                if e > 0 {
                    m *= r.powi(e as i32);
                }
            }
            s += m;
        }
        s
    }
}

/// All pairs of multi-indices `(α, β)` on `n` variables with `|α| + |β| ≤ degree`,
/// in a fixed graded order.
pub fn monomials_up_to(n: usize, degree: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for d in 0..=degree {
        let mut idx = vec![0u32; 2 * n];
        collect_exact(&mut idx, 0, d, &mut out, n);
    }
    out
}

fn collect_exact(idx: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<(Vec<u32>, Vec<u32>)>, n: usize) {
    if pos == idx.len() - 1 {
        idx[pos] = remaining;
        out.push((idx[..n].to_vec(), idx[n..].to_vec()));
        idx[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        idx[pos] = k;
        collect_exact(idx, pos + 1, remaining - k, out, n);
    }
    idx[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_mixed_monomial() {
        let p = Polynomial::monomial(vec![1, 0], vec![0, 2], C64::new(2.0, 0.0));
        let z = [C64::new(0.5, 0.5), C64::new(0.0, 1.0)];
        // 2 · z1 · conj(z2)^2 = 2 · (0.5+0.5i) · (-1)
        let v = p.eval(&z);
        assert!((v - C64::new(-1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn monomial_count() {
        // 4 variables, degree <= 4: C(8, 4)
        assert_eq!(monomials_up_to(2, 4).len(), 70);
        assert_eq!(monomials_up_to(1, 2).len(), 6);
    }

    #[test]
    fn sup_bound_dominates() {
        let p = Polynomial {
            terms: vec![
                Term::new(vec![1], vec![0], C64::new(0.3, -0.1)),
                Term::new(vec![0], vec![2], C64::new(0.0, 0.2)),
            ],
        };
        let b = p.sup_bound(&[0.8]);
        for k in 0..64 {
            let z = C64::from_polar(0.8, k as f64 * 0.1);
            assert!(p.eval(&[z]).norm() <= b + 1e-15);
        }
    }
}
