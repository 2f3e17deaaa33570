use std::fmt::Write as _;

use crate::{Error, Result, C64};

/// A `ℂ^dim`-valued function sampled on a polar grid of the disk `𝔻_R`.
///
/// Node 0 is the center; ring `i ∈ 1..=n_r` sits at radius `i·R/n_r` and carries
/// `n_theta` nodes at angles `2πj/n_theta`. Node `1 + (i-1)·n_theta + j` is
/// `(ring i, angle j)`. Values are stored per component.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    radius: f64,
    n_r: usize,
    n_theta: usize,
    lambda: f64,
    values: Vec<Vec<C64>>,
}

impl DiskGrid {
    pub fn zeros(radius: f64, n_r: usize, n_theta: usize, dim: usize, lambda: f64) -> Self {
        let nodes = 1 + n_r * n_theta;
        DiskGrid {
            radius,
            n_r,
            n_theta,
            lambda,
            values: vec![vec![C64::new(0.0, 0.0); nodes]; dim],
        }
    }

    /// Samples `f(ζ)` at every node.
    pub fn from_fn(
        radius: f64,
        n_r: usize,
        n_theta: usize,
        dim: usize,
        lambda: f64,
        f: impl Fn(C64) -> Vec<C64>,
    ) -> Self {
        let mut g = Self::zeros(radius, n_r, n_theta, dim, lambda);
        for k in 0..g.node_count() {
            let v = f(g.node(k));
            assert_eq!(v.len(), dim, "sample has wrong dimension");
            for (c, x) in v.into_iter().enumerate() {
                g.values[c][k] = x;
            }
        }
        g
    }

    /// Scalar convenience wrapper for [`DiskGrid::from_fn`].
    pub fn scalar(radius: f64, n_r: usize, n_theta: usize, lambda: f64, f: impl Fn(C64) -> C64) -> Self {
        Self::from_fn(radius, n_r, n_theta, 1, lambda, |z| vec![f(z)])
    }

    pub fn from_components(
        radius: f64,
        n_r: usize,
        n_theta: usize,
        lambda: f64,
        values: Vec<Vec<C64>>,
    ) -> Result<Self> {
        let nodes = 1 + n_r * n_theta;
        if values.iter().any(|c| c.len() != nodes) {
            return Err(Error::InvalidInput(format!("each component needs {nodes} node values")));
        }
        Ok(DiskGrid {
            radius,
            n_r,
            n_theta,
            lambda,
            values,
        })
    }

    /// Same grid geometry with new component values.
    pub fn with_values(&self, values: Vec<Vec<C64>>) -> Self {
        debug_assert!(values.iter().all(|c| c.len() == self.node_count()));
        DiskGrid {
            values,
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        DiskGrid {
            radius: self.radius,
            n_r: self.n_r,
            n_theta: self.n_theta,
            lambda: self.lambda,
            values: Vec::new(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn node_count(&self) -> usize {
        1 + self.n_r * self.n_theta
    }

    pub fn same_shape(&self, other: &DiskGrid) -> bool {
        self.radius == other.radius
            && self.n_r == other.n_r
            && self.n_theta == other.n_theta
            && self.dim() == other.dim()
    }

    pub fn dr(&self) -> f64 {
        self.radius / self.n_r as f64
    }

    pub fn dtheta(&self) -> f64 {
        std::f64::consts::TAU / self.n_theta as f64
    }

    /// `max(R/n_r, 2πR/n_theta)`.
    pub fn mesh(&self) -> f64 {
        self.dr().max(self.radius * self.dtheta())
    }

    pub fn index(&self, ring: usize, angle: usize) -> usize {
        if ring == 0 {
            0
        } else {
            1 + (ring - 1) * self.n_theta + angle % self.n_theta
        }
    }

    pub fn ring_of(&self, node: usize) -> usize {
        if node == 0 {
            0
        } else {
            1 + (node - 1) / self.n_theta
        }
    }

    pub fn node_radius(&self, node: usize) -> f64 {
        self.ring_of(node) as f64 * self.dr()
    }

    /// Position `ζ` of a node.
    pub fn node(&self, node: usize) -> C64 {
        if node == 0 {
            return C64::new(0.0, 0.0);
        }
        let ring = 1 + (node - 1) / self.n_theta;
        let angle = (node - 1) % self.n_theta;
        C64::from_polar(ring as f64 * self.dr(), angle as f64 * self.dtheta())
    }

    pub fn component(&self, c: usize) -> &[C64] {
        &self.values[c]
    }

    pub fn components(&self) -> &[Vec<C64>] {
        &self.values
    }

    pub fn into_components(self) -> Vec<Vec<C64>> {
        self.values
    }

    /// Vector value at a node.
    pub fn at(&self, node: usize) -> Vec<C64> {
        self.values.iter().map(|c| c[node]).collect()
    }

    pub fn center(&self) -> Vec<C64> {
        self.at(0)
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    /// Largest Euclidean norm of a node value.
    pub fn sup_norm(&self) -> f64 {
        (0..self.node_count())
            .map(|k| node_norm(&self.values, k))
            .fold(0.0, f64::max)
    }

    /// `sup |self - other|` over nodes (Euclidean in `ℂ^dim`).
    pub fn sup_distance(&self, other: &DiskGrid) -> f64 {
        assert!(self.same_shape(other), "grids differ in shape");
        let mut m: f64 = 0.0;
        for k in 0..self.node_count() {
            let mut s = 0.0;
            for (a, b) in self.values.iter().zip(&other.values) {
                s += (a[k] - b[k]).norm_sqr();
            }
            m = m.max(s.sqrt());
        }
        m
    }

    /// Componentwise `self - other`.
    pub fn sub(&self, other: &DiskGrid) -> DiskGrid {
        assert!(self.same_shape(other), "grids differ in shape");
        self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        )
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: C64, other: &DiskGrid, beta: C64) -> DiskGrid {
        assert!(self.same_shape(other), "grids differ in shape");
        self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect())
                .collect(),
        )
    }

    /// Keeps the nodes with `|ζ| ≤ frac·R`.
    pub fn interior_nodes(&self, frac: f64) -> Vec<usize> {
        let lim = frac * self.radius * (1.0 + 1e-12);
        (0..self.node_count()).filter(|&k| self.node_radius(k) <= lim).collect()
    }

    /// Value at a real parameter `t ∈ [0, R]` on the ray `θ = 0`, by cubic Lagrange
    /// interpolation through the nearest four radial nodes.
    pub fn eval_on_ray(&self, t: f64) -> Vec<C64> {
        let s = (t / self.dr()).clamp(0.0, self.n_r as f64);
        let lo = (s.floor() as isize - 1).clamp(0, self.n_r as isize - 3) as usize;
        let idx: Vec<usize> = (lo..lo + 4).collect();
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for &a in &idx {
            let mut w = 1.0;
            for &b in &idx {
                if a != b {
                    w *= (s - b as f64) / (a as f64 - b as f64);
                }
            }
            let node = self.index(a, 0);
            for (c, o) in out.iter_mut().enumerate() {
                *o += self.values[c][node] * w;
            }
        }
        out
    }

    /// Value at `ζ ∈ 𝔻̄_R`: cubic Lagrange in the angle on each ring, then cubic Lagrange
    /// across rings (the center counts as ring 0).
    pub fn eval_at(&self, zeta: C64) -> Vec<C64> {
        let s = (zeta.norm() / self.dr()).clamp(0.0, self.n_r as f64);
        let lo = (s.floor() as isize - 1).clamp(0, self.n_r as isize - 3) as usize;
        let a = zeta.arg().rem_euclid(2.0 * std::f64::consts::PI) / self.dtheta();
        let j0 = a.floor() as isize;
        let lagrange = |x: f64, nodes: &[f64; 4], k: usize| -> f64 {
            let mut w = 1.0;
            for (b, &xb) in nodes.iter().enumerate() {
                if b != k {
                    w *= (x - xb) / (nodes[k] - xb);
                }
            }
            w
        };
        let ang = [(j0 - 1) as f64, j0 as f64, (j0 + 1) as f64, (j0 + 2) as f64];
        let rad = [lo as f64, (lo + 1) as f64, (lo + 2) as f64, (lo + 3) as f64];
        let n_t = self.n_theta as isize;
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (kr, ring) in (lo..lo + 4).enumerate() {
            let wr = lagrange(s, &rad, kr);
            if ring == 0 {
                for (c, o) in out.iter_mut().enumerate() {
                    *o += self.values[c][0] * wr;
                }
                continue;
            }
            for (ka, &jf) in ang.iter().enumerate() {
                let w = wr * lagrange(a, &ang, ka);
                let node = self.index(ring, (jf as isize).rem_euclid(n_t) as usize);
                for (c, o) in out.iter_mut().enumerate() {
                    *o += self.values[c][node] * w;
                }
            }
        }
        out
    }

    /// Text dump for cross-run diffing.
    ///
    /// ```text
    /// diskgrid 1
    /// radius <R> n_r <n_r> n_theta <n_theta> dim <dim> lambda <λ>
    /// <node> <re_0> <im_0> … <re_{dim-1}> <im_{dim-1}>     (one line per node, node order)
    /// ```
    ///
    /// Floats use the shortest representation that parses back to the same value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "diskgrid 1");
        let _ = writeln!(
            s,
            "radius {:?} n_r {} n_theta {} dim {} lambda {:?}",
            self.radius,
            self.n_r,
            self.n_theta,
            self.dim(),
            self.lambda
        );
        for k in 0..self.node_count() {
            let _ = write!(s, "{k}");
            for c in &self.values {
                let _ = write!(s, " {:?} {:?}", c[k].re, c[k].im);
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("diskgrid dump: {m}"));
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("diskgrid 1") {
            return Err(bad("missing header"));
        }
        let head: Vec<&str> = lines
            .next()
            .ok_or_else(|| bad("missing shape line"))?
            .split_whitespace()
            .collect();
        if head.len() != 10 {
            return Err(bad("malformed shape line"));
        }
        let num = |i: usize| -> Result<f64> { head[i].parse().map_err(|_| bad("bad number")) };
        let int = |i: usize| -> Result<usize> { head[i].parse().map_err(|_| bad("bad integer")) };
        let radius = num(1)?;
        let n_r = int(3)?;
        let n_theta = int(5)?;
        let dim = int(7)?;
        let lambda = num(9)?;
        let mut g = DiskGrid::zeros(radius, n_r, n_theta, dim, lambda);
        let mut count = 0;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 1 + 2 * dim {
                return Err(bad("malformed node line"));
            }
            let k: usize = parts[0].parse().map_err(|_| bad("bad node index"))?;
            if k >= g.node_count() {
                return Err(bad("node index out of range"));
            }
            for c in 0..dim {
                let re: f64 = parts[1 + 2 * c].parse().map_err(|_| bad("bad value"))?;
                let im: f64 = parts[2 + 2 * c].parse().map_err(|_| bad("bad value"))?;
                g.values[c][k] = C64::new(re, im);
            }
            count += 1;
        }
        if count != g.node_count() {
            return Err(bad("wrong node count"));
        }
        Ok(g)
    }
}

fn node_norm(values: &[Vec<C64>], k: usize) -> f64 {
    values.iter().map(|c| c[k].norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn node_layout() {
        let g = DiskGrid::zeros(2.0, 4, 8, 1, 0.5);
        assert_eq!(g.node_count(), 33);
        assert_eq!(g.node(0), C64::new(0.0, 0.0));
        let z = g.node(g.index(4, 2));
        assert!((z - C64::new(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(g.ring_of(g.index(3, 7)), 3);
        assert!((g.mesh() - 2.0 * std::f64::consts::TAU / 8.0).abs() < 1e-15);
    }

    #[test]
    fn ray_interpolation_is_exact_for_cubics() {
        let g = DiskGrid::scalar(1.0, 16, 8, 0.5, |z| z * z * z - z + 0.5);
        let t = 0.337;
        let v = g.eval_on_ray(t)[0];
        let exact = C64::new(t * t * t - t + 0.5, 0.0);
        assert!((v - exact).norm() < 1e-13);
    }

    #[test]
    fn off_ray_interpolation() {
        let f = |z: C64| z * z + z.conj() * 0.3 + 0.1;
        let g = DiskGrid::scalar(1.0, 32, 64, 0.5, f);
        let k = g.index(5, 9);
        assert!((g.eval_at(g.node(k))[0] - g.component(0)[k]).norm() < 1e-14);
        for z in [C64::new(0.01, 0.02), C64::new(-0.4, 0.3), C64::new(0.2, -0.77)] {
            // angular cubic error on e^{2iθ} is about (2Δθ)⁴|ζ|²/24
            assert!((g.eval_at(z)[0] - f(z)).norm() < 5e-5, "{z}");
        }
    }

    proptest! {
        #[test]
        fn text_dump_round_trips(seed in 0u64..1000, n_r in 4usize..8, n_t in 4usize..10) {
            let s = seed as f64 * 0.001;
            let g = DiskGrid::from_fn(1.25, n_r, n_t, 2, 0.5, |z| vec![z * s + 1.0 / 3.0, z.conj().exp()]);
            let back = DiskGrid::from_text(&g.to_text()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
