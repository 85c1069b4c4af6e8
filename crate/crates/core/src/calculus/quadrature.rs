//! Gauss rules on intervals and product rules on `S^{n−1}`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fmath::{acos, cos, powi, sin, sqrt};
use crate::hyperbolic::{unit_sphere_volume, Dimension};

/// Gauss-Legendre nodes and weights on `[−1, 1]`, nodes ascending.
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; points];
    let mut weights = alloc::vec![0.0; points];
    let m = points.div_ceil(2);
    for i in 0..m {
        let mut x = cos(PI * (i as f64 + 0.75) / (points as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(points, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(points, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[points - 1 - i] = x;
        weights[i] = w;
        weights[points - 1 - i] = w;
    }
    if points % 2 == 1 {
        nodes[points / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One-dimensional rule in a polar angle for the weight `sin^e θ dθ` on `[0, π]`.
fn polar_rule(points: usize, e: usize) -> (Vec<f64>, Vec<f64>) {
    let mut thetas = Vec::with_capacity(points);
    let mut weights = Vec::with_capacity(points);
    if e % 2 == 1 {
        // (1 − t²)^{(e−1)/2} is a polynomial: plain Gauss-Legendre in t = cos θ.
        let (t, w) = gauss_legendre(points);
        for k in (0..points).rev() {
            thetas.push(acos(t[k]));
            weights.push(w[k] * powi(1.0 - t[k] * t[k], ((e - 1) / 2) as i32));
        }
    } else {
        // Gauss-Chebyshev of the second kind absorbs the odd half power.
        let step = PI / (points as f64 + 1.0);
        for k in 1..=points {
            let th = k as f64 * step;
            let s = sin(th);
            thetas.push(th);
            weights.push(step * s * s * powi(s * s, ((e - 2) / 2) as i32));
        }
    }
    (thetas, weights)
}

/// Product rule on the unit sphere `S^{n−1}` in nested polar angles.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereQuadrature {
    n: usize,
    order: usize,
    angles: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    /// A rule exact for polynomials of degree `≤ order` restricted to the sphere.
    pub fn new(dim: Dimension, order: usize) -> Self {
        let n = dim.get();
        let mut rules = Vec::with_capacity(n - 1);
        for j in 0..n - 2 {
            let e = n - 2 - j;
            rules.push(polar_rule((order + e) / 2 + 1, e));
        }
        // Even azimuth count keeps the rule symmetric under the antipodal map.
        let m = 2 * (order / 2 + 1);
        let az_step = 2.0 * PI / m as f64;
        let phis: Vec<f64> = (0..m).map(|k| (k as f64 + 0.5) * az_step).collect();
        rules.push((phis, alloc::vec![az_step; m]));

        let total: usize = rules.iter().map(|r| r.0.len()).product();
        let mut angles = Vec::with_capacity(total * (n - 1));
        let mut weights = Vec::with_capacity(total);
        let mut idx = alloc::vec![0usize; n - 1];
        for _ in 0..total {
            let mut w = 1.0;
            for (a, rule) in rules.iter().enumerate() {
                angles.push(rule.0[idx[a]]);
                w *= rule.1[idx[a]];
            }
            weights.push(w);
            for a in (0..n - 1).rev() {
                idx[a] += 1;
                if idx[a] < rules[a].0.len() {
                    break;
                }
                idx[a] = 0;
            }
        }
        SphereQuadrature {
            n,
            order,
            angles,
            weights,
        }
    }

    /// Same exactness for integrands that depend on `θ₁` alone: the first
    /// polar rule times the volume of the `S^{n−2}` fibre. The remaining
    /// angles sit at a fixed regular point. `None` for `n = 2`.
    pub fn axial(dim: Dimension, order: usize) -> Option<Self> {
        let n = dim.get();
        if n < 3 {
            return None;
        }
        let (thetas, weights) = polar_rule((order + n - 2) / 2 + 1, n - 2);
        let fibre = unit_sphere_volume(Dimension::new(n - 1).ok()?);
        let mut angles = Vec::with_capacity(thetas.len() * (n - 1));
        for &t in &thetas {
            angles.push(t);
            for _ in 1..n - 2 {
                angles.push(0.5 * PI);
            }
            angles.push(0.25 * PI);
        }
        Some(SphereQuadrature {
            n,
            order,
            angles,
            weights: weights.iter().map(|w| w * fibre).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> Dimension {
        Dimension::new(self.n).expect("dimension validated at construction")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node(&self, k: usize) -> &[f64] {
        let s = self.n - 1;
        &self.angles[k * s..(k + 1) * s]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.angles
            .chunks_exact(self.n - 1)
            .zip(self.weights.iter().copied())
    }
}

/// `∫_{S^{n−1}} g dσ` with a fixed summation order.
pub fn sphere_integrate(
    q: &SphereQuadrature,
    mut integrand: impl FnMut(&[f64]) -> Result<f64>,
) -> Result<f64> {
    let mut acc = 0.0;
    for (angles, w) in q.iter() {
        let v = integrand(angles)?;
        if !v.is_finite() {
            return Err(Error::non_finite("sphere integrand", format!("angles {angles:?}")));
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Composite Gauss rule on `[a, b]`, or the square-root substitution rule.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialQuadrature {
    nodes: Vec<f64>,
    offsets: Vec<f64>,
    weights: Vec<f64>,
    horizon: bool,
    order: usize,
}

impl RadialQuadrature {
    fn check(a: f64, b: f64, panels: usize, points: usize) -> Result<()> {
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
        }
        if panels == 0 || points == 0 {
            return Err(Error::domain("quadrature needs at least one panel and one point"));
        }
        Ok(())
    }

    /// Uniform panels, `points` Gauss-Legendre nodes each; exact through
    /// degree `2·points − 1`.
    pub fn gauss(a: f64, b: f64, panels: usize, points: usize) -> Result<Self> {
        Self::check(a, b, panels, points)?;
        let (t, w) = gauss_legendre(points);
        let h = (b - a) / panels as f64;
        let mut q = RadialQuadrature {
            nodes: Vec::with_capacity(panels * points),
            offsets: Vec::with_capacity(panels * points),
            weights: Vec::with_capacity(panels * points),
            horizon: false,
            order: 2 * points - 1,
        };
        for p in 0..panels {
            let lo = p as f64 * h;
            for k in 0..points {
                let off = lo + 0.5 * h * (t[k] + 1.0);
                q.nodes.push(a + off);
                q.offsets.push(off);
                q.weights.push(0.5 * h * w[k]);
            }
        }
        Ok(q)
    }

    /// Rule for integrands with an `(x − a)^{−1/2}` singularity at `a`: Gauss
    /// in `u = √(x − a)`, so `∫ g dx = ∫ 2u g(a + u²) du`.
    pub fn horizon(a: f64, b: f64, panels: usize, points: usize) -> Result<Self> {
        Self::check(a, b, panels, points)?;
        let inner = Self::gauss(0.0, sqrt(b - a), panels, points)?;
        let mut q = RadialQuadrature {
            nodes: Vec::with_capacity(inner.nodes.len()),
            offsets: Vec::with_capacity(inner.nodes.len()),
            weights: Vec::with_capacity(inner.nodes.len()),
            horizon: true,
            order: inner.order,
        };
        for (u, w) in inner.nodes.iter().zip(&inner.weights) {
            let off = u * u;
            q.nodes.push(a + off);
            q.offsets.push(off);
            q.weights.push(2.0 * u * w);
        }
        Ok(q)
    }

    pub fn is_horizon(&self) -> bool {
        self.horizon
    }

    /// Polynomial degree integrated exactly (in `u` for the substitution rule).
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

pub fn radial_integrate(
    q: &RadialQuadrature,
    mut integrand: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    radial_integrate_offset(q, |x, _| integrand(x))
}

/// Like [`radial_integrate`], also passing the offset `x − a` computed
/// without cancellation.
pub fn radial_integrate_offset(
    q: &RadialQuadrature,
    mut integrand: impl FnMut(f64, f64) -> Result<f64>,
) -> Result<f64> {
    let mut acc = 0.0;
    for k in 0..q.nodes.len() {
        let (x, off) = (q.nodes[k], q.offsets[k]);
        let v = integrand(x, off)?;
        if !v.is_finite() {
            return Err(Error::non_finite("radial integrand", format!("x = {x}")));
        }
        acc += q.weights[k] * v;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::{exp, powf};
    use crate::hyperbolic::{unit_sphere_volume, sphere_embedding};

    #[test]
    fn legendre_rule_exactness() {
        let (x, w) = gauss_legendre(7);
        for deg in 0..=13 {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * powi(*x, deg)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((s - exact).abs() < 1e-14, "degree {deg}: {s}");
        }
    }

    #[test]
    fn sphere_weights_and_moments() {
        let d3 = Dimension::new(3).unwrap();
        let q = SphereQuadrature::new(d3, 12);
        let one = sphere_integrate(&q, |_| Ok(1.0)).unwrap();
        assert!((one - 4.0 * PI).abs() < 1e-12);
        let odd = sphere_integrate(&q, |a| Ok(cos(a[0]))).unwrap();
        assert!(odd.abs() < 1e-12);
        let sq = sphere_integrate(&q, |a| Ok(cos(a[0]) * cos(a[0]))).unwrap();
        assert!((sq - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_weights_sum_in_every_dimension() {
        for n in 2..=7 {
            let d = Dimension::new(n).unwrap();
            let q = SphereQuadrature::new(d, 4);
            let s: f64 = q.weights().iter().sum();
            assert!((s - unit_sphere_volume(d)).abs() < 1e-12, "n = {n}");
            let x = sphere_embedding(n, q.node(0));
            assert!((x.dot(&x) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let q = SphereQuadrature::new(Dimension::new(2).unwrap(), 4);
        assert!(matches!(
            sphere_integrate(&q, |_| Ok(f64::NAN)),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn radial_rules() {
        let q = RadialQuadrature::gauss(0.0, 1.0, 1, 4).unwrap();
        let v = radial_integrate(&q, |x| Ok(x * x)).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        let h = RadialQuadrature::horizon(0.0, 1.0, 2, 8).unwrap();
        assert!(h.is_horizon());
        let s = radial_integrate_offset(&h, |_, d| Ok(powf(d, -0.5))).unwrap();
        assert!((s - 2.0).abs() < 1e-10);
        let e = radial_integrate(&RadialQuadrature::gauss(0.0, 2.0, 4, 10).unwrap(), |x| Ok(exp(x))).unwrap();
        assert!((e - (exp(2.0) - 1.0)).abs() < 1e-12);
        assert!(RadialQuadrature::gauss(1.0, 0.0, 1, 4).is_err());
    }

    #[test]
    fn axial_rule_matches_full_rule() {
        for n in 3..=6 {
            let d = Dimension::new(n).unwrap();
            let full = SphereQuadrature::new(d, 10);
            let axial = SphereQuadrature::axial(d, 10).unwrap();
            let g = |a: &[f64]| Ok(cos(a[0]).powi(4) + 2.0 * cos(a[0]) + sin(a[0]).powi(2));
            let (x, y) = (sphere_integrate(&full, g).unwrap(), sphere_integrate(&axial, g).unwrap());
            assert!((x - y).abs() < 1e-13 * x.abs(), "n={n}");
        }
        assert!(SphereQuadrature::axial(Dimension::new(2).unwrap(), 8).is_none());
    }
}
