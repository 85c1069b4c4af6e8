//! Hyperbolic space in geodesic polar coordinates.
//!
//! Coordinates are ordered `(r, θ₁, …, θ_{n−2}, φ)`; index 0 is always the
//! radius. The round metric is `σ = dθ₁² + sin²θ₁ dθ₂² + …`, so every metric
//! in this module is diagonal.

use alloc::format;

use crate::calculus::Jet2;
use crate::error::{Error, Result};
use crate::fmath::{cos, cosh, powi, sin, sinh, tgamma};
use crate::linalg::{Matrix, Vector, MAX_DIM};

/// Base dimension `n` of `H^n`, restricted to `2..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub const MIN: usize = 2;
    pub const MAX: usize = 7;

    pub fn new(n: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::domain(format!(
                "dimension {n} outside {}..={}",
                Self::MIN,
                Self::MAX
            )))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// The inequality checks divide by `n − 2`.
    pub fn require_inequality(self) -> Result<()> {
        if self.0 >= 3 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "inequality checks need n >= 3, got n = {}",
                self.0
            )))
        }
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

/// A point of `H^n`: radius plus `n − 1` sphere angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    n: usize,
    angles: [f64; MAX_DIM - 2],
}

impl PolarPoint {
    pub fn new(dim: Dimension, r: f64, angles: &[f64]) -> Result<Self> {
        let n = dim.get();
        if angles.len() != n - 1 {
            return Err(Error::domain(format!(
                "expected {} angles for n = {n}, got {}",
                n - 1,
                angles.len()
            )));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("radius {r} must be finite and >= 0")));
        }
        for (j, &a) in angles.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::domain(format!("angle {j} is not finite")));
            }
            if j + 1 < n - 1 && !(0.0..=core::f64::consts::PI).contains(&a) {
                return Err(Error::domain(format!("polar angle {a} outside [0, pi]")));
            }
        }
        let mut store = [0.0; MAX_DIM - 2];
        store[..n - 1].copy_from_slice(angles);
        Ok(PolarPoint {
            r,
            n,
            angles: store,
        })
    }

    /// A point from the full coordinate tuple `(r, angles…)`.
    pub fn from_coords(dim: Dimension, coords: &[f64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("empty coordinate tuple"));
        }
        PolarPoint::new(dim, coords[0], &coords[1..])
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles[..self.n - 1]
    }

    /// Coordinate `k`, with `k = 0` the radius.
    pub fn coord(&self, k: usize) -> f64 {
        if k == 0 {
            self.r
        } else {
            self.angles[k - 1]
        }
    }

    /// Same point with coordinate `k` replaced; no range validation, so
    /// finite-difference stencils may step slightly across chart edges.
    pub fn with_coord(&self, k: usize, value: f64) -> PolarPoint {
        let mut p = *self;
        if k == 0 {
            p.r = value;
        } else {
            p.angles[k - 1] = value;
        }
        p
    }

    pub fn with_radius(&self, r: f64) -> PolarPoint {
        self.with_coord(0, r)
    }

    pub fn is_regular(&self) -> bool {
        self.r > 0.0
            && self.angles[..self.n - 2]
                .iter()
                .all(|&t| t > 0.0 && t < core::f64::consts::PI && sin(t) > 0.0)
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "point r = {}, angles = {:?} lies on a chart singularity",
                self.r,
                self.angles()
            )))
        }
    }

    /// Unit vector in `R^n` pointing in the direction of the angles.
    pub fn direction(&self) -> Vector {
        sphere_embedding(self.n, self.angles())
    }
}

/// Position on the unit sphere `S^{n−1} ⊂ R^n` for nested angles.
pub fn sphere_embedding(n: usize, angles: &[f64]) -> Vector {
    let mut x = Vector::zeros(n);
    let mut prod = 1.0;
    for k in 0..n - 1 {
        x[k] = prod * cos(angles[k]);
        prod *= sin(angles[k]);
    }
    x[n - 1] = prod;
    x
}

/// Diagonal of the round metric `σ` at the given angles, one entry per angle.
pub fn round_metric_diagonal(n: usize, angles: &[f64]) -> Vector {
    let mut d = Vector::zeros(n - 1);
    let mut prod = 1.0;
    for a in 0..n - 1 {
        d[a] = prod;
        let s = sin(angles[a]);
        prod *= s * s;
    }
    d
}

/// Chart density of the round sphere, `Π sin^{n−1−j} θ_j`.
pub fn round_density(n: usize, angles: &[f64]) -> f64 {
    let mut acc = 1.0;
    for (j, &t) in angles.iter().take(n - 2).enumerate() {
        acc *= powi(sin(t), (n - 2 - j) as i32);
    }
    acc
}

/// Metric components and inverse at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricAt {
    pub g_lower: Matrix,
    pub g_upper: Matrix,
    pub sqrt_det: f64,
}

/// Components of a warped metric `dR² + φ(R)² σ`.
pub fn warped_metric(n: usize, phi: f64, angles: &[f64]) -> MetricAt {
    let sigma = round_metric_diagonal(n, angles);
    let mut lower = Matrix::zeros(n);
    let mut upper = Matrix::zeros(n);
    lower[(0, 0)] = 1.0;
    upper[(0, 0)] = 1.0;
    for a in 1..n {
        let h = phi * phi * sigma[a - 1];
        lower[(a, a)] = h;
        upper[(a, a)] = 1.0 / h;
    }
    MetricAt {
        g_lower: lower,
        g_upper: upper,
        sqrt_det: powi(phi, (n - 1) as i32) * round_density(n, angles),
    }
}

pub fn metric_b(p: &PolarPoint) -> Result<MetricAt> {
    p.require_regular()?;
    Ok(warped_metric(p.n, sinh(p.r), p.angles()))
}

/// `b` without the regularity check; only its inverse is singular at the
/// origin, so callers that need `g_lower` alone may use this.
pub(crate) fn metric_b_unchecked(p: &PolarPoint) -> MetricAt {
    warped_metric(p.n, sinh(p.r), p.angles())
}

/// Christoffel symbols `Γ^k_{ij}` stored as `[k][i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Christoffel {
    dim: usize,
    sym: [[[f64; MAX_DIM]; MAX_DIM]; MAX_DIM],
}

impl Christoffel {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        Christoffel {
            dim,
            sym: [[[0.0; MAX_DIM]; MAX_DIM]; MAX_DIM],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.sym[k][i][j]
    }

    fn set_sym(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.sym[k][i][j] = v;
        self.sym[k][j][i] = v;
    }

    /// `∂_i∂_j u − Γ^k_{ij} ∂_k u`.
    pub fn covariant_hessian(&self, gradient: &Vector, partials: &Matrix) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, |i, j| {
            let mut h = partials[(i, j)];
            for k in 0..n {
                h -= self.sym[k][i][j] * gradient[k];
            }
            h
        })
    }
}

/// Symbols of `dR² + φ(R)² σ`, given `φ` and `φ'` at the radius.
///
/// For a diagonal metric with entries `h_i`, only the log-derivatives
/// `∂_k ln h_i` matter; here they are `2φ'/φ` in `R` and `2 cot θ_j` in each
/// earlier polar angle.
pub fn warped_christoffel(n: usize, phi: f64, dphi: f64, angles: &[f64]) -> Christoffel {
    let sigma = round_metric_diagonal(n, angles);
    let mut h = [0.0; MAX_DIM];
    h[0] = 1.0;
    for a in 1..n {
        h[a] = phi * phi * sigma[a - 1];
    }
    // logd[i][k] = ∂_k ln h_i
    let mut logd = [[0.0; MAX_DIM]; MAX_DIM];
    for (i, row) in logd.iter_mut().enumerate().take(n).skip(1) {
        row[0] = 2.0 * dphi / phi;
        for (k, slot) in row.iter_mut().enumerate().take(i).skip(1) {
            let t = angles[k - 1];
            *slot = 2.0 * cos(t) / sin(t);
        }
    }
    let mut c = Christoffel::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let d = logd[i][k];
            if d == 0.0 {
                continue;
            }
            if k == i {
                c.set_sym(i, i, i, 0.5 * d);
            } else {
                c.set_sym(i, i, k, 0.5 * d);
                c.sym[k][i][i] = -0.5 * h[i] * d / h[k];
            }
        }
    }
    c
}

pub fn christoffel_b(p: &PolarPoint) -> Result<Christoffel> {
    p.require_regular()?;
    Ok(warped_christoffel(p.n, sinh(p.r), cosh(p.r), p.angles()))
}

/// Symbols of `b̄ = b + V² ds²` on `H^n × R` with `V = cosh r`. Index 0 is
/// `s`; base coordinates are shifted up by one.
pub fn christoffel_bbar(p: &PolarPoint) -> Result<Christoffel> {
    let base = christoffel_b(p)?;
    let n = p.n;
    let v = cosh(p.r);
    let dv_r = sinh(p.r);
    let mut c = Christoffel::zeros(n + 1);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                c.sym[k + 1][i + 1][j + 1] = base.sym[k][i][j];
            }
        }
    }
    // dV is radial and b^{rr} = 1.
    c.sym[1][0][0] = -v * dv_r;
    c.set_sym(0, 1, 0, dv_r / v);
    Ok(c)
}

/// Selects `V_(0) = cosh r` or `V_(i) = x^i sinh r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StaticPotentialId(pub usize);

impl StaticPotentialId {
    pub const LAPSE: StaticPotentialId = StaticPotentialId(0);

    pub fn all(dim: Dimension) -> impl Iterator<Item = StaticPotentialId> {
        (0..=dim.get()).map(StaticPotentialId)
    }

    fn check(self, dim: Dimension) -> Result<()> {
        if self.0 <= dim.get() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "static potential index {} outside 0..={}",
                self.0,
                dim.get()
            )))
        }
    }
}

/// Value of `V_(i)` at any point, including chart-singular ones.
pub fn static_potential_value(i: StaticPotentialId, p: &PolarPoint) -> Result<f64> {
    i.check(p.dim())?;
    if i.0 == 0 {
        Ok(cosh(p.r))
    } else {
        Ok(p.direction()[i.0 - 1] * sinh(p.r))
    }
}

/// Value, coordinate gradient and covariant Hessian of `V_(i)`.
///
/// The Hessian is assembled from coordinate second partials and the symbols
/// of `b`, so `Hess V = V b` is a genuine check rather than a definition.
pub fn static_potential(i: StaticPotentialId, p: &PolarPoint) -> Result<Jet2> {
    i.check(p.dim())?;
    let christ = christoffel_b(p)?;
    let n = p.n;
    let (sh, ch) = (sinh(p.r), cosh(p.r));
    let mut grad = Vector::zeros(n);
    let mut part = Matrix::zeros(n);
    let value;
    if i.0 == 0 {
        value = ch;
        grad[0] = sh;
        part[(0, 0)] = ch;
    } else {
        // x^i is a product of one-variable factors in the angles.
        let k = i.0 - 1;
        let angles = p.angles();
        let mut f = [1.0; MAX_DIM];
        let mut df = [0.0; MAX_DIM];
        let mut ddf = [0.0; MAX_DIM];
        for j in 0..n - 1 {
            let (s, c) = (sin(angles[j]), cos(angles[j]));
            if j < k {
                f[j] = s;
                df[j] = c;
                ddf[j] = -s;
            } else if j == k {
                f[j] = c;
                df[j] = -s;
                ddf[j] = -c;
            }
        }
        let product = |skip_a: usize, skip_b: usize| -> f64 {
            (0..n - 1)
                .filter(|&j| j != skip_a && j != skip_b)
                .map(|j| f[j])
                .product()
        };
        let x = product(usize::MAX, usize::MAX);
        value = x * sh;
        grad[0] = x * ch;
        part[(0, 0)] = x * sh;
        for a in 0..n - 1 {
            let dx = df[a] * product(a, usize::MAX);
            grad[a + 1] = dx * sh;
            part[(0, a + 1)] = dx * ch;
            part[(a + 1, 0)] = dx * ch;
            for b in 0..n - 1 {
                let ddx = if a == b {
                    ddf[a] * product(a, usize::MAX)
                } else {
                    df[a] * df[b] * product(a, b)
                };
                part[(a + 1, b + 1)] = ddx * sh;
            }
        }
    }
    let hess = christ.covariant_hessian(&grad, &part);
    Jet2::new(p, value, grad, hess)
}

/// Max-norm of `Hess^b u − u b` for an arbitrary jet.
pub fn static_residual(jet: &Jet2, p: &PolarPoint) -> f64 {
    let b = metric_b_unchecked(p);
    jet.hessian.sub(&b.g_lower.scale(jet.value)).max_abs()
}

pub fn verify_static_equation(i: StaticPotentialId, p: &PolarPoint) -> Result<f64> {
    let jet = static_potential(i, p)?;
    Ok(static_residual(&jet, p))
}

/// Element of the space of static potentials in the basis `V_(0), …, V_(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzVector(pub Vector);

impl LorentzVector {
    pub fn new(components: &[f64]) -> Self {
        LorentzVector(Vector::from_slice(components))
    }

    pub fn basis(i: StaticPotentialId, dim: Dimension) -> Self {
        LorentzVector(Vector::from_fn(dim.get() + 1, |k| {
            if k == i.0 {
                1.0
            } else {
                0.0
            }
        }))
    }

    pub fn components(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn norm_sq(&self) -> f64 {
        lorentz_inner(self, self)
    }

    pub fn is_future_timelike(&self) -> bool {
        self.0[0] > 0.0 && self.norm_sq() > 0.0
    }
}

pub fn lorentz_inner(u: &LorentzVector, v: &LorentzVector) -> f64 {
    let (a, b) = (u.components(), v.components());
    debug_assert_eq!(a.len(), b.len());
    let spatial: f64 = a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum();
    a[0] * b[0] - spatial
}

/// `ω_{n−1} = 2π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_volume(dim: Dimension) -> f64 {
    let half = 0.5 * dim.as_f64();
    2.0 * crate::fmath::powf(core::f64::consts::PI, half) / tgamma(half)
}
