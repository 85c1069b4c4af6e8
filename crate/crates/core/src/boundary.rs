//! Star-shaped hypersurfaces of `H^n` and the boundary inequalities.
//!
//! A surface is a radial graph `ρ = ρ(θ)` over `S^{n−1}` in the area
//! coordinate `ρ = sinh r`. In that chart `b̃ = b + dV⊗dV` is exactly the flat
//! metric `dρ² + ρ²σ`, so the Euclidean quantities come from the same warped
//! metric code with `φ(R) = R` instead of `φ(R) = sinh R`.

use alloc::borrow::Cow;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::str::FromStr;

use crate::calculus::{sphere_integrate, SphereQuadrature};
use crate::error::{Error, Result};
use crate::fmath::{asinh, cos, cosh, powf, powi, sin, sinh, sqrt, tanh};
use crate::hyperbolic::{
    round_density, round_metric_diagonal, unit_sphere_volume, warped_christoffel, Dimension,
    PolarPoint,
};
use crate::linalg::{Matrix, Vector};

/// Area radius `ρ(θ)` of a star-shaped surface.
#[derive(Clone, Debug, PartialEq)]
pub enum RadiusFunction {
    /// Geodesic sphere about the origin.
    Constant(f64),
    /// `ρ = Σ c_k cos^k θ₁`.
    CosSeries(Vec<f64>),
    /// Geodesic sphere of radius `radius` centred at distance `offset` from the
    /// origin along the `x¹` axis.
    OffCenterSphere { radius: f64, offset: f64 },
    /// `ρ = R (1 + ε sin²θ cos 2φ)`, only for `n = 3`.
    Tilted { scale: f64, eps: f64 },
}

/// `ρ`, its angle gradient and its angle Hessian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusJet {
    pub rho: f64,
    pub gradient: Vector,
    pub hessian: Matrix,
}

impl RadiusFunction {
    fn jet(&self, n: usize, angles: &[f64]) -> RadiusJet {
        let m = n - 1;
        let mut g = Vector::zeros(m);
        let mut h = Matrix::zeros(m);
        let rho = match self {
            RadiusFunction::Constant(rho) => *rho,
            RadiusFunction::CosSeries(c) => {
                let (s, t) = (sin(angles[0]), cos(angles[0]));
                let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
                for (k, &ck) in c.iter().enumerate() {
                    let kf = k as f64;
                    p += ck * powi(t, k as i32);
                    if k >= 1 {
                        dp += ck * kf * powi(t, k as i32 - 1);
                    }
                    if k >= 2 {
                        ddp += ck * kf * (kf - 1.0) * powi(t, k as i32 - 2);
                    }
                }
                g[0] = -s * dp;
                h[(0, 0)] = -t * dp + s * s * ddp;
                p
            }
            RadiusFunction::OffCenterSphere { radius, offset } => {
                let (a2, c) = (cosh(*offset) * cosh(*offset), cosh(*radius));
                let bb = sinh(*offset) * cos(angles[0]);
                let db = -sinh(*offset) * sin(angles[0]);
                let ddb = -bb;
                let q = a2 - bb * bb;
                let disc = c * c * bb * bb - q * (a2 - c * c);
                let rho = (c * bb + sqrt(disc)) / q;
                // Implicit differentiation of G(ρ, B) = (A² − B²)ρ² − 2cBρ + A² − c².
                let g_r = 2.0 * q * rho - 2.0 * c * bb;
                let g_b = -2.0 * bb * rho * rho - 2.0 * c * rho;
                let g_rr = 2.0 * q;
                let g_rb = -4.0 * bb * rho - 2.0 * c;
                let g_bb = -2.0 * rho * rho;
                let d1 = -g_b * db / g_r;
                let d2 = -(g_rr * d1 * d1 + 2.0 * g_rb * d1 * db + g_bb * db * db + g_b * ddb) / g_r;
                g[0] = d1;
                h[(0, 0)] = d2;
                rho
            }
            RadiusFunction::Tilted { scale, eps } => {
                let (s, t) = (sin(angles[0]), cos(angles[0]));
                let (c2, s2) = (cos(2.0 * angles[1]), sin(2.0 * angles[1]));
                let k = scale * eps;
                g[0] = 2.0 * k * s * t * c2;
                g[1] = -2.0 * k * s * s * s2;
                h[(0, 0)] = 2.0 * k * cos(2.0 * angles[0]) * c2;
                h[(1, 1)] = -4.0 * k * s * s * c2;
                h[(0, 1)] = -4.0 * k * s * t * s2;
                h[(1, 0)] = h[(0, 1)];
                scale * (1.0 + eps * s * s * c2)
            }
        };
        RadiusJet {
            rho,
            gradient: g,
            hessian: h,
        }
    }

    /// Minimum of `ρ` over a grid that contains the extremal angles of every
    /// variant.
    fn min_rho(&self, n: usize) -> f64 {
        let rho_at = |angles: &[f64]| self.jet(n, angles).rho;
        let mut angles = [PI / 2.0; 6];
        angles[n - 2] = 0.0;
        match self {
            RadiusFunction::Constant(rho) => *rho,
            RadiusFunction::CosSeries(_) | RadiusFunction::OffCenterSphere { .. } => {
                const STEPS: usize = 4096;
                let top = if n == 2 { 2.0 * PI } else { PI };
                (0..=STEPS)
                    .map(|k| {
                        angles[0] = top * k as f64 / STEPS as f64;
                        rho_at(&angles[..n - 1])
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            RadiusFunction::Tilted { .. } => {
                let mut best = f64::INFINITY;
                for i in 0..=512 {
                    for k in 0..1024 {
                        let a = [PI * i as f64 / 512.0, 2.0 * PI * k as f64 / 1024.0];
                        best = best.min(rho_at(&a));
                    }
                }
                best
            }
        }
    }
}

/// A closed star-shaped hypersurface `∂Ω ⊂ H^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSurface {
    dim: Dimension,
    radius: RadiusFunction,
}

impl RadialSurface {
    pub fn new(dim: Dimension, radius: RadiusFunction) -> Result<Self> {
        match &radius {
            RadiusFunction::Tilted { scale, eps } => {
                if dim.get() != 3 {
                    return Err(Error::domain("the tilted surface is defined for n = 3 only"));
                }
                if !(*scale > 0.0 && eps.abs() < 1.0) {
                    return Err(Error::domain("tilted surface needs scale > 0 and |eps| < 1"));
                }
            }
            RadiusFunction::OffCenterSphere { radius, offset } => {
                if !(*offset >= 0.0 && radius > offset) {
                    return Err(Error::domain(
                        "off-centre sphere must contain the origin (radius > offset >= 0)",
                    ));
                }
            }
            RadiusFunction::CosSeries(c) => {
                if c.is_empty() {
                    return Err(Error::domain("empty cosine series"));
                }
            }
            RadiusFunction::Constant(_) => {}
        }
        let s = RadialSurface { dim, radius };
        let min = s.radius.min_rho(dim.get());
        if !(min > 0.0) || !min.is_finite() {
            return Err(Error::domain(format!(
                "radius function must be positive, minimum is {min}"
            )));
        }
        Ok(s)
    }

    /// Origin-centred geodesic sphere of geodesic radius `r`.
    pub fn geodesic_sphere(dim: Dimension, r: f64) -> Result<Self> {
        Self::new(dim, RadiusFunction::Constant(sinh(r)))
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn radius_function(&self) -> &RadiusFunction {
        &self.radius
    }

    pub fn constant_radius(&self) -> Option<f64> {
        match self.radius {
            RadiusFunction::Constant(rho) => Some(rho),
            _ => None,
        }
    }

    /// Invariant under rotations fixing the `x¹` axis.
    pub fn is_axisymmetric(&self) -> bool {
        self.dim.get() >= 3 && !matches!(self.radius, RadiusFunction::Tilted { .. })
    }

    pub fn rho(&self, angles: &[f64]) -> Result<f64> {
        Ok(self.radius_jet(angles)?.rho)
    }

    pub fn radius_jet(&self, angles: &[f64]) -> Result<RadiusJet> {
        let n = self.dim.get();
        if angles.len() != n - 1 {
            return Err(Error::domain("wrong number of angles"));
        }
        Ok(self.radius.jet(n, angles))
    }
}

/// Shape data of a radial graph `R = R_s(θ)` in a warped metric `dR² + φ²σ`.
struct Warped {
    h: Matrix,
    s: Matrix,
    grad_norm: f64,
    /// Area density relative to the round measure.
    density: f64,
}

fn warped_surface(
    n: usize,
    phi: f64,
    dphi: f64,
    grad: &Vector,
    hess: &Matrix,
    angles: &[f64],
) -> Result<Warped> {
    let m = n - 1;
    let sigma = round_metric_diagonal(n, angles);
    let christ = warped_christoffel(n, phi, dphi, angles);
    // F = R − R_s: dF = (1, −R_a), ∂∂F = −R_ab on the angle block.
    let mut df = Vector::zeros(n);
    df[0] = 1.0;
    let mut ddf = Matrix::zeros(n);
    let mut norm2 = 1.0;
    for a in 0..m {
        df[a + 1] = -grad[a];
        norm2 += grad[a] * grad[a] / (phi * phi * sigma[a]);
        for b in 0..m {
            ddf[(a + 1, b + 1)] = -hess[(a, b)];
        }
    }
    let hess_f = christ.covariant_hessian(&df, &ddf);
    let grad_norm = sqrt(norm2);
    let tangent = |a: usize| {
        let mut t = Vector::zeros(n);
        t[0] = grad[a];
        t[a + 1] = 1.0;
        t
    };
    let mut h = Matrix::zeros(m);
    let mut s = Matrix::zeros(m);
    for a in 0..m {
        let ta = tangent(a);
        for b in 0..m {
            let tb = tangent(b);
            h[(a, b)] = grad[a] * grad[b] + if a == b { phi * phi * sigma[a] } else { 0.0 };
            s[(a, b)] = hess_f.bilinear(&ta, &tb) / grad_norm;
        }
    }
    let det = {
        let l = h
            .cholesky()
            .ok_or_else(|| Error::domain("surface metric is degenerate"))?;
        (0..m).map(|i| l[(i, i)]).product::<f64>()
    };
    let round = round_density(n, angles);
    if !(round > 0.0) {
        return Err(Error::domain(format!("angles {angles:?} lie on a chart singularity")));
    }
    Ok(Warped {
        h,
        s,
        grad_norm,
        density: det / round,
    })
}

/// Everything the boundary identities need at one point of `∂Ω`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceGeometry {
    pub point: PolarPoint,
    pub rho: f64,
    /// `b`-unit outward conormal in geodesic polar components.
    pub normal_covector: Vector,
    /// Hyperbolic area density relative to the round measure of `S^{n−1}`.
    pub area_density: f64,
    /// Euclidean area density relative to the round measure.
    pub area_density_euclid: f64,
    /// Induced metric in angle coordinates.
    pub induced: Matrix,
    pub shape: Matrix,
    pub mean_curvature: f64,
    pub induced_euclid: Matrix,
    pub shape_euclid: Matrix,
    pub mean_curvature_euclid: f64,
    /// `⟨dV, ν⟩`.
    pub dv_normal: f64,
    /// `∇^T V` in the coordinate basis of the angles.
    pub grad_t_v: Vector,
    pub grad_t_v_norm_sq: f64,
    /// `⟨ν, ∇l⟩` where `l` is the distance to the origin.
    pub normal_radial: f64,
    /// Largest entry of the difference between the direct Euclidean shape
    /// tensor and the one obtained from the hyperbolic data.
    pub transform_mismatch: f64,
}

/// Relative tolerance for the two computations of the Euclidean shape tensor.
pub const TRANSFORM_TOLERANCE: f64 = 1e-6;

pub fn surface_geometry(s: &RadialSurface, angles: &[f64]) -> Result<SurfaceGeometry> {
    let n = s.dim.get();
    let rj = s.radius_jet(angles)?;
    let rho = rj.rho;
    let c = sqrt(1.0 + rho * rho);
    let r = asinh(rho);
    // Geodesic radius function r_s = asinh ρ_s.
    let r_grad = rj.gradient.scale(1.0 / c);
    let r_hess = Matrix::from_fn(n - 1, |a, b| {
        rj.hessian[(a, b)] / c - rho * rj.gradient[a] * rj.gradient[b] / (c * c * c)
    });
    let hyp = warped_surface(n, rho, c, &r_grad, &r_hess, angles)?;
    let euc = warped_surface(n, rho, 1.0, &rj.gradient, &rj.hessian, angles)?;
    let point = PolarPoint::new(s.dim, r, angles)?;

    let h_inv = hyp
        .h
        .inverse()
        .ok_or_else(|| Error::domain("surface metric is singular"))?;
    let mean = h_inv.frobenius(&hyp.s);
    let he_inv = euc
        .h
        .inverse()
        .ok_or_else(|| Error::domain("surface metric is singular"))?;
    let mean_e = he_inv.frobenius(&euc.s);

    let v = c;
    let dv_normal = rho / hyp.grad_norm;
    // dV(T_a) = sinh r · ∂_a r_s.
    let dv_t = r_grad.scale(rho);
    let grad_t_v = h_inv.mul_vec(&dv_t);
    let grad_t_v_norm_sq = dv_t.dot(&grad_t_v);

    let factor = v / sqrt(v * v - dv_normal * dv_normal);
    let transformed = hyp.s.sub(&hyp.h.scale(dv_normal / v)).scale(factor);
    let mismatch = transformed.sub(&euc.s).max_abs();
    let scale = euc.s.max_abs().max(hyp.s.max_abs()).max(1.0);
    if !(mismatch <= TRANSFORM_TOLERANCE * scale) {
        return Err(Error::Consistency {
            quantity: "Euclidean second fundamental form",
            mismatch,
            tolerance: TRANSFORM_TOLERANCE * scale,
        });
    }

    let mut normal = Vector::zeros(n);
    normal[0] = 1.0 / hyp.grad_norm;
    for a in 0..n - 1 {
        normal[a + 1] = -r_grad[a] / hyp.grad_norm;
    }

    Ok(SurfaceGeometry {
        point,
        rho,
        normal_covector: normal,
        area_density: hyp.density,
        area_density_euclid: euc.density,
        induced: hyp.h,
        shape: hyp.s,
        mean_curvature: mean,
        induced_euclid: euc.h,
        shape_euclid: euc.s,
        mean_curvature_euclid: mean_e,
        dv_normal,
        grad_t_v,
        grad_t_v_norm_sq,
        normal_radial: 1.0 / hyp.grad_norm,
        transform_mismatch: mismatch,
    })
}

impl SurfaceGeometry {
    pub fn principal_curvatures(&self) -> Result<Vector> {
        Matrix::generalized_eigenvalues(&self.shape, &self.induced)
            .ok_or_else(|| Error::domain("surface metric is not positive definite"))
    }

    pub fn principal_curvatures_euclid(&self) -> Result<Vector> {
        Matrix::generalized_eigenvalues(&self.shape_euclid, &self.induced_euclid)
            .ok_or_else(|| Error::domain("surface metric is not positive definite"))
    }

    pub fn potential(&self) -> f64 {
        cosh(self.point.r)
    }
}

/// Integrates `g(geometry)` over `∂Ω` against the hyperbolic area.
pub fn surface_integral(
    s: &RadialSurface,
    q: &SphereQuadrature,
    mut g: impl FnMut(&SurfaceGeometry) -> f64,
) -> Result<f64> {
    let q = rule_for(s, q)?;
    sphere_integrate(&q, |a| {
        let geo = surface_geometry(s, a)?;
        Ok(g(&geo) * geo.area_density)
    })
}

/// The rule actually used on `s`: axisymmetric surfaces only need `θ₁`.
fn rule_for<'q>(s: &RadialSurface, q: &'q SphereQuadrature) -> Result<Cow<'q, SphereQuadrature>> {
    if s.dim != q.dim() {
        return Err(Error::domain("surface and quadrature dimensions differ"));
    }
    if s.is_axisymmetric() {
        if let Some(axial) = SphereQuadrature::axial(s.dim, q.order()) {
            return Ok(Cow::Owned(axial));
        }
    }
    Ok(Cow::Borrowed(q))
}

/// `∫_{∂Ω} H V dμ`.
pub fn boundary_functional(s: &RadialSurface, q: &SphereQuadrature) -> Result<f64> {
    surface_integral(s, q, |g| g.mean_curvature * g.potential())
}

/// `|∂Ω|_b`.
pub fn area(s: &RadialSurface, q: &SphereQuadrature) -> Result<f64> {
    surface_integral(s, q, |_| 1.0)
}

/// The terms of the identity relating `∫HV` to Euclidean data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntHvTerms {
    pub hv: f64,
    pub euclid_mean: f64,
    pub flux: f64,
    pub correction: f64,
    pub residual: f64,
}

pub fn int_hv_terms(s: &RadialSurface, q: &SphereQuadrature) -> Result<IntHvTerms> {
    let q = rule_for(s, q)?;
    let nf = s.dim.as_f64();
    let (mut hv, mut eu, mut fl, mut co) = (0.0, 0.0, 0.0, 0.0);
    for (angles, w) in q.iter() {
        let g = surface_geometry(s, angles)?;
        let v = g.potential();
        let da = w * g.area_density;
        hv += da * g.mean_curvature * v;
        eu += w * g.area_density_euclid * g.mean_curvature_euclid;
        fl += da * (nf - 1.0) * g.dv_normal;
        let s_tt = g.shape.bilinear(&g.grad_t_v, &g.grad_t_v);
        co += da * (s_tt * v - g.grad_t_v_norm_sq * g.dv_normal) / (1.0 + g.grad_t_v_norm_sq);
    }
    Ok(IntHvTerms {
        hv,
        euclid_mean: eu,
        flux: fl,
        correction: co,
        residual: (hv - eu - fl - co).abs(),
    })
}

pub fn int_hv_identity_residual(s: &RadialSurface, q: &SphereQuadrature) -> Result<f64> {
    Ok(int_hv_terms(s, q)?.residual)
}

/// Smallest principal curvature minus one over the quadrature nodes;
/// non-negative exactly when the sample is h-convex.
pub fn h_convexity_margin(s: &RadialSurface, q: &SphereQuadrature) -> Result<f64> {
    let q = rule_for(s, q)?;
    let mut margin = f64::INFINITY;
    for (angles, _) in q.iter() {
        let k = surface_geometry(s, angles)?.principal_curvatures()?;
        margin = margin.min(k.min() - 1.0);
    }
    Ok(margin)
}

/// Radius of the largest origin-centred ball inside the star-shaped domain.
pub fn inner_ball_radius(s: &RadialSurface) -> f64 {
    asinh(s.radius.min_rho(s.dim.get()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxBound {
    /// `∫ ⟨dV, ν⟩ dμ`.
    pub lhs: f64,
    /// `sinh r₀ |∂Ω|_b`.
    pub rhs: f64,
    /// Minimum over nodes of `⟨ν,∇l⟩ − (t² + τ)/(t(1 + τ))`.
    pub borisenko_min: f64,
    /// `n ∫_Ω V dμ`, equal to `lhs` by the divergence theorem.
    pub volume_form: f64,
}

pub const HYPOTHESIS_SLACK: f64 = 1e-9;

/// Lower bound of the boundary flux of `dV` for h-convex domains.
pub fn flux_bound_check(s: &RadialSurface, q: &SphereQuadrature) -> Result<FluxBound> {
    let margin = h_convexity_margin(s, q)?;
    if margin < -HYPOTHESIS_SLACK {
        return Err(Error::Hypothesis(format!(
            "surface is not h-convex (margin {margin:e})"
        )));
    }
    let q = rule_for(s, q)?;
    let n = s.dim.get();
    let r0 = inner_ball_radius(s);
    let tau = tanh(0.5 * r0);
    let (mut lhs, mut a, mut vol) = (0.0, 0.0, 0.0);
    let mut bor = f64::INFINITY;
    for (angles, w) in q.iter() {
        let g = surface_geometry(s, angles)?;
        lhs += w * g.area_density * g.dv_normal;
        a += w * g.area_density;
        vol += w * powi(g.rho, n as i32);
        let t = tanh(0.5 * g.point.r);
        bor = bor.min(g.normal_radial - (t * t + tau) / (t * (1.0 + tau)));
    }
    Ok(FluxBound {
        lhs,
        rhs: sinh(r0) * a,
        borisenko_min: bor,
        volume_form: vol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlexandrovFenchel {
    /// `∫ H̃ dμ̃`.
    pub mean_integral: f64,
    /// `(n−1)ω(|∂Ω|_b̃/ω)^{(n−2)/(n−1)}`.
    pub bound: f64,
    pub area_euclid: f64,
    pub area: f64,
}

pub fn alexandrov_fenchel_check(s: &RadialSurface, q: &SphereQuadrature) -> Result<AlexandrovFenchel> {
    let q = rule_for(s, q)?;
    s.dim.require_inequality()?;
    let nf = s.dim.as_f64();
    let omega = unit_sphere_volume(s.dim);
    let (mut mean, mut ae, mut a) = (0.0, 0.0, 0.0);
    for (angles, w) in q.iter() {
        let g = surface_geometry(s, angles)?;
        let k = g.principal_curvatures_euclid()?;
        if k.min() < -HYPOTHESIS_SLACK {
            return Err(Error::Hypothesis(format!(
                "Euclidean projection is not convex at angles {angles:?}"
            )));
        }
        mean += w * g.area_density_euclid * g.mean_curvature_euclid;
        ae += w * g.area_density_euclid;
        a += w * g.area_density;
    }
    Ok(AlexandrovFenchel {
        mean_integral: mean,
        bound: (nf - 1.0) * omega * powf(ae / omega, (nf - 2.0) / (nf - 1.0)),
        area_euclid: ae,
        area: a,
    })
}

/// `C_n = 2^{n−1} (n/(n−2)) (n/ω_{n−1})^{1/(n−1)}`.
pub fn hoffman_spruck_constant(dim: Dimension) -> Result<f64> {
    dim.require_inequality()?;
    let nf = dim.as_f64();
    Ok(powi(2.0, dim.get() as i32 - 1)
        * (nf / (nf - 2.0))
        * powf(nf / unit_sphere_volume(dim), 1.0 / (nf - 1.0)))
}

/// `(|∂Ω|^{(n−2)/(n−1)}, C_n ∫|H| dμ)`.
pub fn hoffman_spruck_check(s: &RadialSurface, q: &SphereQuadrature) -> Result<(f64, f64)> {
    let q = rule_for(s, q)?;
    let c = hoffman_spruck_constant(s.dim)?;
    let nf = s.dim.as_f64();
    let (mut a, mut h) = (0.0, 0.0);
    for (angles, w) in q.iter() {
        let g = surface_geometry(s, angles)?;
        a += w * g.area_density;
        h += w * g.area_density * g.mean_curvature.abs();
    }
    Ok((powf(a, (nf - 2.0) / (nf - 1.0)), c * h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PenroseVariant {
    Graph,
    HoffmanSpruck,
    Minkowski,
}

impl PenroseVariant {
    pub const ALL: [PenroseVariant; 3] = [
        PenroseVariant::Graph,
        PenroseVariant::HoffmanSpruck,
        PenroseVariant::Minkowski,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PenroseVariant::Graph => "graph",
            PenroseVariant::HoffmanSpruck => "hs",
            PenroseVariant::Minkowski => "m",
        }
    }
}

impl FromStr for PenroseVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(PenroseVariant::Graph),
            "hs" => Ok(PenroseVariant::HoffmanSpruck),
            "m" => Ok(PenroseVariant::Minkowski),
            other => Err(Error::domain(format!(
                "unknown Penrose variant '{other}' (expected graph, hs or m)"
            ))),
        }
    }
}

/// Lower bounds for `∫_{∂Ω} H V dμ` in terms of area and inner radius.
pub fn penrose_rhs(area: f64, r0: f64, dim: Dimension, variant: PenroseVariant) -> Result<f64> {
    dim.require_inequality()?;
    if !(area >= 0.0 && r0 >= 0.0) {
        return Err(Error::domain("area and inner radius must be non-negative"));
    }
    let nf = dim.as_f64();
    let omega = unit_sphere_volume(dim);
    let x = area / omega;
    let low = powf(x, (nf - 2.0) / (nf - 1.0));
    Ok(match variant {
        PenroseVariant::Graph => (nf - 1.0) * omega * (low + sinh(r0) * x),
        PenroseVariant::HoffmanSpruck => {
            (nf - 2.0) / (powi(2.0, dim.get() as i32 - 1) * powf(nf, nf / (nf - 1.0)))
                * cosh(r0)
                * omega
                * low
        }
        PenroseVariant::Minkowski => (nf - 1.0) * cosh(r0) * area,
    })
}

/// Named reference surfaces: origin-centred spheres, axisymmetric
/// perturbations, off-centre spheres and, for `n = 3`, a tilted surface.
pub fn sample_surfaces(dim: Dimension) -> Vec<(&'static str, RadialSurface)> {
    let mut out = Vec::new();
    let mut push = |name, f| {
        if let Ok(s) = RadialSurface::new(dim, f) {
            out.push((name, s));
        }
    };
    push("sphere-0.5", RadiusFunction::Constant(sinh(0.5)));
    push("sphere-1", RadiusFunction::Constant(1.0));
    push("sphere-2", RadiusFunction::Constant(sinh(2.0)));
    push("cos2", RadiusFunction::CosSeries(alloc::vec![1.0, 0.0, 0.1]));
    push("cos1", RadiusFunction::CosSeries(alloc::vec![1.2, 0.08]));
    push("cos-mixed", RadiusFunction::CosSeries(alloc::vec![1.0, 0.05, 0.1, 0.0, -0.03]));
    push("cos3", RadiusFunction::CosSeries(alloc::vec![2.0, 0.0, 0.0, 0.15]));
    push("cos4", RadiusFunction::CosSeries(alloc::vec![1.5, 0.0, -0.08, 0.0, 0.05]));
    push("off-center", RadiusFunction::OffCenterSphere { radius: 1.0, offset: 0.3 });
    push("off-center-far", RadiusFunction::OffCenterSphere { radius: 1.6, offset: 1.0 });
    if dim.get() == 3 {
        push("tilted", RadiusFunction::Tilted { scale: 1.0, eps: 0.1 });
    }
    // Not h-convex: a thin spike at the north pole.
    let mut spike = alloc::vec![0.0; 41];
    spike[0] = 1.0;
    spike[40] = 0.6;
    push("spike", RadiusFunction::CosSeries(spike));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::central_first;
    use crate::calculus::FdStep;

    fn d(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn unit_area_sphere_closed_forms() {
        let s = RadialSurface::new(d(3), RadiusFunction::Constant(1.0)).unwrap();
        let g = surface_geometry(&s, &[0.7, 1.9]).unwrap();
        assert!((g.mean_curvature - 2.0 * 2f64.sqrt()).abs() < 1e-13);
        assert!((g.mean_curvature_euclid - 2.0).abs() < 1e-13);
        assert!((g.dv_normal - 1.0).abs() < 1e-14);
        assert_eq!(g.grad_t_v_norm_sq, 0.0);
    }

    #[test]
    fn cos_series_derivatives() {
        let f = RadiusFunction::CosSeries(alloc::vec![1.0, 0.2, 0.1, -0.05]);
        let step = FdStep::default();
        for t in [0.3, 1.2, 2.5] {
            let j = f.jet(3, &[t, 0.4]);
            let d1 = central_first(|x| f.jet(3, &[x, 0.4]).rho, t, step);
            let d2 = central_first(|x| f.jet(3, &[x, 0.4]).gradient[0], t, step);
            assert!((j.gradient[0] - d1).abs() < 1e-10);
            assert!((j.hessian[(0, 0)] - d2).abs() < 1e-10);
        }
    }

    #[test]
    fn off_center_sphere_derivatives_and_extremes() {
        let f = RadiusFunction::OffCenterSphere {
            radius: 1.2,
            offset: 0.4,
        };
        let step = FdStep::default();
        for t in [0.2, 1.4, 2.9] {
            let j = f.jet(3, &[t, 0.0]);
            let d1 = central_first(|x| f.jet(3, &[x, 0.0]).rho, t, step);
            let d2 = central_first(|x| f.jet(3, &[x, 0.0]).gradient[0], t, step);
            assert!((j.gradient[0] - d1).abs() < 1e-9);
            assert!((j.hessian[(0, 0)] - d2).abs() < 1e-9);
        }
        assert!((f.jet(3, &[0.0, 0.0]).rho - sinh(1.6)).abs() < 1e-12);
        assert!((f.jet(3, &[PI, 0.0]).rho - sinh(0.8)).abs() < 1e-12);
    }

    #[test]
    fn tilted_derivatives() {
        let f = RadiusFunction::Tilted { scale: 1.0, eps: 0.15 };
        let step = FdStep::default();
        let (t, p) = (1.1, 0.7);
        let j = f.jet(3, &[t, p]);
        assert!((j.gradient[1] - central_first(|x| f.jet(3, &[t, x]).rho, p, step)).abs() < 1e-10);
        assert!((j.hessian[(1, 1)] - central_first(|x| f.jet(3, &[t, x]).gradient[1], p, step)).abs() < 1e-10);
        assert!((j.hessian[(0, 1)] - central_first(|x| f.jet(3, &[t, x]).gradient[0], p, step)).abs() < 1e-10);
        assert!((j.hessian[(0, 0)] - central_first(|x| f.jet(3, &[x, p]).gradient[0], t, step)).abs() < 1e-10);
    }

    #[test]
    fn inner_radius_presets() {
        let s = RadialSurface::geodesic_sphere(d(3), 2.0).unwrap();
        assert!((inner_ball_radius(&s) - 2.0).abs() < 1e-14);
        let e = RadialSurface::new(d(3), RadiusFunction::CosSeries(alloc::vec![1.0, 0.0, 0.1])).unwrap();
        assert!((inner_ball_radius(&e) - asinh(1.0)).abs() < 1e-14);
        assert!(RadialSurface::new(d(3), RadiusFunction::CosSeries(alloc::vec![0.1, 0.5])).is_err());
    }

    #[test]
    fn penrose_variants() {
        let d3 = d(3);
        assert!((penrose_rhs(4.0 * PI, asinh(1.0), d3, PenroseVariant::Graph).unwrap() - 16.0 * PI).abs() < 1e-12);
        assert_eq!(penrose_rhs(0.0, 0.0, d3, PenroseVariant::Graph).unwrap(), 0.0);
        assert!("bogus".parse::<PenroseVariant>().is_err());
        assert_eq!("hs".parse::<PenroseVariant>().unwrap(), PenroseVariant::HoffmanSpruck);
        let c3 = hoffman_spruck_constant(d3).unwrap();
        assert!((c3 - 12.0 * (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-12);
    }
}
