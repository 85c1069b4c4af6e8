//! The mass functional at infinity and its bulk/boundary decomposition.

use alloc::format;
use alloc::vec::Vec;

use crate::boundary::{surface_geometry, RadialSurface};
use crate::calculus::{
    radial_integrate, richardson_extrapolate, sphere_integrate, Jet2, RadialQuadrature,
    ScalarField, SphereQuadrature,
};
use crate::error::{Error, Result};
use crate::fmath::{asinh, cosh, powi, sinh, sqrt};
use crate::graph::scalar_curvature;
use crate::hyperbolic::{
    lorentz_inner, metric_b, static_potential, unit_sphere_volume, Dimension, LorentzVector,
    PolarPoint, StaticPotentialId,
};
use crate::linalg::Vector;

/// Resolution of every integral in this module.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassOptions {
    /// Exactness degree of the sphere rule.
    pub sphere_order: usize,
    pub radial_panels: usize,
    pub radial_points: usize,
    /// Geodesic radius at which bulk integrals over the exterior are cut off.
    pub r_max: f64,
}

impl Default for MassOptions {
    fn default() -> Self {
        MassOptions {
            sphere_order: 16,
            radial_panels: 32,
            radial_points: 16,
            r_max: asinh(80.0),
        }
    }
}

/// Geodesic radii with `sinh r ∈ {10, 20, 40, 80}`.
pub fn default_radii() -> Vec<f64> {
    [10.0, 20.0, 40.0, 80.0].iter().map(|&s| asinh(s)).collect()
}

/// Relative size below which a sphere integral is treated as exact
/// cancellation, compared with the integral of the absolute integrand.
const CANCELLATION: f64 = 1e-12;

/// The mass 1-form `V(div e − d tr e) + tr e dU − e(∇U, ·)` with
/// `e = V² df⊗df`, here for a general potential `U`.
pub fn mass_one_form(j: &Jet2, u: &Jet2, p: &PolarPoint) -> Result<Vector> {
    let n = p.n();
    let b = metric_b(p)?;
    let v = cosh(p.r);
    let v2 = v * v;
    let mut dv = Vector::zeros(n);
    dv[0] = sinh(p.r);
    let f = &j.gradient;
    let grad_up = b.g_upper.mul_vec(f);
    let hess_grad = j.hessian.mul_vec(&grad_up);
    let lap = b.g_upper.frobenius(&j.hessian);
    let df2 = j.grad_norm_sq();
    let df_dv = j.grad_dot_potential();
    let df_du = grad_up.dot(&u.gradient);
    Ok(Vector::from_fn(n, |k| {
        u.value
            * (2.0 * v * df_dv * f[k] + v2 * lap * f[k] - v2 * hess_grad[k]
                - 2.0 * v * dv[k] * df2)
            + v2 * df2 * u.gradient[k]
            - v2 * df_du * f[k]
    }))
}

/// Integral over `S_r` of the mass 1-form against the outward normal, with
/// the integral of its absolute value.
fn sphere_mass(
    field: &dyn ScalarField,
    i: StaticPotentialId,
    r: f64,
    quad: &SphereQuadrature,
) -> Result<(f64, f64)> {
    let dim = field.dim();
    let n = dim.get();
    let area = powi(sinh(r), (n - 1) as i32);
    let radial_component = |angles: &[f64]| -> Result<f64> {
        let p = PolarPoint::new(dim, r, angles)?;
        let j = field.derivative_jet(&p)?;
        let u = static_potential(i, &p)?;
        Ok(mass_one_form(&j, &u, &p)?[0] * area)
    };
    if field.is_radial() && i.0 == 0 {
        let v = radial_component(quad.node(0))? * unit_sphere_volume(dim);
        return Ok((v, v.abs()));
    }
    let (mut total, mut abs_total) = (0.0, 0.0);
    for (angles, w) in quad.iter() {
        let v = radial_component(angles)?;
        if !v.is_finite() {
            return Err(Error::non_finite("mass integrand", format!("angles {angles:?}")));
        }
        total += w * v;
        abs_total += w * v.abs();
    }
    Ok((total, abs_total))
}

pub fn mass_integrand(
    field: &dyn ScalarField,
    i: StaticPotentialId,
    r: f64,
    opts: &MassOptions,
) -> Result<f64> {
    let quad = SphereQuadrature::new(field.dim(), opts.sphere_order);
    Ok(sphere_mass(field, i, r, &quad)?.0)
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.len() < 3 {
        return Err(Error::domain(format!(
            "the mass functional needs at least 3 radii, got {}",
            radii.len()
        )));
    }
    if radii.windows(2).any(|w| !(w[1] > w[0])) || !(radii[0] > 0.0) {
        return Err(Error::domain("radii must be positive and increasing"));
    }
    Ok(())
}

fn functional_with(
    field: &dyn ScalarField,
    i: StaticPotentialId,
    radii: &[f64],
    quad: &SphereQuadrature,
) -> Result<(f64, f64, Vec<f64>)> {
    check_radii(radii)?;
    let mut samples = Vec::with_capacity(radii.len());
    let mut cancelled = true;
    let mut largest: f64 = 0.0;
    for &r in radii {
        let (v, abs) = sphere_mass(field, i, r, quad)?;
        cancelled &= v.abs() <= CANCELLATION * abs || abs == 0.0;
        largest = largest.max(v.abs());
        samples.push((r, v));
    }
    let values = samples.iter().map(|s| s.1).collect();
    if cancelled {
        return Ok((0.0, largest, values));
    }
    let (limit, err) = richardson_extrapolate(&samples)?;
    Ok((limit, err, values))
}

/// `H_Φ(V_(i))` with an error estimate, extrapolated from the sampled radii.
pub fn mass_functional(
    field: &dyn ScalarField,
    i: StaticPotentialId,
    radii: &[f64],
    opts: &MassOptions,
) -> Result<(f64, f64)> {
    let quad = SphereQuadrature::new(field.dim(), opts.sphere_order);
    let (l, e, _) = functional_with(field, i, radii, &quad)?;
    Ok((l, e))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassReport {
    pub radii: Vec<f64>,
    /// `integrand_values[k][i]` is the sphere integral at `radii[k]` for `V_(i)`.
    pub integrand_values: Vec<Vec<f64>>,
    pub h_phi: Vec<f64>,
    pub h_phi_error: Vec<f64>,
    /// `√η(h, h) / (2(n−1)ω_{n−1})`, present only for future timelike `h`.
    pub lorentz_mass: Option<f64>,
    pub timelike: bool,
}

impl MassReport {
    pub fn mass_vector(&self) -> LorentzVector {
        LorentzVector::new(&self.h_phi)
    }

    /// `max_{i ≥ 1} |h_i| / |h_0|`, the size of the spatial part.
    pub fn spatial_ratio(&self) -> f64 {
        let spatial = self.h_phi[1..].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if self.h_phi[0] == 0.0 {
            if spatial == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            spatial / self.h_phi[0].abs()
        }
    }
}

/// All `n + 1` components of the mass functional and the Lorentz mass.
pub fn mass_vector(field: &dyn ScalarField, radii: &[f64], opts: &MassOptions) -> Result<MassReport> {
    let dim = field.dim();
    let quad = SphereQuadrature::new(dim, opts.sphere_order);
    let mut h = Vec::new();
    let mut err = Vec::new();
    let mut per_radius = alloc::vec![Vec::new(); radii.len()];
    for i in StaticPotentialId::all(dim) {
        let (l, e, values) = functional_with(field, i, radii, &quad)?;
        h.push(l);
        err.push(e);
        for (k, v) in values.into_iter().enumerate() {
            per_radius[k].push(v);
        }
    }
    let vec = LorentzVector::new(&h);
    let timelike = vec.is_future_timelike();
    let lorentz_mass = timelike.then(|| sqrt(lorentz_inner(&vec, &vec)) / normalization(dim));
    Ok(MassReport {
        radii: radii.to_vec(),
        integrand_values: per_radius,
        h_phi: h,
        h_phi_error: err,
        lorentz_mass,
        timelike,
    })
}

/// `2(n−1)ω_{n−1}`.
pub fn normalization(dim: Dimension) -> f64 {
    2.0 * (dim.as_f64() - 1.0) * unit_sphere_volume(dim)
}

/// Integral over `S_r` of the divided 1-form whose divergence is
/// `V(Scal + n(n−1))`.
pub fn flux(field: &dyn ScalarField, r: f64, opts: &MassOptions) -> Result<f64> {
    let dim = field.dim();
    let n = dim.get();
    let area = powi(sinh(r), (n - 1) as i32);
    let quad = SphereQuadrature::new(dim, opts.sphere_order);
    let component = |angles: &[f64]| -> Result<f64> {
        let p = PolarPoint::new(dim, r, angles)?;
        let j = field.derivative_jet(&p)?;
        Ok(crate::graph::mass_aspect_one_form(&j, &p)?.0[0] * area)
    };
    if field.is_radial() {
        return Ok(component(quad.node(0))? * unit_sphere_volume(dim));
    }
    sphere_integrate(&quad, component)
}

fn bulk_density(field: &dyn ScalarField, p: &PolarPoint) -> Result<f64> {
    let geom = scalar_curvature(&field.derivative_jet(p)?, p)?;
    Ok(geom.potential * geom.scal_excess())
}

/// `∫_{r1 < r < r2} V(Scal + n(n−1)) dμ^b`.
pub fn annulus_integral(field: &dyn ScalarField, r1: f64, r2: f64, opts: &MassOptions) -> Result<f64> {
    let dim = field.dim();
    let quad = SphereQuadrature::new(dim, opts.sphere_order);
    let rq = RadialQuadrature::gauss(r1, r2, opts.radial_panels, opts.radial_points)?;
    let n = dim.get();
    let shell = |angles: &[f64], rq: &RadialQuadrature| -> Result<f64> {
        radial_integrate(rq, |r| {
            let p = PolarPoint::new(dim, r, angles)?;
            Ok(bulk_density(field, &p)? * powi(sinh(r), (n - 1) as i32))
        })
    };
    if field.is_radial() {
        return Ok(shell(quad.node(0), &rq)? * unit_sphere_volume(dim));
    }
    sphere_integrate(&quad, |a| shell(a, &rq))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassDecomposition {
    /// `∫ V(Scal + n(n−1)) dμ^b` over the exterior of `Ω`, cut off at `r_max`.
    pub interior: f64,
    /// `∫_{∂Ω} H V · V²|df|²/(1 + V²|df|²) dμ^b`.
    pub boundary: f64,
    pub total: f64,
    /// Independently extrapolated `H_Φ(V_(0))`.
    pub h_phi_check: f64,
    pub h_phi_error: f64,
}

impl MassDecomposition {
    pub fn relative_mismatch(&self) -> f64 {
        let scale = self.h_phi_check.abs().max(self.total.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.total - self.h_phi_check).abs() / scale
        }
    }
}

/// Relative spread allowed for "f is constant on ∂Ω".
const LEVEL_TOLERANCE: f64 = 1e-9;

/// Splits `H_Φ(V_(0))` into the bulk integral outside `Ω` and a boundary term.
///
/// For a horizon profile the surface must be the horizon sphere and the
/// factor `V²|df|²/(1 + V²|df|²)` is exactly 1. Otherwise `f` must be
/// constant on `∂Ω`; `df = 0` there is accepted and makes the boundary term
/// vanish.
pub fn mass_decomposition(
    field: &dyn ScalarField,
    omega: &RadialSurface,
    radii: &[f64],
    opts: &MassOptions,
) -> Result<MassDecomposition> {
    let dim = field.dim();
    if omega.dim() != dim {
        return Err(Error::domain("surface and field live in different dimensions"));
    }
    let n = dim.get();
    let quad = SphereQuadrature::new(dim, opts.sphere_order);
    let v0 = StaticPotentialId::LAPSE;
    let (h_phi, h_err, _) = functional_with(field, v0, radii, &quad)?;

    let horizon = field.horizon();
    if let Some(r0) = horizon {
        let matches = omega
            .constant_radius()
            .is_some_and(|rho| (rho - sinh(r0)).abs() <= 1e-12 * rho.max(1.0));
        if !matches {
            return Err(Error::Hypothesis(format!(
                "a horizon profile must be decomposed along its horizon sphere sinh r = {}",
                sinh(r0)
            )));
        }
    }

    // Boundary term and the level-set precondition.
    let mut level_min = f64::INFINITY;
    let mut level_max = f64::NEG_INFINITY;
    let boundary_node = |angles: &[f64]| -> Result<(f64, f64)> {
        let geo = surface_geometry(omega, angles)?;
        let p = geo.point;
        let weight = geo.mean_curvature * cosh(p.r) * geo.area_density;
        if horizon.is_some() {
            return Ok((weight, 0.0));
        }
        let j = field.jet(&p)?;
        let v2df2 = cosh(p.r) * cosh(p.r) * j.grad_norm_sq();
        // The gradient must be normal to the surface.
        let b = metric_b(&p)?;
        let grad_up = b.g_upper.mul_vec(&j.gradient);
        let along = geo.normal_covector.dot(&grad_up);
        let tangential = (j.grad_norm_sq() - along * along).max(0.0);
        if sqrt(tangential) > 1e-6 * (1.0 + sqrt(j.grad_norm_sq())) {
            return Err(Error::Hypothesis(format!(
                "df is not normal to the boundary at angles {angles:?}"
            )));
        }
        Ok((weight * v2df2 / (1.0 + v2df2), j.value))
    };
    let boundary = if field.is_radial() && omega.constant_radius().is_some() {
        let (w, _) = boundary_node(quad.node(0))?;
        w * unit_sphere_volume(dim)
    } else {
        sphere_integrate(&quad, |a| {
            let (w, value) = boundary_node(a)?;
            level_min = level_min.min(value);
            level_max = level_max.max(value);
            Ok(w)
        })?
    };
    if horizon.is_none() && level_max > level_min {
        let spread = level_max - level_min;
        if spread > LEVEL_TOLERANCE * level_max.abs().max(level_min.abs()).max(1.0) {
            return Err(Error::Hypothesis(format!(
                "f is not constant on the boundary (spread {spread:e})"
            )));
        }
    }

    // Bulk integral from the surface out to r_max, angle by angle.
    let shell = |angles: &[f64]| -> Result<f64> {
        let rs = asinh(omega.rho(angles)?);
        if rs >= opts.r_max {
            return Err(Error::domain("the surface reaches beyond the bulk cutoff r_max"));
        }
        let rq = RadialQuadrature::gauss(rs, opts.r_max, opts.radial_panels, opts.radial_points)?;
        radial_integrate(&rq, |r| {
            let p = PolarPoint::new(dim, r, angles)?;
            Ok(bulk_density(field, &p)? * powi(sinh(r), (n - 1) as i32))
        })
    };
    let interior = if field.is_radial() && omega.constant_radius().is_some() {
        shell(quad.node(0))? * unit_sphere_volume(dim)
    } else {
        sphere_integrate(&quad, shell)?
    };

    Ok(MassDecomposition {
        interior,
        boundary,
        total: interior + boundary,
        h_phi_check: h_phi,
        h_phi_error: h_err,
    })
}

/// Weighted decay integrals over a sequence of annuli.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayReport {
    pub annuli: Vec<(f64, f64)>,
    /// `∫ (|e|² + |∇e|²) cosh r dμ^b` per annulus.
    pub tensor_integrals: Vec<f64>,
    /// `∫ |Scal + n(n−1)| cosh r dμ^b` per annulus.
    pub scalar_integrals: Vec<f64>,
    /// `sup V²|df|²` on the outermost sphere.
    pub outer_sup: f64,
    /// The same supremum on the inner sphere of the last annulus.
    pub inner_sup: f64,
    pub tensor_pass: bool,
    pub scalar_pass: bool,
    pub pointwise_pass: bool,
}

impl DecayReport {
    pub fn pass(&self) -> bool {
        self.tensor_pass && self.scalar_pass && self.pointwise_pass
    }
}

/// `|e|² + |∇e|²` for `e = V² df⊗df`, norms taken with `b`.
fn tensor_density(j: &Jet2, p: &PolarPoint) -> Result<f64> {
    let n = p.n();
    let b = metric_b(p)?;
    let v = cosh(p.r);
    let v2 = v * v;
    let f = &j.gradient;
    let e2 = v2 * v2 * j.grad_norm_sq() * j.grad_norm_sq();
    let mut grad_e2 = 0.0;
    let dv0 = sinh(p.r);
    for k in 0..n {
        let dvk = if k == 0 { dv0 } else { 0.0 };
        for a in 0..n {
            for c in 0..n {
                let t = 2.0 * v * dvk * f[a] * f[c]
                    + v2 * (j.hessian[(k, a)] * f[c] + f[a] * j.hessian[(k, c)]);
                grad_e2 += b.g_upper[(k, k)] * b.g_upper[(a, a)] * b.g_upper[(c, c)] * t * t;
            }
        }
    }
    Ok(e2 + grad_e2)
}

const NOISE_FLOOR: f64 = 1e-12;

fn is_non_increasing(xs: &[f64]) -> bool {
    let tail = &xs[xs.len().saturating_sub(3)..];
    tail.iter().all(|x| x.is_finite()) && tail.windows(2).all(|w| w[1] <= w[0])
}

pub fn decay_report(
    field: &dyn ScalarField,
    annuli: &[(f64, f64)],
    opts: &MassOptions,
) -> Result<DecayReport> {
    if annuli.is_empty() {
        return Err(Error::domain("decay report needs at least one annulus"));
    }
    let dim = field.dim();
    let n = dim.get();
    let quad = SphereQuadrature::new(dim, opts.sphere_order);
    let mut tensor = Vec::with_capacity(annuli.len());
    let mut scalar = Vec::with_capacity(annuli.len());
    for &(r1, r2) in annuli {
        if !(r2 > r1 && r1 > 0.0) {
            return Err(Error::domain(format!("invalid annulus ({r1}, {r2})")));
        }
        let rq = RadialQuadrature::gauss(r1, r2, opts.radial_panels, opts.radial_points)?;
        let density = |r: f64, angles: &[f64]| -> Result<(f64, f64)> {
            let p = PolarPoint::new(dim, r, angles)?;
            let j = field.derivative_jet(&p)?;
            let weight = cosh(r) * powi(sinh(r), (n - 1) as i32);
            let geom = scalar_curvature(&j, &p)?;
            Ok((tensor_density(&j, &p)? * weight, geom.scal_excess().abs() * weight))
        };
        let shell = |angles: &[f64]| -> Result<(f64, f64)> {
            let t = radial_integrate(&rq, |r| Ok(density(r, angles)?.0))?;
            let s = radial_integrate(&rq, |r| Ok(density(r, angles)?.1))?;
            Ok((t, s))
        };
        if field.is_radial() {
            let (t, s) = shell(quad.node(0))?;
            let w = unit_sphere_volume(dim);
            tensor.push(t * w);
            scalar.push(s * w);
        } else {
            let (mut t_total, mut s_total) = (0.0, 0.0);
            for (angles, w) in quad.iter() {
                let (t, s) = shell(angles)?;
                t_total += w * t;
                s_total += w * s;
            }
            tensor.push(t_total);
            scalar.push(s_total);
        }
    }
    let sup_on = |r: f64| -> Result<f64> {
        let mut sup: f64 = 0.0;
        for (angles, _) in quad.iter() {
            let p = PolarPoint::new(dim, r, angles)?;
            let j = field.derivative_jet(&p)?;
            sup = sup.max(cosh(r) * cosh(r) * j.grad_norm_sq());
            if field.is_radial() {
                break;
            }
        }
        Ok(sup)
    };
    // Scalar integrals at rounding level, measured against
    // `∫ n(n−1) cosh r dμ^b = (n−1)ω (sinh^n r₂ − sinh^n r₁)`, count as zero.
    let omega = unit_sphere_volume(dim);
    let scalar_clamped: Vec<f64> = scalar
        .iter()
        .zip(annuli)
        .map(|(&s, &(r1, r2))| {
            let scale = (n as f64 - 1.0) * omega * (powi(sinh(r2), n as i32) - powi(sinh(r1), n as i32));
            if s <= NOISE_FLOOR * scale {
                0.0
            } else {
                s
            }
        })
        .collect();
    let (last_in, last_out) = annuli[annuli.len() - 1];
    let outer_sup = sup_on(last_out)?;
    let inner_sup = sup_on(last_in)?;
    Ok(DecayReport {
        annuli: annuli.to_vec(),
        tensor_pass: is_non_increasing(&tensor),
        scalar_pass: is_non_increasing(&scalar_clamped),
        pointwise_pass: outer_sup.is_finite() && outer_sup <= inner_sup,
        tensor_integrals: tensor,
        scalar_integrals: scalar,
        outer_sup,
        inner_sup,
    })
}
