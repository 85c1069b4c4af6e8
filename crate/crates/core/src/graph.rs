//! Curvature of the graph `{s = f(x)}` in `(H^n × R, b + V² ds²)`.
//!
//! Sign convention: the unit normal is `ν = (∇f, −V^{−2}) / √(V^{−2} + |df|²)`,
//! which makes the mean curvature of the anti-de Sitter Schwarzschild
//! graphs positive.

use alloc::format;

use crate::calculus::{central_first, FdStep, Jet2, ScalarField};
use crate::error::{Error, Result};
use crate::fmath::{cosh, sinh, sqrt};
use crate::hyperbolic::{metric_b, MetricAt, PolarPoint};
use crate::linalg::{Matrix, Vector};

/// Threshold on `|df|` below which level sets are not hypersurfaces.
pub const CRITICAL_GRADIENT: f64 = 1e-8;

/// Relative tolerance of the built-in dual computation of `Scal`.
pub const SCAL_SELF_CHECK: f64 = 1e-6;

/// Scalar invariants shared by all formulas at one point.
struct Frame {
    n: usize,
    b: MetricAt,
    v: f64,
    /// `|df|²_b`
    df2: f64,
    /// `W² = 1 + V²|df|²`
    w2: f64,
    /// `∇f` with its index raised by `b`
    grad_up: Vector,
    /// `dV` as a covector (radial)
    dv: Vector,
    /// `⟨df, dV⟩_b`
    df_dv: f64,
    laplacian: f64,
    /// `Hess f(∇f, ·)`
    hess_grad: Vector,
    /// `Hess f(∇f, ∇f)`
    hess_gg: f64,
}

impl Frame {
    fn new(j: &Jet2, p: &PolarPoint) -> Result<Frame> {
        let n = p.n();
        if j.dim() != n {
            return Err(Error::domain(format!(
                "jet of dimension {} evaluated at a point of dimension {n}",
                j.dim()
            )));
        }
        let b = metric_b(p)?;
        let v = cosh(p.r);
        let df2 = j.grad_norm_sq();
        let grad_up = b.g_upper.mul_vec(&j.gradient);
        let mut dv = Vector::zeros(n);
        dv[0] = sinh(p.r);
        let hess_grad = j.hessian.mul_vec(&grad_up);
        Ok(Frame {
            n,
            v,
            df2,
            w2: 1.0 + v * v * df2,
            grad_up,
            dv,
            df_dv: j.grad_dot_potential(),
            laplacian: b.g_upper.frobenius(&j.hessian),
            hess_gg: hess_grad.dot(&grad_up),
            hess_grad,
            b,
        })
    }

    fn w(&self) -> f64 {
        sqrt(self.w2)
    }
}

/// Induced metric `g = b + V² df⊗df` and its inverse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InducedMetric {
    pub g_lower: Matrix,
    pub g_upper: Matrix,
}

fn induced_from(fr: &Frame, j: &Jet2) -> InducedMetric {
    let v2 = fr.v * fr.v;
    let lower = fr.b.g_lower.add(&Matrix::outer(&j.gradient, &j.gradient).scale(v2));
    let upper = fr
        .b
        .g_upper
        .sub(&Matrix::outer(&fr.grad_up, &fr.grad_up).scale(v2 / fr.w2));
    InducedMetric {
        g_lower: lower,
        g_upper: upper,
    }
}

fn shape_from(fr: &Frame, j: &Jet2) -> Matrix {
    let n = fr.n;
    let f = &j.gradient;
    let coef = fr.v / fr.w();
    Matrix::from_fn(n, |a, b| {
        coef * (j.hessian[(a, b)]
            + (f[a] * fr.dv[b] + fr.dv[a] * f[b]) / fr.v
            + fr.v * fr.df_dv * f[a] * f[b])
    })
}

fn mean_curvature_from(fr: &Frame) -> f64 {
    let v = fr.v;
    fr.v / fr.w()
        * (fr.laplacian - v * v * fr.hess_gg / fr.w2 + (1.0 + 1.0 / fr.w2) * fr.df_dv / v)
}

pub fn induced_metric(j: &Jet2, p: &PolarPoint) -> Result<InducedMetric> {
    let fr = Frame::new(j, p)?;
    Ok(induced_from(&fr, j))
}

/// Second fundamental form `Ā_{ij}` of the graph in coordinates of `H^n`.
pub fn shape_tensor(j: &Jet2, p: &PolarPoint) -> Result<Matrix> {
    let fr = Frame::new(j, p)?;
    Ok(shape_from(&fr, j))
}

/// Mean curvature from its explicit expression in `f`.
pub fn mean_curvature(j: &Jet2, p: &PolarPoint) -> Result<f64> {
    Ok(mean_curvature_from(&Frame::new(j, p)?))
}

/// Extrinsic and intrinsic curvature of the graph at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphGeometry {
    pub g_lower: Matrix,
    pub g_upper: Matrix,
    pub shape: Matrix,
    pub mean_curvature: f64,
    pub shape_norm_sq: f64,
    /// Scalar curvature from the traced Gauss equation.
    pub scal: f64,
    /// `Scal + n(n−1)` from the explicit expression in `f`, kept for reporting.
    pub scal_explicit_excess: f64,
    pub potential: f64,
    /// `W = √(1 + V²|df|²)`
    pub w: f64,
    pub n: usize,
}

impl GraphGeometry {
    /// `Scal + n(n−1)`.
    pub fn scal_excess(&self) -> f64 {
        self.mean_curvature * self.mean_curvature - self.shape_norm_sq
    }

    /// The shape operator `g^{ik} Ā_{kj}`.
    pub fn shape_operator(&self) -> Matrix {
        self.g_upper.mul(&self.shape)
    }

    /// `Ā^{ij}` with both indices raised by `g`.
    pub fn shape_upper(&self) -> Matrix {
        self.g_upper.mul(&self.shape).mul(&self.g_upper)
    }

    /// Eigenvalues of the shape tensor relative to `g`, ascending.
    pub fn principal_curvatures(&self) -> Result<Vector> {
        Matrix::generalized_eigenvalues(&self.shape, &self.g_lower)
            .ok_or_else(|| Error::domain("induced metric is not positive definite"))
    }

    /// The shape tensor in a `g`-orthonormal frame.
    pub fn shape_orthonormal(&self) -> Result<Matrix> {
        Matrix::in_orthonormal_frame(&self.shape, &self.g_lower)
            .ok_or_else(|| Error::domain("induced metric is not positive definite"))
    }
}

/// `Scal + n(n−1)` written directly in terms of `f`, with the size of the
/// largest term for scaling the comparison.
fn explicit_scal_excess(fr: &Frame, j: &Jet2) -> (f64, f64) {
    let v = fr.v;
    let w2 = fr.w2;
    let lap = fr.laplacian;
    // u = dV/V is radial with |u|² = tanh² r.
    let u_r = fr.dv[0] / v;
    let df_u = fr.df_dv / v;
    let u2 = u_r * u_r;
    let hess_sq = {
        let mut m = fr.b.g_upper.mul(&j.hessian);
        m = m.mul(&m);
        m.trace()
    };
    let hess_grad_sq = fr.b.g_upper.bilinear(&fr.hess_grad, &fr.hess_grad);
    let hess_grad_u = fr.hess_grad[0] * u_r;
    let terms = [
        lap * lap - hess_sq,
        2.0 * v * v / w2 * (hess_grad_sq - lap * fr.hess_gg),
        2.0 / w2 * df_u * (lap - v * v * fr.hess_gg + df_u),
        2.0 * df_u * lap,
        -2.0 / w2 * fr.df2 * u2,
        -4.0 / w2 * hess_grad_u,
    ];
    let scale = terms
        .iter()
        .chain([lap * lap, hess_sq].iter())
        .fold(0.0_f64, |m, t| m.max(t.abs()));
    let sum: f64 = terms.iter().sum();
    let factor = v * v / w2;
    (factor * sum, factor * scale)
}

fn geometry_from(fr: &Frame, j: &Jet2) -> Result<GraphGeometry> {
    let n = fr.n;
    let metric = induced_from(fr, j);
    let shape = shape_from(fr, j);
    let op = metric.g_upper.mul(&shape);
    let h = op.trace();
    let norm_sq = op.mul(&op).trace();
    let excess = h * h - norm_sq;
    let (explicit, scale) = explicit_scal_excess(fr, j);
    let mismatch = (explicit - excess).abs();
    let tolerance = SCAL_SELF_CHECK * scale.max(excess.abs()).max(1.0);
    if !(mismatch <= tolerance) {
        return Err(Error::Consistency {
            quantity: "scalar curvature",
            mismatch,
            tolerance,
        });
    }
    let nf = n as f64;
    Ok(GraphGeometry {
        g_lower: metric.g_lower,
        g_upper: metric.g_upper,
        shape,
        mean_curvature: h,
        shape_norm_sq: norm_sq,
        scal: excess - nf * (nf - 1.0),
        scal_explicit_excess: explicit,
        potential: fr.v,
        w: fr.w(),
        n,
    })
}

/// Fills every [`GraphGeometry`] field. Fails when the explicit formula for
/// `Scal` and the traced Gauss equation disagree, which indicates a corrupt jet.
pub fn scalar_curvature(j: &Jet2, p: &PolarPoint) -> Result<GraphGeometry> {
    let fr = Frame::new(j, p)?;
    geometry_from(&fr, j)
}

/// `∂Scal/∂f_{ij} = 2V/W (H̄ g^{ij} − Ā^{ij})`.
pub fn scal_linearization(j: &Jet2, p: &PolarPoint) -> Result<Matrix> {
    let geom = scalar_curvature(j, p)?;
    Ok(linearization_of(&geom))
}

pub fn linearization_of(geom: &GraphGeometry) -> Matrix {
    let coef = 2.0 * geom.potential / geom.w;
    geom.g_upper
        .scale(geom.mean_curvature)
        .sub(&geom.shape_upper())
        .scale(coef)
}

/// Eigenvalues of the mixed form `H̄ δ − g^{-1}Ā`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCertificate {
    pub eigenvalues: Vector,
    pub min_eigenvalue: f64,
    pub positive_semidefinite: bool,
}

pub const PSD_TOLERANCE: f64 = 1e-10;

pub fn psd_certificate(geom: &GraphGeometry) -> Result<PsdCertificate> {
    let kappa = geom.principal_curvatures()?;
    let eig = Vector::from_fn(kappa.len(), |i| geom.mean_curvature - kappa[kappa.len() - 1 - i]);
    let min = eig.min();
    Ok(PsdCertificate {
        eigenvalues: eig,
        min_eigenvalue: min,
        positive_semidefinite: min >= -PSD_TOLERANCE,
    })
}

/// Mean curvature of the level set of `f` through the point, inside
/// `(H^n, b)`, with respect to `∇f/|df|`.
pub fn level_set_mean_curvature_of_jet(j: &Jet2, p: &PolarPoint) -> Result<f64> {
    let fr = Frame::new(j, p)?;
    level_set_from(&fr)
}

fn level_set_from(fr: &Frame) -> Result<f64> {
    let norm = sqrt(fr.df2);
    if !(norm > CRITICAL_GRADIENT) {
        return Err(Error::domain(format!(
            "critical point: |df| = {norm:e} is below {CRITICAL_GRADIENT:e}"
        )));
    }
    Ok((fr.laplacian - fr.hess_gg / fr.df2) / norm)
}

pub fn level_set_mean_curvature(field: &dyn ScalarField, p: &PolarPoint) -> Result<f64> {
    level_set_mean_curvature_of_jet(&field.derivative_jet(p)?, p)
}

/// Pointwise slack in the level-set inequality:
/// `⟨ν,η⟩H̄H − (Scal + n(n−1))/2 − n/(2(n−1)) ⟨ν,η⟩² H²`.
pub fn level_set_gap_of_jet(j: &Jet2, p: &PolarPoint) -> Result<f64> {
    let fr = Frame::new(j, p)?;
    let h_level = level_set_from(&fr)?;
    let geom = geometry_from(&fr, j)?;
    let nf = fr.n as f64;
    let cos_angle = fr.v * sqrt(fr.df2) / fr.w();
    let x = cos_angle * h_level;
    Ok(x * geom.mean_curvature - 0.5 * geom.scal_excess() - nf / (2.0 * (nf - 1.0)) * x * x)
}

pub fn level_set_gap(field: &dyn ScalarField, p: &PolarPoint) -> Result<f64> {
    level_set_gap_of_jet(&field.derivative_jet(p)?, p)
}

/// The 1-form whose `b`-divergence is `V(Scal + n(n−1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassAspectOneForm(pub Vector);

/// `V³Δf df − V³ Hess f(∇f,·) − V²|df|² dV + V²⟨df,dV⟩ df`, before the
/// division by `1 + V²|df|²`.
fn undivided_aspect(fr: &Frame, j: &Jet2) -> Vector {
    let v = fr.v;
    let (v2, v3) = (v * v, v * v * v);
    Vector::from_fn(fr.n, |k| {
        v3 * fr.laplacian * j.gradient[k] - v3 * fr.hess_grad[k] - v2 * fr.df2 * fr.dv[k]
            + v2 * fr.df_dv * j.gradient[k]
    })
}

pub fn mass_aspect_one_form(j: &Jet2, p: &PolarPoint) -> Result<MassAspectOneForm> {
    let fr = Frame::new(j, p)?;
    Ok(MassAspectOneForm(undivided_aspect(&fr, j).scale(1.0 / fr.w2)))
}

/// `div_b ω = (1/√det b) ∂_i(√det b · b^{ij} ω_j)` by central differences of
/// the assembled 1-form.
pub fn mass_aspect_divergence(field: &dyn ScalarField, p: &PolarPoint, step: FdStep) -> Result<f64> {
    p.require_regular()?;
    let n = p.n();
    let mut failure: Option<Error> = None;
    let mut total = 0.0;
    for i in 0..n {
        let x0 = p.coord(i);
        let d = central_first(
            |x| {
                let q = p.with_coord(i, x);
                match density_component(field, &q, i) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            x0,
            step,
        );
        total += d;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let b = metric_b(p)?;
    Ok(total / b.sqrt_det)
}

fn density_component(field: &dyn ScalarField, q: &PolarPoint, i: usize) -> Result<f64> {
    let j = field.derivative_jet(q)?;
    let w = mass_aspect_one_form(&j, q)?;
    let b = metric_b(q)?;
    Ok(b.sqrt_det * b.g_upper[(i, i)] * w.0[i])
}

/// `|div_b ω − V(Scal + n(n−1))|` at a point.
pub fn divergence_identity_residual(field: &dyn ScalarField, p: &PolarPoint) -> Result<f64> {
    divergence_identity_residual_with(field, p, FdStep::default())
}

pub fn divergence_identity_residual_with(
    field: &dyn ScalarField,
    p: &PolarPoint,
    step: FdStep,
) -> Result<f64> {
    let lhs = mass_aspect_divergence(field, p, step)?;
    let geom = scalar_curvature(&field.derivative_jet(p)?, p)?;
    Ok((lhs - geom.potential * geom.scal_excess()).abs())
}
