use alloc::format;
use alloc::sync::Arc;
use core::fmt;

use super::fd::{central_first, central_mixed, central_second, FdStep};
use super::jet::Jet2;
use super::quadrature::{radial_integrate, radial_integrate_offset, RadialQuadrature};
use crate::error::{Error, Result};
use crate::fmath::{asinh, cos, cosh, exp, ln, sinh, sqrt, tanh};
use crate::hyperbolic::{christoffel_b, Dimension, PolarPoint};
use crate::linalg::{Matrix, Vector};

/// A scalar function on (a domain of) `H^n` that can produce second-order jets.
pub trait ScalarField: Send + Sync {
    fn dim(&self) -> Dimension;

    fn value(&self, p: &PolarPoint) -> Result<f64>;

    fn jet(&self, p: &PolarPoint) -> Result<Jet2>;

    /// A jet whose gradient and Hessian are exact but whose value may be a
    /// placeholder; curvature and mass only ever read derivatives.
    fn derivative_jet(&self, p: &PolarPoint) -> Result<Jet2> {
        self.jet(p)
    }

    /// Radial fields let sphere integrals collapse to a single node.
    fn is_radial(&self) -> bool {
        false
    }

    /// Geodesic radius of a horizon sphere on which `|df|` blows up.
    fn horizon(&self) -> Option<f64> {
        None
    }
}

type Profile1 = Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>;

/// Closed-form radial profiles `f(r)`.
#[derive(Clone)]
pub enum RadialKind {
    Constant(f64),
    /// `a e^{−k r}`
    Exponential { a: f64, k: f64 },
    /// `a exp(−((r − center)/width)²)`
    Gaussian { a: f64, center: f64, width: f64 },
    /// `a + b r`
    Linear { a: f64, b: f64 },
    /// `a r²`
    Quadratic { a: f64 },
    /// `a cosh r`
    Cosh { a: f64 },
    /// `a exp(−1/(1 − t²))` with `t = (r − center)/width`, zero for `|t| ≥ 1`.
    CompactBump { a: f64, center: f64, width: f64 },
    /// Any callable returning `[f, f', f'']`.
    Custom(Profile1),
}

impl fmt::Debug for RadialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialKind::Constant(c) => write!(f, "Constant({c})"),
            RadialKind::Exponential { a, k } => write!(f, "Exponential {{ a: {a}, k: {k} }}"),
            RadialKind::Gaussian { a, center, width } => {
                write!(f, "Gaussian {{ a: {a}, center: {center}, width: {width} }}")
            }
            RadialKind::Linear { a, b } => write!(f, "Linear {{ a: {a}, b: {b} }}"),
            RadialKind::Quadratic { a } => write!(f, "Quadratic {{ a: {a} }}"),
            RadialKind::Cosh { a } => write!(f, "Cosh {{ a: {a} }}"),
            RadialKind::CompactBump { a, center, width } => {
                write!(f, "CompactBump {{ a: {a}, center: {center}, width: {width} }}")
            }
            RadialKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl RadialKind {
    /// `[f, f', f'']` at radius `r`.
    pub fn derivatives(&self, r: f64) -> [f64; 3] {
        match *self {
            RadialKind::Constant(c) => [c, 0.0, 0.0],
            RadialKind::Exponential { a, k } => {
                let e = a * exp(-k * r);
                [e, -k * e, k * k * e]
            }
            RadialKind::Gaussian { a, center, width } => {
                let t = (r - center) / width;
                let e = a * exp(-t * t);
                let d1 = -2.0 * t / width;
                [e, e * d1, e * (d1 * d1 - 2.0 / (width * width))]
            }
            RadialKind::Linear { a, b } => [a + b * r, b, 0.0],
            RadialKind::Quadratic { a } => [a * r * r, 2.0 * a * r, 2.0 * a],
            RadialKind::Cosh { a } => [a * cosh(r), a * sinh(r), a * cosh(r)],
            RadialKind::CompactBump { a, center, width } => {
                let t = (r - center) / width;
                let q = 1.0 - t * t;
                if q <= 0.0 {
                    return [0.0, 0.0, 0.0];
                }
                let e = a * exp(-1.0 / q);
                let g1 = -2.0 * t / (width * q * q);
                let g2 = -2.0 * (q + 4.0 * t * t) / (width * width * q * q * q);
                [e, e * g1, e * (g2 + g1 * g1)]
            }
            RadialKind::Custom(ref f) => f(r),
        }
    }
}

/// A field depending on `r` only, with closed-form jets.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    dim: Dimension,
    kind: RadialKind,
}

impl RadialProfile {
    pub fn new(dim: Dimension, kind: RadialKind) -> Self {
        RadialProfile { dim, kind }
    }

    pub fn constant(dim: Dimension, c: f64) -> Self {
        Self::new(dim, RadialKind::Constant(c))
    }

    pub fn kind(&self) -> &RadialKind {
        &self.kind
    }

    pub fn derivatives(&self, r: f64) -> [f64; 3] {
        self.kind.derivatives(r)
    }
}

impl ScalarField for RadialProfile {
    fn dim(&self) -> Dimension {
        self.dim
    }

    fn value(&self, p: &PolarPoint) -> Result<f64> {
        Ok(self.kind.derivatives(p.r)[0])
    }

    fn jet(&self, p: &PolarPoint) -> Result<Jet2> {
        let [f, df, ddf] = self.kind.derivatives(p.r);
        Jet2::radial(p, f, df, ddf)
    }

    fn is_radial(&self) -> bool {
        true
    }
}

type Profile2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A field `f(r, θ₁)` differentiated numerically. For `n = 2` the first
/// angle is the azimuth.
#[derive(Clone)]
pub struct AxisymmetricField {
    dim: Dimension,
    f: Profile2,
    step: FdStep,
}

impl fmt::Debug for AxisymmetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxisymmetricField")
            .field("dim", &self.dim)
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

impl AxisymmetricField {
    pub fn new(dim: Dimension, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        AxisymmetricField {
            dim,
            f: Arc::new(f),
            step: FdStep::default(),
        }
    }

    pub fn with_step(mut self, step: FdStep) -> Self {
        self.step = step;
        self
    }

    /// `a exp(−((r − c)/w)²)(1 + tilt cos θ₁)`.
    pub fn tilted_bump(dim: Dimension, a: f64, center: f64, width: f64, tilt: f64) -> Self {
        Self::new(dim, move |r, t| {
            let u = (r - center) / width;
            a * exp(-u * u) * (1.0 + tilt * cos(t))
        })
    }

    /// `a tanh r cos θ₁`: level sets are totally geodesic hyperplanes.
    pub fn klein_slope(dim: Dimension, a: f64) -> Self {
        Self::new(dim, move |r, t| a * tanh(r) * cos(t))
    }

    /// A radial profile routed through the numerical path.
    pub fn from_radial(profile: &RadialProfile) -> Self {
        let kind = profile.kind.clone();
        Self::new(profile.dim, move |r, _| kind.derivatives(r)[0])
    }

    pub fn eval(&self, r: f64, theta: f64) -> f64 {
        (self.f)(r, theta)
    }
}

impl ScalarField for AxisymmetricField {
    fn dim(&self) -> Dimension {
        self.dim
    }

    fn value(&self, p: &PolarPoint) -> Result<f64> {
        Ok((self.f)(p.r, p.coord(1)))
    }

    fn jet(&self, p: &PolarPoint) -> Result<Jet2> {
        let christ = christoffel_b(p)?;
        let n = p.n();
        let (r, t) = (p.r, p.coord(1));
        let f = &self.f;
        let s = self.step;
        let mut grad = Vector::zeros(n);
        let mut part = Matrix::zeros(n);
        grad[0] = central_first(|x| f(x, t), r, s);
        grad[1] = central_first(|y| f(r, y), t, s);
        part[(0, 0)] = central_second(|x| f(x, t), r, s);
        part[(1, 1)] = central_second(|y| f(r, y), t, s);
        let m = central_mixed(|x, y| f(x, y), r, t, s);
        part[(0, 1)] = m;
        part[(1, 0)] = m;
        let hess = christ.covariant_hessian(&grad, &part);
        Jet2::new(p, f(r, t), grad, hess)
    }
}

/// Another field plus a constant height shift.
#[derive(Clone, Debug)]
pub struct Shifted<F> {
    pub inner: F,
    pub shift: f64,
}

impl<F: ScalarField> ScalarField for Shifted<F> {
    fn dim(&self) -> Dimension {
        self.inner.dim()
    }

    fn value(&self, p: &PolarPoint) -> Result<f64> {
        Ok(self.inner.value(p)? + self.shift)
    }

    fn jet(&self, p: &PolarPoint) -> Result<Jet2> {
        let mut j = self.inner.jet(p)?;
        j.value += self.shift;
        Ok(j)
    }

    fn derivative_jet(&self, p: &PolarPoint) -> Result<Jet2> {
        self.inner.derivative_jet(p)
    }

    fn is_radial(&self) -> bool {
        self.inner.is_radial()
    }

    fn horizon(&self) -> Option<f64> {
        self.inner.horizon()
    }
}

/// Slope of a height function in the area coordinate `ρ = sinh r`, with an
/// inverse square root singularity at `ρ₀`.
pub trait AreaSlope: Send + Sync {
    fn dim(&self) -> Dimension;

    fn rho0(&self) -> f64;

    /// `[∂f/∂ρ, ∂²f/∂ρ²]` at `ρ = ρ₀ + delta`; `delta` is passed separately
    /// so that cancellation near the horizon can be avoided.
    fn slope(&self, rho: f64, delta: f64) -> [f64; 2];
}

/// Height function `f(ρ) = ∫_{ρ₀}^{ρ} ∂f/∂ρ`, optionally plus a radial bump
/// supported away from the horizon.
#[derive(Clone, Debug)]
pub struct HorizonProfile<S> {
    slope: S,
    bump: Option<RadialKind>,
    panels: usize,
    points: usize,
}

/// Beyond this offset from the horizon the height integral switches from
/// the square-root substitution to a rule in `ln ρ`.
const NEAR_OFFSET: f64 = 16.0;

impl<S: AreaSlope> HorizonProfile<S> {
    pub fn new(slope: S) -> Self {
        HorizonProfile {
            slope,
            bump: None,
            panels: 16,
            points: 16,
        }
    }

    pub fn with_bump(mut self, bump: RadialKind) -> Self {
        self.bump = Some(bump);
        self
    }

    /// Quadrature resolution of the height integral.
    pub fn with_resolution(mut self, panels: usize, points: usize) -> Self {
        self.panels = panels;
        self.points = points;
        self
    }

    pub fn slope_fn(&self) -> &S {
        &self.slope
    }

    pub fn bump(&self) -> Option<&RadialKind> {
        self.bump.as_ref()
    }

    pub fn rho0(&self) -> f64 {
        self.slope.rho0()
    }

    pub fn horizon_r(&self) -> f64 {
        asinh(self.slope.rho0())
    }

    /// `(ρ − ρ₀)^{1/2} ∂f/∂ρ`, bounded up to the horizon.
    pub fn regularized_slope(&self, rho: f64) -> Result<f64> {
        let delta = self.offset(rho)?;
        Ok(sqrt(delta) * self.slope.slope(rho, delta)[0])
    }

    fn offset(&self, rho: f64) -> Result<f64> {
        let delta = rho - self.slope.rho0();
        if delta > 0.0 && rho.is_finite() {
            Ok(delta)
        } else {
            Err(Error::domain(format!(
                "rho = {rho} is not outside the horizon rho0 = {}",
                self.slope.rho0()
            )))
        }
    }

    /// Height of the unperturbed profile at area radius `ρ ≥ ρ₀`.
    pub fn height_at_rho(&self, rho: f64) -> Result<f64> {
        let rho0 = self.slope.rho0();
        if rho == rho0 {
            return Ok(0.0);
        }
        self.offset(rho)?;
        let near_end = rho.min(rho0 + NEAR_OFFSET);
        let near = RadialQuadrature::horizon(rho0, near_end, self.panels, self.points)?;
        let mut total = radial_integrate_offset(&near, |x, d| Ok(self.slope.slope(x, d)[0]))?;
        if rho > near_end {
            let far = RadialQuadrature::gauss(ln(near_end), ln(rho), self.panels, self.points)?;
            total += radial_integrate(&far, |t| {
                let x = exp(t);
                Ok(self.slope.slope(x, x - rho0)[0] * x)
            })?;
        }
        Ok(total)
    }

    fn bump_derivatives(&self, r: f64) -> [f64; 3] {
        self.bump
            .as_ref()
            .map_or([0.0; 3], |b| b.derivatives(r))
    }

    /// `[f, ∂f/∂r, ∂²f/∂r²]` including the bump.
    pub fn radial_derivatives(&self, r: f64, with_value: bool) -> Result<[f64; 3]> {
        let rho = sinh(r);
        let delta = self.offset(rho)?;
        let v = cosh(r);
        let [f1, f2] = self.slope.slope(rho, delta);
        let bump = self.bump_derivatives(r);
        let value = if with_value {
            self.height_at_rho(rho)? + bump[0]
        } else {
            0.0
        };
        Ok([value, f1 * v + bump[1], f2 * v * v + f1 * rho + bump[2]])
    }
}

impl<S: AreaSlope> ScalarField for HorizonProfile<S> {
    fn dim(&self) -> Dimension {
        self.slope.dim()
    }

    fn value(&self, p: &PolarPoint) -> Result<f64> {
        Ok(self.height_at_rho(sinh(p.r))? + self.bump_derivatives(p.r)[0])
    }

    fn jet(&self, p: &PolarPoint) -> Result<Jet2> {
        let [f, df, ddf] = self.radial_derivatives(p.r, true)?;
        Jet2::radial(p, f, df, ddf)
    }

    fn derivative_jet(&self, p: &PolarPoint) -> Result<Jet2> {
        let [f, df, ddf] = self.radial_derivatives(p.r, false)?;
        Jet2::radial(p, f, df, ddf)
    }

    fn is_radial(&self) -> bool {
        true
    }

    fn horizon(&self) -> Option<f64> {
        Some(self.horizon_r())
    }
}
