//! Anti-de Sitter Schwarzschild spatial slices as graphs over `H^n`.
//!
//! The slice `dρ²/D + ρ²σ` with `D = 1 + ρ² − 2μ(ρ)/ρ^{n−2}` is the graph of
//! `f(ρ)` with `V² (∂_ρ f)² = 2μρ^{2−n} / (D V²)`. With constant `μ = m` this
//! is the reference family; a smooth mass ramp gives test data whose scalar
//! curvature excess is known in closed form.

use alloc::format;

use crate::calculus::{AreaSlope, HorizonProfile};
use crate::error::{Error, Result};
use crate::fmath::{exp, expm1, ln_1p, powi, sqrt};
use crate::hyperbolic::{round_metric_diagonal, Dimension};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdsParams {
    dim: Dimension,
    m: f64,
    rho0: f64,
}

impl AdsParams {
    pub fn new(dim: Dimension, m: f64) -> Result<Self> {
        let rho0 = horizon_radius(m, dim)?;
        Ok(AdsParams { dim, m, rho0 })
    }

    pub fn from_horizon(dim: Dimension, rho0: f64) -> Result<Self> {
        if !(rho0 > 0.0 && rho0.is_finite()) {
            return Err(Error::domain(format!("horizon radius {rho0} must be positive")));
        }
        dim.require_inequality()?;
        Ok(AdsParams {
            dim,
            m: mass_from_horizon(rho0, dim),
            rho0,
        })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    /// `1 + ρ² − 2m/ρ^{n−2}`.
    pub fn lapse_sq(&self, rho: f64) -> f64 {
        1.0 + rho * rho - 2.0 * self.m / powi(rho, self.dim.get() as i32 - 2)
    }
}

fn horizon_residual(rho: f64, n: usize) -> f64 {
    powi(rho, n as i32 - 2) + powi(rho, n as i32)
}

/// Positive root of `1 + ρ² = 2m/ρ^{n−2}`.
pub fn horizon_radius(m: f64, dim: Dimension) -> Result<f64> {
    dim.require_inequality()?;
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::domain(format!("mass {m} must be positive")));
    }
    let n = dim.get();
    let target = 2.0 * m;
    let (mut lo, mut hi) = (0.0, 1.0 + target);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if horizon_residual(mid, n) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let mut rho = 0.5 * (lo + hi);
    let nf = n as f64;
    for _ in 0..3 {
        let g = horizon_residual(rho, n) - target;
        let dg = (nf - 2.0) * powi(rho, n as i32 - 3) + nf * powi(rho, n as i32 - 1);
        let next = rho - g / dg;
        if !(next > 0.0) {
            break;
        }
        rho = next;
    }
    Ok(rho)
}

/// `½(ρ₀^{n−2} + ρ₀^n)`.
pub fn mass_from_horizon(rho0: f64, dim: Dimension) -> f64 {
    0.5 * horizon_residual(rho0, dim.get())
}

/// Smooth mass ramp `μ = m + amount (1 − exp(−((ρ−ρ₀)/width)²))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassRamp {
    pub amount: f64,
    pub width: f64,
}

impl MassRamp {
    /// `[μ − m, μ']` at offset `delta` from the horizon.
    fn excess(&self, delta: f64) -> [f64; 2] {
        let t = delta / self.width;
        [
            -self.amount * expm1(-t * t),
            self.amount * 2.0 * t / self.width * exp(-t * t),
        ]
    }
}

/// `∂f/∂ρ` and `∂²f/∂ρ²` of the (possibly ramped) slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdsSlope {
    params: AdsParams,
    ramp: Option<MassRamp>,
}

impl AdsSlope {
    pub fn new(params: AdsParams) -> Self {
        AdsSlope { params, ramp: None }
    }

    /// Ramped slice; validates `μ > 0` and `D > 0` on a geometric scan.
    pub fn with_ramp(params: AdsParams, ramp: MassRamp) -> Result<Self> {
        if !(ramp.width > 0.0 && ramp.width.is_finite() && ramp.amount.is_finite()) {
            return Err(Error::domain("ramp width must be positive and amount finite"));
        }
        if !(params.m + ramp.amount > 0.0) {
            return Err(Error::domain("ramped mass must stay positive"));
        }
        let s = AdsSlope {
            params,
            ramp: Some(ramp),
        };
        for k in 0..=2400 {
            let delta = params.rho0 * exp(-18.0 + 0.01 * k as f64);
            let d = s.lapse_sq(params.rho0 + delta, delta);
            if !(d > 0.0) {
                return Err(Error::domain(format!(
                    "ramped slice develops a second horizon near rho = {}",
                    params.rho0 + delta
                )));
            }
        }
        Ok(s)
    }

    pub fn params(&self) -> &AdsParams {
        &self.params
    }

    pub fn ramp(&self) -> Option<&MassRamp> {
        self.ramp.as_ref()
    }

    /// Mass function `μ(ρ)` and `μ'(ρ)`.
    pub fn mass_function(&self, delta: f64) -> [f64; 2] {
        let [e, de] = self.ramp.map_or([0.0; 2], |r| r.excess(delta));
        [self.params.m + e, de]
    }

    /// `D = 1 + ρ² − 2μρ^{2−n}`, evaluated without cancellation near `ρ₀`.
    pub fn lapse_sq(&self, rho: f64, delta: f64) -> f64 {
        let p = &self.params;
        let k = 2 - p.dim.get() as i32;
        let kf = f64::from(k);
        let [mu, _] = self.mass_function(delta);
        let near = delta * (2.0 * p.rho0 + delta)
            - 2.0 * p.m * powi(p.rho0, k) * expm1(kf * ln_1p(delta / p.rho0));
        near - 2.0 * (mu - p.m) * powi(rho, k)
    }

    /// The excess `Scal + n(n−1) = 2(n−1)μ'/ρ^{n−1}`.
    pub fn scalar_excess(&self, rho: f64) -> f64 {
        let n = self.params.dim.get();
        let [_, dmu] = self.mass_function(rho - self.params.rho0);
        2.0 * (n as f64 - 1.0) * dmu / powi(rho, n as i32 - 1)
    }

    /// Mass parameter seen at infinity.
    pub fn total_mass(&self) -> f64 {
        self.params.m + self.ramp.map_or(0.0, |r| r.amount)
    }
}

impl AreaSlope for AdsSlope {
    fn dim(&self) -> Dimension {
        self.params.dim
    }

    fn rho0(&self) -> f64 {
        self.params.rho0
    }

    fn slope(&self, rho: f64, delta: f64) -> [f64; 2] {
        let n = self.params.dim.get() as i32;
        let nf = f64::from(n);
        let [mu, dmu] = self.mass_function(delta);
        let d = self.lapse_sq(rho, delta);
        let v2 = 1.0 + rho * rho;
        let rk = powi(rho, 2 - n);
        let q = 2.0 * mu * rk / (d * v2);
        let f1 = sqrt(q / v2);
        let dd = 2.0 * rho - 2.0 * dmu * rk + 2.0 * (nf - 2.0) * mu * rk / rho;
        let log_q = dmu / mu + (2.0 - nf) / rho - dd / d - 2.0 * rho / v2;
        [f1, f1 * (0.5 * log_q - rho / v2)]
    }
}

/// Height function of the Schwarzschild slice with parameters `params`.
pub fn height_profile(params: AdsParams) -> HorizonProfile<AdsSlope> {
    HorizonProfile::new(AdsSlope::new(params))
}

/// Height function of a slice whose mass ramps from `m` to `m + ramp.amount`.
pub fn ramped_profile(params: AdsParams, ramp: MassRamp) -> Result<HorizonProfile<AdsSlope>> {
    Ok(HorizonProfile::new(AdsSlope::with_ramp(params, ramp)?))
}

/// Closed-form extrinsic data of the Schwarzschild graph at area radius `ρ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdsShapeData {
    /// Radial eigenvalue first, then the `n−1` tangential ones.
    pub principal_curvatures: Vector,
    pub mean_curvature: f64,
    /// Coefficient of `dρ²` in `H̄g − Ā`.
    pub form_radial: f64,
    /// Coefficient of `σ` in `H̄g − Ā`.
    pub form_angular: f64,
}

impl AdsShapeData {
    /// `H̄g − Ā` in the `(ρ, angles)` chart.
    pub fn form(&self, angles: &[f64]) -> Matrix {
        let n = angles.len() + 1;
        let sigma = round_metric_diagonal(n, angles);
        let mut m = Matrix::zeros(n);
        m[(0, 0)] = self.form_radial;
        for a in 1..n {
            m[(a, a)] = self.form_angular * sigma[a - 1];
        }
        m
    }
}

pub fn ads_shape_data(params: &AdsParams, rho: f64) -> Result<AdsShapeData> {
    if !(rho > params.rho0 && rho.is_finite()) {
        return Err(Error::domain(format!(
            "rho = {rho} is not outside the horizon rho0 = {}",
            params.rho0
        )));
    }
    let n = params.dim.get();
    let nf = n as f64;
    let k = sqrt(2.0 * params.m) * crate::fmath::powf(rho, -0.5 * nf);
    let mut curv = Vector::zeros(n);
    curv[0] = -0.5 * (nf - 2.0) * k;
    for a in 1..n {
        curv[a] = k;
    }
    let d = params.lapse_sq(rho);
    Ok(AdsShapeData {
        principal_curvatures: curv,
        mean_curvature: 0.5 * nf * k,
        form_radial: (nf - 1.0) * k / d,
        form_angular: 0.5 * (nf - 2.0) * k * rho * rho,
    })
}
