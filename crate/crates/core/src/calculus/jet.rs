use alloc::format;

use super::field::ScalarField;
use crate::error::{Error, Result};
use crate::fmath::{cosh, sinh};
use crate::hyperbolic::{metric_b, PolarPoint};
use crate::linalg::{Matrix, Vector};

/// Value, coordinate gradient and covariant Hessian (with respect to `b`)
/// of a scalar field at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub gradient: Vector,
    pub hessian: Matrix,
    grad_norm_sq: f64,
    grad_dot_potential: f64,
}

impl Jet2 {
    /// Builds a jet and caches `|df|²_b` and `⟨df, dV⟩_b` for `V = cosh r`.
    /// The Hessian is symmetrized.
    pub fn new(p: &PolarPoint, value: f64, gradient: Vector, hessian: Matrix) -> Result<Jet2> {
        let n = p.n();
        if gradient.len() != n || hessian.dim() != n {
            return Err(Error::domain(format!(
                "jet components do not match dimension {n}"
            )));
        }
        let metric = metric_b(p)?;
        let finite = value.is_finite()
            && gradient.as_slice().iter().all(|x| x.is_finite())
            && hessian.max_abs().is_finite();
        if !finite {
            return Err(Error::non_finite(
                "jet",
                format!("r = {}, angles = {:?}", p.r, p.angles()),
            ));
        }
        let mut norm = 0.0;
        for i in 0..n {
            norm += metric.g_upper[(i, i)] * gradient[i] * gradient[i];
        }
        Ok(Jet2 {
            value,
            gradient,
            hessian: hessian.symmetric_part(),
            grad_norm_sq: norm,
            grad_dot_potential: gradient[0] * sinh(p.r),
        })
    }

    pub fn constant(p: &PolarPoint, value: f64) -> Result<Jet2> {
        let n = p.n();
        Jet2::new(p, value, Vector::zeros(n), Matrix::zeros(n))
    }

    /// Closed-form jet of a radial function: `f'' dr² + f' sinh r cosh r σ`.
    pub fn radial(p: &PolarPoint, f: f64, df: f64, ddf: f64) -> Result<Jet2> {
        let n = p.n();
        let metric = metric_b(p)?;
        let mut grad = Vector::zeros(n);
        grad[0] = df;
        let mut hess = Matrix::zeros(n);
        hess[(0, 0)] = ddf;
        let shape = df * cosh(p.r) / sinh(p.r);
        for a in 1..n {
            hess[(a, a)] = shape * metric.g_lower[(a, a)];
        }
        Jet2::new(p, f, grad, hess)
    }

    /// Same jet with the covariant Hessian replaced.
    pub fn with_hessian(&self, hessian: Matrix) -> Jet2 {
        Jet2 {
            hessian: hessian.symmetric_part(),
            ..*self
        }
    }

    /// Overrides the cached norms without recomputing them. Only useful for
    /// exercising the consistency checks downstream.
    pub fn with_cached_norms(&self, grad_norm_sq: f64, grad_dot_potential: f64) -> Jet2 {
        Jet2 {
            grad_norm_sq,
            grad_dot_potential,
            ..*self
        }
    }

    /// `|df|²_b`.
    pub fn grad_norm_sq(&self) -> f64 {
        self.grad_norm_sq
    }

    /// `⟨df, dV⟩_b` with `V = cosh r`.
    pub fn grad_dot_potential(&self) -> f64 {
        self.grad_dot_potential
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }
}

/// Evaluates the jet of any field.
pub fn jet2(field: &dyn ScalarField, p: &PolarPoint) -> Result<Jet2> {
    field.jet(p)
}
