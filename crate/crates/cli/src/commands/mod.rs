//! One module per subcommand. Each returns an ordered [`Report`].

pub mod ads_check;
pub mod boundary_report;
pub mod identity_check;
pub mod mass;
pub mod matrix_fuzz;
pub mod penrose_report;

use ahgraph_core::ads::{height_profile, ramped_profile, AdsParams, MassRamp};
use ahgraph_core::boundary::{sample_surfaces, RadialSurface, RadiusFunction};
use ahgraph_core::calculus::{
    AxisymmetricField, FdStep, RadialKind, RadialProfile, ScalarField, SphereQuadrature,
};
use ahgraph_core::mass::MassOptions;
use ahgraph_core::{Dimension, Error};

use crate::config::{FieldSpec, RunConfig, SurfaceSpec, Tolerances};
use crate::error::{CliError, CliResult};
use crate::report::{Relation, Report};

/// Settings shared by every command, resolved once.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub tol: Tolerances,
    pub dim: Dimension,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a RunConfig) -> CliResult<Self> {
        Ok(Ctx {
            cfg,
            tol: cfg.tol(),
            dim: Dimension::new(cfg.n)?,
        })
    }

    /// Rejects dimensions where the inequalities are undefined.
    pub fn require_inequality(&self, command: &str) -> CliResult<()> {
        if self.cfg.n < 3 {
            return Err(CliError::config(format!("{command} needs n >= 3, got n = {}", self.cfg.n)));
        }
        Ok(())
    }

    pub fn mass_options(&self) -> MassOptions {
        let q = &self.cfg.quadrature;
        MassOptions {
            sphere_order: q.sphere_order,
            radial_panels: q.radial_panels,
            radial_points: q.radial_points,
            r_max: self.cfg.r_max.asinh(),
        }
    }

    /// The radii ladder as geodesic radii.
    pub fn radii(&self) -> Vec<f64> {
        self.cfg.radii.iter().map(|s| s.asinh()).collect()
    }

    pub fn step(&self) -> FdStep {
        FdStep::new(self.cfg.quadrature.fd_step, self.cfg.quadrature.richardson)
    }

    pub fn boundary_rule(&self) -> SphereQuadrature {
        SphereQuadrature::new(self.dim, self.cfg.quadrature.boundary_order)
    }

    pub fn field(&self, default: FieldSpec) -> CliResult<Field> {
        let spec = self.cfg.field.clone().unwrap_or(default);
        build_field(&spec, self.dim, self)
    }

    pub fn surfaces(&self) -> CliResult<Vec<(String, RadialSurface)>> {
        build_surfaces(&self.cfg.surface, self.dim)
    }
}

/// A constructed field together with what is known about it in closed form.
pub struct Field {
    pub spec: FieldSpec,
    pub field: Box<dyn ScalarField>,
    pub ads: Option<AdsParams>,
    /// Mass at infinity when it is known exactly.
    pub total_mass: Option<f64>,
}

fn build_field(spec: &FieldSpec, dim: Dimension, ctx: &Ctx) -> CliResult<Field> {
    let q = &ctx.cfg.quadrature;
    let ads = |m: f64| -> CliResult<AdsParams> {
        if dim.get() < 3 {
            return Err(CliError::config("AdS fields need n >= 3"));
        }
        Ok(AdsParams::new(dim, m)?)
    };
    let radial = |kind: RadialKind| -> Box<dyn ScalarField> { Box::new(RadialProfile::new(dim, kind)) };
    let (field, params, total): (Box<dyn ScalarField>, _, _) = match *spec {
        FieldSpec::Ads { mass } => {
            let p = ads(mass)?;
            let h = height_profile(p).with_resolution(q.height_panels, q.height_points);
            (Box::new(h), Some(p), Some(mass))
        }
        FieldSpec::RampedAds { mass, amount, width } => {
            let p = ads(mass)?;
            let h = ramped_profile(p, MassRamp { amount, width })?
                .with_resolution(q.height_panels, q.height_points);
            (Box::new(h), Some(p), Some(mass + amount))
        }
        FieldSpec::BumpedAds { mass, amplitude, offset, width } => {
            let p = ads(mass)?;
            let center = p.rho0().asinh() + offset;
            let h = height_profile(p)
                .with_bump(RadialKind::Gaussian { a: amplitude, center, width })
                .with_resolution(q.height_panels, q.height_points);
            (Box::new(h), Some(p), Some(mass))
        }
        FieldSpec::Exponential { a, k } => (radial(RadialKind::Exponential { a, k }), None, None),
        FieldSpec::Gaussian { a, center, width } => {
            (radial(RadialKind::Gaussian { a, center, width }), None, None)
        }
        FieldSpec::Linear { a, b } => (radial(RadialKind::Linear { a, b }), None, None),
        FieldSpec::Cosh { a } => (radial(RadialKind::Cosh { a }), None, None),
        FieldSpec::CompactBump { a, center, width } => {
            (radial(RadialKind::CompactBump { a, center, width }), None, None)
        }
        FieldSpec::TiltedBump { a, center, width, tilt } => (
            Box::new(AxisymmetricField::tilted_bump(dim, a, center, width, tilt).with_step(ctx.step())),
            None,
            None,
        ),
        FieldSpec::Zero => (Box::new(RadialProfile::constant(dim, 0.0)), None, Some(0.0)),
    };
    Ok(Field {
        spec: spec.clone(),
        field,
        ads: params,
        total_mass: total,
    })
}

fn build_surfaces(spec: &SurfaceSpec, dim: Dimension) -> CliResult<Vec<(String, RadialSurface)>> {
    let one = |name: &str, f: RadiusFunction| -> CliResult<Vec<(String, RadialSurface)>> {
        Ok(vec![(name.to_string(), RadialSurface::new(dim, f)?)])
    };
    match spec {
        SurfaceSpec::Suite => Ok(sample_surfaces(dim)
            .into_iter()
            .map(|(name, s)| (name.to_string(), s))
            .collect()),
        SurfaceSpec::Sphere { rho } => one("sphere", RadiusFunction::Constant(*rho)),
        SurfaceSpec::CosSeries { coefficients } => {
            one("cos-series", RadiusFunction::CosSeries(coefficients.clone()))
        }
        SurfaceSpec::OffCenter { radius, offset } => one(
            "off-center",
            RadiusFunction::OffCenterSphere { radius: *radius, offset: *offset },
        ),
        SurfaceSpec::Tilted { scale, eps } => {
            one("tilted", RadiusFunction::Tilted { scale: *scale, eps: *eps })
        }
    }
}

/// Turns a failed computation into report rows; `None` means nothing to judge.
pub fn checked<T>(rep: &mut Report, case: &str, quantity: &str, r: ahgraph_core::Result<T>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(Error::Hypothesis(msg)) => {
            rep.hypothesis(case, quantity, f64::NAN, &msg);
            None
        }
        Err(e @ Error::Consistency { mismatch, tolerance, .. }) => {
            rep.push(case, quantity, mismatch, None, mismatch, Relation::AtMost, tolerance);
            rep.annotate(&e.to_string());
            None
        }
        Err(e) => {
            rep.failure(case, quantity, &e.to_string());
            None
        }
    }
}

/// A short case label for a radius.
pub fn at_rho(rho: f64) -> String {
    format!("rho={rho:.6}")
}
