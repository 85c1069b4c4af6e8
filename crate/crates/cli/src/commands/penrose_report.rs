//! The lower bound for the mass of a graph with a horizon, along with the
//! boundary chain on the configured surfaces.

use ahgraph_core::boundary::{
    area, boundary_functional, h_convexity_margin, inner_ball_radius, penrose_rhs, surface_geometry,
    PenroseVariant, RadialSurface, RadiusFunction, HYPOTHESIS_SLACK,
};
use ahgraph_core::calculus::{ScalarField, SphereQuadrature};
use ahgraph_core::graph::scalar_curvature;
use ahgraph_core::hyperbolic::unit_sphere_volume;
use ahgraph_core::mass::{mass_decomposition, mass_functional};
use ahgraph_core::hyperbolic::StaticPotentialId;
use ahgraph_core::{PolarPoint, Result};

use super::{checked, Ctx};
use crate::config::{FieldSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = Ctx::new(cfg)?;
    ctx.require_inequality("penrose-report")?;
    let built = ctx.field(FieldSpec::Ads { mass: 1.0 })?;
    let Some(params) = built.ads else {
        return Err(CliError::config(format!(
            "penrose-report needs a field with a horizon, got '{}'",
            built.spec.name()
        )));
    };
    let field = built.field.as_ref();
    let tol = &ctx.tol;
    let dim = ctx.dim;
    let nf = dim.as_f64();
    let mut rep = Report::new("penrose-report");

    // Hypotheses on the field and on the horizon sphere.
    let r0 = params.rho0().asinh();
    let scal_min = scal_sample_minimum(field, r0, cfg.n);
    let scal_ok = match checked(&mut rep, "hypotheses", "min Scal + n(n-1)", scal_min) {
        Some(s) => rep.flag("hypotheses", "min Scal + n(n-1)", s, 0.0, tol.scal),
        None => false,
    };
    let horizon = RadialSurface::new(dim, RadiusFunction::Constant(params.rho0()))?;
    let q = ctx.boundary_rule();
    let horizon_h = 1.0 / r0.tanh() * (nf - 1.0);
    rep.flag("hypotheses", "horizon H", horizon_h, 0.0, HYPOTHESIS_SLACK);
    if let Some(margin) = checked(&mut rep, "hypotheses", "horizon h-convexity margin", h_convexity_margin(&horizon, &q)) {
        rep.flag("hypotheses", "horizon h-convexity margin", margin, 0.0, HYPOTHESIS_SLACK);
    }

    let radii = ctx.radii();
    let opts = ctx.mass_options();
    let h_phi = checked(
        &mut rep,
        "mass",
        "H_Phi(V_0)",
        mass_functional(field, StaticPotentialId::LAPSE, &radii, &opts),
    );
    if let Some((h, e)) = h_phi {
        rep.info("mass", "H_Phi(V_0)", h);
        rep.info("mass", "H_Phi(V_0) extrapolation error", e);
    }
    let dec = checked(
        &mut rep,
        "mass",
        "interior + boundary",
        mass_decomposition(field, &horizon, &radii, &opts),
    );
    if let Some(d) = &dec {
        rep.info("mass", "interior integral", d.interior);
        rep.info("mass", "boundary functional", d.boundary);
        rep.at_most("mass", "decomposition relative mismatch", d.relative_mismatch(), tol.decomposition);
        if scal_ok {
            rep.at_least("mass", "interior >= 0", d.interior, 0.0, tol.inequality * d.boundary.abs());
        }
    }

    let omega = unit_sphere_volume(dim);
    let a = omega * params.rho0().powf(nf - 1.0);
    rep.info("horizon", "area", a);
    rep.info("horizon", "inner radius", r0);
    for v in PenroseVariant::ALL {
        let Some(rhs) = checked(&mut rep, "horizon", v.name(), penrose_rhs(a, r0, dim, v)) else {
            continue;
        };
        let case = format!("horizon/{}", v.name());
        rep.info(&case, "rhs", rhs);
        if !scal_ok {
            rep.hypothesis(&case, "H_Phi >= rhs", f64::NAN, "Scal < -n(n-1) somewhere on the sample");
            continue;
        }
        if let Some(d) = &dec {
            rep.at_least(&case, "interior + boundary >= rhs", d.total, rhs, tol.inequality);
            rep.info(&case, "relative gap", (d.total - rhs) / rhs);
        }
        if let Some((h, _)) = h_phi {
            rep.at_least(&case, "H_Phi >= rhs", h, rhs, tol.mass_relative);
        }
    }

    for (name, s) in ctx.surfaces()? {
        surface_chain(&mut rep, &name, &s, &q, tol.inequality, tol.equality);
    }
    Ok(rep)
}

/// Minimum of `Scal + n(n−1)` over radii accumulating at the horizon.
fn scal_sample_minimum(field: &dyn ScalarField, r0: f64, n: usize) -> Result<f64> {
    let mut lo = f64::INFINITY;
    for k in 0..24 {
        let r = r0 + 1e-3 * 1.5f64.powi(k);
        for t in [0.5, 1.5, 2.5] {
            let mut angles = vec![1.0; n - 1];
            angles[0] = t;
            let p = PolarPoint::new(field.dim(), r, &angles)?;
            lo = lo.min(scalar_curvature(&field.derivative_jet(&p)?, &p)?.scal_excess());
        }
    }
    Ok(lo)
}

fn min_mean_curvature(s: &RadialSurface, q: &SphereQuadrature) -> Result<f64> {
    let axial = if s.is_axisymmetric() {
        SphereQuadrature::axial(s.dim(), q.order())
    } else {
        None
    };
    let rule = axial.as_ref().unwrap_or(q);
    let mut lo = f64::INFINITY;
    for (angles, _) in rule.iter() {
        lo = lo.min(surface_geometry(s, angles)?.mean_curvature);
    }
    Ok(lo)
}

/// `∫HV ≥ rhs` for each variant, with hypothesis flags.
pub fn surface_chain(rep: &mut Report, name: &str, s: &RadialSurface, q: &SphereQuadrature, tol: f64, tol_eq: f64) {
    let terms = boundary_functional(s, q).and_then(|hv| {
        Ok((hv, area(s, q)?, h_convexity_margin(s, q)?, min_mean_curvature(s, q)?))
    });
    let Some((hv, a, margin, hmin)) = checked(rep, name, "boundary data", terms) else {
        return;
    };
    let r0 = inner_ball_radius(s);
    rep.info(name, "int HV", hv);
    rep.info(name, "area", a);
    rep.info(name, "inner radius", r0);
    let convex = rep.flag(name, "h-convexity margin", margin, 0.0, HYPOTHESIS_SLACK);
    let mean_convex = rep.flag(name, "min H", hmin, 0.0, HYPOTHESIS_SLACK);
    for v in PenroseVariant::ALL {
        let case = format!("{name}/{}", v.name());
        let Some(rhs) = checked(rep, &case, "rhs", penrose_rhs(a, r0, s.dim(), v)) else {
            continue;
        };
        let holds = match v {
            PenroseVariant::Graph => convex,
            _ => mean_convex,
        };
        if !holds {
            let why = if v == PenroseVariant::Graph { "surface is not h-convex" } else { "H < 0 somewhere" };
            rep.hypothesis(&case, "int HV >= rhs", hv, why);
            continue;
        }
        rep.at_least(&case, "int HV >= rhs", hv, rhs, tol);
        if v == PenroseVariant::Graph && s.constant_radius().is_some() {
            rep.compare(&case, "sphere equality", hv, rhs, true, tol_eq);
        }
    }
}
