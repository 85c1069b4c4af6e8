//! Boundary identities and estimates on the configured surfaces.

use ahgraph_core::boundary::{
    alexandrov_fenchel_check, flux_bound_check, hoffman_spruck_check, int_hv_terms, surface_geometry,
    RadialSurface, HYPOTHESIS_SLACK,
};
use ahgraph_core::calculus::SphereQuadrature;
use ahgraph_core::Result;

use super::penrose_report::surface_chain;
use super::{checked, Ctx};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = Ctx::new(cfg)?;
    ctx.require_inequality("boundary-report")?;
    let tol = &ctx.tol;
    let q = ctx.boundary_rule();
    let mut rep = Report::new("boundary-report");
    for (name, s) in ctx.surfaces()? {
        let name = name.as_str();
        if let Some(t) = checked(&mut rep, name, "int HV identity", int_hv_terms(&s, &q)) {
            rep.info(name, "euclidean mean curvature integral", t.euclid_mean);
            rep.info(name, "flux term", t.flux);
            rep.info(name, "correction term", t.correction);
            rep.at_most(name, "int HV identity residual", t.residual, tol.int_hv);
        }
        if let Some(m) = checked(&mut rep, name, "transform", transform_checks(&s, &q)) {
            rep.at_most(name, "max Euclidean transform mismatch", m.0, tol.transform);
            rep.at_most(name, "max | |grad_T V|^2 + <dV,nu>^2 - rho^2 | / rho^2", m.1, tol.transform);
        }
        if let Some(f) = checked(&mut rep, name, "flux bound", flux_bound_check(&s, &q)) {
            rep.at_least(name, "flux >= sinh r0 |bd|", f.lhs, f.rhs, tol.inequality);
            rep.flag(name, "Borisenko minimum", f.borisenko_min, 0.0, HYPOTHESIS_SLACK);
            rep.compare(name, "n vol(V) vs flux", f.volume_form, f.lhs, true, tol.int_hv);
        }
        if let Some(af) = checked(&mut rep, name, "Alexandrov-Fenchel", alexandrov_fenchel_check(&s, &q)) {
            rep.at_least(name, "Alexandrov-Fenchel", af.mean_integral, af.bound, tol.inequality);
        }
        if let Some((lhs, rhs)) = checked(&mut rep, name, "Hoffman-Spruck", hoffman_spruck_check(&s, &q)) {
            rep.at_least(name, "Hoffman-Spruck", rhs, lhs, tol.inequality);
        }
        surface_chain(&mut rep, name, &s, &q, tol.inequality, tol.equality);
    }
    Ok(rep)
}

/// Largest transform mismatch and the relative error of the split of `dV`.
fn transform_checks(s: &RadialSurface, q: &SphereQuadrature) -> Result<(f64, f64)> {
    let axial = if s.is_axisymmetric() {
        SphereQuadrature::axial(s.dim(), q.order())
    } else {
        None
    };
    let rule = axial.as_ref().unwrap_or(q);
    let (mut worst, mut split) = (0.0_f64, 0.0_f64);
    for (angles, _) in rule.iter() {
        let g = surface_geometry(s, angles)?;
        worst = worst.max(g.transform_mismatch);
        let rho2 = g.rho * g.rho;
        split = split.max((g.grad_t_v_norm_sq + g.dv_normal * g.dv_normal - rho2).abs() / rho2);
    }
    Ok((worst, split))
}
