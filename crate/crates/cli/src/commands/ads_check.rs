//! Equality reproduction on the anti-de Sitter Schwarzschild family.

use ahgraph_core::ads::{ads_shape_data, horizon_radius, mass_from_horizon, AdsParams};
use ahgraph_core::boundary::{boundary_functional, penrose_rhs, PenroseVariant, RadialSurface, RadiusFunction};
use ahgraph_core::calculus::ScalarField;
use ahgraph_core::graph::{level_set_gap, psd_certificate, scalar_curvature, PSD_TOLERANCE};
use ahgraph_core::hyperbolic::unit_sphere_volume;
use ahgraph_core::mass::{mass_decomposition, mass_vector, normalization};
use ahgraph_core::PolarPoint;

use super::{at_rho, checked, Ctx};
use crate::config::{FieldSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = Ctx::new(cfg)?;
    ctx.require_inequality("ads-check")?;
    let m = match cfg.field {
        None => 1.0,
        Some(FieldSpec::Ads { mass }) => mass,
        Some(ref other) => {
            return Err(CliError::config(format!(
                "ads-check needs [field] kind = ads, got '{}'",
                other.name()
            )))
        }
    };
    let built = ctx.field(FieldSpec::Ads { mass: m })?;
    let params = built.ads.expect("AdS field carries its parameters");
    let field = built.field.as_ref();
    let mut rep = Report::new("ads-check");
    let tol = &ctx.tol;
    horizon_rows(&mut rep, &params, tol.horizon, tol.round_trip);
    scal_scan(&mut rep, field, &params, tol.scal);
    curvature_rows(&mut rep, field, &params, &ctx);

    let nf = ctx.dim.as_f64();
    let expected = normalization(ctx.dim) * m;
    if let Some(mv) = checked(&mut rep, "mass", "H_Phi", mass_vector(field, &ctx.radii(), &ctx.mass_options())) {
        rep.compare("mass", "H_Phi(V_0)", mv.h_phi[0], expected, true, tol.mass_relative);
        rep.info("mass", "H_Phi(V_0) extrapolation error", mv.h_phi_error[0]);
        rep.at_most("mass", "spatial ratio", mv.spatial_ratio(), tol.spatial);
        match mv.lorentz_mass {
            Some(lm) => drop(rep.compare("mass", "Lorentz mass", lm, m, true, tol.mass_relative)),
            None => rep.failure("mass", "Lorentz mass", "mass vector is not future timelike"),
        }
    }

    let horizon = RadialSurface::new(ctx.dim, RadiusFunction::Constant(params.rho0()))?;
    let dec = mass_decomposition(field, &horizon, &ctx.radii(), &ctx.mass_options());
    if let Some(d) = checked(&mut rep, "decomposition", "interior + boundary", dec) {
        rep.info("decomposition", "interior", d.interior);
        rep.compare("decomposition", "boundary", d.boundary, expected, true, tol.equality);
        rep.at_most("decomposition", "relative mismatch", d.relative_mismatch(), tol.decomposition);
    }

    // The horizon sphere realises the graph bound with equality.
    let omega = unit_sphere_volume(ctx.dim);
    let area = omega * params.rho0().powf(nf - 1.0);
    let r0 = params.rho0().asinh();
    if let Some(rhs) = checked(&mut rep, "boundary", "graph rhs", penrose_rhs(area, r0, ctx.dim, PenroseVariant::Graph)) {
        rep.compare("boundary", "graph rhs", rhs, expected, true, tol.equality);
        let hv = boundary_functional(&horizon, &ctx.boundary_rule());
        if let Some(hv) = checked(&mut rep, "boundary", "int HV", hv) {
            rep.compare("boundary", "int HV", hv, rhs, true, tol.equality);
        }
    }
    Ok(rep)
}

fn horizon_rows(rep: &mut Report, p: &AdsParams, tol_horizon: f64, tol_trip: f64) {
    let rho0 = p.rho0();
    rep.info("horizon", "rho0", rho0);
    rep.at_most("horizon", "|1 + rho0^2 - 2m/rho0^(n-2)|", p.lapse_sq(rho0).abs(), tol_horizon);
    let m = mass_from_horizon(rho0, p.dim());
    rep.compare("horizon", "mass from horizon", m, p.mass(), true, tol_trip);
    if let Some(back) = checked(rep, "horizon", "round trip", horizon_radius(m, p.dim())) {
        rep.compare("horizon", "round trip", back, rho0, true, tol_trip);
    }
}

/// Twenty radii spreading out geometrically from just outside the horizon.
pub fn scan_radii(p: &AdsParams) -> Vec<f64> {
    (0..20).map(|k| p.rho0() * (1.0 + 1e-3) * 1.3f64.powi(k)).collect()
}

fn point(p: &AdsParams, rho: f64, angle: f64) -> PolarPoint {
    let n = p.dim().get();
    PolarPoint::new(p.dim(), rho.asinh(), &vec![angle; n - 1]).expect("regular sample point")
}

fn scal_scan(rep: &mut Report, field: &dyn ScalarField, p: &AdsParams, tol: f64) {
    let nf = p.dim().as_f64();
    for rho in scan_radii(p) {
        let case = at_rho(rho);
        let q = point(p, rho, 1.2);
        let geom = field.jet(&q).and_then(|j| scalar_curvature(&j, &q));
        if let Some(g) = checked(rep, &case, "Scal + n(n-1)", geom) {
            rep.at_most(&case, "Scal + n(n-1)", (g.scal + nf * (nf - 1.0)).abs(), tol);
        }
    }
}

fn curvature_rows(rep: &mut Report, field: &dyn ScalarField, p: &AdsParams, ctx: &Ctx) {
    let tol = &ctx.tol;
    for s in [1.5, 2.0, 5.0] {
        let rho = p.rho0() * s;
        let case = at_rho(rho);
        let q = point(p, rho, 0.8);
        let geom = field.jet(&q).and_then(|j| scalar_curvature(&j, &q));
        let (Some(g), Some(exact)) = (
            checked(rep, &case, "graph curvature", geom),
            checked(rep, &case, "closed-form curvature", ads_shape_data(p, rho)),
        ) else {
            continue;
        };
        rep.compare(&case, "mean curvature", g.mean_curvature, exact.mean_curvature, false, tol.curvature);
        if let Some(k) = checked(rep, &case, "principal curvatures", g.principal_curvatures()) {
            let mut k = k.as_slice().to_vec();
            let mut e = exact.principal_curvatures.as_slice().to_vec();
            k.sort_by(f64::total_cmp);
            e.sort_by(f64::total_cmp);
            let worst = k.iter().zip(&e).fold(0.0_f64, |w, (a, b)| w.max((a - b).abs()));
            rep.at_most(&case, "principal curvatures", worst, tol.curvature);
        }
        if let Some(c) = checked(rep, &case, "psd certificate", psd_certificate(&g)) {
            rep.at_least(&case, "min eigenvalue of H delta - A", c.min_eigenvalue, 0.0, PSD_TOLERANCE * ctx.cfg.tol_scale);
        }
        if let Some(gap) = checked(rep, &case, "level-set gap", level_set_gap(field, &q)) {
            rep.at_most(&case, "|level-set gap|", gap.abs(), tol.level_set_equality);
        }
    }
}
