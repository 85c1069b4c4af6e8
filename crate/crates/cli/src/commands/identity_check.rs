//! Pointwise divergence identity, annulus Stokes checks and the `∫HV`
//! identity on the configured surfaces.

use ahgraph_core::boundary::int_hv_terms;
use ahgraph_core::graph::{divergence_identity_residual_with, scalar_curvature};
use ahgraph_core::mass::{annulus_integral, flux};
use ahgraph_core::PolarPoint;

use super::{checked, Ctx};
use crate::config::{FieldSpec, RunConfig};
use crate::error::CliResult;
use crate::report::Report;

const OFFSETS: [f64; 3] = [0.5, 1.0, 1.8];
const ANGLE_SETS: [f64; 2] = [1.0, 2.3];

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = Ctx::new(cfg)?;
    let built = ctx.field(FieldSpec::Exponential { a: 0.5, k: 1.0 })?;
    let field = built.field.as_ref();
    let tol = &ctx.tol;
    let n = cfg.n;
    let mut rep = Report::new("identity-check");
    let base = field.horizon().unwrap_or(0.0);

    for (i, off) in OFFSETS.iter().enumerate() {
        for (k, angle) in ANGLE_SETS.iter().enumerate() {
            let case = format!("point-{i}-{k}");
            let mut angles = vec![1.0; n - 1];
            angles[0] = *angle;
            let p = PolarPoint::new(ctx.dim, base + off, &angles)?;
            let jet = field.derivative_jet(&p);
            let Some(mut j) = checked(&mut rep, &case, "jet", jet) else {
                continue;
            };
            if cfg.corrupt_jet {
                j = j.with_cached_norms(j.grad_norm_sq() + 1.0, j.grad_dot_potential() + 0.5);
            }
            if let Some(g) = checked(&mut rep, &case, "Gauss trace vs explicit Scal", scalar_curvature(&j, &p)) {
                let mismatch = (g.scal_explicit_excess - g.scal_excess()).abs();
                let scale = 1.0 + g.scal_excess().abs();
                rep.at_most(&case, "Gauss trace vs explicit Scal", mismatch / scale, tol.self_check);
            }
            let res = divergence_identity_residual_with(field, &p, ctx.step());
            if let Some(r) = checked(&mut rep, &case, "divergence residual", res) {
                rep.at_most(&case, "divergence residual", r, tol.divergence);
            }
        }
    }

    let opts = ctx.mass_options();
    let start = base + if built.ads.is_some() { 0.05 } else { 0.3 };
    for (i, (a, b)) in [(0.2, 1.6), (0.5, 2.5)].iter().enumerate() {
        let case = format!("annulus-{i}");
        let (r1, r2) = (start + a, start + b);
        let terms = annulus_integral(field, r1, r2, &opts)
            .and_then(|bulk| Ok((bulk, flux(field, r1, &opts)?, flux(field, r2, &opts)?)));
        if let Some((bulk, f1, f2)) = checked(&mut rep, &case, "Stokes", terms) {
            let scale = bulk.abs().max(f1.abs()).max(f2.abs());
            let err = (bulk - (f2 - f1)).abs();
            let residual = if scale == 0.0 { 0.0 } else { err / scale };
            rep.info(&case, "bulk integral", bulk);
            rep.info(&case, "flux difference", f2 - f1);
            rep.at_most(&case, "Stokes relative residual", residual, tol.stokes);
        }
    }

    if n >= 3 {
        let q = ctx.boundary_rule();
        for (name, s) in ctx.surfaces()? {
            if let Some(t) = checked(&mut rep, &name, "int HV identity", int_hv_terms(&s, &q)) {
                rep.info(&name, "int HV", t.hv);
                rep.at_most(&name, "int HV identity residual", t.residual, tol.int_hv);
            }
        }
    }
    Ok(rep)
}
