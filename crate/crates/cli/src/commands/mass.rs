//! The mass vector on the radii ladder, plus decay and decomposition checks.

use ahgraph_core::boundary::{RadialSurface, RadiusFunction};
use ahgraph_core::mass::{decay_report, mass_decomposition, mass_vector, normalization};

use super::{checked, Ctx};
use crate::config::{FieldSpec, RunConfig};
use crate::error::CliResult;
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = Ctx::new(cfg)?;
    let built = ctx.field(FieldSpec::Ads { mass: 1.0 })?;
    let field = built.field.as_ref();
    let tol = &ctx.tol;
    let opts = ctx.mass_options();
    let radii = ctx.radii();
    let mut rep = Report::new("mass");
    let norm = normalization(ctx.dim);

    if let Some(mv) = checked(&mut rep, "mass", "mass vector", mass_vector(field, &radii, &opts)) {
        for (k, values) in mv.integrand_values.iter().enumerate() {
            let case = format!("sinh r={}", cfg.radii[k]);
            for (i, v) in values.iter().enumerate() {
                rep.info(&case, &format!("sphere integral V_{i}"), *v);
            }
        }
        for (i, (h, e)) in mv.h_phi.iter().zip(&mv.h_phi_error).enumerate() {
            let quantity = format!("H_Phi(V_{i})");
            match built.total_mass {
                Some(m) if i == 0 => {
                    rep.compare("limit", &quantity, *h, norm * m, m != 0.0, tol.mass_relative);
                }
                _ => rep.info("limit", &quantity, *h),
            }
            rep.info("limit", &format!("{quantity} extrapolation error"), *e);
        }
        if field.is_radial() {
            rep.at_most("limit", "spatial ratio", mv.spatial_ratio(), tol.spatial);
        } else {
            rep.info("limit", "spatial ratio", mv.spatial_ratio());
        }
        match (mv.lorentz_mass, built.total_mass) {
            (Some(lm), Some(m)) if m > 0.0 => {
                rep.compare("limit", "Lorentz mass", lm, m, true, tol.mass_relative);
            }
            (Some(lm), _) => rep.info("limit", "Lorentz mass", lm),
            (None, _) => rep.hypothesis("limit", "Lorentz mass", f64::NAN, "mass vector is not future timelike"),
        }
    }

    let base = field.horizon().unwrap_or(0.0);
    let annuli: Vec<(f64, f64)> = (1..5).map(|k| (base + k as f64, base + k as f64 + 1.0)).collect();
    if let Some(d) = checked(&mut rep, "decay", "decay report", decay_report(field, &annuli, &opts)) {
        for (k, (a, b)) in annuli.iter().enumerate() {
            let case = format!("annulus {a:.3}..{b:.3}");
            rep.info(&case, "tensor decay integral", d.tensor_integrals[k]);
            rep.info(&case, "scalar decay integral", d.scalar_integrals[k]);
        }
        rep.info("decay", "outer sup V^2|df|^2", d.outer_sup);
        for (ok, what) in [
            (d.tensor_pass, "tensor integrals not decreasing"),
            (d.scalar_pass, "scalar integrals not decreasing"),
            (d.pointwise_pass, "V^2|df|^2 not decaying"),
        ] {
            if !ok {
                rep.hypothesis("decay", "decay hypothesis", f64::NAN, what);
            }
        }
    }

    if let Some(p) = built.ads {
        let horizon = RadialSurface::new(ctx.dim, RadiusFunction::Constant(p.rho0()))?;
        let dec = mass_decomposition(field, &horizon, &radii, &opts);
        if let Some(d) = checked(&mut rep, "decomposition", "interior + boundary", dec) {
            rep.info("decomposition", "interior", d.interior);
            rep.info("decomposition", "boundary", d.boundary);
            rep.at_most("decomposition", "relative mismatch", d.relative_mismatch(), tol.decomposition);
        }
    }
    Ok(rep)
}
