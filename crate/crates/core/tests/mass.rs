//! Mass functional, Stokes consistency and the bulk/boundary split.

use std::f64::consts::PI;

use ahgraph_core::ads::{height_profile, ramped_profile, AdsParams, MassRamp};
use ahgraph_core::boundary::{RadialSurface, RadiusFunction};
use ahgraph_core::calculus::{AxisymmetricField, RadialKind, RadialProfile, ScalarField};
use ahgraph_core::graph::divergence_identity_residual;
use ahgraph_core::mass::{
    annulus_integral, decay_report, default_radii, flux, mass_decomposition, mass_vector,
    normalization, MassOptions,
};
use ahgraph_core::{Dimension, Error, PolarPoint};

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

#[test]
fn normalization_values() {
    assert!((normalization(dim(3)) - 16.0 * PI).abs() < 1e-12);
    assert!((normalization(dim(4)) - 12.0 * PI * PI).abs() < 1e-12);
}

#[test]
fn divergence_identity_on_radial_family() {
    for n in [3, 4, 5] {
        let fields = [
            RadialKind::Exponential { a: 0.5, k: 1.0 },
            RadialKind::Gaussian { a: 0.3, center: 1.2, width: 0.6 },
            RadialKind::Linear { a: 0.1, b: 0.4 },
        ];
        for kind in fields {
            let f = RadialProfile::new(dim(n), kind);
            for r in [0.5, 1.0, 1.8] {
                let p = PolarPoint::new(dim(n), r, &vec![1.0; n - 1]).unwrap();
                let res = divergence_identity_residual(&f, &p).unwrap();
                assert!(res <= 1e-6, "n={n} r={r}: {res}");
            }
        }
    }
}

#[test]
fn annulus_stokes_consistency() {
    let opts = MassOptions::default();
    let fields: Vec<Box<dyn ScalarField>> = vec![
        Box::new(RadialProfile::new(dim(3), RadialKind::Gaussian { a: 0.4, center: 1.0, width: 0.7 })),
        Box::new(RadialProfile::new(dim(4), RadialKind::Exponential { a: 0.2, k: 2.0 })),
        Box::new(height_profile(AdsParams::new(dim(3), 1.0).unwrap())),
        Box::new(ramped_profile(AdsParams::new(dim(4), 0.5).unwrap(), MassRamp { amount: 0.4, width: 1.0 }).unwrap()),
        Box::new(AxisymmetricField::tilted_bump(dim(3), 0.3, 1.0, 0.6, 0.4)),
    ];
    for f in &fields {
        let r0 = f.horizon().map_or(0.3, |h| h + 0.05);
        let (r1, r2) = (r0 + 0.2, r0 + 1.6);
        let bulk = annulus_integral(f.as_ref(), r1, r2, &opts).unwrap();
        let (f1, f2) = (flux(f.as_ref(), r1, &opts).unwrap(), flux(f.as_ref(), r2, &opts).unwrap());
        let diff = f2 - f1;
        // Relative to the fluxes themselves, which stay O(m) when the bulk vanishes.
        let scale = bulk.abs().max(f1.abs()).max(f2.abs());
        assert!((bulk - diff).abs() <= 1e-4 * scale, "{bulk} vs {diff}");
    }
}

#[test]
fn radial_fields_have_no_spatial_mass() {
    let f = RadialProfile::new(dim(3), RadialKind::Exponential { a: 1.0, k: 3.0 });
    let rep = mass_vector(&f, &default_radii(), &MassOptions::default()).unwrap();
    assert!(rep.h_phi[1..].iter().all(|h| *h == 0.0));
}

#[test]
fn decomposition_of_ads_family() {
    let opts = MassOptions::default();
    for n in [3, 4] {
        for m in [0.5, 1.0, 2.0] {
            let params = AdsParams::new(dim(n), m).unwrap();
            let horizon = RadialSurface::new(dim(n), RadiusFunction::Constant(params.rho0())).unwrap();
            let d = mass_decomposition(&height_profile(params), &horizon, &default_radii(), &opts).unwrap();
            assert!(d.relative_mismatch() < 0.01);
            assert!(d.interior.abs() < 1e-9 * d.boundary);
            assert!((d.boundary - normalization(dim(n)) * m).abs() < 1e-9 * d.boundary);
        }
    }
}

#[test]
fn decomposition_of_perturbed_profiles() {
    let opts = MassOptions::default();
    let params = AdsParams::new(dim(3), 1.0).unwrap();
    let horizon = RadialSurface::new(dim(3), RadiusFunction::Constant(params.rho0())).unwrap();
    let ramp = MassRamp { amount: 0.3, width: 1.0 };
    let ramped = ramped_profile(params, ramp).unwrap();
    let d = mass_decomposition(&ramped, &horizon, &default_radii(), &opts).unwrap();
    let omega_n = normalization(dim(3));
    assert!(d.relative_mismatch() < 0.01);
    assert!((d.interior - omega_n * 0.3).abs() < 1e-6 * omega_n);
    assert!((d.h_phi_check - omega_n * 1.3).abs() < 0.01 * omega_n);

    let r0 = params.rho0().asinh();
    let bumped = height_profile(params).with_bump(RadialKind::Gaussian { a: 0.05, center: r0 + 0.6, width: 0.25 });
    let d = mass_decomposition(&bumped, &horizon, &default_radii(), &opts).unwrap();
    assert!(d.relative_mismatch() < 0.01);
}

#[test]
fn decomposition_rejects_wrong_surfaces() {
    let opts = MassOptions::default();
    let params = AdsParams::new(dim(3), 1.0).unwrap();
    let sphere = RadialSurface::new(dim(3), RadiusFunction::Constant(2.0)).unwrap();
    let err = mass_decomposition(&height_profile(params), &sphere, &default_radii(), &opts).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
    let tilted = AxisymmetricField::tilted_bump(dim(3), 0.3, 1.0, 0.6, 0.4);
    let err = mass_decomposition(&tilted, &sphere, &default_radii(), &opts).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
}

#[test]
fn decay_report_on_admissible_field() {
    let f = RadialProfile::new(dim(3), RadialKind::Exponential { a: 0.5, k: 4.0 });
    let rep = decay_report(&f, &[(1.0, 2.0), (2.0, 3.0), (3.0, 4.0), (4.0, 5.0)], &MassOptions::default()).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn too_few_radii_is_an_error() {
    let f = RadialProfile::new(dim(3), RadialKind::Exponential { a: 0.5, k: 4.0 });
    assert!(mass_vector(&f, &default_radii()[..2], &MassOptions::default()).is_err());
}
