//! Independent reference values for the geometric and analytic quantities.

use std::f64::consts::PI;

use ahgraph_core::ads::{ads_shape_data, height_profile, horizon_radius, mass_from_horizon, AdsParams};
use ahgraph_core::boundary::{
    int_hv_terms, penrose_rhs, surface_geometry, PenroseVariant, RadialSurface, RadiusFunction,
};
use ahgraph_core::calculus::{
    central_first, central_mixed, central_second, radial_integrate, radial_integrate_offset,
    sphere_integrate, AxisymmetricField, FdStep, RadialKind, RadialProfile, RadialQuadrature,
    ScalarField, SphereQuadrature,
};
use ahgraph_core::graph::{
    induced_metric, level_set_mean_curvature, scalar_curvature, shape_tensor,
};
use ahgraph_core::hyperbolic::{
    christoffel_bbar, lorentz_inner, sphere_embedding, unit_sphere_volume,
    round_metric_diagonal, LorentzVector, StaticPotentialId,
};
use ahgraph_core::linalg::{Matrix, Vector};
use ahgraph_core::mass::{default_radii, mass_functional, mass_vector, normalization, MassOptions};
use ahgraph_core::{Dimension, PolarPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// `ω_{k}` of `S^k` by the recursion `ω_k = 2π ω_{k−2}/(k−1)`.
fn sphere_volume_recursive(k: usize) -> f64 {
    match k {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI * sphere_volume_recursive(k - 2) / (k as f64 - 1.0),
    }
}

#[test]
fn sphere_volume_matches_recursion_and_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=7 {
        let omega = unit_sphere_volume(dim(n));
        assert!(rel(omega, sphere_volume_recursive(n - 1)) < 1e-14);
        // Ball volume ω/n from the fraction of the cube [−1, 1]^n inside it.
        let samples = 200_000;
        let inside = (0..samples)
            .filter(|_| (0..n).map(|_| rng.random_range(-1.0f64..1.0).powi(2)).sum::<f64>() <= 1.0)
            .count();
        let mc = inside as f64 / samples as f64 * 2f64.powi(n as i32) * n as f64;
        assert!(rel(mc, omega) < 0.03, "n={n}: {mc} vs {omega}");
    }
}

#[test]
fn sphere_quadrature_moments() {
    for n in 2..=6 {
        let d = dim(n);
        let q = SphereQuadrature::new(d, 8);
        let omega = unit_sphere_volume(d);
        let nf = n as f64;
        for a in 0..n {
            let second = sphere_integrate(&q, |ang| Ok(sphere_embedding(n, ang)[a].powi(2))).unwrap();
            assert!(rel(second, omega / nf) < 1e-13, "n={n} a={a}");
            let fourth = sphere_integrate(&q, |ang| Ok(sphere_embedding(n, ang)[a].powi(4))).unwrap();
            assert!(rel(fourth, 3.0 * omega / (nf * (nf + 2.0))) < 1e-13);
            let b = (a + 1) % n;
            let mixed = sphere_integrate(&q, |ang| {
                let x = sphere_embedding(n, ang);
                Ok(x[a] * x[a] * x[b] * x[b])
            })
            .unwrap();
            assert!(rel(mixed, omega / (nf * (nf + 2.0))) < 1e-13);
            let odd = sphere_integrate(&q, |ang| Ok(sphere_embedding(n, ang)[a].powi(3))).unwrap();
            assert!(odd.abs() < 1e-14);
        }
    }
}

#[test]
fn horizon_rule_against_closed_form() {
    // ∫_0^L u^{−1/2} u^k du = L^{k+1/2}/(k + 1/2), shifted to start at a.
    let (a, b) = (0.7, 3.2);
    let q = RadialQuadrature::horizon(a, b, 4, 8).unwrap();
    for k in 0..4 {
        let got = radial_integrate_offset(&q, |_, d| Ok(d.powi(k) / d.sqrt())).unwrap();
        let exact = (b - a).powf(k as f64 + 0.5) / (k as f64 + 0.5);
        assert!(rel(got, exact) < 1e-13, "k={k}");
        // A naive rule on [a + ε, b] approaches the same value as ε → 0.
        for eps in [1e-4f64, 1e-6, 1e-8] {
            let naive = RadialQuadrature::gauss(eps.ln(), (b - a).ln(), 64, 16).unwrap();
            let v = radial_integrate(&naive, |t| {
                let d = t.exp();
                Ok(d.powi(k) / d.sqrt() * d)
            })
            .unwrap();
            // The naive rule misses exactly ε^{k+1/2}/(k + 1/2).
            let tail = eps.powf(k as f64 + 0.5) / (k as f64 + 0.5);
            assert!((exact - v - tail).abs() < 1e-11, "k={k} eps={eps}");
        }
    }
}

/// Second fundamental form of the graph from the connection of `b + V²ds²`.
#[allow(clippy::needless_range_loop)]
fn embedding_shape(field: &dyn ScalarField, p: &PolarPoint, step: FdStep) -> Matrix {
    let n = p.n();
    let at = |c: &[f64]| field.value(&PolarPoint::from_coords(p.dim(), c).unwrap()).unwrap();
    let coords: Vec<f64> = (0..n).map(|k| p.coord(k)).collect();
    let mut grad = Vector::zeros(n);
    let mut part = Matrix::zeros(n);
    for i in 0..n {
        let line = |x: f64| {
            let mut c = coords.clone();
            c[i] = x;
            at(&c)
        };
        grad[i] = central_first(line, coords[i], step);
        part[(i, i)] = central_second(line, coords[i], step);
        for j in 0..i {
            let plane = |x: f64, y: f64| {
                let mut c = coords.clone();
                c[i] = x;
                c[j] = y;
                at(&c)
            };
            let m = central_mixed(plane, coords[i], coords[j], step);
            part[(i, j)] = m;
            part[(j, i)] = m;
        }
    }
    let bar = christoffel_bbar(p).unwrap();
    let v = p.r.cosh();
    let mut norm = 1.0 / (v * v);
    for i in 0..n {
        let gii = if i == 0 {
            1.0
        } else {
            p.r.sinh().powi(2) * round_metric_diagonal(n, p.angles())[i - 1]
        };
        norm += grad[i] * grad[i] / gii;
    }
    // X_i = ∂_i + f_i ∂_s; the conormal is dF for F = s − f.
    Matrix::from_fn(n, |i, j| {
        let mut xi = vec![0.0; n + 1];
        let mut xj = vec![0.0; n + 1];
        xi[0] = grad[i];
        xi[i + 1] = 1.0;
        xj[0] = grad[j];
        xj[j + 1] = 1.0;
        let mut y = vec![0.0; n + 1];
        y[0] = part[(i, j)];
        for mu in 0..=n {
            for a in 0..=n {
                for b in 0..=n {
                    y[mu] += bar.get(mu, a, b) * xi[a] * xj[b];
                }
            }
        }
        let df_y = y[0] - (0..n).map(|k| grad[k] * y[k + 1]).sum::<f64>();
        df_y / norm.sqrt()
    })
}

#[test]
fn shape_tensor_matches_embedding_connection() {
    let step = FdStep::default();
    let fields: Vec<Box<dyn ScalarField>> = vec![
        Box::new(AxisymmetricField::tilted_bump(dim(3), 0.4, 1.0, 0.7, 0.5)),
        Box::new(AxisymmetricField::tilted_bump(dim(4), -0.3, 0.8, 1.1, 0.3)),
        Box::new(RadialProfile::new(dim(3), RadialKind::Gaussian { a: 0.5, center: 1.0, width: 0.8 })),
        Box::new(AxisymmetricField::new(dim(3), |r, t| 0.2 * r.sinh() * t.cos() + 0.1 * r * r)),
    ];
    for f in &fields {
        let n = f.dim().get();
        for (r, t) in [(0.6, 0.9), (1.3, 2.1)] {
            let mut angles = vec![1.1; n - 1];
            angles[0] = t;
            let p = PolarPoint::new(f.dim(), r, &angles).unwrap();
            let expected = embedding_shape(f.as_ref(), &p, step);
            let got = shape_tensor(&f.jet(&p).unwrap(), &p).unwrap();
            let err = got.sub(&expected).max_abs();
            assert!(err < 1e-7, "n={n} r={r}: {err}");
        }
    }
}

#[test]
fn level_set_mean_curvature_closed_forms() {
    let f = RadialProfile::new(dim(3), RadialKind::Linear { a: 0.0, b: 1.0 });
    let p = PolarPoint::new(dim(3), 1f64.asinh(), &[0.4, 2.0]).unwrap();
    assert!((level_set_mean_curvature(&f, &p).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    for n in [4, 5] {
        let f = RadialProfile::new(dim(n), RadialKind::Exponential { a: -1.0, k: 1.0 });
        let p = PolarPoint::new(dim(n), 0.8, &vec![1.0; n - 1]).unwrap();
        let expected = (n as f64 - 1.0) / 0.8f64.tanh();
        assert!((level_set_mean_curvature(&f, &p).unwrap() - expected).abs() < 1e-12);
    }
    let flat = AxisymmetricField::klein_slope(dim(3), 1.0);
    let p = PolarPoint::new(dim(3), 0.9, &[0.7, 0.2]).unwrap();
    assert!(level_set_mean_curvature(&flat, &p).unwrap().abs() < 1e-6);
}

#[test]
fn static_potential_lorentz_table() {
    for n in 2..=5 {
        let d = dim(n);
        for i in StaticPotentialId::all(d) {
            for j in StaticPotentialId::all(d) {
                let eta = lorentz_inner(&LorentzVector::basis(i, d), &LorentzVector::basis(j, d));
                let expected = if i != j { 0.0 } else if i.0 == 0 { 1.0 } else { -1.0 };
                assert_eq!(eta, expected);
            }
        }
    }
}

#[test]
fn horizon_radius_round_trip() {
    for n in [3, 4, 5] {
        for rho in [0.5, 1.0, 3.0] {
            let m = mass_from_horizon(rho, dim(n));
            assert!(rel(horizon_radius(m, dim(n)).unwrap(), rho) < 1e-10);
        }
    }
    assert_eq!(mass_from_horizon(1.0, dim(3)), 1.0);
    let small = horizon_radius(0.005, dim(3)).unwrap();
    assert!((small - 0.01).abs() < 2e-6);
}

#[test]
fn ads_params_invariants() {
    for n in [3, 4, 5, 6] {
        for m in [0.01, 0.5, 1.0, 2.0, 40.0] {
            let p = AdsParams::new(dim(n), m).unwrap();
            let r = p.rho0();
            assert!((1.0 + r * r - 2.0 * m / r.powi(n as i32 - 2)).abs() < 1e-12 * (1.0 + r * r));
            assert!(rel(0.5 * (r.powi(n as i32 - 2) + r.powi(n as i32)), m) < 1e-12);
        }
    }
}

#[test]
fn ads_height_profile_shape() {
    let p = AdsParams::new(dim(3), 1.0).unwrap();
    let h = height_profile(p);
    assert_eq!(h.height_at_rho(1.0).unwrap(), 0.0);
    let (f50, f100) = (h.height_at_rho(50.0).unwrap(), h.height_at_rho(100.0).unwrap());
    assert!(f100 > f50 && f100 - f50 <= 1e-3);
    let mut last = 0.0;
    for rho in [1.001, 1.1, 1.5, 3.0, 10.0, 50.0] {
        let f = h.height_at_rho(rho).unwrap();
        assert!(f > last);
        last = f;
    }
    let limit = h.regularized_slope(1.0 + 1e-12).unwrap();
    assert!(limit > 0.1);
    assert!(rel(h.regularized_slope(1.0 + 1e-9).unwrap(), limit) < 1e-6);
    assert!(h.height_at_rho(0.5).is_err());
}

#[test]
fn ads_scalar_curvature_is_constant() {
    for (n, m) in [(3, 0.5), (3, 1.0), (3, 2.0), (4, 0.5), (4, 1.0), (4, 2.0)] {
        let params = AdsParams::new(dim(n), m).unwrap();
        let h = height_profile(params);
        for k in 0..20 {
            let rho = params.rho0() * (1.0 + 1e-3) * 1.3f64.powi(k);
            let p = PolarPoint::new(dim(n), rho.asinh(), &vec![1.2; n - 1]).unwrap();
            let g = scalar_curvature(&h.jet(&p).unwrap(), &p).unwrap();
            let nf = n as f64;
            assert!((g.scal + nf * (nf - 1.0)).abs() <= 1e-8, "n={n} m={m} rho={rho}: {}", g.scal);
        }
    }
}

#[test]
fn ads_curvatures_and_metric_cross_check() {
    for n in [3, 4] {
        for m in [0.5, 1.0, 2.0] {
            let params = AdsParams::new(dim(n), m).unwrap();
            let h = height_profile(params);
            for rho in [1.5, 2.0, 5.0] {
                if rho <= params.rho0() {
                    continue;
                }
                let angles = vec![0.8; n - 1];
                let p = PolarPoint::new(dim(n), rho.asinh(), &angles).unwrap();
                let j = h.jet(&p).unwrap();
                let g = scalar_curvature(&j, &p).unwrap();
                let exact = ads_shape_data(&params, rho).unwrap();
                assert!((g.mean_curvature - exact.mean_curvature).abs() < 1e-6);
                let mut k: Vec<f64> = g.principal_curvatures().unwrap().as_slice().to_vec();
                let mut e: Vec<f64> = exact.principal_curvatures.as_slice().to_vec();
                k.sort_by(f64::total_cmp);
                e.sort_by(f64::total_cmp);
                for (a, b) in k.iter().zip(&e) {
                    assert!((a - b).abs() < 1e-6);
                }
                // Induced metric in the (ρ, angles) chart: dr/dρ = 1/√(1+ρ²).
                let ind = induced_metric(&j, &p).unwrap();
                let jac = 1.0 / (1.0 + rho * rho).sqrt();
                let sigma = round_metric_diagonal(n, &angles);
                assert!((ind.g_lower[(0, 0)] * jac * jac - 1.0 / params.lapse_sq(rho)).abs() < 1e-10);
                for a in 1..n {
                    assert!((ind.g_lower[(a, a)] - rho * rho * sigma[a - 1]).abs() < 1e-10);
                    assert_eq!(ind.g_lower[(0, a)], 0.0);
                }
            }
        }
    }
}

#[test]
fn ads_mass_equality_case() {
    let opts = MassOptions::default();
    let (h3, _) = mass_functional(&height_profile(AdsParams::new(dim(3), 1.0).unwrap()), StaticPotentialId::LAPSE, &default_radii(), &opts).unwrap();
    assert!(rel(h3, 16.0 * PI) < 0.01);
    let (h4, _) = mass_functional(&height_profile(AdsParams::new(dim(4), 1.0).unwrap()), StaticPotentialId::LAPSE, &default_radii(), &opts).unwrap();
    assert!(rel(h4, 12.0 * PI * PI) < 0.01);
    for n in [3, 4] {
        let mut last = 0.0;
        for m in [0.5, 1.0, 2.0] {
            let rep = mass_vector(&height_profile(AdsParams::new(dim(n), m).unwrap()), &default_radii(), &opts).unwrap();
            let mass = rep.lorentz_mass.unwrap();
            assert!(rel(mass, m) < 0.01);
            assert!(mass > last);
            last = mass;
            assert!(rep.spatial_ratio() <= 1e-8);
            assert!(rel(rep.h_phi[0], normalization(dim(n)) * m) < 0.01);
        }
    }
}

#[test]
fn sphere_int_hv_decomposition() {
    let s = RadialSurface::new(dim(3), RadiusFunction::Constant(1.0)).unwrap();
    let t = int_hv_terms(&s, &SphereQuadrature::new(dim(3), 8)).unwrap();
    assert!((t.hv - 16.0 * PI).abs() < 1e-12);
    assert!((t.euclid_mean - 8.0 * PI).abs() < 1e-12);
    assert!((t.flux - 8.0 * PI).abs() < 1e-12);
    assert_eq!(t.correction, 0.0);
    let rhs = penrose_rhs(4.0 * PI, 1f64.asinh(), dim(3), PenroseVariant::Graph).unwrap();
    assert!((rhs - 16.0 * PI).abs() < 1e-12);
}

#[test]
fn off_center_sphere_curvature_is_constant() {
    // A geodesic sphere of radius a has every principal curvature coth a,
    // wherever it is centred.
    for n in [3, 4] {
        let s = RadialSurface::new(dim(n), RadiusFunction::OffCenterSphere { radius: 1.1, offset: 0.4 }).unwrap();
        for t in [0.3, 1.5, 2.8] {
            let mut angles = vec![0.9; n - 1];
            angles[0] = t;
            let k = surface_geometry(&s, &angles).unwrap().principal_curvatures().unwrap();
            for x in k.as_slice() {
                assert!((x - 1.0 / 1.1f64.tanh()).abs() < 1e-10);
            }
        }
    }
}
