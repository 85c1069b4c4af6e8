use alloc::format;

use crate::error::{Error, Result};
use crate::fmath::{exp, expm1};

/// Limit of `value(r)` as `r → ∞`, from samples at increasing radii.
///
/// The last three samples are fitted exactly by `L + c e^{−α r}`. The error
/// estimate is the change of `L` against the fit one sample earlier, or the
/// distance from the last sample to `L` when only three samples exist.
pub fn richardson_extrapolate(samples: &[(f64, f64)]) -> Result<(f64, f64)> {
    if samples.len() < 3 {
        return Err(Error::domain(format!(
            "extrapolation needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::domain("sample radii must increase strictly"));
        }
    }
    if samples.iter().any(|s| !s.0.is_finite() || !s.1.is_finite()) {
        return Err(Error::non_finite("extrapolation samples", "input"));
    }
    let k = samples.len();
    let limit = fit_three(&samples[k - 3..])?;
    let error = if k >= 4 {
        match fit_three(&samples[k - 4..k - 1]) {
            Ok(prev) => (limit - prev).abs(),
            Err(_) => (samples[k - 1].1 - limit).abs(),
        }
    } else {
        (samples[k - 1].1 - limit).abs()
    };
    Ok((limit, error))
}

fn fit_three(s: &[(f64, f64)]) -> Result<f64> {
    let (r1, v1) = s[0];
    let (r2, v2) = s[1];
    let (r3, v3) = s[2];
    let (h1, h2) = (r2 - r1, r3 - r2);
    let (d1, d2) = (v2 - v1, v3 - v2);
    let scale = v1.abs().max(v2.abs()).max(v3.abs());
    let roundoff = 64.0 * f64::EPSILON * scale;
    if d1.abs() <= roundoff && d2.abs() <= roundoff {
        return Ok(v3);
    }
    let ratio = d2 / d1;
    if !(ratio > 0.0) {
        if d2.abs() <= roundoff {
            return Ok(v3);
        }
        return Err(Error::NoConvergence(format!(
            "sample differences change sign ({d1:e}, {d2:e})"
        )));
    }
    // ratio(α) = e^{−α h1}(1 − e^{−α h2})/(1 − e^{−α h1}) falls from h2/h1 to 0.
    let limit_ratio = h2 / h1;
    if ratio >= limit_ratio * (1.0 - 1e-9) {
        return Err(Error::NoConvergence(format!(
            "samples do not decay exponentially (difference ratio {ratio:.6}, spacing ratio {limit_ratio:.6})"
        )));
    }
    let model = |alpha: f64| exp(-alpha * h1) * expm1(-alpha * h2) / expm1(-alpha * h1);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while model(hi) > ratio {
        hi *= 2.0;
        if hi > 1e6 {
            return Ok(v3);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if model(mid) > ratio {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let alpha = 0.5 * (lo + hi);
    // v3 − v2 = T3 (1 − e^{α h2}) with T3 the tail at r3.
    let tail = d2 / -expm1(alpha * h2);
    Ok(v3 - tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::exp;

    #[test]
    fn constant_sequence() {
        let s = [(1.0, 2.5), (2.0, 2.5), (3.0, 2.5)];
        assert_eq!(richardson_extrapolate(&s).unwrap(), (2.5, 0.0));
    }

    #[test]
    fn exponential_sequence() {
        let s: alloc::vec::Vec<_> = [3.0, 4.0, 5.0, 6.0]
            .iter()
            .map(|&r| (r, 5.0 + exp(-2.0 * r)))
            .collect();
        let (l, e) = richardson_extrapolate(&s).unwrap();
        assert!((l - 5.0).abs() < 1e-4);
        assert!(e < 1e-4);
    }

    #[test]
    fn nonuniform_radii() {
        let s: alloc::vec::Vec<_> = [1.0, 1.7, 3.1]
            .iter()
            .map(|&r| (r, -1.0 + 3.0 * exp(-0.9 * r)))
            .collect();
        let (l, _) = richardson_extrapolate(&s).unwrap();
        assert!((l + 1.0).abs() < 1e-10);
    }

    #[test]
    fn divergence_is_rejected() {
        let s = [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0), (4.0, 4.0)];
        assert!(matches!(
            richardson_extrapolate(&s),
            Err(Error::NoConvergence(_))
        ));
        let osc = [(1.0, 1.0), (2.0, 2.0), (3.0, 1.0)];
        assert!(richardson_extrapolate(&osc).is_err());
        assert!(richardson_extrapolate(&[(1.0, 1.0), (2.0, 1.0)]).is_err());
    }
}
