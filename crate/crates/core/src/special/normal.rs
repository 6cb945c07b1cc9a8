use super::require_positive;
use crate::error::Result;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

// Above this argument erfcx switches from exp(t^2) erfc(t) to the Laplace
// continued fraction.
const ERFCX_SWITCH: f64 = 6.0;

/// Scaled complementary error function `exp(t^2) erfc(t)`.
pub fn erfcx(t: f64) -> f64 {
    if t < 0.0 {
        return 2.0 * (t * t).exp() - erfcx(-t);
    }
    if t < ERFCX_SWITCH {
        return (t * t).exp() * libm::erfc(t);
    }
    // erfc(t) = exp(-t^2)/sqrt(pi) * 1/(t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))
    let mut tail = t;
    for k in (1..=120).rev() {
        tail = t + (k as f64 / 2.0) / tail;
    }
    1.0 / (PI.sqrt() * tail)
}

/// `ln erfc(t)`, accurate far into the upper tail.
pub fn log_erfc(t: f64) -> f64 {
    if t <= 0.0 {
        libm::erfc(t).ln()
    } else {
        erfcx(t).ln() - t * t
    }
}

/// Standard normal CDF `Φ(u)`.
pub fn std_normal_cdf(u: f64) -> f64 {
    0.5 * libm::erfc(-u * FRAC_1_SQRT_2)
}

/// `ln Φ(u)`.
pub fn log_std_normal_cdf(u: f64) -> f64 {
    -std::f64::consts::LN_2 + log_erfc(-u * FRAC_1_SQRT_2)
}

/// CDF of the inverse Gaussian with mean `mu` and shape `lambda`:
/// `Φ(sqrt(λ/x)(x/μ - 1)) + exp(2λ/μ) Φ(-sqrt(λ/x)(x/μ + 1))`.
///
/// The second term is combined in log space; `exp(2λ/μ)` alone overflows
/// once `λ/μ > 355`.
pub fn inv_gauss_cdf(x: f64, mu: f64, lambda: f64) -> Result<f64> {
    require_positive("inverse Gaussian mean", mu)?;
    require_positive("inverse Gaussian shape", lambda)?;
    if x.is_infinite() && x > 0.0 {
        return Ok(1.0);
    }
    require_positive("inverse Gaussian argument", x)?;
    let r = (lambda / x).sqrt();
    let first = std_normal_cdf(r * (x / mu - 1.0));
    let second = (2.0 * lambda / mu + log_std_normal_cdf(-r * (x / mu + 1.0))).exp();
    Ok((first + second).clamp(0.0, 1.0))
}

/// Survival function `P[X > x]` of the inverse Gaussian, evaluated directly so
/// that small upper-tail probabilities keep their relative accuracy.
pub fn inv_gauss_sf(x: f64, mu: f64, lambda: f64) -> Result<f64> {
    require_positive("inverse Gaussian mean", mu)?;
    require_positive("inverse Gaussian shape", lambda)?;
    if x.is_infinite() && x > 0.0 {
        return Ok(0.0);
    }
    require_positive("inverse Gaussian argument", x)?;
    let r = (lambda / x).sqrt();
    let u1 = r * (x / mu - 1.0);
    if u1 <= 0.0 {
        // bulk or lower tail: no accuracy to gain over the complement
        return Ok((1.0 - inv_gauss_cdf(x, mu, lambda)?).clamp(0.0, 1.0));
    }
    let ln_first = log_std_normal_cdf(-u1);
    let ln_second = 2.0 * lambda / mu + log_std_normal_cdf(-r * (x / mu + 1.0));
    if ln_second >= ln_first {
        return Ok(0.0);
    }
    Ok((ln_first.exp() * -(ln_second - ln_first).exp_m1()).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, Tolerance};

    fn ig_density(x: f64, mu: f64, lambda: f64) -> f64 {
        (lambda / (2.0 * PI * x.powi(3))).sqrt()
            * (-lambda * (x - mu).powi(2) / (2.0 * mu * mu * x)).exp()
    }

    #[test]
    fn erfcx_is_continuous_at_switch() {
        let below = (ERFCX_SWITCH - 1e-12).powi(2).exp() * libm::erfc(ERFCX_SWITCH - 1e-12);
        let above = erfcx(ERFCX_SWITCH);
        assert!((below - above).abs() < 1e-12 * above);
    }

    #[test]
    fn log_erfc_far_tail() {
        // erfc(t) ~ exp(-t^2) / (t sqrt(pi)) (1 - 1/(2t^2) + 3/(4t^4))
        let t = 37.0f64;
        let asym = -t * t - (t * PI.sqrt()).ln() + (1.0 - 0.5 / (t * t) + 0.75 / t.powi(4)).ln();
        assert!((log_erfc(t) - asym).abs() < 1e-9);
        assert!((log_erfc(1.0) - libm::erfc(1.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn cdf_at_unit_parameters() {
        let v = inv_gauss_cdf(1.0, 1.0, 1.0).unwrap();
        let direct = 0.5 + (2.0f64).exp() * std_normal_cdf(-2.0);
        assert!((v - direct).abs() < 1e-15);
        assert!((v - 0.668_102_001_223_7).abs() < 1e-11, "{v}");
    }

    #[test]
    fn cdf_matches_density_quadrature() {
        let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 4000 };
        for (mu, lambda) in [(1.0, 1.0), (0.5, 3.0), (2.0, 0.7)] {
            for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
                let q = integrate(|t| ig_density(t, mu, lambda), 1e-12, x, tol).unwrap().value;
                let c = inv_gauss_cdf(x, mu, lambda).unwrap();
                assert!((q - c).abs() < 1e-9, "mu={mu} lambda={lambda} x={x}");
            }
        }
    }

    #[test]
    fn limits_and_monotonicity() {
        assert_eq!(inv_gauss_cdf(f64::INFINITY, 1.0, 1.0).unwrap(), 1.0);
        assert!(inv_gauss_cdf(1e-8, 1.0, 1.0).unwrap() < 1e-100);
        assert!(inv_gauss_cdf(1e8, 1.0, 1.0).unwrap() > 1.0 - 1e-12);
        let mut prev = 0.0;
        let mut x = 1e-3;
        while x < 100.0 {
            let c = inv_gauss_cdf(x, 1.3, 0.4).unwrap();
            assert!(c >= prev);
            prev = c;
            x *= 1.05;
        }
    }

    #[test]
    fn large_shape_does_not_overflow() {
        let c = inv_gauss_cdf(1.0, 1.0, 2000.0).unwrap();
        assert!(c.is_finite() && (0.4..0.6).contains(&c), "{c}");
    }

    #[test]
    fn survival_complements_cdf() {
        for x in [0.05, 0.7, 1.0, 3.0, 20.0] {
            let s = inv_gauss_sf(x, 1.2, 2.5).unwrap();
            let c = inv_gauss_cdf(x, 1.2, 2.5).unwrap();
            assert!((s + c - 1.0).abs() < 1e-14);
        }
        let far = inv_gauss_sf(200.0, 1.0, 1.0).unwrap();
        assert!(far > 0.0 && far < 1e-40);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(inv_gauss_cdf(0.0, 1.0, 1.0).is_err());
        assert!(inv_gauss_cdf(1.0, -1.0, 1.0).is_err());
        assert!(inv_gauss_sf(1.0, 1.0, 0.0).is_err());
    }
}
