//! Primitive random variate generators: uniform, exponential, gamma, inverse
//! Gaussian and the truncated laws used by the truncated-conditional sampler.
//!
//! The checked `sample_*` functions validate their parameters; the
//! `pub(crate)` `draw_*` variants skip validation for use inside sampler loops
//! whose parameters are valid by construction.

use crate::error::{GigError, Result};
use crate::rng::RngStream;
use crate::special::{ln_1m_exp, ln_add_exp, ln_gamma, ln_gamma_tails, require_positive, upper_incomplete_gamma};
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform draw in the open interval `(0, 1)`.
pub fn sample_uniform(rng: &mut RngStream) -> f64 {
    rng.uniform()
}

/// Exponential with the given rate, by inversion of a supplied uniform.
pub fn exp_from_uniform(u: f64, rate: f64) -> f64 {
    -u.ln() / rate
}

/// Exponential with the given rate, `-ln(U) / rate`.
pub fn sample_exp(rate: f64, rng: &mut RngStream) -> Result<f64> {
    require_positive("exponential rate", rate)?;
    Ok(draw_exp(rate, rng))
}

#[inline]
pub(crate) fn draw_exp(rate: f64, rng: &mut RngStream) -> f64 {
    exp_from_uniform(rng.uniform(), rate)
}

/// Standard normal draw (ziggurat).
#[inline]
pub fn sample_std_normal(rng: &mut RngStream) -> f64 {
    rng.sample(StandardNormal)
}

/// Gamma with density proportional to `x^(shape-1) exp(-rate x)`.
///
/// Marsaglia–Tsang squeeze for `shape >= 1`; for `shape < 1` a draw at
/// `shape + 1` is boosted by `U^(1/shape)`.
pub fn sample_gamma(shape: f64, rate: f64, rng: &mut RngStream) -> Result<f64> {
    require_positive("gamma shape", shape)?;
    require_positive("gamma rate", rate)?;
    Ok(draw_gamma(shape, rate, rng))
}

pub(crate) fn draw_gamma(shape: f64, rate: f64, rng: &mut RngStream) -> f64 {
    if shape < 1.0 {
        let boost = rng.uniform().powf(1.0 / shape);
        return draw_gamma(shape + 1.0, rate, rng) * boost;
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let (x, v) = loop {
            let x = sample_std_normal(rng);
            let v = 1.0 + c * x;
            if v > 0.0 {
                break (x, v * v * v);
            }
        };
        let u = rng.uniform();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v / rate;
        }
    }
}

/// Inverse Gaussian with mean `mu` and shape `lambda`, by the transformation
/// with multiple roots (Michael, Schucany & Haas).
///
/// The smaller root `mu + mu^2 y/(2 lambda) - (mu/(2 lambda)) sqrt(4 mu lambda y + mu^2 y^2)`
/// is evaluated as `mu / (1 + r + sqrt(r^2 + 2r))`, `r = mu y / (2 lambda)`,
/// which is the same number without the cancellation.
pub fn sample_inv_gauss(mu: f64, lambda: f64, rng: &mut RngStream) -> Result<f64> {
    require_positive("inverse Gaussian mean", mu)?;
    require_positive("inverse Gaussian shape", lambda)?;
    Ok(draw_inv_gauss(mu, lambda, rng))
}

#[inline]
pub(crate) fn draw_inv_gauss(mu: f64, lambda: f64, rng: &mut RngStream) -> f64 {
    let nu = sample_std_normal(rng);
    let r = mu * nu * nu / (2.0 * lambda);
    let x1 = mu / (1.0 + r + (r * r + 2.0 * r).sqrt());
    if rng.uniform() * (mu + x1) <= mu {
        x1
    } else {
        mu * mu / x1
    }
}

/// Exponential with the given rate conditioned to exceed `lower`.
pub fn sample_trunc_exp(rate: f64, lower: f64, rng: &mut RngStream) -> Result<f64> {
    require_positive("exponential rate", rate)?;
    if !(lower >= 0.0 && lower.is_finite()) {
        return Err(GigError::Domain(format!("lower bound must be non-negative, got {lower}")));
    }
    Ok(lower + draw_exp(rate, rng))
}

/// Inverse gamma with density proportional to `x^(-shape-1) exp(-scale/x)`
/// restricted to `(0, upper)`.
///
/// `1/X` is then a gamma(shape, rate = scale) variable restricted to
/// `(1/upper, ∞)`, which is drawn by inverting its incomplete-gamma tail.
/// The truncation keeps the law proper at `shape = 0`, which is accepted.
pub fn sample_trunc_inv_gamma(shape: f64, scale: f64, upper: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape >= 0.0 && shape.is_finite()) {
        return Err(GigError::Domain(format!("inverse gamma shape must be non-negative, got {shape}")));
    }
    require_positive("inverse gamma scale", scale)?;
    require_positive("truncation bound", upper)?;
    let g = draw_gamma_upper_tail(shape, scale / upper, rng)?;
    Ok(scale / g)
}

/// Draws `G` with density proportional to `g^(s-1) e^(-g)` on `(t0, ∞)`.
fn draw_gamma_upper_tail(s: f64, t0: f64, rng: &mut RngStream) -> Result<f64> {
    let u = rng.uniform();
    if s == 0.0 {
        let target = u.ln() + upper_incomplete_gamma(0.0, t0)?.ln();
        let ln_q = |g: f64| Ok(upper_incomplete_gamma(0.0, g)?.ln());
        let slope = |g: f64, ln_q: f64| -(-g - g.ln() - ln_q).exp();
        return solve_monotone(t0, target, false, ln_q, slope);
    }
    let full = ln_gamma(s);
    let (ln_p0, ln_q0) = ln_gamma_tails(s, t0)?;
    let ln_q_target = u.ln() + ln_q0 - full;
    if ln_q_target < -std::f64::consts::LN_2 {
        let ln_q = |g: f64| Ok(ln_gamma_tails(s, g)?.1 - full);
        let slope = |g: f64, ln_q: f64| -((s - 1.0) * g.ln() - g - full - ln_q).exp();
        solve_monotone(t0, ln_q_target, false, ln_q, slope)
    } else {
        // lower side: P(g) = (1 - U) + U P(t0)
        let ln_p_target = ln_add_exp(ln_1m_exp(u.ln()), u.ln() + ln_p0 - full);
        let ln_p = |g: f64| Ok(ln_gamma_tails(s, g)?.0 - full);
        let slope = |g: f64, ln_p: f64| ((s - 1.0) * g.ln() - g - full - ln_p).exp();
        solve_monotone(t0, ln_p_target, true, ln_p, slope)
    }
}

/// Solves `f(g) = target` for `g > lo`, where `f` is monotone (increasing when
/// `increasing`) and `slope(g, f(g))` is its derivative. Safeguarded Newton.
fn solve_monotone<F, D>(lo: f64, target: f64, increasing: bool, f: F, slope: D) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
    D: Fn(f64, f64) -> f64,
{
    let below = |v: f64| if increasing { v < target } else { v > target };
    let mut a = lo;
    let mut b = lo.max(1.0) * 2.0;
    let mut fb = f(b)?;
    while below(fb) {
        a = b;
        b *= 2.0;
        if b > 1e300 {
            return Err(GigError::Numeric("tail inversion failed to bracket".into()));
        }
        fb = f(b)?;
    }
    let mut g = 0.5 * (a + b);
    for _ in 0..200 {
        let fg = f(g)?;
        if fg == target {
            return Ok(g);
        }
        if below(fg) {
            a = g;
        } else {
            b = g;
        }
        let d = slope(g, fg);
        let newton = g - (fg - target) / d;
        let next = if newton.is_finite() && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - g).abs() <= 1e-15 * g || b - a <= 1e-15 * b {
            return Ok(next);
        }
        g = next;
    }
    Err(GigError::Numeric("tail inversion did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::ks_statistic;
    use crate::quadrature::{integrate, Tolerance};
    use crate::special::inv_gauss_cdf;

    const N: usize = 100_000;

    fn draws(seed: u64, n: usize, mut f: impl FnMut(&mut RngStream) -> f64) -> Vec<f64> {
        let mut rng = RngStream::new(seed);
        (0..n).map(|_| f(&mut rng)).collect()
    }

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn uniform_ks() {
        let v = draws(1, 1_000_000, sample_uniform);
        let ks = ks_statistic(&v, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(ks.statistic < 0.002, "{}", ks.statistic);
    }

    #[test]
    fn exponential_inversion_identity_and_mean() {
        assert!((exp_from_uniform((-1.0f64).exp(), 1.0) - 1.0).abs() < 1e-15);
        assert!(sample_exp(0.0, &mut RngStream::new(1)).is_err());
        let v = draws(2, N, |r| sample_exp(2.0, r).unwrap());
        assert!((mean(&v) - 0.5).abs() < 4.0 * 0.5 / (N as f64).sqrt());
    }

    #[test]
    fn gamma_mean_and_shape_one_is_exponential() {
        let v = draws(3, N, |r| sample_gamma(3.0, 2.0, r).unwrap());
        assert!((mean(&v) - 1.5).abs() < 4.0 * (0.75f64).sqrt() / (N as f64).sqrt());
        let theta = 1.7;
        let e = draws(4, N, |r| sample_gamma(1.0, theta, r).unwrap());
        let ks = ks_statistic(&e, |x| 1.0 - (-theta * x).exp()).unwrap();
        assert!(ks.statistic < 0.0062, "{}", ks.statistic);
        assert!(sample_gamma(0.0, 1.0, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn gamma_small_shape_ks() {
        // shape 1/2 rate 1: X = Z^2 / 2 for standard normal Z
        let v = draws(5, N, |r| sample_gamma(0.5, 1.0, r).unwrap());
        let ks = ks_statistic(&v, |x| libm::erf(x.max(0.0).sqrt())).unwrap();
        assert!(ks.pass, "{}", ks.statistic);
    }

    #[test]
    fn inverse_gaussian_moments_and_ks() {
        let v = draws(6, N, |r| sample_inv_gauss(1.0, 1.0, r).unwrap());
        assert!((mean(&v) - 1.0).abs() < 4.0 / (N as f64).sqrt());
        for (mu, lambda) in [(1.0, 1.0), (2.0, 3.0), (0.3, 50.0), (5.0, 0.2)] {
            let v = draws(7, N, |r| sample_inv_gauss(mu, lambda, r).unwrap());
            assert!(v.iter().all(|&x| x > 0.0));
            let ks = ks_statistic(&v, |x| inv_gauss_cdf(x, mu, lambda).unwrap()).unwrap();
            assert!(ks.statistic < 0.0062, "mu={mu} lambda={lambda}: {}", ks.statistic);
        }
    }

    #[test]
    fn truncated_exponential() {
        let v = draws(8, N, |r| sample_trunc_exp(1.0, 5.0, r).unwrap());
        assert!(v.iter().all(|&x| x > 5.0));
        assert!((mean(&v) - 6.0).abs() < 4.0 / (N as f64).sqrt());
        let mut a = RngStream::new(9);
        let mut b = RngStream::new(9);
        assert_eq!(sample_trunc_exp(2.0, 0.0, &mut a).unwrap(), sample_exp(2.0, &mut b).unwrap());
    }

    #[test]
    fn truncated_inverse_gamma_far_bound_matches_untruncated_mean() {
        let v = draws(10, N, |r| sample_trunc_inv_gamma(3.0, 2.0, 1e12, r).unwrap());
        // inverse gamma(3, 2): mean 1, variance 1
        assert!((mean(&v) - 1.0).abs() < 4.0 / (N as f64).sqrt());
    }

    #[test]
    fn truncated_inverse_gamma_support_and_ks() {
        let v = draws(11, 20_000, |r| sample_trunc_inv_gamma(2.0, 1.0, 0.5, r).unwrap());
        assert!(v.iter().all(|&x| x > 0.0 && x < 0.5));

        let (shape, scale, upper) = (2.0, 1.0, 1.0);
        let kernel = |x: f64| x.powf(-shape - 1.0) * (-scale / x).exp();
        let tol = Tolerance::new(1e-15, 1e-13);
        let total = integrate(kernel, 1e-9, upper, tol).unwrap().value;
        let cdf = |x: f64| integrate(kernel, 1e-9, x.min(upper), tol).unwrap().value / total;
        let v = draws(12, N, |r| sample_trunc_inv_gamma(shape, scale, upper, r).unwrap());
        let ks = ks_statistic(&v, cdf).unwrap();
        assert!(ks.statistic < 0.0062, "{}", ks.statistic);
    }

    #[test]
    fn truncated_inverse_gamma_zero_and_small_shape() {
        let tol = Tolerance::new(1e-15, 1e-13);
        for shape in [0.0, 0.3] {
            let (scale, upper) = (0.5, 2.0);
            let kernel = |x: f64| x.powf(-shape - 1.0) * (-scale / x).exp();
            let total = integrate(kernel, 1e-9, upper, tol).unwrap().value;
            let cdf = |x: f64| integrate(kernel, 1e-9, x.min(upper), tol).unwrap().value / total;
            let v = draws(13, 20_000, |r| sample_trunc_inv_gamma(shape, scale, upper, r).unwrap());
            let ks = ks_statistic(&v, cdf).unwrap();
            assert!(ks.pass, "shape={shape}: {}", ks.statistic);
        }
        assert!(sample_trunc_inv_gamma(-1.0, 1.0, 1.0, &mut RngStream::new(1)).is_err());
        assert!(sample_trunc_inv_gamma(1.0, 1.0, 0.0, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn every_sampler_replays_bitwise() {
        type Draw = fn(&mut RngStream) -> f64;
        let samplers: [Draw; 6] = [
            |r| sample_uniform(r),
            |r| sample_exp(1.5, r).unwrap(),
            |r| sample_gamma(0.7, 2.0, r).unwrap(),
            |r| sample_inv_gauss(1.3, 0.4, r).unwrap(),
            |r| sample_trunc_exp(1.0, 2.0, r).unwrap(),
            |r| sample_trunc_inv_gamma(1.5, 0.5, 3.0, r).unwrap(),
        ];
        for f in samplers {
            let a: Vec<u64> = draws(99, 1000, f).into_iter().map(f64::to_bits).collect();
            let b: Vec<u64> = draws(99, 1000, f).into_iter().map(f64::to_bits).collect();
            assert_eq!(a, b);
        }
    }
}
