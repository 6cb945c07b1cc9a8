//! Exact, rejection-free sampling from GIG(p, a, b) for half-integer `p`.
//!
//! For `p > 1`, `GIG(p, a, b)` is the law of `Y + E` with `E ~ Exp(a/2)`
//! independent of `Y`, and `Y` a two-component mixture of `GIG(p-2, a, b)`
//! (weight `w = K_{p-2}(sqrt(ab)) / K_p(sqrt(ab))`) and `GIG(p-1, a, b)`.
//! Descending this ladder ends at order `1/2` (a reciprocal inverse
//! Gaussian) or `-1/2` (an inverse Gaussian). Negative orders go through the
//! reciprocal law.

use crate::error::{GigError, Result};
use crate::gig::GigParams;
use crate::rng::RngStream;
use crate::samplers::{draw_exp, draw_inv_gauss};
use crate::special::{bessel_k_ratio, log_bessel_k_half_table, HalfInteger};
use serde::{Deserialize, Serialize};

/// GIG parameters with a half-integer order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "GigParams", try_from = "GigParams")]
pub struct HalfGigSpec {
    p: HalfInteger,
    a: f64,
    b: f64,
}

impl HalfGigSpec {
    pub fn new(p: HalfInteger, a: f64, b: f64) -> Result<Self> {
        GigParams::new(p.value(), a, b)?;
        Ok(HalfGigSpec { p, a, b })
    }

    /// Fails with a domain error unless `params.p()` is a half-integer.
    pub fn from_params(params: GigParams) -> Result<Self> {
        let p = params.half_integer_order().ok_or_else(|| {
            GigError::Domain(format!("order p = {} is not a half-integer", params.p()))
        })?;
        Ok(HalfGigSpec { p, a: params.a(), b: params.b() })
    }

    pub fn p(&self) -> HalfInteger {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn params(&self) -> GigParams {
        GigParams::new(self.p.value(), self.a, self.b).expect("validated on construction")
    }

    /// `(-p, b, a)`, the law of the reciprocal.
    pub fn reciprocal(&self) -> HalfGigSpec {
        HalfGigSpec { p: self.p.negate(), a: self.b, b: self.a }
    }

    /// The same `a, b` at another half-integer order.
    pub fn with_order(&self, p: HalfInteger) -> HalfGigSpec {
        HalfGigSpec { p, ..*self }
    }
}

impl From<HalfGigSpec> for GigParams {
    fn from(spec: HalfGigSpec) -> Self {
        spec.params()
    }
}

impl TryFrom<GigParams> for HalfGigSpec {
    type Error = GigError;

    fn try_from(params: GigParams) -> Result<Self> {
        HalfGigSpec::from_params(params)
    }
}

fn require_above_one(p: HalfInteger) -> Result<()> {
    if p.twice_value() <= 2 {
        return Err(GigError::Domain(format!("the mixture decomposition needs p > 1, got {p}")));
    }
    Ok(())
}

/// `w = K_{p-2}(sqrt(ab)) / K_p(sqrt(ab))`, the probability of the order
/// `p - 2` branch. Requires `p > 1`.
pub fn mixture_weight(spec: &HalfGigSpec) -> Result<f64> {
    require_above_one(spec.p)?;
    bessel_k_ratio(spec.p, (spec.a * spec.b).sqrt())
}

/// `mean(p) - [w mean(p-2) + (1-w) mean(p-1) + 2/a]`, which vanishes
/// analytically. Requires `p > 1`.
pub fn mean_decomposition_check(spec: &HalfGigSpec) -> Result<f64> {
    mean_decomposition_residual(spec, 0.0)
}

pub(crate) fn mean_decomposition_residual(spec: &HalfGigSpec, weight_offset: f64) -> Result<f64> {
    let w = mixture_weight(spec)? + weight_offset;
    let mean_at = |k: i64| spec.with_order(spec.p.minus(k)).params().mean();
    Ok(mean_at(0)? - (w * mean_at(2)? + (1.0 - w) * mean_at(1)? + 2.0 / spec.a))
}

/// One exact draw from `GIG(p, a, b)`, half-integer `p`.
///
/// Builds the weight ladder for the spec on every call; use [`HalfSampler`]
/// to draw repeatedly at fixed parameters. Both produce the same draws from
/// the same stream.
pub fn sample_half(spec: &HalfGigSpec, rng: &mut RngStream) -> Result<f64> {
    Ok(HalfSampler::new(*spec)?.sample(rng))
}

/// Exact sampler for a fixed half-integer spec with the mixture weights of
/// every level precomputed.
#[derive(Debug, Clone)]
pub struct HalfSampler {
    spec: HalfGigSpec,
    // weights[k] is w at order k + 1/2 (entry 0 unused)
    weights: Vec<f64>,
}

impl HalfSampler {
    pub fn new(spec: HalfGigSpec) -> Result<Self> {
        Self::with_weight_offset(spec, 0.0)
    }

    /// Fault-injection hook: every mixture weight is shifted by `offset`
    /// (clamped to `[0, 1]`), which breaks exactness.
    pub(crate) fn with_weight_offset(spec: HalfGigSpec, offset: f64) -> Result<Self> {
        let top = spec.p.abs();
        let ln_k = log_bessel_k_half_table(top, (spec.a * spec.b).sqrt())?;
        let mut weights = vec![f64::NAN; ln_k.len()];
        for k in 1..ln_k.len() {
            // |k + 1/2 - 2| has ladder index 0 for k = 1, else k - 2
            let lower = ln_k[k.saturating_sub(2)];
            weights[k] = ((lower - ln_k[k]).exp() + offset).clamp(0.0, 1.0);
        }
        Ok(HalfSampler { spec, weights })
    }

    pub fn spec(&self) -> HalfGigSpec {
        self.spec
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let HalfGigSpec { p, a, b } = self.spec;
        match p.twice_value() {
            -1 => draw_inv_gauss((b / a).sqrt(), b, rng),
            t if t < 0 => 1.0 / self.positive(p.abs().twice_value(), b, a, rng),
            t => self.positive(t, a, b, rng),
        }
    }

    pub fn sample_n(&self, n: usize, rng: &mut RngStream) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Draw at order `twice / 2 >= -1/2` with (possibly swapped) `a, b`.
    fn positive(&self, twice: i64, a: f64, b: f64, rng: &mut RngStream) -> f64 {
        match twice {
            -1 => draw_inv_gauss((b / a).sqrt(), b, rng),
            1 => 1.0 / draw_inv_gauss((a / b).sqrt(), a, rng),
            _ => {
                let w = self.weights[((twice - 1) / 2) as usize];
                let u = rng.uniform();
                let e = draw_exp(0.5 * a, rng);
                let step = if u < w { 4 } else { 2 };
                self.positive(twice - step, a, b, rng) + e
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::{ks_statistic, QuadratureCdf};
    use crate::special::inv_gauss_cdf;

    fn spec(twice: i64, a: f64, b: f64) -> HalfGigSpec {
        HalfGigSpec::new(HalfInteger::new(twice).unwrap(), a, b).unwrap()
    }

    #[test]
    fn weights() {
        assert!((mixture_weight(&spec(3, 1.0, 1.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((mixture_weight(&spec(3, 4.0, 1.0)).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        for t in (3..=21).step_by(2) {
            let w = mixture_weight(&spec(t, 0.7, 2.0)).unwrap();
            assert!(w > 0.0 && w < 1.0);
        }
        assert!(mixture_weight(&spec(1, 1.0, 1.0)).is_err());
        assert!(mixture_weight(&spec(-3, 1.0, 1.0)).is_err());
    }

    #[test]
    fn sampler_weights_match_ratio() {
        let s = HalfSampler::new(spec(11, 2.0, 0.5)).unwrap();
        for k in 1..=5 {
            let w = mixture_weight(&spec(2 * k as i64 + 1, 2.0, 0.5)).unwrap();
            assert!((s.weights[k] - w).abs() < 1e-15);
        }
    }

    #[test]
    fn mean_decomposition() {
        for (t, a, b) in [(3, 1.0, 1.0), (7, 2.0, 0.5), (9, 4.0, 1.0), (21, 0.5, 2.0)] {
            let s = spec(t, a, b);
            let mean = s.params().mean().unwrap();
            assert!(mean_decomposition_check(&s).unwrap().abs() <= 1e-10 * mean, "{t}");
        }
        assert!(mean_decomposition_check(&spec(1, 1.0, 1.0)).is_err());
        assert!(mean_decomposition_residual(&spec(5, 1.0, 1.0), 0.01).unwrap().abs() > 1e-4);
    }

    #[test]
    fn from_params_requires_half_integer() {
        assert!(HalfGigSpec::from_params(GigParams::new(0.7, 1.0, 1.0).unwrap()).is_err());
        assert!(HalfGigSpec::from_params(GigParams::new(1.0, 1.0, 1.0).unwrap()).is_err());
        let s = HalfGigSpec::from_params(GigParams::new(-2.5, 1.0, 3.0).unwrap()).unwrap();
        assert_eq!(s.p().twice_value(), -5);
        assert!(HalfGigSpec::new(HalfInteger::new(3).unwrap(), 0.0, 1.0).is_err());
    }

    #[test]
    fn inverse_gaussian_order() {
        let s = HalfSampler::new(spec(-1, 1.0, 1.0)).unwrap();
        let v = s.sample_n(100_000, &mut RngStream::new(11));
        assert!(ks_statistic(&v, |x| inv_gauss_cdf(x, 1.0, 1.0).unwrap()).unwrap().pass);
    }

    #[test]
    fn three_halves_against_quadrature() {
        let s = HalfSampler::new(spec(3, 1.0, 1.0)).unwrap();
        let v = s.sample_n(100_000, &mut RngStream::new(12));
        let oracle = QuadratureCdf::new(s.spec().params()).unwrap();
        let ks = ks_statistic(&v, |x| oracle.cdf(x).unwrap()).unwrap();
        assert!(ks.pass, "{ks:?}");

        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let sd = (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        let m_minus = spec(-1, 1.0, 1.0).params().mean().unwrap();
        let m_plus = spec(1, 1.0, 1.0).params().mean().unwrap();
        let target = 0.5 * m_minus + 0.5 * m_plus + 2.0;
        assert!((m - target).abs() < 4.0 * sd / n.sqrt());
    }

    #[test]
    fn reciprocal_branch_is_bitwise() {
        for t in [3, 5, 9] {
            let neg = HalfSampler::new(spec(-t, 0.5, 2.0)).unwrap();
            let pos = HalfSampler::new(spec(t, 2.0, 0.5)).unwrap();
            let (mut r1, mut r2) = (RngStream::new(13), RngStream::new(13));
            for _ in 0..1000 {
                assert_eq!(neg.sample(&mut r1).to_bits(), (1.0 / pos.sample(&mut r2)).to_bits());
            }
        }
    }

    #[test]
    fn replay_and_one_shot_agree() {
        let s = spec(9, 1.0, 3.0);
        let sampler = HalfSampler::new(s).unwrap();
        let (mut r1, mut r2) = (RngStream::new(14), RngStream::new(14));
        for _ in 0..200 {
            let x = sampler.sample(&mut r1);
            assert!(x > 0.0 && x.is_finite());
            assert_eq!(x.to_bits(), sample_half(&s, &mut r2).unwrap().to_bits());
        }
    }

    #[test]
    fn serde_round_trip() {
        let s = spec(-7, 0.5, 2.0);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<HalfGigSpec>(&json).unwrap(), s);
        let bad = serde_json::to_string(&GigParams::new(0.7, 1.0, 1.0).unwrap()).unwrap();
        assert!(serde_json::from_str::<HalfGigSpec>(&bad).is_err());
    }
}
