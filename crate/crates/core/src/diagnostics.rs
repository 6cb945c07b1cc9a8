//! Effective sample size, Monte Carlo standard error, Kolmogorov–Smirnov
//! tests and an independent quadrature CDF used as an oracle.

use crate::error::{GigError, Result};
use crate::gig::GigParams;
use crate::quadrature::{integrate_to_infinity, integrate, Tolerance};
use serde::{Deserialize, Serialize};

/// Coefficient of the asymptotic 0.1%-level one-sample KS critical value.
pub const KS_COEFFICIENT_001: f64 = 1.949;

/// Largest reported ESS as a multiple of the chain length.
pub const MAX_ESS_RATIO: f64 = 1.05;

/// Shortest chain accepted by [`ess`].
pub const MIN_ESS_LENGTH: usize = 100;

/// Shortest sample accepted by [`ks_statistic`].
pub const MIN_KS_LENGTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssReport {
    pub ess: f64,
    pub ess_per_iter: f64,
    pub n: usize,
    /// Autocorrelations `rho_0, rho_1, ...` up to the truncation lag.
    pub autocorr: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub critical_001: f64,
    pub pass: bool,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Effective sample size of a single chain by Geyer's initial monotone
/// sequence estimator.
///
/// Autocovariances use the biased `1/n` normalization. Pair sums
/// `rho_{2m} + rho_{2m+1}` are accumulated until the first non-positive one
/// and forced to be non-increasing. Antithetic chains can push the raw
/// estimate above `n`; it is capped at `1.05 n`.
pub fn ess(chain: &[f64]) -> Result<EssReport> {
    let n = chain.len();
    if n < MIN_ESS_LENGTH {
        return Err(GigError::Precondition(format!(
            "ESS needs at least {MIN_ESS_LENGTH} draws, got {n}"
        )));
    }
    if chain.iter().any(|x| !x.is_finite()) {
        return Err(GigError::Numeric("chain contains non-finite values".into()));
    }
    let m = mean(chain);
    let centered: Vec<f64> = chain.iter().map(|x| x - m).collect();
    let autocov = |k: usize| -> f64 {
        centered[..n - k].iter().zip(&centered[k..]).map(|(u, v)| u * v).sum::<f64>() / n as f64
    };
    let gamma0 = autocov(0);
    let scale = chain.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if !(gamma0 > (1e-14 * scale).powi(2)) {
        return Err(GigError::Degenerate("chain is constant".into()));
    }

    let mut autocorr = vec![1.0];
    let mut sum_pairs = 0.0;
    let mut prev_pair = f64::INFINITY;
    let mut k = 0;
    while k + 1 < n {
        let r0 = if k == 0 { 1.0 } else { autocov(k) / gamma0 };
        let r1 = autocov(k + 1) / gamma0;
        let pair = r0 + r1;
        if pair <= 0.0 {
            break;
        }
        if k > 0 {
            autocorr.push(r0);
        }
        autocorr.push(r1);
        let pair = pair.min(prev_pair);
        sum_pairs += pair;
        prev_pair = pair;
        k += 2;
    }
    let tau = 2.0 * sum_pairs - 1.0;
    let ess = (n as f64 / tau).min(MAX_ESS_RATIO * n as f64);
    Ok(EssReport { ess, ess_per_iter: ess / n as f64, n, autocorr })
}

/// Monte Carlo standard error of the chain mean, `sd / sqrt(ESS)`.
pub fn mcse(chain: &[f64]) -> Result<f64> {
    let report = ess(chain)?;
    let m = mean(chain);
    let var = chain.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (chain.len() - 1) as f64;
    Ok((var / report.ess).sqrt())
}

/// Asymptotic 0.1%-level KS critical value `1.949 / sqrt(n)`.
pub fn ks_critical_001(n: usize) -> f64 {
    KS_COEFFICIENT_001 / (n as f64).sqrt()
}

/// Half-width of the DKW confidence band at level `alpha`:
/// `sqrt(ln(2/alpha) / (2n))`.
pub fn dkw_band(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic of `samples` against `cdf`,
/// with the 0.1% decision `statistic < 1.949/sqrt(n)`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    let n = samples.len();
    if n < MIN_KS_LENGTH {
        return Err(GigError::Precondition(format!(
            "KS test needs at least {MIN_KS_LENGTH} samples, got {n}"
        )));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(GigError::Numeric("sample contains NaN".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if f.is_nan() {
            return Err(GigError::Numeric(format!("reference CDF is NaN at {x}")));
        }
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    let critical_001 = ks_critical_001(n);
    Ok(KsResult { statistic: d, n, critical_001, pass: d < critical_001 })
}

/// GIG CDF by direct numerical integration of the density, independent of
/// the Bessel recurrences used by the closed-form routines.
///
/// The kernel is scaled by its value at the mode, the interval is split at
/// the mode, and the left piece is integrated in `u = 1/x` so that both
/// pieces are half-infinite with exponentially decaying integrands. The
/// normalizing constant is itself obtained by quadrature.
#[derive(Debug, Clone)]
pub struct QuadratureCdf {
    params: GigParams,
    mode: f64,
    ln_peak: f64,
    left_mass: f64,
    total: f64,
}

impl QuadratureCdf {
    pub fn new(params: GigParams) -> Result<Self> {
        let mode = params.mode();
        let ln_peak = params.log_kernel(mode)?;
        let mut oracle = QuadratureCdf { params, mode, ln_peak, left_mass: 0.0, total: 0.0 };
        let tol = Tolerance { abs: 1e-300, rel: 1e-13, max_intervals: 8000 };
        oracle.left_mass = oracle.left_from(1.0 / mode, tol)?;
        let right = integrate_to_infinity(|x| oracle.scaled(x), mode, tol)?.value;
        oracle.total = oracle.left_mass + right;
        Ok(oracle)
    }

    fn scaled(&self, x: f64) -> f64 {
        if !(x > 0.0) || x.is_infinite() {
            return 0.0;
        }
        let (p, a, b) = (self.params.p(), self.params.a(), self.params.b());
        ((p - 1.0) * x.ln() - 0.5 * (a * x + b / x) - self.ln_peak).exp()
    }

    // ∫_0^{1/u0} k(x) dx = ∫_{u0}^∞ k(1/u) / u^2 du
    fn left_from(&self, u0: f64, tol: Tolerance) -> Result<f64> {
        Ok(integrate_to_infinity(
            |u| if u > 0.0 && u.is_finite() { self.scaled(1.0 / u) / (u * u) } else { 0.0 },
            u0,
            tol,
        )?
        .value)
    }

    pub fn params(&self) -> GigParams {
        self.params
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(GigError::Domain("CDF argument is NaN".into()));
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x == f64::INFINITY {
            return Ok(1.0);
        }
        let tol = Tolerance { abs: 1e-16 * self.total, rel: 1e-13, max_intervals: 8000 };
        let v = if x <= self.mode {
            self.left_from(1.0 / x, tol)? / self.total
        } else {
            (self.left_mass + integrate(|t| self.scaled(t), self.mode, x, tol)?.value) / self.total
        };
        Ok(v.clamp(0.0, 1.0))
    }

    /// Quantile by bisection on [`QuadratureCdf::cdf`], to relative width `1e-15`.
    pub fn quantile(&self, prob: f64) -> Result<f64> {
        if !(prob > 0.0 && prob < 1.0) {
            return Err(GigError::Domain(format!("quantile level must be in (0, 1), got {prob}")));
        }
        let (mut lo, mut hi) = (self.mode, self.mode);
        while self.cdf(lo)? > prob {
            lo *= 0.5;
        }
        while self.cdf(hi)? < prob {
            hi *= 2.0;
        }
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid)? < prob {
                lo = mid;
            } else {
                hi = mid;
            }
            if mid == lo && mid == hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Total mass of the inverse-Gaussian mixing density of `params` by
/// quadrature over `(0, 1]` and `(1, ∞)`; equals 1 when the normalizing
/// constants are right.
pub fn mixing_density_mass(params: &GigParams) -> Result<f64> {
    params.mixing_log_pdf(1.0)?;
    let f = |y: f64| if y > 0.0 && y.is_finite() { params.mixing_log_pdf(y).map_or(0.0, f64::exp) } else { 0.0 };
    let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 8000 };
    Ok(integrate(f, 0.0, 1.0, tol)?.value + integrate_to_infinity(f, 1.0, tol)?.value)
}

/// One-shot quadrature CDF; see [`QuadratureCdf`].
pub fn quadrature_cdf(x: f64, params: GigParams) -> Result<f64> {
    QuadratureCdf::new(params)?.cdf(x)
}
