//! Closed-form CDF of GIG(p, a, b) for half-integer `p`.
//!
//! With `G_p` the CDF at order `p` and `w` the mixture weight of
//! [`crate::exact`], for `p > 1`
//!
//! ```text
//! G_p(x) = w G_{p-2}(x) + (1-w) G_{p-1}(x) - exp(-a x / 2) I_p(x),
//! I_p(x) = w (ab)^((p-2)/2) / (2^(p-1) K_{p-2}) Γ(2-p, b/2x)
//!        + (1-w) (ab)^((p-1)/2) / (2^p K_{p-1}) Γ(1-p, b/2x),
//! ```
//!
//! with Bessel functions at `sqrt(ab)`. The ladder starts from the two
//! inverse-Gaussian orders `-1/2` and `1/2` and is filled bottom-up.
//! Negative orders use `G_p(x) = 1 - G_{-p}(1/x)` with `a, b` swapped.

use crate::error::{GigError, Result};
use crate::exact::HalfGigSpec;
use crate::special::{
    inv_gauss_cdf, inv_gauss_sf, ln_1m_exp, ln_add_exp, log_bessel_k_half_table,
    upper_incomplete_gamma, HalfInteger,
};
use serde::Serialize;
use std::f64::consts::LN_2;

/// CDF values `G_{1/2}(x), G_{3/2}(x), ..., G_p(x)` at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfTable {
    pub values: Vec<f64>,
    pub spec: HalfGigSpec,
    pub point: f64,
}

struct Ladder {
    ln_k: Vec<f64>,
    ln_ab: f64,
    a: f64,
    b: f64,
}

impl Ladder {
    fn new(top: HalfInteger, a: f64, b: f64) -> Result<Self> {
        let ln_k = log_bessel_k_half_table(top.abs(), (a * b).sqrt())?;
        Ok(Ladder { ln_k, ln_ab: (a * b).ln(), a, b })
    }

    /// `ln K_{|twice/2|}`.
    fn ln_k(&self, twice: i64) -> f64 {
        self.ln_k[((twice.unsigned_abs() - 1) / 2) as usize]
    }

    /// `ln w` at order `twice / 2 > 1`.
    fn ln_weight(&self, twice: i64) -> f64 {
        self.ln_k(twice - 4) - self.ln_k(twice)
    }

    /// `ln[exp(-a x / 2) I_p(x)]` at order `twice / 2 > 1`.
    fn ln_scaled_correction(&self, x: f64, twice: i64) -> Result<f64> {
        let p = twice as f64 / 2.0;
        let z = self.b / (2.0 * x);
        let ln_w = self.ln_weight(twice);
        let t1 = ln_w + 0.5 * (p - 2.0) * self.ln_ab - (p - 1.0) * LN_2 - self.ln_k(twice - 4)
            + upper_incomplete_gamma(2.0 - p, z)?.ln();
        let t2 = ln_1m_exp(ln_w) + 0.5 * (p - 1.0) * self.ln_ab - p * LN_2 - self.ln_k(twice - 2)
            + upper_incomplete_gamma(1.0 - p, z)?.ln();
        Ok(-0.5 * self.a * x + ln_add_exp(t1, t2))
    }
}

fn require_point(x: f64) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(GigError::Domain(format!("CDF argument must be positive, got {x}")))
    }
}

/// The correction term `I_p(x)` for half-integer `p > 1`, assembled in log
/// space.
pub fn correction_term(x: f64, p: HalfInteger, a: f64, b: f64) -> Result<f64> {
    require_point(x)?;
    if x.is_infinite() {
        return Err(GigError::Domain("correction term needs finite x".into()));
    }
    let spec = HalfGigSpec::new(p, a, b)?;
    if p.twice_value() <= 2 {
        return Err(GigError::Domain(format!("correction term needs p > 1, got {p}")));
    }
    let ladder = Ladder::new(spec.p(), a, b)?;
    Ok((ladder.ln_scaled_correction(x, p.twice_value())? + 0.5 * a * x).exp())
}

/// `G_{-1/2}(x)`: the CDF of InvGauss(sqrt(b/a), b).
fn cdf_minus_half(x: f64, a: f64, b: f64) -> Result<f64> {
    inv_gauss_cdf(x, (b / a).sqrt(), b)
}

/// `G_{1/2}(x) = P[InvGauss(sqrt(a/b), a) > 1/x]`.
fn cdf_plus_half(x: f64, a: f64, b: f64) -> Result<f64> {
    inv_gauss_sf(1.0 / x, (a / b).sqrt(), a)
}

/// The bottom-up table `G_{1/2}(x), ..., G_p(x)` for `p >= 1/2`.
pub fn cdf_table(x: f64, spec: &HalfGigSpec) -> Result<CdfTable> {
    require_point(x)?;
    if x.is_infinite() {
        return Err(GigError::Domain("CDF table needs finite x".into()));
    }
    let p = spec.p();
    if p.is_negative() {
        return Err(GigError::Domain(format!("CDF table needs p >= 1/2, got {p}")));
    }
    let (a, b) = (spec.a(), spec.b());
    let len = p.ladder_index() + 1;
    let mut values = Vec::with_capacity(len);
    values.push(cdf_plus_half(x, a, b)?);
    if len > 1 {
        let ladder = Ladder::new(p, a, b)?;
        let g_minus_half = cdf_minus_half(x, a, b)?;
        for k in 1..len {
            let twice = 2 * k as i64 + 1;
            let w = ladder.ln_weight(twice).exp();
            let g_down2 = if k >= 2 { values[k - 2] } else { g_minus_half };
            let g = w * g_down2 + (1.0 - w) * values[k - 1]
                - ladder.ln_scaled_correction(x, twice)?.exp();
            values.push(g.clamp(0.0, 1.0));
        }
    }
    Ok(CdfTable { values, spec: *spec, point: x })
}

/// `P[X <= x]` for `X ~ GIG(p, a, b)` with half-integer `p`.
pub fn cdf_half(x: f64, spec: &HalfGigSpec) -> Result<f64> {
    require_point(x)?;
    if x.is_infinite() {
        return Ok(1.0);
    }
    let (a, b) = (spec.a(), spec.b());
    match spec.p().twice_value() {
        -1 => cdf_minus_half(x, a, b),
        1 => cdf_plus_half(x, a, b),
        t if t < 0 => Ok((1.0 - cdf_half(1.0 / x, &spec.reciprocal())?).clamp(0.0, 1.0)),
        _ => Ok(*cdf_table(x, spec)?.values.last().expect("non-empty table")),
    }
}

/// The `q`-quantile, by bisection from a bracket grown geometrically around
/// the mean, to `|cdf_half(x) - q| <= 1e-10`.
pub fn quantile_half(q: f64, spec: &HalfGigSpec) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(GigError::Domain(format!("quantile level must be in (0, 1), got {q}")));
    }
    let cdf = |x: f64| cdf_half(x, spec);
    let start = spec.params().mean()?;
    let (mut lo, mut hi) = (start, start);
    while cdf(lo)? > q {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(GigError::Numeric(format!("no lower bracket for quantile {q}")));
        }
    }
    while cdf(hi)? < q {
        hi *= 2.0;
        if hi.is_infinite() {
            return Err(GigError::Numeric(format!("no upper bracket for quantile {q}")));
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        let g = cdf(mid)?;
        if (g - q).abs() <= 1e-13 || hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(mid);
        }
        if g < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
