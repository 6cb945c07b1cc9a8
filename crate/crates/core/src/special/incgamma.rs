use super::{ln_1m_exp, log_erfc, require_positive, LogValue, HALF_INTEGER_TOLERANCE};
use crate::error::{GigError, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 100_000;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ln Γ(s)` for `s > 0`.
pub(crate) fn ln_gamma(s: f64) -> f64 {
    libm::lgamma_r(s).0
}

/// `ln γ(s, z)` (lower) by its power series; `s > 0`.
fn ln_lower_series(s: f64, z: f64) -> Result<f64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut denom = s;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            return Ok(s * z.ln() - z + sum.ln());
        }
    }
    Err(GigError::Numeric(format!("lower incomplete gamma series did not converge (s={s}, z={z})")))
}

/// `ln Γ(s, z)` by the Legendre continued fraction (modified Lentz). Valid for
/// every real `s` when `z > 0`; converges quickly once `z` is not small.
fn ln_upper_cf(s: f64, z: f64) -> Result<f64> {
    let mut b = z + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = if b.abs() < TINY { 1.0 / TINY } else { 1.0 / b };
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let an = -fi * (fi - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            if h <= 0.0 {
                break;
            }
            return Ok(s * z.ln() - z + h.ln());
        }
    }
    Err(GigError::Numeric(format!("upper incomplete gamma continued fraction failed (s={s}, z={z})")))
}

/// `(ln γ(s, z), ln Γ(s, z))` for `s > 0`, each computed on the side where it
/// is well conditioned.
pub(crate) fn ln_gamma_tails(s: f64, z: f64) -> Result<(f64, f64)> {
    let full = ln_gamma(s);
    if z == 0.0 {
        return Ok((f64::NEG_INFINITY, full));
    }
    if z < s + 1.0 {
        let lower = ln_lower_series(s, z)?;
        Ok((lower, full + ln_1m_exp((lower - full).min(0.0))))
    } else {
        let upper = ln_upper_cf(s, z)?;
        Ok((full + ln_1m_exp((upper - full).min(0.0)), upper))
    }
}

/// `E_1(z) = Γ(0, z)` for `0 < z < 1` by its convergent series.
fn ln_e1_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let fk = k as f64;
        term *= -z / fk;
        let add = term / fk;
        sum += add;
        if add.abs() < EPS * sum.abs().max(1e-300) {
            break;
        }
    }
    (-EULER_GAMMA - z.ln() - sum).ln()
}

/// Upper incomplete gamma function `Γ(s, z) = ∫_z^∞ t^{s-1} e^{-t} dt`.
///
/// Accepts any `s > 0`, and integer or half-integer `s <= 0`. For `s < 0`
/// and `z < 1` the value is built by the downward recurrence
/// `Γ(s, z) = (z^s e^{-z} - Γ(s+1, z)) / |s|` from the anchor
/// `Γ(1/2, z) = sqrt(pi) erfc(sqrt z)` (or `Γ(0, z) = E_1(z)` for integer `s`),
/// carried in log space. For `z >= 1` the continued fraction is used directly;
/// there the recurrence would cancel.
pub fn upper_incomplete_gamma(s: f64, z: f64) -> Result<LogValue> {
    require_positive("incomplete gamma argument", z)?;
    if !s.is_finite() {
        return Err(GigError::Domain(format!("incomplete gamma shape must be finite, got {s}")));
    }
    if s == 0.5 {
        return Ok(LogValue::from_ln(0.5 * PI.ln() + log_erfc(z.sqrt())));
    }
    if s > 0.0 {
        return Ok(LogValue::from_ln(ln_gamma_tails(s, z)?.1));
    }
    let twice = (2.0 * s).round();
    if (2.0 * s - twice).abs() > HALF_INTEGER_TOLERANCE {
        return Err(GigError::Domain(format!(
            "non-positive incomplete gamma shape must be an integer or half-integer, got {s}"
        )));
    }
    if z >= 1.0 {
        return Ok(LogValue::from_ln(ln_upper_cf(twice / 2.0, z)?));
    }
    let (mut shape, mut ln_value) = if (twice as i64) % 2 != 0 {
        (0.5, 0.5 * PI.ln() + log_erfc(z.sqrt()))
    } else {
        (0.0, ln_e1_series(z))
    };
    let ln_z = z.ln();
    let target = twice / 2.0;
    while shape > target + 0.25 {
        shape -= 1.0;
        // Γ(s, z) = z^s e^{-z} (1 - Γ(s+1, z) / (z^s e^{-z})) / |s|
        let ln_lead = shape * ln_z - z;
        ln_value = ln_lead + ln_1m_exp((ln_value - ln_lead).min(0.0)) - shape.abs().ln();
    }
    Ok(LogValue::from_ln(ln_value))
}
