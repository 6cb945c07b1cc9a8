use super::{require_positive, HalfInteger, LogValue};
use crate::error::{GigError, Result};
use crate::quadrature::{integrate_with_breaks, Tolerance};
use std::f64::consts::PI;

/// `ln K_{1/2}(x) = ln sqrt(pi / 2x) - x`.
fn ln_k_one_half(x: f64) -> f64 {
    0.5 * (PI / (2.0 * x)).ln() - x
}

/// `ln K_nu(x)` for `nu = 1/2, 3/2, ..., max_order` (index `k` holds order `k + 1/2`).
///
/// Runs the recurrence `K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu` upward on the
/// ratio `K_{nu+1} / K_nu`, which never overflows. Upward recurrence is stable
/// for K (it is the dominant solution); the same recurrence run downward, or
/// used for I, would not be.
pub fn log_bessel_k_half_table(max_order: HalfInteger, x: f64) -> Result<Vec<f64>> {
    require_positive("Bessel argument", x)?;
    let n = max_order.abs().ladder_index();
    let mut out = Vec::with_capacity(n + 1);
    let mut ln_k = ln_k_one_half(x);
    out.push(ln_k);
    // ratio K_{3/2} / K_{1/2}
    let mut ratio = 1.0 + 1.0 / x;
    let mut nu = 0.5;
    for _ in 0..n {
        ln_k += ratio.ln();
        out.push(ln_k);
        nu += 1.0;
        ratio = 1.0 / ratio + 2.0 * nu / x;
    }
    Ok(out)
}

/// `ln K_{|order|}(x)` for half-integer order, from the closed form at order
/// 1/2 and the upward recurrence.
pub fn log_bessel_k_half(order: HalfInteger, x: f64) -> Result<LogValue> {
    let table = log_bessel_k_half_table(order, x)?;
    Ok(LogValue::from_ln(*table.last().expect("table is non-empty")))
}

/// `K_{p-2}(x) / K_p(x)` for half-integer `p > 1`; always inside `(0, 1)`.
pub fn bessel_k_ratio(p: HalfInteger, x: f64) -> Result<f64> {
    if p.twice_value() <= 2 {
        return Err(GigError::Domain(format!("Bessel ratio needs p > 1, got {p}")));
    }
    let table = log_bessel_k_half_table(p, x)?;
    let lower = table[p.minus(2).ladder_index()];
    let upper = table[p.ladder_index()];
    Ok((lower - upper).exp())
}

/// `ln cosh(y)` without overflow.
fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y + (-2.0 * y).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln K_{|order|}(x)` for arbitrary real order, by adaptive quadrature of
/// `K_nu(x) = ∫_0^∞ exp(-x cosh t) cosh(nu t) dt`.
///
/// The integrand is rescaled by its peak value and truncated where it falls
/// below `1e-18` of the peak. Intended for normalizing constants at
/// non-half-integer order; the half-integer closed forms are much cheaper.
pub fn log_bessel_k_general(order: f64, x: f64) -> Result<LogValue> {
    require_positive("Bessel argument", x)?;
    if !order.is_finite() {
        return Err(GigError::Domain(format!("Bessel order must be finite, got {order}")));
    }
    let nu = order.abs();
    // exponent relative to e^{-x}
    let h = |t: f64| -x * (t.cosh() - 1.0) + ln_cosh(nu * t);

    // h is unimodal on [0, ∞); its maximizer solves x sinh t = nu tanh(nu t),
    // which lies below asinh(nu / x).
    let mut lo = 0.0;
    let mut hi = (nu / x).asinh() + 1e-12;
    let slope = |t: f64| -x * t.sinh() + nu * (nu * t).tanh();
    let peak_t = if nu * nu <= x {
        0.0
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let peak = h(peak_t);

    let cutoff = (1e-18f64).ln();
    let mut step = 1.0;
    let mut t_max = peak_t + step;
    while h(t_max) - peak > cutoff {
        step *= 2.0;
        t_max = peak_t + step;
        if t_max > 1e3 {
            return Err(GigError::Numeric(format!(
                "Bessel integrand does not decay (order {order}, x {x})"
            )));
        }
    }

    let integrand = |t: f64| (h(t) - peak).exp();
    let mut breaks = vec![0.0];
    if peak_t > 0.0 {
        breaks.push(peak_t);
    }
    breaks.push(t_max);
    let tol = Tolerance { abs: 1e-300, rel: 1e-14, max_intervals: 2000 };
    let integral = integrate_with_breaks(integrand, &breaks, tol).map_err(|e| {
        GigError::Numeric(format!("K_{order}({x}) quadrature failed: {e}"))
    })?;
    Ok(LogValue::from_ln(-x + peak + integral.value.ln()))
}
