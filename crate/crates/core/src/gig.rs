//! The GIG(p, a, b) distribution: parameters, density, closed-form moments,
//! the reciprocal law, the `(p, omega, eta)` reparametrization and the
//! inverse-Gaussian mixing densities.
//!
//! The density is
//!
//! ```text
//! f(x) = (a/b)^(p/2) / (2 K_p(sqrt(ab))) * x^(p-1) * exp(-(a x + b/x) / 2),   x > 0.
//! ```

use crate::error::{domain, GigError, Result};
use crate::special::{
    log_bessel_k_general, log_bessel_k_half, ln_gamma, HalfInteger, HALF_INTEGER_TOLERANCE,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// Validated GIG parameters: any finite order `p`, and `a, b > 0`.
///
/// The gamma (`b = 0`) and inverse-gamma (`a = 0`) limits are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple")]
pub struct GigParams {
    p: f64,
    a: f64,
    b: f64,
}

/// The reparametrization `omega = sqrt(ab)` (concentration) and
/// `eta = sqrt(b/a)` (scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAlt")]
pub struct AltParams {
    p: f64,
    omega: f64,
    eta: f64,
}

#[derive(Deserialize)]
struct RawTriple {
    p: f64,
    a: f64,
    b: f64,
}

impl TryFrom<RawTriple> for GigParams {
    type Error = GigError;

    fn try_from(raw: RawTriple) -> Result<Self> {
        GigParams::new(raw.p, raw.a, raw.b)
    }
}

#[derive(Deserialize)]
struct RawAlt {
    p: f64,
    omega: f64,
    eta: f64,
}

impl TryFrom<RawAlt> for AltParams {
    type Error = GigError;

    fn try_from(raw: RawAlt) -> Result<Self> {
        AltParams::new(raw.p, raw.omega, raw.eta)
    }
}

/// `ln K_|order|(x)`, through the closed forms when the order is a half-integer.
pub(crate) fn ln_bessel_k(order: f64, x: f64) -> Result<f64> {
    match HalfInteger::from_f64(order) {
        Some(h) => Ok(log_bessel_k_half(h, x)?.ln()),
        None => Ok(log_bessel_k_general(order, x)?.ln()),
    }
}

impl GigParams {
    /// Validates `(p, a, b)`.
    pub fn new(p: f64, a: f64, b: f64) -> Result<Self> {
        if !p.is_finite() || !a.is_finite() || !b.is_finite() {
            return domain(format!("GIG parameters must be finite, got ({p}, {a}, {b})"));
        }
        if a <= 0.0 || b <= 0.0 {
            return domain(format!("GIG requires a > 0 and b > 0, got a = {a}, b = {b}"));
        }
        Ok(GigParams { p, a, b })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `sqrt(ab)`.
    pub fn omega(&self) -> f64 {
        (self.a * self.b).sqrt()
    }

    /// `sqrt(b/a)`.
    pub fn eta(&self) -> f64 {
        (self.b / self.a).sqrt()
    }

    /// The order as a half-integer, when it is one (to within `1e-12` on `2p`).
    pub fn half_integer_order(&self) -> Option<HalfInteger> {
        HalfInteger::from_f64(self.p)
    }

    /// True when `p` is `-1/2` to within `1e-12`, where the law is
    /// InvGauss(sqrt(b/a), b) and no mixing representation exists.
    pub fn is_inverse_gaussian(&self) -> bool {
        (self.p + 0.5).abs() < HALF_INTEGER_TOLERANCE
    }

    /// Parameters of `1/X`: if `X ~ GIG(p, a, b)` then `1/X ~ GIG(-p, b, a)`.
    pub fn reciprocal(&self) -> GigParams {
        GigParams { p: -self.p, a: self.b, b: self.a }
    }

    pub fn to_alt(&self) -> AltParams {
        AltParams { p: self.p, omega: self.omega(), eta: self.eta() }
    }

    /// `ln[(a/b)^(p/2) / (2 K_p(sqrt(ab)))]`.
    pub fn log_normalizer(&self) -> Result<f64> {
        Ok(0.5 * self.p * (self.a / self.b).ln() - LN_2 - ln_bessel_k(self.p, self.omega())?)
    }

    /// Log-density at `x > 0`.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_kernel(x)? + self.log_normalizer()?)
    }

    /// `(p-1) ln x - (a x + b/x)/2`, the unnormalized log-density.
    pub fn log_kernel(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return domain(format!("GIG density is defined for x > 0, got {x}"));
        }
        Ok((self.p - 1.0) * x.ln() - 0.5 * (self.a * x + self.b / x))
    }

    /// The mode `((p-1) + sqrt((p-1)^2 + ab)) / a`.
    pub fn mode(&self) -> f64 {
        let q = self.p - 1.0;
        // rationalized when q < 0 to avoid cancellation
        if q >= 0.0 {
            (q + (q * q + self.a * self.b).sqrt()) / self.a
        } else {
            self.b / ((q * q + self.a * self.b).sqrt() - q)
        }
    }

    /// `E[X] = sqrt(b/a) K_{p+1}(sqrt(ab)) / K_p(sqrt(ab))`.
    pub fn mean(&self) -> Result<f64> {
        let w = self.omega();
        Ok(self.eta() * (ln_bessel_k(self.p + 1.0, w)? - ln_bessel_k(self.p, w)?).exp())
    }

    /// `E[X^2] = (b/a) K_{p+2}(sqrt(ab)) / K_p(sqrt(ab))`.
    pub fn second_moment(&self) -> Result<f64> {
        let w = self.omega();
        Ok((self.b / self.a) * (ln_bessel_k(self.p + 2.0, w)? - ln_bessel_k(self.p, w)?).exp())
    }

    pub fn variance(&self) -> Result<f64> {
        let m = self.mean()?;
        Ok((self.second_moment()? - m * m).max(0.0))
    }

    /// Log-density of the mixing variable `Y` in the representation of the
    /// GIG as a continuous mixture of inverse Gaussians (`p != -1/2`).
    ///
    /// For `p < -1/2`: `f_Y(y) = y^(-(p+3/2)) exp(-sqrt(b(a+2y))) / Z0` with
    /// `Z0 = b^((p+1)/2) sqrt(2) Γ(-p-1/2) K_p(sqrt(ab)) / (a^(p/2) sqrt(pi))`.
    ///
    /// For `p > -1/2`: `f_Y(y) = y^(p-1/2) (b+2y)^(-1/2) exp(-sqrt(a(b+2y))) / Z1`
    /// with `Z1 = b^(p/2) sqrt(2) Γ(p+1/2) K_p(sqrt(ab)) / (a^(p/2) sqrt(pi))`.
    pub fn mixing_log_pdf(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) {
            return domain(format!("mixing density is defined for y > 0, got {y}"));
        }
        if self.is_inverse_gaussian() {
            return Err(GigError::Domain(
                "p = -1/2 has no inverse-Gaussian mixing representation".into(),
            ));
        }
        let (p, a, b) = (self.p, self.a, self.b);
        let ln_k = ln_bessel_k(p, self.omega())?;
        let common = 0.5 * LN_2 + ln_k - 0.5 * p * a.ln() - 0.5 * PI.ln();
        if p < -0.5 {
            let ln_z0 = 0.5 * (p + 1.0) * b.ln() + ln_gamma(-p - 0.5) + common;
            Ok(-ln_z0 - (p + 1.5) * y.ln() - (b * (a + 2.0 * y)).sqrt())
        } else {
            let ln_z1 = 0.5 * p * b.ln() + ln_gamma(p + 0.5) + common;
            Ok(-ln_z1 + (p - 0.5) * y.ln() - 0.5 * (b + 2.0 * y).ln() - (a * (b + 2.0 * y)).sqrt())
        }
    }

    /// Mean and shape of the inverse-Gaussian law of `X | Y = y`.
    pub fn conditional_inv_gauss(&self, y: f64) -> (f64, f64) {
        let (p, a, b) = (self.p, self.a, self.b);
        if p < -0.5 {
            ((b / (a + 2.0 * y)).sqrt(), b)
        } else {
            let shape = b + 2.0 * y;
            ((shape / a).sqrt(), shape)
        }
    }
}

impl AltParams {
    pub fn new(p: f64, omega: f64, eta: f64) -> Result<Self> {
        if !p.is_finite() || !(omega > 0.0 && omega.is_finite()) || !(eta > 0.0 && eta.is_finite()) {
            return domain(format!("invalid (p, omega, eta) = ({p}, {omega}, {eta})"));
        }
        Ok(AltParams { p, omega, eta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `a = omega / eta`, `b = omega * eta`.
    pub fn to_gig(&self) -> GigParams {
        GigParams { p: self.p, a: self.omega / self.eta, b: self.omega * self.eta }
    }

    /// The same concentration at unit scale; `GIG(p, omega, eta)` is `eta`
    /// times `GIG(p, omega, 1)`.
    pub fn unit_scale(&self) -> AltParams {
        AltParams { eta: 1.0, ..*self }
    }
}

impl From<AltParams> for GigParams {
    fn from(alt: AltParams) -> Self {
        alt.to_gig()
    }
}

impl From<GigParams> for AltParams {
    fn from(params: GigParams) -> Self {
        params.to_alt()
    }
}
