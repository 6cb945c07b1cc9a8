//! Markov chain samplers built on the inverse-Gaussian mixture
//! representation of the GIG, the truncated-conditional alternative, and
//! the normal-model demonstration that embeds the augmented sampler.
//!
//! For `p < -1/2` the augmentation `Y` has
//! `X | Y = y ~ InvGauss(sqrt(b/(a+2y)), b)` and `Y | X = x ~ Gamma(-(p+1/2), rate x)`;
//! for `p > -1/2`, `X | Y = y ~ InvGauss(sqrt((b+2y)/a), b+2y)` and
//! `Y | X = x ~ Gamma(p+1/2, rate 1/x)`. At `p = -1/2` the law is an inverse
//! Gaussian and draws are i.i.d.

use crate::error::{GigError, Result};
use crate::exact::{HalfGigSpec, HalfSampler};
use crate::gig::GigParams;
use crate::rng::RngStream;
use crate::samplers::{draw_exp, draw_gamma, draw_inv_gauss, sample_std_normal, sample_trunc_inv_gamma};
use serde::{Deserialize, Serialize};

/// Default warmup for single-distribution sampling.
pub const DEFAULT_WARMUP: usize = 1_000;

/// Default warmup for the normal-model demonstration.
pub const DEFAULT_DEMO_WARMUP: usize = 5_000;

/// Default number of inner augmented sweeps standing in for a direct GIG draw.
pub const DEFAULT_INNER_SWEEPS: usize = 25;

/// Retained draws of a Markov chain, stored row-major with one component per
/// label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chain {
    labels: Vec<String>,
    warmup: usize,
    values: Vec<f64>,
}

impl Chain {
    /// `values` holds `len * labels.len()` finite numbers, row by row.
    pub fn new(labels: Vec<String>, warmup: usize, values: Vec<f64>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 || values.is_empty() || values.len() % dim != 0 {
            return Err(GigError::Precondition(format!(
                "chain needs a non-empty whole number of {dim}-component draws, got {} values",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(GigError::Numeric(format!("chain contains non-finite draw {v}")));
        }
        Ok(Chain { labels, warmup, values })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn warmup(&self) -> usize {
        self.warmup
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Number of retained draws.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn draw(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().skip(j).step_by(self.dim()).copied().collect()
    }

    /// The column with the given label, if any.
    pub fn series(&self, label: &str) -> Option<Vec<f64>> {
        self.labels.iter().position(|l| l == label).map(|j| self.column(j))
    }

    /// Every `k`-th draw, starting with the first.
    pub fn thin(&self, k: usize) -> Chain {
        let k = k.max(1);
        let d = self.dim();
        let values = self.values.chunks(d).step_by(k).flatten().copied().collect();
        Chain { labels: self.labels.clone(), warmup: self.warmup, values }
    }
}

/// The pair `(X, Y)` of the augmented chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GibbsState {
    pub x: f64,
    pub y: f64,
}

/// The starting value of the augmentation: `-(p+1/2) sqrt(b/a)` when
/// `p < -1/2`, `(p+1/2) sqrt(b/a)` when `p > -1/2`. Not applicable at `p = -1/2`.
pub fn gibbs_init_y(params: &GigParams) -> Result<f64> {
    if params.is_inverse_gaussian() {
        return Err(GigError::Domain(
            "p = -1/2 is sampled directly; no augmentation to initialize".into(),
        ));
    }
    Ok((params.p() + 0.5).abs() * params.eta())
}

/// Precomputed constants of one augmented sweep.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    a: f64,
    b: f64,
    gamma_shape: f64,
    below: bool,
}

impl Kernel {
    fn new(params: &GigParams) -> Result<Self> {
        if params.is_inverse_gaussian() {
            return Err(GigError::Domain("p = -1/2 has no augmented sweep".into()));
        }
        let p = params.p();
        Ok(Kernel { a: params.a(), b: params.b(), gamma_shape: (p + 0.5).abs(), below: p < -0.5 })
    }

    #[inline]
    fn step(&self, y: f64, rng: &mut RngStream) -> GibbsState {
        let (a, b) = (self.a, self.b);
        if self.below {
            let x = draw_inv_gauss((b / (a + 2.0 * y)).sqrt(), b, rng);
            GibbsState { x, y: draw_gamma(self.gamma_shape, x, rng) }
        } else {
            let shape = b + 2.0 * y;
            let x = draw_inv_gauss((shape / a).sqrt(), shape, rng);
            GibbsState { x, y: draw_gamma(self.gamma_shape, 1.0 / x, rng) }
        }
    }
}

/// One sweep: `x` from its inverse-Gaussian conditional at the current `y`,
/// then `y` from its gamma conditional at the new `x`.
pub fn gibbs_step(state: GibbsState, params: &GigParams, rng: &mut RngStream) -> Result<GibbsState> {
    if !(state.x > 0.0 && state.y > 0.0) {
        return Err(GigError::Domain(format!("state must be positive, got {state:?}")));
    }
    Ok(Kernel::new(params)?.step(state.y, rng))
}

fn require_draws(n_sim: usize) -> Result<()> {
    if n_sim == 0 {
        return Err(GigError::Precondition("n_sim must be at least 1".into()));
    }
    Ok(())
}

/// Runs the augmented Gibbs sampler and keeps the `x` coordinate of the
/// `n_sim` sweeps after `warmup`. At `p = -1/2` returns i.i.d. draws from
/// InvGauss(sqrt(b/a), b).
pub fn run_gibbs(params: &GigParams, n_sim: usize, warmup: usize, rng: &mut RngStream) -> Result<Chain> {
    require_draws(n_sim)?;
    let mut out = Vec::with_capacity(n_sim);
    if params.is_inverse_gaussian() {
        let (mu, lambda) = (params.eta(), params.b());
        out.extend((0..n_sim).map(|_| draw_inv_gauss(mu, lambda, rng)));
    } else {
        let kernel = Kernel::new(params)?;
        let mut y = gibbs_init_y(params)?;
        for i in 0..warmup + n_sim {
            let s = kernel.step(y, rng);
            y = s.y;
            if i >= warmup {
                out.push(s.x);
            }
        }
    }
    Chain::new(vec!["x".into()], warmup, out)
}

/// The truncated-conditional chain on `{0 < x < y}` for `GIG(p, a, b)` with
/// `p <= 0`: `X | Y = y` is inverse gamma with shape `-p` and scale `b/2`
/// truncated to `(0, y)`, and `Y | X = x` is `x + Exp(a/2)`. The pair has
/// `x`-marginal `GIG(p, a, b)`.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedKernel {
    shape: f64,
    scale: f64,
    rate: f64,
}

impl TruncatedKernel {
    pub fn new(params: &GigParams) -> Result<Self> {
        if params.p() > 0.0 {
            return Err(GigError::Domain(format!(
                "the truncated kernel needs p <= 0, got {}; sample the reciprocal",
                params.p()
            )));
        }
        Ok(TruncatedKernel { shape: -params.p(), scale: 0.5 * params.b(), rate: 0.5 * params.a() })
    }

    /// A starting state with `x = sqrt(b/a)` and `y = x + 2/a`.
    pub fn initial_state(&self) -> GibbsState {
        let x = (self.scale / self.rate).sqrt();
        GibbsState { x, y: x + 1.0 / self.rate }
    }

    /// `x` given `y`, then `y` given the new `x`.
    pub fn step(&self, state: GibbsState, rng: &mut RngStream) -> Result<GibbsState> {
        let x = sample_trunc_inv_gamma(self.shape, self.scale, state.y, rng)?;
        Ok(GibbsState { x, y: x + draw_exp(self.rate, rng) })
    }
}

/// Runs the truncated-conditional sampler for any `p`. Orders `p > 0` run
/// the kernel on `GIG(-p, b, a)` and return reciprocals. Fails if a state
/// ever leaves `{0 < x < y}`.
pub fn run_truncated_gibbs(params: &GigParams, n_sim: usize, warmup: usize, rng: &mut RngStream) -> Result<Chain> {
    require_draws(n_sim)?;
    let flip = params.p() > 0.0;
    let target = if flip { params.reciprocal() } else { *params };
    let kernel = TruncatedKernel::new(&target)?;
    let mut state = kernel.initial_state();
    let mut out = Vec::with_capacity(n_sim);
    for i in 0..warmup + n_sim {
        state = kernel.step(state, rng)?;
        if !(0.0 < state.x && state.x < state.y) {
            return Err(GigError::Numeric(format!("support invariant 0 < x < y broken at {state:?}")));
        }
        if i >= warmup {
            out.push(if flip { 1.0 / state.x } else { state.x });
        }
    }
    Chain::new(vec!["x".into()], warmup, out)
}

/// Prior for the normal model `y_i ~ Normal(mu, sigma2)` with
/// `mu ~ Normal(theta0, tau0_sq)` and `sigma2 ~ GIG(p0, a0, b0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalPrior {
    pub theta0: f64,
    pub tau0_sq: f64,
    pub p0: f64,
    pub a0: f64,
    pub b0: f64,
}

impl Default for NormalPrior {
    fn default() -> Self {
        NormalPrior { theta0: 0.0, tau0_sq: 100.0, p0: 0.75, a0: 1.0, b0: 1.0 }
    }
}

/// How the `sigma2` full conditional is handled in the normal-model demo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DemoVariant {
    /// Cycle `mu`, `sigma2`, `omega` through Normal / InvGauss / Gamma.
    Augmented,
    /// Draw `sigma2` from its GIG conditional: exactly when `p_n` is a
    /// half-integer, otherwise by `inner_sweeps` augmented sweeps.
    DirectGig { inner_sweeps: usize },
}

/// Gibbs sampler for `(mu, sigma2)` in the normal model. With
/// `p_n = p0 - n/2`, `a_n = a0` and `b_n = b0 + Σ(y_i - mu)^2`,
/// `sigma2 | mu, y ~ GIG(p_n, a_n, b_n)` and `mu | sigma2, y ~ Normal(theta_n, tau_n^2)`
/// with `tau_n^2 = (n/sigma2 + 1/tau0_sq)^-1` and
/// `theta_n = tau_n^2 (n ybar / sigma2 + theta0 / tau0_sq)`.
///
/// The chain starts at `sigma2 = 1`; each iteration updates `mu`,
/// then `sigma2` (and the augmentation, when used). Labels are `mu`, `sigma2`.
pub fn run_normal_model_demo(
    data: &[f64],
    prior: &NormalPrior,
    n_iter: usize,
    warmup: usize,
    variant: DemoVariant,
    rng: &mut RngStream,
) -> Result<Chain> {
    require_draws(n_iter)?;
    if data.is_empty() {
        return Err(GigError::Precondition("normal model needs at least one observation".into()));
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(GigError::Domain("data must be finite".into()));
    }
    if !(prior.tau0_sq > 0.0 && prior.tau0_sq.is_finite() && prior.theta0.is_finite()) {
        return Err(GigError::Domain(format!("invalid normal prior on mu: {prior:?}")));
    }
    GigParams::new(prior.p0, prior.a0, prior.b0)?;
    if let DemoVariant::DirectGig { inner_sweeps: 0 } = variant {
        return Err(GigError::Precondition("inner_sweeps must be at least 1".into()));
    }

    let n = data.len() as f64;
    let ybar = data.iter().sum::<f64>() / n;
    let centered_ss = data.iter().map(|v| (v - ybar).powi(2)).sum::<f64>();
    let p_n = prior.p0 - 0.5 * n;
    let a_n = prior.a0;
    let inv_gauss_order = (p_n + 0.5).abs() < crate::special::HALF_INTEGER_TOLERANCE;
    let exact = match variant {
        DemoVariant::DirectGig { .. } => crate::special::HalfInteger::from_f64(p_n),
        DemoVariant::Augmented => None,
    };

    let mut sigma2 = 1.0;
    let mut omega = f64::NAN;
    let mut out = Vec::with_capacity(2 * n_iter);
    for i in 0..warmup + n_iter {
        let tau_sq = 1.0 / (n / sigma2 + 1.0 / prior.tau0_sq);
        let theta = tau_sq * (n * ybar / sigma2 + prior.theta0 / prior.tau0_sq);
        let mu = theta + tau_sq.sqrt() * sample_std_normal(rng);

        // Σ(y_i - mu)^2 without a pass over the data
        let b_n = prior.b0 + centered_ss + n * (ybar - mu).powi(2);
        let params = GigParams::new(p_n, a_n, b_n)?;
        sigma2 = if inv_gauss_order {
            draw_inv_gauss(params.eta(), b_n, rng)
        } else if let Some(h) = exact {
            HalfSampler::new(HalfGigSpec::new(h, a_n, b_n)?)?.sample(rng)
        } else {
            let kernel = Kernel::new(&params)?;
            match variant {
                DemoVariant::Augmented => {
                    if omega.is_nan() {
                        omega = gibbs_init_y(&params)?;
                    }
                    let s = kernel.step(omega, rng);
                    omega = s.y;
                    s.x
                }
                DemoVariant::DirectGig { inner_sweeps } => {
                    // refresh the augmentation at the current sigma2, then sweep
                    let rate = if kernel.below { sigma2 } else { 1.0 / sigma2 };
                    let mut y = draw_gamma(kernel.gamma_shape, rate, rng);
                    let mut x = sigma2;
                    for _ in 0..inner_sweeps {
                        let s = kernel.step(y, rng);
                        x = s.x;
                        y = s.y;
                    }
                    x
                }
            }
        };
        if i >= warmup {
            out.push(mu);
            out.push(sigma2);
        }
    }
    Chain::new(vec!["mu".into(), "sigma2".into()], warmup, out)
}

/// `n` draws from Normal(mean, variance).
pub fn simulate_normal_data(n: usize, mean: f64, variance: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    if !(variance > 0.0 && variance.is_finite() && mean.is_finite()) {
        return Err(GigError::Domain(format!("invalid normal law ({mean}, {variance})")));
    }
    let sd = variance.sqrt();
    Ok((0..n).map(|_| mean + sd * sample_std_normal(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdf::cdf_half;
    use crate::diagnostics::{ess, ks_statistic, mcse};
    use crate::quadrature::{integrate_to_infinity, integrate, Tolerance};
    use crate::special::inv_gauss_cdf;

    fn gig(p: f64, a: f64, b: f64) -> GigParams {
        GigParams::new(p, a, b).unwrap()
    }

    fn half(p: f64, a: f64, b: f64) -> HalfGigSpec {
        HalfGigSpec::from_params(gig(p, a, b)).unwrap()
    }

    #[test]
    fn init_values() {
        assert_eq!(gibbs_init_y(&gig(-1.5, 1.0, 4.0)).unwrap(), 2.0);
        assert_eq!(gibbs_init_y(&gig(1.5, 4.0, 1.0)).unwrap(), 1.0);
        assert!(gibbs_init_y(&gig(-0.5, 1.0, 1.0)).is_err());
    }

    #[test]
    fn x_update_at_tiny_y_is_inverse_gaussian() {
        let params = gig(-2.5, 1.0, 2.0);
        let mut rng = RngStream::new(21);
        let state = GibbsState { x: 1.0, y: 1e-12 };
        let xs: Vec<f64> = (0..100_000).map(|_| gibbs_step(state, &params, &mut rng).unwrap().x).collect();
        let ks = ks_statistic(&xs, |x| inv_gauss_cdf(x, 2f64.sqrt(), 2.0).unwrap()).unwrap();
        assert!(ks.pass, "{ks:?}");
    }

    #[test]
    fn y_update_is_gamma() {
        // p = 1.5: Y | X = x ~ Gamma(2, rate 1/x); at x = 2 its CDF is 1 - (1 + y/2) e^{-y/2}
        let params = gig(1.5, 1.0, 1.0);
        let mut rng = RngStream::new(22);
        let kernel = Kernel::new(&params).unwrap();
        let ys: Vec<f64> = (0..100_000).map(|_| draw_gamma(kernel.gamma_shape, 0.5, &mut rng)).collect();
        let ks = ks_statistic(&ys, |y| 1.0 - (1.0 + y / 2.0) * (-y / 2.0).exp()).unwrap();
        assert!(ks.pass);
    }

    #[test]
    fn stationarity_from_exact_start() {
        let params = gig(1.5, 1.0, 1.0);
        let spec = half(1.5, 1.0, 1.0);
        let exact = HalfSampler::new(spec).unwrap();
        let mut rng = RngStream::new(23);
        let kernel = Kernel::new(&params).unwrap();
        let xs: Vec<f64> = (0..100_000)
            .map(|_| {
                let x0 = exact.sample(&mut rng);
                let y0 = draw_gamma(kernel.gamma_shape, 1.0 / x0, &mut rng);
                kernel.step(y0, &mut rng).x
            })
            .collect();
        assert!(ks_statistic(&xs, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
    }

    #[test]
    fn run_gibbs_three_halves() {
        let params = gig(1.5, 1.0, 1.0);
        let chain = run_gibbs(&params, 500_000, 1000, &mut RngStream::new(24)).unwrap();
        let xs = chain.thin(5).column(0);
        assert_eq!(xs.len(), 100_000);
        let spec = half(1.5, 1.0, 1.0);
        assert!(ks_statistic(&xs, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
    }

    #[test]
    fn run_gibbs_mean_and_iid_branch() {
        let params = gig(-1.5, 1.0, 1.0);
        let xs = run_gibbs(&params, 100_000, 1000, &mut RngStream::new(25)).unwrap().column(0);
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((m - params.mean().unwrap()).abs() < 4.0 * mcse(&xs).unwrap());

        let ig = gig(-0.5, 1.0, 1.0);
        let xs = run_gibbs(&ig, 100_000, 0, &mut RngStream::new(26)).unwrap().column(0);
        assert!(ks_statistic(&xs, |x| inv_gauss_cdf(x, 1.0, 1.0).unwrap()).unwrap().pass);
        assert!(run_gibbs(&params, 0, 10, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn reciprocal_chain_consistency() {
        let params = gig(2.5, 2.0, 0.5);
        let spec = half(2.5, 2.0, 0.5);
        let direct = run_gibbs(&params, 500_000, 1000, &mut RngStream::new(27)).unwrap().thin(5).column(0);
        let flipped: Vec<f64> = run_gibbs(&params.reciprocal(), 500_000, 1000, &mut RngStream::new(28))
            .unwrap()
            .thin(5)
            .column(0)
            .iter()
            .map(|x| 1.0 / x)
            .collect();
        assert!(ks_statistic(&direct, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
        assert!(ks_statistic(&flipped, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
    }

    #[test]
    fn positivity_over_long_run() {
        let params = gig(-3.2, 0.3, 7.0);
        let chain = run_gibbs(&params, 1_000_000, 0, &mut RngStream::new(29)).unwrap();
        assert!(chain.column(0).iter().all(|&x| x > 0.0 && x.is_finite()));
    }

    #[test]
    fn truncated_sampler() {
        let params = gig(-1.5, 1.0, 1.0);
        let spec = half(-1.5, 1.0, 1.0);
        let kernel = TruncatedKernel::new(&params).unwrap();
        let mut rng = RngStream::new(30);
        let mut state = kernel.initial_state();
        let mut xs = Vec::new();
        for i in 0..300_000 {
            state = kernel.step(state, &mut rng).unwrap();
            assert!(0.0 < state.x && state.x < state.y);
            if i % 10 == 0 {
                xs.push(state.x);
            }
        }
        assert!(ks_statistic(&xs, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
        assert!(TruncatedKernel::new(&gig(0.5, 1.0, 1.0)).is_err());
    }

    #[test]
    fn truncated_positive_order_is_reciprocal_run() {
        let pos = run_truncated_gibbs(&gig(1.5, 2.0, 0.5), 200, 10, &mut RngStream::new(31)).unwrap();
        let neg = run_truncated_gibbs(&gig(-1.5, 0.5, 2.0), 200, 10, &mut RngStream::new(31)).unwrap();
        for (u, v) in pos.column(0).iter().zip(neg.column(0)) {
            assert_eq!(u.to_bits(), (1.0 / v).to_bits());
        }
    }

    #[test]
    fn truncated_asymmetric_params() {
        // a != b distinguishes GIG(p, a, b) from GIG(p, b, a)
        let params = gig(-2.5, 0.5, 4.0);
        let spec = half(-2.5, 0.5, 4.0);
        let xs = run_truncated_gibbs(&params, 100_000, 1000, &mut RngStream::new(32)).unwrap().thin(5).column(0);
        assert!(ks_statistic(&xs, |x| cdf_half(x, &spec).unwrap()).unwrap().pass);
        let zero = run_truncated_gibbs(&gig(0.0, 1.0, 1.0), 1000, 10, &mut RngStream::new(33)).unwrap();
        assert!(zero.column(0).iter().all(|&x| x > 0.0));
    }

    #[test]
    fn chain_accessors() {
        let c = Chain::new(vec!["mu".into(), "s".into()], 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.draw(1), &[3.0, 4.0]);
        assert_eq!(c.series("s").unwrap(), vec![2.0, 4.0, 6.0]);
        assert_eq!(c.thin(2).column(0), vec![1.0, 5.0]);
        assert!(Chain::new(vec!["x".into()], 0, vec![]).is_err());
        assert!(Chain::new(vec!["x".into()], 0, vec![f64::NAN]).is_err());
        assert!(Chain::new(vec!["a".into(), "b".into()], 0, vec![1.0]).is_err());
    }

    // Posterior mean of mu by nested quadrature: outer over mu, inner over sigma2.
    fn posterior_mean_mu(data: &[f64], prior: &NormalPrior) -> f64 {
        let n = data.len() as f64;
        let ybar = data.iter().sum::<f64>() / n;
        let tol = Tolerance::new(1e-300, 1e-11);
        let ln_joint = |mu: f64, s2: f64| {
            let ss: f64 = data.iter().map(|y| (y - mu).powi(2)).sum();
            -0.5 * (mu - prior.theta0).powi(2) / prior.tau0_sq - 0.5 * n * s2.ln() - ss / (2.0 * s2)
                + (prior.p0 - 1.0) * s2.ln()
                - 0.5 * (prior.a0 * s2 + prior.b0 / s2)
        };
        let shift = ln_joint(ybar, 1.0);
        let marginal = |mu: f64| {
            let inner = |s2: f64| if s2 > 0.0 { (ln_joint(mu, s2) - shift).exp() } else { 0.0 };
            integrate(inner, 0.0, 1.0, tol).unwrap().value + integrate_to_infinity(inner, 1.0, tol).unwrap().value
        };
        let (lo, hi) = (ybar - 6.0, ybar + 6.0);
        let z = integrate(&marginal, lo, hi, tol).unwrap().value;
        integrate(|mu| mu * marginal(mu), lo, hi, tol).unwrap().value / z
    }

    #[test]
    fn normal_model_posterior_mean() {
        let mut rng = RngStream::new(34);
        let data = simulate_normal_data(10, 1.0, 1.0, &mut rng).unwrap();
        let prior = NormalPrior::default();
        let want = posterior_mean_mu(&data, &prior);
        for variant in [DemoVariant::Augmented, DemoVariant::DirectGig { inner_sweeps: 25 }] {
            let chain = run_normal_model_demo(&data, &prior, 50_000, 2_000, variant, &mut rng).unwrap();
            let mu = chain.series("mu").unwrap();
            let m = mu.iter().sum::<f64>() / mu.len() as f64;
            assert!((m - want).abs() < 4.0 * mcse(&mu).unwrap(), "{variant:?}: {m} vs {want}");
            assert!(chain.series("sigma2").unwrap().iter().all(|&s| s > 0.0));
        }
    }

    #[test]
    fn normal_model_branches() {
        let mut rng = RngStream::new(35);
        let data = simulate_normal_data(3, 0.0, 1.0, &mut rng).unwrap();
        // p_n = 2.5 - 1.5 = 1 (p > -1/2 branch); p_n = 1 - 1.5 = -1/2 (inverse Gaussian)
        for p0 in [2.5, 1.0, 3.0] {
            let prior = NormalPrior { p0, ..NormalPrior::default() };
            for variant in [DemoVariant::Augmented, DemoVariant::DirectGig { inner_sweeps: 3 }] {
                let chain = run_normal_model_demo(&data, &prior, 2_000, 100, variant, &mut rng).unwrap();
                assert!(ess(&chain.series("sigma2").unwrap()).unwrap().ess > 10.0);
            }
        }
        assert!(run_normal_model_demo(&[], &NormalPrior::default(), 10, 0, DemoVariant::Augmented, &mut rng).is_err());
        let bad = DemoVariant::DirectGig { inner_sweeps: 0 };
        assert!(run_normal_model_demo(&data, &NormalPrior::default(), 10, 0, bad, &mut rng).is_err());
    }
}
