//! The validation suite behind `gig-toolkit validate`.
//!
//! Check inventory, one report row each:
//!
//! | group | grid | rows | passes when |
//! |---|---|---|---|
//! | `cdf-oracle` | p ∈ ±{1/2, …, 11/2}, a, b ∈ {0.5, 1, 2, 5} | 192 | max abs CDF error at 5 oracle quantiles ≤ 1e-8 |
//! | `exact-ks` | same grid, \|p\| ≤ 9/2 | 160 | KS statistic < 1.949/√n |
//! | `mean-decomposition` | p ∈ {3/2, 5/2, 7/2, 9/2}, (a, b) ∈ {(1,1), (4,1), (0.5,2)} | 12 | relative residual ≤ 1e-10 |
//! | `mixing-normalization` | p ∈ {-5/2, -1.2, 0.7, 3/2}, a = b = 1 | 4 | \|mass - 1\| ≤ 1e-8 |
//! | `gibbs-ks` | p ∈ {-5/2, -3/2, 3/2, 5/2}, a = b = 1, thinned by 5 | 4 | KS statistic < 1.949/√n |
//! | `gibbs-mean` | p ∈ {-1.2, 0.7, 2.3}, a = b = 1 | 3 | \|chain mean - mean\| / MCSE ≤ 4 |
//! | `gibbs-ess` | all seven Gibbs orders above | 7 | ESS per iteration ≥ 0.05 |
//! | `truncated-ks` | p = -3/2, a = b = 1, thinned by 10 | 1 | KS statistic < 1.949/√n and 0 < x < y throughout |
//!
//! 383 rows in all. Every check draws from its own substream of the seed.

use crate::cdf::cdf_half;
use crate::diagnostics::{ess, ks_statistic, mcse, mixing_density_mass, QuadratureCdf};
use crate::error::Result;
use crate::exact::{mean_decomposition_residual, HalfGigSpec, HalfSampler};
use crate::gibbs::{run_gibbs, run_truncated_gibbs};
use crate::gig::GigParams;
use crate::rng::RngStream;
use crate::special::HalfInteger;
use serde::Serialize;

/// Orders `2p` of the CDF grid.
pub const CDF_GRID_TWICE_P: [i64; 12] = [-11, -9, -7, -5, -3, -1, 1, 3, 5, 7, 9, 11];
/// Values of `a` and of `b` in the CDF and exact-sampler grids.
pub const AB_GRID: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
/// Oracle quantile levels at which the CDF is compared.
pub const ORACLE_LEVELS: [f64; 5] = [0.01, 0.1, 0.5, 0.9, 0.99];
pub const GIBBS_KS_ORDERS: [f64; 4] = [-2.5, -1.5, 1.5, 2.5];
pub const GIBBS_MEAN_ORDERS: [f64; 3] = [-1.2, 0.7, 2.3];
pub const MEAN_DECOMPOSITION_AB: [(f64, f64); 3] = [(1.0, 1.0), (4.0, 1.0), (0.5, 2.0)];
pub const MIXING_ORDERS: [f64; 4] = [-2.5, -1.2, 0.7, 1.5];
/// Thinning of augmented Gibbs chains before a KS test. Pilot runs put the
/// first lag with autocorrelation below 0.1 at 2 to 4 for the tested orders.
pub const GIBBS_THIN: usize = 5;
pub const TRUNCATED_THIN: usize = 10;
pub const MIN_ESS_PER_ITER: f64 = 0.05;
pub const CDF_TOLERANCE: f64 = 1e-8;
pub const MEAN_DECOMPOSITION_TOLERANCE: f64 = 1e-10;
pub const MIXING_TOLERANCE: f64 = 1e-8;
pub const MCSE_MULTIPLE: f64 = 4.0;

/// Total number of rows produced by [`run_validation`].
pub const CHECK_COUNT: usize = 192 + 160 + 12 + 4 + 4 + 3 + 7 + 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidateConfig {
    pub seed: u64,
    /// Draws per KS test (exact sampler) and retained thinned draws per chain.
    pub draws: usize,
    /// Fault injection: shift added to every mixture weight.
    #[serde(skip_serializing_if = "is_zero")]
    pub(crate) perturb_weight: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl ValidateConfig {
    pub fn new(seed: u64, draws: usize) -> Self {
        ValidateConfig { seed, draws, perturb_weight: 0.0 }
    }

    pub(crate) fn with_perturbed_weight(mut self, offset: f64) -> Self {
        self.perturb_weight = offset;
        self
    }
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig::new(1, 100_000)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub group: &'static str,
    pub case: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub config: ValidateConfig,
    pub rows: Vec<CheckRow>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

enum Cmp {
    AtMost,
    Below,
    AtLeast,
}

fn row(group: &'static str, case: String, threshold: f64, cmp: Cmp, measured: Result<f64>) -> CheckRow {
    match measured {
        Ok(m) => {
            let pass = match cmp {
                Cmp::AtMost => m <= threshold,
                Cmp::Below => m < threshold,
                Cmp::AtLeast => m >= threshold,
            };
            CheckRow { group, case, measured: m, threshold, pass, error: None }
        }
        Err(e) => CheckRow { group, case, measured: f64::NAN, threshold, pass: false, error: Some(e.to_string()) },
    }
}

fn half_spec(twice: i64, a: f64, b: f64) -> Result<HalfGigSpec> {
    HalfGigSpec::new(HalfInteger::new(twice)?, a, b)
}

fn case(p: f64, a: f64, b: f64) -> String {
    format!("p={p} a={a} b={b}")
}

/// Largest `|cdf_half - oracle|` over the oracle's quantiles at [`ORACLE_LEVELS`].
pub fn cdf_oracle_error(spec: &HalfGigSpec) -> Result<f64> {
    let oracle = QuadratureCdf::new(spec.params())?;
    let mut worst = 0.0f64;
    for q in ORACLE_LEVELS {
        let x = oracle.quantile(q)?;
        worst = worst.max((cdf_half(x, spec)? - oracle.cdf(x)?).abs());
    }
    Ok(worst)
}

/// Runs every check in the inventory.
pub fn run_validation(config: &ValidateConfig) -> ValidationReport {
    let mut rows = Vec::with_capacity(CHECK_COUNT);
    let mut stream = 0u64;
    let mut next_rng = || {
        stream += 1;
        RngStream::new(config.seed).substream(stream)
    };

    for &t in &CDF_GRID_TWICE_P {
        for &a in &AB_GRID {
            for &b in &AB_GRID {
                let measured = half_spec(t, a, b).and_then(|s| cdf_oracle_error(&s));
                rows.push(row("cdf-oracle", case(t as f64 / 2.0, a, b), CDF_TOLERANCE, Cmp::AtMost, measured));
            }
        }
    }

    for &t in CDF_GRID_TWICE_P.iter().filter(|t| t.abs() <= 9) {
        for &a in &AB_GRID {
            for &b in &AB_GRID {
                let mut rng = next_rng();
                let measured = half_spec(t, a, b).and_then(|s| {
                    let sampler = HalfSampler::with_weight_offset(s, config.perturb_weight)?;
                    let draws = sampler.sample_n(config.draws, &mut rng);
                    Ok(ks_statistic(&draws, |x| cdf_half(x, &s).unwrap_or(f64::NAN))?.statistic)
                });
                let crit = crate::diagnostics::ks_critical_001(config.draws);
                rows.push(row("exact-ks", case(t as f64 / 2.0, a, b), crit, Cmp::Below, measured));
            }
        }
    }

    for t in [3, 5, 7, 9] {
        for (a, b) in MEAN_DECOMPOSITION_AB {
            let measured = half_spec(t, a, b).and_then(|s| {
                let residual = mean_decomposition_residual(&s, config.perturb_weight)?;
                Ok(residual.abs() / s.params().mean()?)
            });
            rows.push(row(
                "mean-decomposition",
                case(t as f64 / 2.0, a, b),
                MEAN_DECOMPOSITION_TOLERANCE,
                Cmp::AtMost,
                measured,
            ));
        }
    }

    for p in MIXING_ORDERS {
        let measured = GigParams::new(p, 1.0, 1.0).and_then(|g| Ok((mixing_density_mass(&g)? - 1.0).abs()));
        rows.push(row("mixing-normalization", case(p, 1.0, 1.0), MIXING_TOLERANCE, Cmp::AtMost, measured));
    }

    let mut ess_rows = Vec::new();
    let crit = crate::diagnostics::ks_critical_001(config.draws);
    for p in GIBBS_KS_ORDERS {
        let mut rng = next_rng();
        let run = GigParams::new(p, 1.0, 1.0).and_then(|g| {
            let chain = run_gibbs(&g, config.draws * GIBBS_THIN, crate::gibbs::DEFAULT_WARMUP, &mut rng)?;
            let spec = HalfGigSpec::from_params(g)?;
            let thinned = chain.thin(GIBBS_THIN).column(0);
            let ks = ks_statistic(&thinned, |x| cdf_half(x, &spec).unwrap_or(f64::NAN))?.statistic;
            Ok((ks, ess(&chain.column(0))?.ess_per_iter))
        });
        rows.push(row("gibbs-ks", case(p, 1.0, 1.0), crit, Cmp::Below, run.as_ref().map(|r| r.0).map_err(Clone::clone)));
        ess_rows.push(row("gibbs-ess", case(p, 1.0, 1.0), MIN_ESS_PER_ITER, Cmp::AtLeast, run.map(|r| r.1)));
    }
    for p in GIBBS_MEAN_ORDERS {
        let mut rng = next_rng();
        let run = GigParams::new(p, 1.0, 1.0).and_then(|g| {
            let xs = run_gibbs(&g, config.draws, crate::gibbs::DEFAULT_WARMUP, &mut rng)?.column(0);
            let m = xs.iter().sum::<f64>() / xs.len() as f64;
            Ok(((m - g.mean()?).abs() / mcse(&xs)?, ess(&xs)?.ess_per_iter))
        });
        rows.push(row("gibbs-mean", case(p, 1.0, 1.0), MCSE_MULTIPLE, Cmp::AtMost, run.as_ref().map(|r| r.0).map_err(Clone::clone)));
        ess_rows.push(row("gibbs-ess", case(p, 1.0, 1.0), MIN_ESS_PER_ITER, Cmp::AtLeast, run.map(|r| r.1)));
    }
    rows.extend(ess_rows);

    let mut rng = next_rng();
    let measured = GigParams::new(-1.5, 1.0, 1.0).and_then(|g| {
        let chain = run_truncated_gibbs(&g, config.draws * TRUNCATED_THIN, crate::gibbs::DEFAULT_WARMUP, &mut rng)?;
        let spec = HalfGigSpec::from_params(g)?;
        Ok(ks_statistic(&chain.thin(TRUNCATED_THIN).column(0), |x| cdf_half(x, &spec).unwrap_or(f64::NAN))?.statistic)
    });
    rows.push(row("truncated-ks", case(-1.5, 1.0, 1.0), crit, Cmp::Below, measured));

    ValidationReport { config: *config, rows }
}
