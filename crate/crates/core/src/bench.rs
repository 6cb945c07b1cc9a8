//! Throughput comparison of the samplers. Timings are informational only;
//! nothing here is asserted.

use crate::diagnostics::ess;
use crate::error::{GigError, Result};
use crate::exact::{HalfGigSpec, HalfSampler};
use crate::gibbs::{run_gibbs, run_truncated_gibbs, DEFAULT_WARMUP};
use crate::gig::GigParams;
use crate::rng::RngStream;
use serde::Serialize;
use std::time::Instant;

pub const BENCH_NOTE: &str = "non-binding: timings depend on the machine and load";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMethod {
    ExactHalf,
    Gibbs,
    TruncatedGibbs,
}

impl BenchMethod {
    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::ExactHalf => "exact-half",
            BenchMethod::Gibbs => "gibbs",
            BenchMethod::TruncatedGibbs => "truncated-gibbs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchConfig {
    pub params: GigParams,
    pub draws: usize,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: BenchMethod,
    pub draws: usize,
    pub reps: usize,
    pub draws_per_sec_mean: f64,
    pub draws_per_sec_sd: f64,
    /// ESS per draw of the first repetition (1 for the exact sampler).
    pub ess_per_draw: f64,
    /// `draws_per_sec_mean * ess_per_draw`: throughput at equal accuracy.
    pub effective_draws_per_sec: f64,
    /// Sum of the first repetition's draws, identical across runs with the same seed.
    pub checksum: f64,
}

fn draws_for(method: BenchMethod, config: &BenchConfig, rng: &mut RngStream) -> Result<Vec<f64>> {
    match method {
        BenchMethod::ExactHalf => {
            let sampler = HalfSampler::new(HalfGigSpec::from_params(config.params)?)?;
            Ok(sampler.sample_n(config.draws, rng))
        }
        BenchMethod::Gibbs => Ok(run_gibbs(&config.params, config.draws, DEFAULT_WARMUP, rng)?.column(0)),
        BenchMethod::TruncatedGibbs => {
            Ok(run_truncated_gibbs(&config.params, config.draws, DEFAULT_WARMUP, rng)?.column(0))
        }
    }
}

/// Times one method over `config.reps` repetitions, each on its own substream.
pub fn bench_method(method: BenchMethod, config: &BenchConfig) -> Result<BenchRow> {
    if config.draws == 0 || config.reps == 0 {
        return Err(GigError::Precondition("bench needs draws >= 1 and reps >= 1".into()));
    }
    let mut rates = Vec::with_capacity(config.reps);
    let mut first = Vec::new();
    for rep in 0..config.reps {
        let mut rng = RngStream::new(config.seed).substream(rep as u64);
        let start = Instant::now();
        let draws = draws_for(method, config, &mut rng)?;
        let secs = start.elapsed().as_secs_f64().max(1e-9);
        rates.push(config.draws as f64 / secs);
        if rep == 0 {
            first = draws;
        }
    }
    let n = rates.len() as f64;
    let mean = rates.iter().sum::<f64>() / n;
    let sd = if rates.len() > 1 {
        (rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let ess_per_draw = match method {
        BenchMethod::ExactHalf => 1.0,
        _ => ess(&first).map(|r| r.ess_per_iter).unwrap_or(f64::NAN),
    };
    Ok(BenchRow {
        method,
        draws: config.draws,
        reps: config.reps,
        draws_per_sec_mean: mean,
        draws_per_sec_sd: sd,
        ess_per_draw,
        effective_draws_per_sec: mean * ess_per_draw,
        checksum: first.iter().sum(),
    })
}

/// One row per method; the exact sampler is included only for half-integer `p`.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut methods = vec![BenchMethod::Gibbs, BenchMethod::TruncatedGibbs];
    if config.params.half_integer_order().is_some() {
        methods.insert(0, BenchMethod::ExactHalf);
    }
    methods.into_iter().map(|m| bench_method(m, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_rows_with_positive_throughput() {
        let config = BenchConfig { params: GigParams::new(1.5, 1.0, 1.0).unwrap(), draws: 2000, reps: 2, seed: 9 };
        let rows = run_bench(&config).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.draws_per_sec_mean > 0.0 && r.ess_per_draw > 0.0));
        let again = run_bench(&config).unwrap();
        for (r, s) in rows.iter().zip(&again) {
            assert_eq!(r.checksum.to_bits(), s.checksum.to_bits());
        }
    }

    #[test]
    fn non_half_integer_skips_exact() {
        let config = BenchConfig { params: GigParams::new(0.7, 1.0, 1.0).unwrap(), draws: 500, reps: 1, seed: 9 };
        let rows = run_bench(&config).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.method != BenchMethod::ExactHalf));
        assert!(bench_method(BenchMethod::Gibbs, &BenchConfig { reps: 0, ..config }).is_err());
    }
}
