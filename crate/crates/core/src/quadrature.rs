//! Adaptive Gauss–Kronrod (G10/K21) quadrature on finite and half-infinite
//! intervals.
//!
//! Used as the independent numerical oracle for densities, moments and CDFs,
//! and to evaluate Bessel functions of arbitrary real order.

use crate::error::{GigError, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_200_184,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Stopping rule for the adaptive integrator: stop once the estimated error is
/// below `max(abs, rel * |integral|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-12, max_intervals: 4000 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut bad = !fc.is_finite();
    for j in 0..10 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        bad |= !s.is_finite();
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    if bad {
        return Err(GigError::Numeric(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    Ok(Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrates `f` over the finite interval `[lo, hi]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<Integral> {
    integrate_with_breaks(f, &[lo, hi], tol)
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the
/// subdivision given by the (increasing) break points.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    if points.len() < 2 || points.iter().any(|p| !p.is_finite()) {
        return Err(GigError::Domain("integration limits must be finite".into()));
    }
    let mut segments = Vec::with_capacity(64);
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(GigError::Domain("break points must be increasing".into()));
        }
        if w[1] > w[0] {
            segments.push(kronrod21(&f, w[0], w[1])?);
        }
    }
    let mut evaluations = 21 * segments.len();
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Integral { value, abs_error: error, evaluations });
        }
        if segments.len() >= tol.max_intervals {
            return Err(GigError::Numeric(format!(
                "quadrature did not converge: estimate {value:e}, error {error:e} after {} intervals",
                segments.len()
            )));
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            // interval cannot be split further in floating point
            return Err(GigError::Numeric(format!(
                "quadrature interval collapsed near {mid:e}"
            )));
        }
        segments.push(kronrod21(&f, seg.lo, mid)?);
        segments.push(kronrod21(&f, mid, seg.hi)?);
        evaluations += 42;
    }
}

/// Integrates `f` over `[lo, ∞)` through the map `x = lo + t/(1-t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, lo: f64, tol: Tolerance) -> Result<Integral> {
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        let x = lo + t / one_minus;
        if x.is_infinite() {
            return 0.0;
        }
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (one_minus * one_minus)
        }
    };
    integrate(mapped, 0.0, 1.0, tol)
}
