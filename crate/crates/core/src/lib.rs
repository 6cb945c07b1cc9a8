//! The generalized inverse Gaussian distribution GIG(p, a, b).
//!
//! * [`gibbs`]: a data-augmented Gibbs sampler for any order, built only from
//!   inverse Gaussian and gamma draws, plus a truncated-conditional variant and
//!   a normal-model demo.
//! * [`exact`]: rejection-free sampling when `p` is a half-integer.
//! * [`cdf`]: the CDF and quantiles in closed form at half-integer `p`.
//! * [`diagnostics`]: ESS, MCSE, Kolmogorov-Smirnov and a quadrature CDF.
//! * [`cli`]: the `gig-toolkit` command line.
//!
//! The guide in `book/` walks through each piece.

pub mod bench;
pub mod cdf;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod gibbs;
pub mod gig;
pub mod quadrature;
pub mod rng;
pub mod samplers;
pub mod special;
pub mod validate;

pub use error::{GigError, Result};
pub use gig::{AltParams, GigParams};
pub use rng::RngStream;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/distribution.md")]
    mod distribution {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/cdf.md")]
    mod cdf {}
    #[doc = include_str!("../../../book/src/gibbs.md")]
    mod gibbs {}
    #[doc = include_str!("../../../book/src/normal-model.md")]
    mod normal_model {}
    #[doc = include_str!("../../../book/src/diagnostics.md")]
    mod diagnostics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
