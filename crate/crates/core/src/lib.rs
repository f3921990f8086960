//! Unbiased estimation of multivariate cumulants (k-statistics).
//!
//! - [`combinatorics`]: set partitions, integer partitions, Stirling and Bell
//!   numbers, the refinement order and its Möbius weights.
//! - [`moments`]: datasets and raw sample moments.
//! - [`kstats`]: exact coefficients, the coefficient cache, single and batch
//!   evaluation, resampling.
//! - [`symbolic`]: exact formulas for cumulants, moments and k-statistics.
//! - [`oracle`]: exact expectations over finite distributions, used to check
//!   unbiasedness without tolerances.

pub mod combinatorics;
pub mod error;
pub mod kstats;
pub mod moments;
pub mod oracle;
pub mod symbolic;

pub use error::{Error, Result};
pub use kstats::{
    k_statistic, k_statistic_batch, CoefficientCache, KStatOptions, KStatPlan, KStatRequest,
};
pub use moments::{Dataset, IndexMultiset, MomentTable};

/// Library version, echoed into machine-readable output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
