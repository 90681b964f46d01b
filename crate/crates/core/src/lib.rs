//! Bayesian nonparametric mixtures of shifted generalised gamma (SGG)
//! kernels under a normalised generalised gamma process prior with
//! stable index `nu`.
//!
//! ```
//! use sggmix::{run_chain, ChainConfig};
//!
//! let data = [0.4, 1.2, 2.0, 2.1, 6.5, 9.0];
//! let cfg = ChainConfig { iterations: 60, burn_in: 20, thinning: 2, ..Default::default() };
//! let trace = run_chain(&data, &cfg).unwrap();
//! assert_eq!(trace.len(), 20);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod rng;
pub mod sampler;
pub mod simulate;
pub mod stable_process;

pub use diagnostics::{fit_report, predictive_density, CpoMode, FitReport, PredictiveBand};
pub use distributions::{GpdParams, SggParams};
pub use error::{Error, Result};
pub use rng::RngStream;
pub use sampler::{run_chain, BaseMeasure, ChainConfig, KernelModel, NuSpec, Trace};
pub use simulate::{sample_mixture, MixtureComponent, MixtureSpec};
pub use stable_process::{PartitionCounts, StableIndex};
