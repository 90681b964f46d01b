//! Marginal sampler for the normalised-stable SGG mixture.
//!
//! One iteration runs, in order:
//!
//! 1. latent rates `y_i` from their gamma full conditionals;
//! 2. reassignment of every observation with auxiliary kernels drawn from
//!    `g0` (a generalised Neal Algorithm 8);
//! 3. a random-walk Metropolis-Hastings move on each coordinate of each
//!    unique kernel value;
//! 4. a random-walk move on `nu` when it carries a beta prior.
//!
//! Every `batch_size` iterations the walk widths are adapted towards the
//! target acceptance interval.

mod adapt;
mod config;
mod state;
mod trace;
mod update;

pub use adapt::{adapt_tuning, AdaptState, BatchRecord, Family};
pub use config::{BaseMeasure, ChainConfig, GammaPrior, KernelModel, NuSpec, POSITIVE_FLOOR};
pub use state::{
    init_state, step_assignments, step_latents, AssignmentStats, Cluster, ClusterState,
};
pub use trace::{ClusterDraw, IterationSample, Trace};
pub use update::{cluster_log_target, nu_log_target, step_nu, step_unique_values, NU_FLOOR};

use crate::error::Result;
use crate::rng::RngStream;

/// Run one chain from `cfg.seed`. Deterministic given the seed.
pub fn run_chain(data: &[f64], cfg: &ChainConfig) -> Result<Trace> {
    let mut rng = RngStream::new(cfg.seed);
    let mut state = init_state(data, cfg, &mut rng)?;
    let mut adapt = AdaptState::new(cfg.initial_delta, cfg.target_rate_low, cfg.target_rate_high);
    let mut trace = Trace {
        samples: Vec::with_capacity(cfg.retained_count()),
        ..Default::default()
    };

    for t in 1..=cfg.iterations {
        step_latents(&mut state, data, &mut rng);
        if cfg.model == KernelModel::Mixture {
            let stats = step_assignments(&mut state, data, cfg, &mut rng);
            trace.zero_weight_events += stats.zero_weight_events;
            trace.reassignments += stats.reassignments;
        }
        step_unique_values(&mut state, data, cfg, &mut adapt, &mut rng);
        step_nu(&mut state, cfg, &mut adapt, &mut rng);

        if t % cfg.batch_size == 0 {
            let apply = cfg.adapt_after_burn_in || t <= cfg.burn_in;
            trace.acceptance.extend(adapt.close_batch(apply));
        }
        if cfg.is_retained(t) {
            trace.samples.push(state.snapshot(t, data));
        }
    }
    Ok(trace)
}
