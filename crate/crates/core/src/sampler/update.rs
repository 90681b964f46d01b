//! Random-walk Metropolis-Hastings refreshes of the unique kernel values and
//! of the stable index.
//!
//! Every coordinate `v` moves by `v' ~ Un(max(v - delta, 0), min(v + delta, B))`
//! where `B` is the smallest observation in the cluster for `mu`, one for
//! `nu` and unbounded otherwise. By default the move is accepted with
//! probability `min(1, f(v')/f(v))`. That ignores the asymmetry the
//! truncation introduces near the bounds; `hastings_correction` adds the
//! proposal-density ratio and makes the update exact.

use rand::Rng;
use statrs::function::gamma::ln_gamma;

use crate::distributions::{KernelCache, SggParams};
use crate::stable_process::{PartitionCounts, StableIndex};

use super::adapt::{AdaptState, Family};
use super::config::{BaseMeasure, ChainConfig, KernelModel, NuSpec, POSITIVE_FLOOR};
use super::state::ClusterState;

/// Proposals of `nu` are kept inside `[NU_FLOOR, 1 - NU_FLOOR]`.
pub const NU_FLOOR: f64 = 1e-8;

/// Width of the truncated proposal window around `v`.
fn window(v: f64, delta: f64, upper: f64) -> (f64, f64) {
    ((v - delta).max(0.0), (v + delta).min(upper))
}

fn propose<R: Rng + ?Sized>(v: f64, delta: f64, upper: f64, rng: &mut R) -> f64 {
    let (lo, hi) = window(v, delta, upper);
    let u: f64 = rng.random();
    if hi > lo {
        lo + u * (hi - lo)
    } else {
        lo
    }
}

/// `log q(v | v') - log q(v' | v)` for the truncated uniform walk.
fn log_proposal_ratio(v: f64, proposal: f64, delta: f64, upper: f64) -> f64 {
    let width = |x: f64| {
        let (lo, hi) = window(x, delta, upper);
        hi - lo
    };
    width(v).ln() - width(proposal).ln()
}

fn coordinate(p: &SggParams, family: Family) -> f64 {
    match family {
        Family::Mu => p.mu,
        Family::Gamma => p.gamma,
        Family::Alpha => p.alpha,
        Family::Beta => p.beta,
        Family::Nu => unreachable!("nu is not a kernel coordinate"),
    }
}

fn with_coordinate(p: &SggParams, family: Family, v: f64) -> SggParams {
    let mut q = *p;
    match family {
        Family::Mu => q.mu = v,
        Family::Gamma => q.gamma = v,
        Family::Alpha => q.alpha = v,
        Family::Beta => q.beta = v,
        Family::Nu => unreachable!("nu is not a kernel coordinate"),
    }
    q
}

/// `log g0(theta) + sum_i log f(x_i, y_i | theta)` over one cluster's members.
pub fn cluster_log_target(
    g0: &BaseMeasure,
    kernel: &KernelCache,
    members: &[usize],
    data: &[f64],
    latents: &[f64],
    ln_latents: &[f64],
) -> f64 {
    let lik: f64 = members
        .iter()
        .map(|&i| kernel.augmented_loglik(data[i], latents[i], ln_latents[i]))
        .sum();
    g0.log_density(&kernel.params) + lik
}

/// Accept with probability `min(1, exp(log_ratio))`.
fn accept<R: Rng + ?Sized>(log_ratio: f64, rng: &mut R) -> bool {
    rng.random::<f64>().ln() < log_ratio
}

/// Refresh each cluster's `(mu, gamma, alpha, beta)` in that order with one
/// random-walk move per coordinate.
pub fn step_unique_values<R: Rng + ?Sized>(
    state: &mut ClusterState,
    data: &[f64],
    cfg: &ChainConfig,
    adapt: &mut AdaptState,
    rng: &mut R,
) {
    let g0 = &cfg.base_measure;
    let ln_latents: Vec<f64> = state.latents.iter().map(|y| y.ln()).collect();
    let members = state.members();
    for (j, mem) in members.iter().enumerate() {
        let mu_bound = mem.iter().map(|&i| data[i]).fold(f64::INFINITY, f64::min);
        let mut current = state.clusters[j].kernel;
        let mut current_target =
            cluster_log_target(g0, &current, mem, data, &state.latents, &ln_latents);
        for family in [Family::Mu, Family::Gamma, Family::Alpha, Family::Beta] {
            let v = coordinate(&current.params, family);
            let delta = adapt.delta(family);
            let upper = if family == Family::Mu {
                mu_bound
            } else {
                f64::INFINITY
            };
            let mut proposal = propose(v, delta, upper, rng);
            if family != Family::Mu {
                proposal = proposal.max(POSITIVE_FLOOR);
            }
            if proposal == v {
                adapt.record(family, true);
                continue;
            }
            let kernel = KernelCache::new(with_coordinate(&current.params, family, proposal));
            let target = cluster_log_target(g0, &kernel, mem, data, &state.latents, &ln_latents);
            let mut log_ratio = target - current_target;
            if cfg.hastings_correction {
                log_ratio += log_proposal_ratio(v, proposal, delta, upper);
            }
            let accepted = accept(log_ratio, rng);
            adapt.record(family, accepted);
            if accepted {
                current = kernel;
                current_target = target;
            }
        }
        state.clusters[j].kernel = current;
    }
}

/// `log[nu^(a+m-2) (1-nu)^(b-1) prod_j Gamma(n_j - nu)/Gamma(1 - nu)]`, up to
/// a constant.
pub fn nu_log_target(nu: f64, sizes: &PartitionCounts, a: f64, b: f64) -> f64 {
    if !(nu > 0.0 && nu < 1.0) {
        return f64::NEG_INFINITY;
    }
    let m = sizes.m() as f64;
    let lg = ln_gamma(1.0 - nu);
    let blocks: f64 = sizes
        .counts()
        .iter()
        .map(|&c| ln_gamma(c as f64 - nu) - lg)
        .sum();
    (a + m - 2.0) * nu.ln() + (b - 1.0) * (1.0 - nu).ln() + blocks
}

/// One random-walk move on `nu` given the current partition; a no-op when
/// `nu` is fixed or in the single-kernel model.
pub fn step_nu<R: Rng + ?Sized>(
    state: &mut ClusterState,
    cfg: &ChainConfig,
    adapt: &mut AdaptState,
    rng: &mut R,
) {
    let NuSpec::BetaPrior { a, b } = cfg.nu_spec else {
        return;
    };
    if cfg.model == KernelModel::Single {
        return;
    }
    let sizes = state.sizes();
    let v = state.nu.get();
    let delta = adapt.delta(Family::Nu);
    let proposal = propose(v, delta, 1.0, rng).clamp(NU_FLOOR, 1.0 - NU_FLOOR);
    if proposal == v {
        adapt.record(Family::Nu, true);
        return;
    }
    let mut log_ratio = nu_log_target(proposal, &sizes, a, b) - nu_log_target(v, &sizes, a, b);
    if cfg.hastings_correction {
        log_ratio += log_proposal_ratio(v, proposal, delta, 1.0);
    }
    let accepted = accept(log_ratio, rng);
    adapt.record(Family::Nu, accepted);
    if accepted {
        state.nu = StableIndex::new(proposal).expect("proposal clamped into (0,1)");
    }
}
