use rand::Rng;

use crate::distributions::{latent_sample_unchecked, KernelCache, SggParams};
use crate::error::{Error, Result};
use crate::stable_process::{PartitionCounts, StableIndex};

use super::config::{ChainConfig, KernelModel, NuSpec};
use super::trace::{ClusterDraw, IterationSample};

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub kernel: KernelCache,
    pub size: usize,
}

impl Cluster {
    pub fn params(&self) -> &SggParams {
        &self.kernel.params
    }
}

/// Partition of the observations, the unique kernel parameters, the latent
/// rates and the current stable index.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    pub assignment: Vec<usize>,
    pub clusters: Vec<Cluster>,
    pub latents: Vec<f64>,
    pub nu: StableIndex,
}

impl ClusterState {
    pub fn m(&self) -> usize {
        self.clusters.len()
    }

    pub fn sizes(&self) -> PartitionCounts {
        PartitionCounts::new(self.clusters.iter().map(|c| c.size).collect())
            .expect("clusters are never empty")
    }

    pub fn theta(&self, i: usize) -> &SggParams {
        self.clusters[self.assignment[i]].params()
    }

    /// Observation indices per cluster.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .clusters
            .iter()
            .map(|c| Vec::with_capacity(c.size))
            .collect();
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Sum of augmented log-likelihood terms over all observations.
    pub fn augmented_loglik(&self, data: &[f64]) -> f64 {
        data.iter()
            .zip(&self.assignment)
            .zip(&self.latents)
            .map(|((&x, &c), &y)| self.clusters[c].kernel.augmented_loglik(x, y, y.ln()))
            .sum()
    }

    /// Check bookkeeping and support invariants.
    pub fn check(&self, data: &[f64]) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        if self.assignment.len() != data.len() || self.latents.len() != data.len() {
            return fail("state length differs from data".into());
        }
        let mut counts = vec![0usize; self.clusters.len()];
        for &c in &self.assignment {
            if c >= counts.len() {
                return fail(format!("label {c} out of range"));
            }
            counts[c] += 1;
        }
        for (j, (cl, &n)) in self.clusters.iter().zip(&counts).enumerate() {
            if n == 0 {
                return fail(format!("cluster {j} is empty"));
            }
            if cl.size != n {
                return fail(format!(
                    "cluster {j} records size {} but holds {n}",
                    cl.size
                ));
            }
        }
        for (i, &x) in data.iter().enumerate() {
            if x < self.theta(i).mu {
                return fail(format!("observation {i} lies below its cluster location"));
            }
            if !(self.latents[i] > 0.0) || !self.latents[i].is_finite() {
                return fail(format!("latent {i} is not a positive finite value"));
            }
        }
        Ok(())
    }

    /// Remove an empty cluster, relabelling the one moved into its slot.
    fn remove_cluster(&mut self, j: usize) -> Cluster {
        let removed = self.clusters.swap_remove(j);
        let moved = self.clusters.len();
        if j != moved {
            for c in self.assignment.iter_mut() {
                if *c == moved {
                    *c = j;
                }
            }
        }
        removed
    }

    /// Snapshot with canonical labels.
    pub fn snapshot(&self, iteration: usize, data: &[f64]) -> IterationSample {
        let mut relabel = vec![u32::MAX; self.clusters.len()];
        let mut clusters = Vec::with_capacity(self.clusters.len());
        let assignment: Vec<u32> = self
            .assignment
            .iter()
            .map(|&c| {
                if relabel[c] == u32::MAX {
                    relabel[c] = clusters.len() as u32;
                    clusters.push(ClusterDraw {
                        params: *self.clusters[c].params(),
                        size: self.clusters[c].size,
                    });
                }
                relabel[c]
            })
            .collect();
        IterationSample::new(
            iteration,
            self.nu.get(),
            clusters,
            assignment,
            self.latents.clone(),
            data,
        )
        .expect("state invariants hold")
    }
}

pub(crate) fn validate_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Data("no observations".into()));
    }
    if let Some((i, x)) = data.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(Error::Data(format!("observation {i} is not finite: {x}")));
    }
    if let Some((i, x)) = data.iter().enumerate().find(|(_, &x)| x < 0.0) {
        return Err(Error::Data(format!(
            "observation {i} is negative ({x}); kernel locations are nonnegative"
        )));
    }
    Ok(())
}

/// Initial state: every observation gets its own draw from `g0` (with the
/// location kept below the observation), or one shared draw in the
/// single-kernel model. Latents come from their full conditional.
pub fn init_state<R: Rng + ?Sized>(
    data: &[f64],
    cfg: &ChainConfig,
    rng: &mut R,
) -> Result<ClusterState> {
    validate_data(data)?;
    cfg.validate()?;
    let g0 = &cfg.base_measure;
    let (assignment, clusters) = match cfg.model {
        KernelModel::Mixture => {
            let clusters = data
                .iter()
                .map(|&x| Cluster {
                    kernel: KernelCache::new(g0.sample_below(x, rng)),
                    size: 1,
                })
                .collect();
            ((0..data.len()).collect(), clusters)
        }
        KernelModel::Single => {
            let min = data.iter().copied().fold(f64::INFINITY, f64::min);
            let cluster = Cluster {
                kernel: KernelCache::new(g0.sample_below(min, rng)),
                size: data.len(),
            };
            (vec![0; data.len()], vec![cluster])
        }
    };
    let nu = match cfg.nu_spec {
        NuSpec::Fixed(nu) => nu,
        NuSpec::BetaPrior { a, b } => {
            let v = crate::distributions::beta_sample(a, b, rng)?;
            StableIndex::new(v.clamp(super::update::NU_FLOOR, 1.0 - super::update::NU_FLOOR))?
        }
    };
    let mut state = ClusterState {
        assignment,
        clusters,
        latents: vec![1.0; data.len()],
        nu,
    };
    step_latents(&mut state, data, rng);
    Ok(state)
}

/// `y_i ~ Ga(gamma_i + alpha_i, x_i - mu_i + beta_i)` for every observation.
pub fn step_latents<R: Rng + ?Sized>(state: &mut ClusterState, data: &[f64], rng: &mut R) {
    for (i, &x) in data.iter().enumerate() {
        let p = *state.clusters[state.assignment[i]].params();
        state.latents[i] = latent_sample_unchecked(x, &p, rng);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AssignmentStats {
    pub zero_weight_events: u64,
    pub reassignments: u64,
}

/// One sweep of auxiliary-kernel reassignment.
///
/// Each observation is removed from its cluster and reassigned among the
/// remaining clusters, with weight `(n_j - nu) f(x_i, y_i | theta_j)`, and
/// `r` auxiliary kernels, each with weight `(nu m_i / r) f(x_i, y_i | theta)`.
/// When the observation was alone in its cluster that cluster's kernel is
/// the first auxiliary and only `r - 1` are drawn from `g0`; otherwise all
/// `r` are fresh draws. If every weight is zero the observation keeps its
/// cluster and the event is counted.
pub fn step_assignments<R: Rng + ?Sized>(
    state: &mut ClusterState,
    data: &[f64],
    cfg: &ChainConfig,
    rng: &mut R,
) -> AssignmentStats {
    let g0 = &cfg.base_measure;
    let r = cfg.r_aux;
    let nu = state.nu.get();
    let mut stats = AssignmentStats::default();
    let mut aux: Vec<KernelCache> = Vec::with_capacity(r);
    let mut log_w: Vec<f64> = Vec::new();

    for (i, &x) in data.iter().enumerate() {
        stats.reassignments += 1;
        let y = state.latents[i];
        let ln_y = y.ln();
        let c = state.assignment[i];
        state.clusters[c].size -= 1;
        let singleton = (state.clusters[c].size == 0).then(|| state.remove_cluster(c).kernel);

        if !cfg.reuse_aux || aux.len() != r {
            aux.clear();
            let fresh = if singleton.is_some() { r - 1 } else { r };
            aux.extend(singleton);
            aux.extend((0..fresh).map(|_| KernelCache::new(g0.sample(rng))));
        } else if let Some(k) = singleton {
            aux[0] = k;
        }

        let m_i = state.clusters.len();
        // With no other observations the urn reduces to g0 itself.
        let log_new = if m_i == 0 {
            -(r as f64).ln()
        } else {
            (nu * m_i as f64 / r as f64).ln()
        };
        log_w.clear();
        log_w.extend(
            state
                .clusters
                .iter()
                .map(|cl| (cl.size as f64 - nu).ln() + cl.kernel.augmented_loglik(x, y, ln_y)),
        );
        log_w.extend(aux.iter().map(|k| log_new + k.augmented_loglik(x, y, ln_y)));

        let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            stats.zero_weight_events += 1;
            match singleton {
                Some(kernel) => {
                    state.clusters.push(Cluster { kernel, size: 1 });
                    state.assignment[i] = state.clusters.len() - 1;
                }
                None => {
                    let c = state.assignment[i];
                    state.clusters[c].size += 1;
                }
            }
            continue;
        }

        let chosen = sample_log_weights(&log_w, max, rng);
        if chosen < m_i {
            state.clusters[chosen].size += 1;
            state.assignment[i] = chosen;
        } else {
            let k = chosen - m_i;
            state.clusters.push(Cluster {
                kernel: aux[k],
                size: 1,
            });
            state.assignment[i] = m_i;
            if cfg.reuse_aux {
                aux[k] = KernelCache::new(g0.sample(rng));
            }
        }
    }
    stats
}

fn sample_log_weights<R: Rng + ?Sized>(log_w: &[f64], max: f64, rng: &mut R) -> usize {
    let total: f64 = log_w.iter().map(|l| (l - max).exp()).sum();
    let mut u = rng.random::<f64>() * total;
    let mut last_positive = 0;
    for (k, l) in log_w.iter().enumerate() {
        let w = (l - max).exp();
        if w > 0.0 {
            if u < w {
                return k;
            }
            u -= w;
            last_positive = k;
        }
    }
    last_positive
}
