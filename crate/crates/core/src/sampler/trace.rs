use crate::distributions::{augmented_loglik, SggParams};
use crate::error::{Error, Result};
use crate::stable_process::PartitionCounts;

use super::adapt::BatchRecord;

/// One occupied cluster in a retained iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterDraw {
    pub params: SggParams,
    pub size: usize,
}

/// Everything kept from one retained iteration. Cluster labels are
/// canonical: clusters are numbered by first appearance in observation order.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSample {
    pub iteration: usize,
    pub nu: f64,
    pub clusters: Vec<ClusterDraw>,
    pub assignment: Vec<u32>,
    pub latents: Vec<f64>,
    /// `log f(x_i, y_i | theta_i)` under the augmented likelihood.
    pub obs_loglik: Vec<f64>,
}

impl IterationSample {
    /// Build a sample from stored draws, recomputing the per-observation
    /// augmented log-likelihoods against `data`.
    pub fn new(
        iteration: usize,
        nu: f64,
        clusters: Vec<ClusterDraw>,
        assignment: Vec<u32>,
        latents: Vec<f64>,
        data: &[f64],
    ) -> Result<Self> {
        if assignment.len() != data.len() || latents.len() != data.len() {
            return Err(Error::Data(format!(
                "iteration {iteration}: expected {} observations, got {} assignments and {} latents",
                data.len(),
                assignment.len(),
                latents.len()
            )));
        }
        let mut counted = vec![0usize; clusters.len()];
        for &c in &assignment {
            let slot = counted.get_mut(c as usize).ok_or_else(|| {
                Error::Data(format!("iteration {iteration}: unknown cluster label {c}"))
            })?;
            *slot += 1;
        }
        if counted
            .iter()
            .zip(&clusters)
            .any(|(&n, c)| n != c.size || n == 0)
        {
            return Err(Error::Data(format!(
                "iteration {iteration}: cluster sizes disagree with assignments"
            )));
        }
        let obs_loglik = data
            .iter()
            .zip(&assignment)
            .zip(&latents)
            .map(|((&x, &c), &y)| augmented_loglik(x, y, &clusters[c as usize].params))
            .collect();
        Ok(Self {
            iteration,
            nu,
            clusters,
            assignment,
            latents,
            obs_loglik,
        })
    }

    pub fn m(&self) -> usize {
        self.clusters.len()
    }

    pub fn theta(&self, i: usize) -> &SggParams {
        &self.clusters[self.assignment[i] as usize].params
    }

    pub fn sizes(&self) -> PartitionCounts {
        PartitionCounts::new(self.clusters.iter().map(|c| c.size).collect())
            .expect("retained clusters are nonempty")
    }
}

/// Output of one chain.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub samples: Vec<IterationSample>,
    pub acceptance: Vec<BatchRecord>,
    /// Reassignments skipped because every candidate had zero likelihood.
    pub zero_weight_events: u64,
    /// Number of reassignments attempted, the denominator for the above.
    pub reassignments: u64,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn zero_weight_fraction(&self) -> f64 {
        if self.reassignments == 0 {
            0.0
        } else {
            self.zero_weight_events as f64 / self.reassignments as f64
        }
    }
}
