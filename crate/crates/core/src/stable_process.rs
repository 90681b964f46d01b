//! Normalised stable process: weight constructions, the generalised Pólya
//! urn and the exchangeable partition probability function (EPPF).
//!
//! The sampler only ever uses the urn and the EPPF. The two weight
//! constructions are for prior simulation and for cross-checking each other.

use rand::Rng;
use statrs::function::gamma::ln_gamma;

use crate::distributions::{beta_sample, gamma_sample_unchecked};
use crate::error::{Error, Result};

/// Stability index `nu` in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StableIndex(f64);

impl StableIndex {
    pub fn new(nu: f64) -> Result<Self> {
        if nu > 0.0 && nu < 1.0 {
            Ok(Self(nu))
        } else {
            Err(Error::Domain {
                name: "nu",
                value: nu,
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Block sizes of a partition of `n` items into `m` blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionCounts {
    counts: Vec<usize>,
    n: usize,
}

impl PartitionCounts {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Precondition("partition has no blocks".into()));
        }
        if let Some(&c) = counts.iter().find(|&&c| c == 0) {
            return Err(Error::Domain {
                name: "block size",
                value: c as f64,
            });
        }
        let n = counts.iter().sum();
        Ok(Self { counts, n })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of items.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.counts.len()
    }

    /// Block sizes in decreasing order; identifies the integer partition.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut c = self.counts.clone();
        c.sort_unstable_by(|a, b| b.cmp(a));
        c
    }
}

/// Predictive weights for one more item joining a partition of `n - 1` items.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnWeights {
    pub new_weight: f64,
    pub existing: Vec<f64>,
}

/// `P(new block) = nu * m / (n - 1)`, `P(block j) = (n_j - nu) / (n - 1)`.
pub fn urn_predictive_weights(others: &PartitionCounts, nu: StableIndex) -> UrnWeights {
    let nu = nu.get();
    let total = others.n() as f64;
    UrnWeights {
        new_weight: nu * others.m() as f64 / total,
        existing: others
            .counts()
            .iter()
            .map(|&c| (c as f64 - nu) / total)
            .collect(),
    }
}

/// `log[(m-1)!/Gamma(n) * nu^(m-1) * prod_j Gamma(n_j - nu)/Gamma(1 - nu)]`.
pub fn eppf_log(pc: &PartitionCounts, nu: StableIndex) -> f64 {
    let nu = nu.get();
    let m = pc.m() as f64;
    let lg_one_minus = ln_gamma(1.0 - nu);
    let blocks: f64 = pc
        .counts()
        .iter()
        .map(|&c| ln_gamma(c as f64 - nu) - lg_one_minus)
        .sum();
    ln_gamma(m) - ln_gamma(pc.n() as f64) + (m - 1.0) * nu.ln() + blocks
}

/// Truncated stick-breaking weights.
#[derive(Debug, Clone, PartialEq)]
pub struct StickBreaking {
    pub weights: Vec<f64>,
    /// `1 - sum(weights)`, the mass beyond the truncation.
    pub residual: f64,
}

/// `W_j = V_j * prod_{k<j}(1 - V_k)` with `V_j ~ Be(1 - nu, j * nu)`.
pub fn stick_breaking_weights<R: Rng + ?Sized>(
    nu: StableIndex,
    truncation: usize,
    rng: &mut R,
) -> StickBreaking {
    let nu = nu.get();
    let mut weights = Vec::with_capacity(truncation);
    let mut remaining = 1.0;
    for j in 1..=truncation {
        let v = beta_sample(1.0 - nu, j as f64 * nu, rng).expect("nu in (0,1)");
        weights.push(v * remaining);
        remaining *= 1.0 - v;
    }
    StickBreaking {
        weights,
        residual: remaining,
    }
}

/// `W_j = U_j^(-1/nu) / sum_k U_k^(-1/nu)` with `U_j` the arrival times of a
/// unit-rate Poisson process, truncated at `truncation` terms and
/// renormalised. The renormalisation makes this a test-only approximation.
pub fn normalised_form_weights<R: Rng + ?Sized>(
    nu: StableIndex,
    truncation: usize,
    rng: &mut R,
) -> Vec<f64> {
    let nu = nu.get();
    let mut arrival = 0.0;
    let log_w: Vec<f64> = (0..truncation)
        .map(|_| {
            arrival += gamma_sample_unchecked(1.0, 1.0, rng);
            -arrival.ln() / nu
        })
        .collect();
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unnorm: Vec<f64> = log_w.iter().map(|l| (l - max).exp()).collect();
    let total: f64 = unnorm.iter().sum();
    unnorm.into_iter().map(|w| w / total).collect()
}

/// Seat `n` items one at a time with the urn and return the block sizes in
/// order of block creation.
pub fn prior_partition_sample<R: Rng + ?Sized>(
    n: usize,
    nu: StableIndex,
    rng: &mut R,
) -> PartitionCounts {
    assert!(n >= 1, "partition of zero items");
    let nu_v = nu.get();
    let mut counts = vec![1usize];
    for seated in 1..n {
        let total = seated as f64;
        let mut u = rng.random::<f64>() * total;
        let new_w = nu_v * counts.len() as f64;
        if u < new_w {
            counts.push(1);
            continue;
        }
        u -= new_w;
        let mut chosen = counts.len() - 1;
        for (j, &c) in counts.iter().enumerate() {
            let w = c as f64 - nu_v;
            if u < w {
                chosen = j;
                break;
            }
            u -= w;
        }
        counts[chosen] += 1;
    }
    PartitionCounts::new(counts).expect("urn never creates empty blocks")
}
