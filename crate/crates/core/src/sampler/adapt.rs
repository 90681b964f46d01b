//! Batch adaptation of the random-walk widths.
//!
//! After batch `b` the width of a family whose acceptance rate fell below the
//! target interval is multiplied by `1.1^(-sqrt(b))`; above the interval, by
//! `1.1^(sqrt(b))`. The factor grows with `b`, so this is not a diminishing
//! adaptation scheme.

use std::fmt;
use std::str::FromStr;

/// Widths are kept inside this range so that a long run of one-sided batches
/// cannot push them to zero or infinity.
const DELTA_MIN: f64 = 1e-12;
const DELTA_MAX: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Mu,
    Gamma,
    Alpha,
    Beta,
    Nu,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Mu,
        Family::Gamma,
        Family::Alpha,
        Family::Beta,
        Family::Nu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mu => "mu",
            Family::Gamma => "gamma",
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Nu => "nu",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown parameter family `{s}`"))
    }
}

/// Acceptance rate of one family over one batch and the width in force for
/// the next batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchRecord {
    pub batch: usize,
    pub family: Family,
    pub rate: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptState {
    delta: [f64; 5],
    proposed: [u64; 5],
    accepted: [u64; 5],
    batch: usize,
    low: f64,
    high: f64,
}

impl AdaptState {
    pub fn new(initial_delta: f64, low: f64, high: f64) -> Self {
        Self {
            delta: [initial_delta; 5],
            proposed: [0; 5],
            accepted: [0; 5],
            batch: 1,
            low,
            high,
        }
    }

    pub fn delta(&self, family: Family) -> f64 {
        self.delta[family.index()]
    }

    pub fn set_delta(&mut self, family: Family, delta: f64) {
        self.delta[family.index()] = delta;
    }

    /// Index `b` of the batch currently being collected (starts at 1).
    pub fn batch(&self) -> usize {
        self.batch
    }

    /// Resume collecting at batch `b`.
    pub fn set_batch(&mut self, b: usize) {
        assert!(b >= 1, "batches are numbered from 1");
        self.batch = b;
    }

    pub fn record(&mut self, family: Family, accepted: bool) {
        self.proposed[family.index()] += 1;
        self.accepted[family.index()] += accepted as u64;
    }

    /// Pooled acceptance rate of the current batch; every proposal counts
    /// equally, whichever cluster made it.
    pub fn rate(&self, family: Family) -> Option<f64> {
        let k = family.index();
        (self.proposed[k] > 0).then(|| self.accepted[k] as f64 / self.proposed[k] as f64)
    }

    /// Close the current batch. Widths are rescaled only when `apply` is set;
    /// counters always reset and the batch index always advances.
    pub fn close_batch(&mut self, apply: bool) -> Vec<BatchRecord> {
        let root_b = (self.batch as f64).sqrt();
        let shrink = 1.1f64.powf(-root_b);
        let grow = 1.1f64.powf(root_b);
        let mut records = Vec::new();
        for family in Family::ALL {
            let Some(rate) = self.rate(family) else {
                continue;
            };
            let k = family.index();
            if apply {
                if rate < self.low {
                    self.delta[k] *= shrink;
                } else if rate > self.high {
                    self.delta[k] *= grow;
                }
                self.delta[k] = self.delta[k].clamp(DELTA_MIN, DELTA_MAX);
            }
            records.push(BatchRecord {
                batch: self.batch,
                family,
                rate,
                delta: self.delta[k],
            });
        }
        self.proposed = [0; 5];
        self.accepted = [0; 5];
        self.batch += 1;
        records
    }
}

/// Apply the batch rule at a batch boundary.
pub fn adapt_tuning(adapt: &mut AdaptState) -> Vec<BatchRecord> {
    adapt.close_batch(true)
}
