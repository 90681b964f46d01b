use rand::Rng;

use crate::distributions::{gamma_logpdf, gamma_sample_unchecked, SggParams};
use crate::error::{check_positive, Error, Result};
use crate::stable_process::StableIndex;

/// `Ga(shape, rate)` prior on one kernel coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPrior {
    pub shape: f64,
    pub rate: f64,
}

impl GammaPrior {
    pub const fn new(shape: f64, rate: f64) -> Self {
        Self { shape, rate }
    }

    /// Log-density with the argument floored at the smallest positive normal,
    /// so that a coordinate sitting exactly on zero stays finite when
    /// `shape < 1`.
    pub fn log_density(&self, v: f64) -> f64 {
        gamma_logpdf(v.max(f64::MIN_POSITIVE), self.shape, self.rate)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        gamma_sample_unchecked(self.shape, self.rate, rng)
    }
}

/// Centring measure `g0`: independent gamma priors on `mu, gamma, alpha, beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseMeasure {
    pub mu: GammaPrior,
    pub gamma: GammaPrior,
    pub alpha: GammaPrior,
    pub beta: GammaPrior,
}

/// Floor applied to draws and proposals of the strictly positive coordinates.
pub const POSITIVE_FLOOR: f64 = 1e-8;

impl Default for BaseMeasure {
    fn default() -> Self {
        let half = GammaPrior::new(0.5, 0.5);
        Self {
            mu: half,
            gamma: half,
            alpha: half,
            beta: half,
        }
    }
}

impl BaseMeasure {
    pub fn validate(&self) -> Result<()> {
        for (name, g) in [
            ("a_mu", self.mu.shape),
            ("b_mu", self.mu.rate),
            ("a_gamma", self.gamma.shape),
            ("b_gamma", self.gamma.rate),
            ("a_alpha", self.alpha.shape),
            ("b_alpha", self.alpha.rate),
            ("a_beta", self.beta.shape),
            ("b_beta", self.beta.rate),
        ] {
            check_positive(name, g)?;
        }
        Ok(())
    }

    pub fn log_density(&self, p: &SggParams) -> f64 {
        self.mu.log_density(p.mu)
            + self.gamma.log_density(p.gamma)
            + self.alpha.log_density(p.alpha)
            + self.beta.log_density(p.beta)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SggParams {
        let mu = self.mu.sample(rng);
        self.complete(mu, rng)
    }

    /// Draw from `g0` with `mu` restricted to `[0, x)`: rejection for up to
    /// 100 attempts, then `mu = x * u` with `u ~ Un(0, 1)`.
    pub fn sample_below<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> SggParams {
        let mut mu = None;
        for _ in 0..100 {
            let m = self.mu.sample(rng);
            if m < x {
                mu = Some(m);
                break;
            }
        }
        let mu = mu.unwrap_or_else(|| x * rng.random::<f64>());
        self.complete(mu, rng)
    }

    fn complete<R: Rng + ?Sized>(&self, mu: f64, rng: &mut R) -> SggParams {
        SggParams {
            mu,
            gamma: self.gamma.sample(rng).max(POSITIVE_FLOOR),
            alpha: self.alpha.sample(rng).max(POSITIVE_FLOOR),
            beta: self.beta.sample(rng).max(POSITIVE_FLOOR),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NuSpec {
    Fixed(StableIndex),
    BetaPrior { a: f64, b: f64 },
}

/// `Mixture` is the full nonparametric model; `Single` keeps every
/// observation in one SGG kernel and skips the partition and `nu` updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelModel {
    Mixture,
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub iterations: usize,
    pub burn_in: usize,
    pub thinning: usize,
    /// Number of auxiliary kernels offered per reassignment.
    pub r_aux: usize,
    pub batch_size: usize,
    pub target_rate_low: f64,
    pub target_rate_high: f64,
    pub initial_delta: f64,
    pub base_measure: BaseMeasure,
    pub nu_spec: NuSpec,
    pub seed: u64,
    /// Divisor applied to the data on ingestion; recorded for the manifest.
    pub data_scale: f64,
    /// Include the proposal-density ratio of the truncated uniform walk.
    pub hastings_correction: bool,
    /// Keep adapting step widths after burn-in.
    pub adapt_after_burn_in: bool,
    /// Carry unselected auxiliary kernels over to the next observation.
    pub reuse_aux: bool,
    pub model: KernelModel,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            iterations: 15_000,
            burn_in: 1_000,
            thinning: 4,
            r_aux: 3,
            batch_size: 50,
            target_rate_low: 0.3,
            target_rate_high: 0.4,
            initial_delta: 1.0,
            base_measure: BaseMeasure::default(),
            nu_spec: NuSpec::BetaPrior { a: 0.5, b: 0.5 },
            seed: 0,
            data_scale: 1.0,
            hastings_correction: false,
            adapt_after_burn_in: true,
            reuse_aux: false,
            model: KernelModel::Mixture,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.iterations == 0 {
            return bad("iterations must be positive");
        }
        if self.burn_in >= self.iterations {
            return bad("burn_in must be smaller than iterations");
        }
        if self.thinning == 0 {
            return bad("thinning must be positive");
        }
        if self.r_aux == 0 {
            return bad("r_aux must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive");
        }
        if !(0.0 < self.target_rate_low
            && self.target_rate_low < self.target_rate_high
            && self.target_rate_high < 1.0)
        {
            return bad("target rates must satisfy 0 < low < high < 1");
        }
        check_positive("initial_delta", self.initial_delta)?;
        check_positive("data_scale", self.data_scale)?;
        self.base_measure.validate()?;
        if let NuSpec::BetaPrior { a, b } = self.nu_spec {
            check_positive("a_nu", a)?;
            check_positive("b_nu", b)?;
        }
        Ok(())
    }

    /// `floor((iterations - burn_in) / thinning)`.
    pub fn retained_count(&self) -> usize {
        (self.iterations - self.burn_in) / self.thinning
    }

    pub fn is_retained(&self, iteration: usize) -> bool {
        iteration > self.burn_in && (iteration - self.burn_in).is_multiple_of(self.thinning)
    }
}
