//! Run settings as flat `key = value` text.
//!
//! Blank lines and lines starting with `#` are skipped. Every key is
//! optional; defaults match [`ChainConfig::default`] plus the output
//! settings below.
//!
//! | key | meaning |
//! |-----|---------|
//! | `iterations`, `burn_in`, `thinning` | chain length and retention |
//! | `r_aux` | auxiliary kernels per reassignment |
//! | `batch_size`, `target_rate_low`, `target_rate_high`, `initial_delta` | step-width adaptation |
//! | `a_mu`, `b_mu`, `a_gamma`, `b_gamma`, `a_alpha`, `b_alpha`, `a_beta`, `b_beta` | gamma priors of `g0` |
//! | `nu_fixed` | fixes `nu`; when absent `nu ~ Be(a_nu, b_nu)` |
//! | `a_nu`, `b_nu` | beta prior on `nu` |
//! | `seed` | seed of the single random stream |
//! | `data_scale` | divisor applied to every observation on ingestion |
//! | `hastings_correction`, `adapt_after_burn_in`, `reuse_aux` | `true` / `false` |
//! | `model` | `mixture` or `single` |
//! | `cpo` | `marginal` or `augmented` |
//! | `base_draws` | `g0` draws per iteration in the predictive density |
//! | `grid_points`, `grid_lower`, `grid_upper` | predictive grid; the upper end defaults to the 99% data quantile |
//! | `hist_bins` | bins of the pooled `alpha` and `mu` histograms |
//! | `header` | skip the first line of the data file |
//! | `chains` | independent chains with derived seeds |

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sggmix::sampler::GammaPrior;
use sggmix::{ChainConfig, CpoMode, KernelModel, NuSpec, StableIndex};

#[derive(Debug, Clone, PartialEq)]
pub struct FitSettings {
    pub chain: ChainConfig,
    pub cpo: CpoMode,
    pub base_draws: usize,
    pub grid_points: usize,
    pub grid_lower: f64,
    pub grid_upper: Option<f64>,
    pub hist_bins: usize,
    pub header: bool,
    pub chains: usize,
}

impl Default for FitSettings {
    fn default() -> Self {
        Self {
            chain: ChainConfig::default(),
            cpo: CpoMode::Marginal,
            base_draws: 100,
            grid_points: 200,
            grid_lower: 0.0,
            grid_upper: None,
            hist_bins: 100,
            header: false,
            chains: 1,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value
        .parse()
        .with_context(|| format!("`{key}`: cannot parse `{value}`"))
}

fn flag(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => bail!("`{key}`: expected true or false, got `{value}`"),
    }
}

impl FitSettings {
    /// Set one key. Unknown keys are errors.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let c = &mut self.chain;
        let g0 = &mut c.base_measure;
        let (a_nu, b_nu) = match c.nu_spec {
            NuSpec::BetaPrior { a, b } => (a, b),
            NuSpec::Fixed(_) => (0.5, 0.5),
        };
        match key {
            "iterations" => c.iterations = num(key, value)?,
            "burn_in" => c.burn_in = num(key, value)?,
            "thinning" => c.thinning = num(key, value)?,
            "r_aux" => c.r_aux = num(key, value)?,
            "batch_size" => c.batch_size = num(key, value)?,
            "target_rate_low" => c.target_rate_low = num(key, value)?,
            "target_rate_high" => c.target_rate_high = num(key, value)?,
            "initial_delta" => c.initial_delta = num(key, value)?,
            "a_mu" => g0.mu.shape = num(key, value)?,
            "b_mu" => g0.mu.rate = num(key, value)?,
            "a_gamma" => g0.gamma.shape = num(key, value)?,
            "b_gamma" => g0.gamma.rate = num(key, value)?,
            "a_alpha" => g0.alpha.shape = num(key, value)?,
            "b_alpha" => g0.alpha.rate = num(key, value)?,
            "a_beta" => g0.beta.shape = num(key, value)?,
            "b_beta" => g0.beta.rate = num(key, value)?,
            "nu_fixed" => c.nu_spec = NuSpec::Fixed(StableIndex::new(num(key, value)?)?),
            "a_nu" => {
                c.nu_spec = NuSpec::BetaPrior {
                    a: num(key, value)?,
                    b: b_nu,
                }
            }
            "b_nu" => {
                c.nu_spec = NuSpec::BetaPrior {
                    a: a_nu,
                    b: num(key, value)?,
                }
            }
            "seed" => c.seed = num(key, value)?,
            "data_scale" => c.data_scale = num(key, value)?,
            "hastings_correction" => c.hastings_correction = flag(key, value)?,
            "adapt_after_burn_in" => c.adapt_after_burn_in = flag(key, value)?,
            "reuse_aux" => c.reuse_aux = flag(key, value)?,
            "model" => {
                c.model = match value {
                    "mixture" => KernelModel::Mixture,
                    "single" => KernelModel::Single,
                    _ => bail!("`model`: expected mixture or single, got `{value}`"),
                }
            }
            "cpo" => {
                self.cpo = match value {
                    "marginal" => CpoMode::Marginal,
                    "augmented" => CpoMode::Augmented,
                    _ => bail!("`cpo`: expected marginal or augmented, got `{value}`"),
                }
            }
            "base_draws" => self.base_draws = num(key, value)?,
            "grid_points" => self.grid_points = num(key, value)?,
            "grid_lower" => self.grid_lower = num(key, value)?,
            "grid_upper" => self.grid_upper = Some(num(key, value)?),
            "hist_bins" => self.hist_bins = num(key, value)?,
            "header" => self.header = flag(key, value)?,
            "chains" => self.chains = num(key, value)?,
            _ => bail!("unknown configuration key `{key}`"),
        }
        Ok(())
    }

    /// Apply a `key=value` override as given on the command line.
    pub fn apply_assignment(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .with_context(|| format!("expected key=value, got `{assignment}`"))?;
        self.apply(k.trim(), v.trim())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::default();
        for (k, v, line) in key_values(text)? {
            s.apply(&k, &v).with_context(|| format!("line {line}"))?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        if self.grid_points < 2 {
            bail!("`grid_points` must be at least 2");
        }
        if self.hist_bins == 0 {
            bail!("`hist_bins` must be positive");
        }
        if self.chains == 0 {
            bail!("`chains` must be positive");
        }
        if let Some(u) = self.grid_upper {
            if u.is_nan() || u <= self.grid_lower {
                bail!("`grid_upper` must exceed `grid_lower`");
            }
        }
        Ok(())
    }

    /// Every setting as `(key, value)`, in a fixed order; parsing the result
    /// gives back an equal value.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let c = &self.chain;
        let g = &c.base_measure;
        let prior = |p: &GammaPrior| (p.shape.to_string(), p.rate.to_string());
        let (am, bm) = prior(&g.mu);
        let (ag, bg) = prior(&g.gamma);
        let (aa, ba) = prior(&g.alpha);
        let (ab, bb) = prior(&g.beta);
        let mut out = vec![
            ("iterations", c.iterations.to_string()),
            ("burn_in", c.burn_in.to_string()),
            ("thinning", c.thinning.to_string()),
            ("r_aux", c.r_aux.to_string()),
            ("batch_size", c.batch_size.to_string()),
            ("target_rate_low", c.target_rate_low.to_string()),
            ("target_rate_high", c.target_rate_high.to_string()),
            ("initial_delta", c.initial_delta.to_string()),
            ("a_mu", am),
            ("b_mu", bm),
            ("a_gamma", ag),
            ("b_gamma", bg),
            ("a_alpha", aa),
            ("b_alpha", ba),
            ("a_beta", ab),
            ("b_beta", bb),
        ];
        match c.nu_spec {
            NuSpec::Fixed(nu) => out.push(("nu_fixed", nu.get().to_string())),
            NuSpec::BetaPrior { a, b } => {
                out.push(("a_nu", a.to_string()));
                out.push(("b_nu", b.to_string()));
            }
        }
        out.extend([
            ("seed", c.seed.to_string()),
            ("data_scale", c.data_scale.to_string()),
            ("hastings_correction", c.hastings_correction.to_string()),
            ("adapt_after_burn_in", c.adapt_after_burn_in.to_string()),
            ("reuse_aux", c.reuse_aux.to_string()),
            (
                "model",
                match c.model {
                    KernelModel::Mixture => "mixture",
                    KernelModel::Single => "single",
                }
                .to_string(),
            ),
            (
                "cpo",
                match self.cpo {
                    CpoMode::Marginal => "marginal",
                    CpoMode::Augmented => "augmented",
                }
                .to_string(),
            ),
            ("base_draws", self.base_draws.to_string()),
            ("grid_points", self.grid_points.to_string()),
            ("grid_lower", self.grid_lower.to_string()),
        ]);
        if let Some(u) = self.grid_upper {
            out.push(("grid_upper", u.to_string()));
        }
        out.extend([
            ("hist_bins", self.hist_bins.to_string()),
            ("header", self.header.to_string()),
            ("chains", self.chains.to_string()),
        ]);
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.entries() {
            writeln!(s, "{k} = {v}").expect("writing to a String");
        }
        s
    }
}

/// Split `key = value` lines, skipping blanks and `#` comments. Returns
/// `(key, value, line number)`.
pub fn key_values(text: &str) -> Result<Vec<(String, String, usize)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("line {}: expected key = value, got `{line}`", i + 1);
        };
        out.push((k.trim().to_string(), v.trim().to_string(), i + 1));
    }
    Ok(out)
}
