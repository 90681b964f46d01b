//! Posterior summaries and model-comparison measures computed from a
//! [`Trace`].

use std::collections::BTreeMap;

use rand::Rng;

use crate::distributions::{MarginalKernel, SggParams};
use crate::error::{Error, Result};
use crate::sampler::{BaseMeasure, IterationSample, KernelModel, Trace};

/// Which likelihood enters the CPO harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpoMode {
    /// `f(x_i, y_i | theta_i)`, the joint of observation and latent rate.
    Augmented,
    /// `f(x_i | theta_i)`, the SGG density.
    Marginal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CpoResult {
    pub log_cpo: Vec<f64>,
    pub lpml: f64,
    /// Observations with at least one retained zero-likelihood term; their
    /// CPO is zero.
    pub zero_likelihood: usize,
}

fn require_samples(trace: &Trace) -> Result<()> {
    if trace.is_empty() {
        Err(Error::Precondition(
            "trace has no retained iterations".into(),
        ))
    } else {
        Ok(())
    }
}

/// Log of the harmonic mean of `exp(log_terms)`.
pub fn log_harmonic_mean(log_terms: &[f64]) -> f64 {
    let neg_max = log_terms
        .iter()
        .map(|l| -l)
        .fold(f64::NEG_INFINITY, f64::max);
    if neg_max == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = log_terms.iter().map(|l| (-l - neg_max).exp()).sum();
    (log_terms.len() as f64).ln() - (neg_max + s.ln())
}

fn marginal_kernels(trace: &Trace, mode: CpoMode) -> Vec<Vec<MarginalKernel>> {
    if mode == CpoMode::Augmented {
        return Vec::new();
    }
    trace.samples.iter().map(kernels_of).collect()
}

fn kernels_of(s: &IterationSample) -> Vec<MarginalKernel> {
    s.clusters
        .iter()
        .map(|c| MarginalKernel::new(c.params))
        .collect()
}

/// `CPO_i = (L^-1 sum_l 1 / f_l(x_i))^-1` and `LPML = sum_i log CPO_i`.
pub fn cpo_lpml(trace: &Trace, data: &[f64], mode: CpoMode) -> Result<CpoResult> {
    require_samples(trace)?;
    let kernels = marginal_kernels(trace, mode);
    let mut terms = vec![0.0; trace.len()];
    let mut log_cpo = Vec::with_capacity(data.len());
    let mut zero_likelihood = 0;
    for (i, &x) in data.iter().enumerate() {
        for (l, (t, s)) in terms.iter_mut().zip(&trace.samples).enumerate() {
            *t = match mode {
                CpoMode::Augmented => s.obs_loglik[i],
                CpoMode::Marginal => kernels[l][s.assignment[i] as usize].loglik(x),
            };
        }
        let v = log_harmonic_mean(&terms);
        if v == f64::NEG_INFINITY {
            zero_likelihood += 1;
        }
        log_cpo.push(v);
    }
    let lpml = log_cpo.iter().sum();
    Ok(CpoResult {
        log_cpo,
        lpml,
        zero_likelihood,
    })
}

/// Number of free parameters charged to one retained state.
pub fn parameter_count(m: usize, model: KernelModel) -> usize {
    match model {
        KernelModel::Mixture => 4 * m + 1,
        KernelModel::Single => 4,
    }
}

/// Posterior means of `AIC = D + 2p` and `BIC = D + p log n` with
/// `D = -2 sum_i log f(x_i | theta_i)` under the SGG density and `p` from
/// [`parameter_count`].
pub fn posterior_ic(trace: &Trace, data: &[f64], model: KernelModel) -> Result<(f64, f64)> {
    require_samples(trace)?;
    let ln_n = (data.len() as f64).ln();
    let (mut aic, mut bic) = (0.0, 0.0);
    for s in &trace.samples {
        let k = kernels_of(s);
        let deviance: f64 = -2.0
            * data
                .iter()
                .zip(&s.assignment)
                .map(|(&x, &c)| k[c as usize].loglik(x))
                .sum::<f64>();
        let p = parameter_count(s.m(), model) as f64;
        aic += deviance + 2.0 * p;
        bic += deviance + p * ln_n;
    }
    let l = trace.len() as f64;
    Ok((aic / l, bic / l))
}

/// Posterior frequencies of the number of occupied clusters.
pub fn m_posterior(trace: &Trace) -> BTreeMap<usize, f64> {
    let mut counts = BTreeMap::new();
    for s in &trace.samples {
        *counts.entry(s.m()).or_insert(0usize) += 1;
    }
    let l = trace.len() as f64;
    counts.into_iter().map(|(m, c)| (m, c as f64 / l)).collect()
}

/// Most probable value; ties go to the smaller key.
pub fn posterior_mode(dist: &BTreeMap<usize, f64>) -> Option<usize> {
    dist.iter()
        .fold(None, |best: Option<(usize, f64)>, (&k, &p)| match best {
            Some((_, bp)) if bp >= p => best,
            _ => Some((k, p)),
        })
        .map(|(k, _)| k)
}

/// Linear-interpolation quantile of sorted values.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean and 95% equal-tail interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSummary {
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
}

impl IntervalSummary {
    pub fn from_values(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self {
            mean: values.iter().sum::<f64>() / values.len() as f64,
            lower: quantile_sorted(&sorted, 0.025),
            upper: quantile_sorted(&sorted, 0.975),
        }
    }
}

pub fn nu_summary(trace: &Trace) -> Result<IntervalSummary> {
    require_samples(trace)?;
    let nus: Vec<f64> = trace.samples.iter().map(|s| s.nu).collect();
    Ok(IntervalSummary::from_values(&nus))
}

/// Equal-width histogram on `[lower, lower + width * bins)`; values past the
/// last edge are counted in `overflow`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lower: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    pub overflow: u64,
}

impl Histogram {
    pub fn new(values: &[f64], lower: f64, upper: f64, bins: usize) -> Self {
        assert!(bins > 0 && upper > lower);
        let width = (upper - lower) / bins as f64;
        let mut counts = vec![0u64; bins];
        let mut overflow = 0;
        for &v in values {
            let k = ((v - lower) / width).floor();
            if k >= 0.0 && (k as usize) < bins {
                counts[k as usize] += 1;
            } else if v >= upper {
                overflow += 1;
            }
        }
        Self {
            lower,
            width,
            counts,
            overflow,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }

    /// Midpoint of the fullest bin.
    pub fn mode(&self) -> f64 {
        let (k, _) =
            self.counts.iter().enumerate().fold(
                (0, 0),
                |best, (k, &c)| if c > best.1 { (k, c) } else { best },
            );
        self.lower + (k as f64 + 0.5) * self.width
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    /// `P(alpha < 1)`: no finite mean.
    pub p_heavy: f64,
    /// `P(1 <= alpha < 2)`: finite mean, infinite variance.
    pub p_finite_mean: f64,
    /// `P(alpha >= 2)`: finite mean and variance.
    pub p_finite_variance: f64,
    pub alpha_hist: Histogram,
    pub mu_hist: Histogram,
}

impl TailReport {
    pub fn probabilities(&self) -> [f64; 3] {
        [self.p_heavy, self.p_finite_mean, self.p_finite_variance]
    }
}

/// Every observation's `theta_i` across all retained iterations.
pub fn pooled_coordinate(trace: &Trace, pick: impl Fn(&SggParams) -> f64) -> Vec<f64> {
    trace
        .samples
        .iter()
        .flat_map(|s| {
            s.assignment
                .iter()
                .map(|&c| pick(&s.clusters[c as usize].params))
        })
        .collect()
}

/// Tail-class probabilities of the pooled `alpha_i` draws and histograms of
/// the pooled `alpha_i` and `mu_i`. Histograms span zero to the 99.5%
/// quantile in `bins` bins.
pub fn tail_report(trace: &Trace, bins: usize) -> Result<TailReport> {
    require_samples(trace)?;
    let alphas = pooled_coordinate(trace, |p| p.alpha);
    let mus = pooled_coordinate(trace, |p| p.mu);
    let total = alphas.len() as f64;
    let heavy = alphas.iter().filter(|&&a| a < 1.0).count() as f64;
    let mid = alphas.iter().filter(|&&a| (1.0..2.0).contains(&a)).count() as f64;
    let light = alphas.len() as f64 - heavy - mid;
    let hist = |v: &[f64]| {
        let mut sorted = v.to_vec();
        sorted.sort_by(f64::total_cmp);
        let top = quantile_sorted(&sorted, 0.995);
        let top = if top > 0.0 { top } else { 1.0 };
        Histogram::new(v, 0.0, top, bins)
    };
    Ok(TailReport {
        p_heavy: heavy / total,
        p_finite_mean: mid / total,
        p_finite_variance: light / total,
        alpha_hist: hist(&alphas),
        mu_hist: hist(&mus),
    })
}

/// Pointwise posterior mean and 95% equal-tail band of the predictive density.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveBand {
    pub grid: Vec<f64>,
    pub mean_density: Vec<f64>,
    pub lower95: Vec<f64>,
    pub upper95: Vec<f64>,
}

/// `f_l(x) = (nu m / n) E_g0[f(x | theta)] + sum_j ((n_j - nu) / n) f(x | theta_j)`
/// per retained iteration, the first term estimated with `base_draws` fresh
/// draws from `g0`; then pointwise mean and percentiles over iterations.
/// Under [`KernelModel::Single`] each iteration contributes `f(x | theta)`.
pub fn predictive_density<R: Rng + ?Sized>(
    trace: &Trace,
    model: KernelModel,
    g0: &BaseMeasure,
    grid: &[f64],
    base_draws: usize,
    rng: &mut R,
) -> Result<PredictiveBand> {
    require_samples(trace)?;
    if grid.is_empty() {
        return Err(Error::Precondition("empty evaluation grid".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition(
            "grid must be strictly increasing".into(),
        ));
    }
    let g = grid.len();
    let l = trace.len();
    // values[k * l + t]: density at grid point k in iteration t
    let mut values = vec![0.0; g * l];
    let mut new_term = vec![0.0; g];
    for (t, s) in trace.samples.iter().enumerate() {
        let n = s.assignment.len() as f64;
        let m = s.m() as f64;
        new_term.iter_mut().for_each(|v| *v = 0.0);
        let nu = match model {
            KernelModel::Mixture => s.nu,
            KernelModel::Single => 0.0,
        };
        if base_draws > 0 && nu > 0.0 {
            for _ in 0..base_draws {
                let k = MarginalKernel::new(g0.sample(rng));
                for (v, &x) in new_term.iter_mut().zip(grid) {
                    *v += k.loglik(x).exp();
                }
            }
            let w = nu * m / n / base_draws as f64;
            new_term.iter_mut().for_each(|v| *v *= w);
        }
        let kernels = kernels_of(s);
        for (k, &x) in grid.iter().enumerate() {
            let existing: f64 = s
                .clusters
                .iter()
                .zip(&kernels)
                .map(|(c, kern)| (c.size as f64 - nu) / n * kern.loglik(x).exp())
                .sum();
            values[k * l + t] = new_term[k] + existing;
        }
    }
    let mut band = PredictiveBand {
        grid: grid.to_vec(),
        mean_density: Vec::with_capacity(g),
        lower95: Vec::with_capacity(g),
        upper95: Vec::with_capacity(g),
    };
    for k in 0..g {
        let row = &mut values[k * l..(k + 1) * l];
        let mean = row.iter().sum::<f64>() / l as f64;
        row.sort_by(f64::total_cmp);
        band.mean_density.push(mean);
        band.lower95.push(quantile_sorted(row, 0.025));
        band.upper95.push(quantile_sorted(row, 0.975));
    }
    Ok(band)
}

/// Evenly spaced grid of `points` values on `[lower, upper]`.
pub fn linear_grid(lower: f64, upper: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lower],
        _ => {
            let step = (upper - lower) / (points - 1) as f64;
            (0..points).map(|k| lower + step * k as f64).collect()
        }
    }
}

/// Fit summary written by the CLI.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub retained: usize,
    pub lpml: f64,
    pub aic: f64,
    pub bic: f64,
    pub m_posterior: BTreeMap<usize, f64>,
    pub m_mode: usize,
    pub nu: IntervalSummary,
    /// `P(alpha < 1), P(1 <= alpha < 2), P(alpha >= 2)`.
    pub tail_probs: [f64; 3],
    pub cpo_zero_count: usize,
}

pub fn fit_report(
    trace: &Trace,
    data: &[f64],
    model: KernelModel,
    cpo: CpoMode,
) -> Result<FitReport> {
    let c = cpo_lpml(trace, data, cpo)?;
    let (aic, bic) = posterior_ic(trace, data, model)?;
    let m_post = m_posterior(trace);
    let tails = tail_report(trace, 1)?;
    Ok(FitReport {
        retained: trace.len(),
        lpml: c.lpml,
        aic,
        bic,
        m_mode: posterior_mode(&m_post).expect("nonempty trace"),
        m_posterior: m_post,
        nu: nu_summary(trace)?,
        tail_probs: tails.probabilities(),
        cpo_zero_count: c.zero_likelihood,
    })
}
