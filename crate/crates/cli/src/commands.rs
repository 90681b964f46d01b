use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use sggmix::diagnostics::{linear_grid, quantile_sorted, tail_report};
use sggmix::distributions::SggParams;
use sggmix::{
    fit_report, predictive_density, run_chain, sample_mixture, FitReport, MixtureComponent,
    MixtureSpec, PredictiveBand, RngStream, Trace,
};

use crate::config::FitSettings;
use crate::io::{self, Table};
use crate::manifest::{sha256_file, sha256_hex, RunManifest, MANIFEST};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Mixture specification: a `weight,mu,gamma,alpha,beta` table, one row per
/// component.
pub fn parse_mixture_spec(text: &str, source: &str) -> Result<MixtureSpec> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["weight", "mu", "gamma", "alpha", "beta"])?;
    let mut components = Vec::with_capacity(t.rows.len());
    for i in 0..t.rows.len() {
        let params = SggParams::new(t.get(i, 1)?, t.get(i, 2)?, t.get(i, 3)?, t.get(i, 4)?)
            .with_context(|| format!("{source}: component {}", i + 1))?;
        components.push(MixtureComponent {
            weight: t.get(i, 0)?,
            params,
        });
    }
    Ok(MixtureSpec::new(components)?)
}

pub fn cmd_simulate(spec: &Path, n: usize, seed: u64, out: &Path) -> Result<()> {
    if n == 0 {
        bail!("sample size must be at least 1");
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
    let spec = parse_mixture_spec(&text, &spec.display().to_string())?;
    let (data, _) = sample_mixture(&spec, n, &mut RngStream::new(seed));
    io::write_atomic(out, io::format_column(&data).as_bytes())
}

/// In-memory results of one fitted chain.
#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub dir: PathBuf,
    pub data: Vec<f64>,
    pub trace: Trace,
    pub report: FitReport,
    pub band: PredictiveBand,
}

/// Results of `cmd_fit`: one outcome per chain and, with several chains, the
/// pooled `m` posterior.
#[derive(Debug, Clone)]
pub struct FitRun {
    pub chains: Vec<FitOutcome>,
    pub merged_m_posterior: Option<BTreeMap<usize, f64>>,
}

struct Input {
    path: PathBuf,
    sha256: String,
    data: Vec<f64>,
}

fn load_input(path: &Path, settings: &FitSettings) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not UTF-8 text", path.display()))?;
    let raw =
        io::parse_data(&text, settings.header).with_context(|| format!("in {}", path.display()))?;
    let scale = settings.chain.data_scale;
    let data: Vec<f64> = raw.iter().map(|x| x / scale).collect();
    if let Some((i, x)) = data.iter().enumerate().find(|(_, &x)| x < 0.0) {
        bail!(
            "{}: observation {} is negative ({x} after scaling); kernel locations are nonnegative",
            path.display(),
            i + 1
        );
    }
    Ok(Input {
        path: fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf()),
        sha256: sha256_hex(&bytes),
        data,
    })
}

fn default_grid_upper(data: &[f64], lower: f64) -> f64 {
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = quantile_sorted(&sorted, 0.99);
    if q > lower {
        q
    } else {
        lower + 1.0
    }
}

fn fit_chain(input: &Input, settings: &FitSettings, dir: &Path) -> Result<FitOutcome> {
    let start = Instant::now();
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let cfg = &settings.chain;
    let data = &input.data;
    let trace = run_chain(data, cfg)?;
    if trace.zero_weight_fraction() > 0.01 {
        eprintln!(
            "warning: {:.2}% of reassignments found every candidate with zero likelihood",
            100.0 * trace.zero_weight_fraction()
        );
    }
    let report = fit_report(&trace, data, cfg.model, settings.cpo)?;
    let upper = settings
        .grid_upper
        .unwrap_or_else(|| default_grid_upper(data, settings.grid_lower));
    let grid = linear_grid(settings.grid_lower, upper, settings.grid_points);
    let mut rng = RngStream::new(RngStream::derive_seed(cfg.seed, u64::MAX));
    let band = predictive_density(
        &trace,
        cfg.model,
        &cfg.base_measure,
        &grid,
        settings.base_draws,
        &mut rng,
    )?;
    let tails = tail_report(&trace, settings.hist_bins)?;

    let [clusters, assignments, latents] = io::format_trace(&trace, data.len());
    let files: [(&str, String); 10] = [
        (io::DATA, io::format_column(data)),
        (io::REPORT, io::format_report(&report)),
        (io::M_POSTERIOR, io::format_m_posterior(&report.m_posterior)),
        (io::DENSITY, io::format_density(&band)),
        (io::ALPHA_HIST, io::format_histogram(&tails.alpha_hist)),
        (io::MU_HIST, io::format_histogram(&tails.mu_hist)),
        (io::ACCEPTANCE, io::format_acceptance(&trace.acceptance)),
        (io::TRACE_CLUSTERS, clusters),
        (io::TRACE_ASSIGNMENTS, assignments),
        (io::TRACE_LATENTS, latents),
    ];
    let mut outputs = Vec::with_capacity(files.len());
    for (name, contents) in &files {
        io::write_atomic(&dir.join(name), contents.as_bytes())?;
        outputs.push((name.to_string(), sha256_hex(contents.as_bytes())));
    }
    RunManifest {
        version: VERSION.to_string(),
        input: input.path.clone(),
        input_sha256: input.sha256.clone(),
        settings: settings.clone(),
        runtime_seconds: start.elapsed().as_secs_f64(),
        zero_weight_events: trace.zero_weight_events,
        reassignments: trace.reassignments,
        outputs,
    }
    .write(dir)?;
    Ok(FitOutcome {
        dir: dir.to_path_buf(),
        data: input.data.clone(),
        trace,
        report,
        band,
    })
}

/// Settings of chain `k` in a run with several chains.
pub fn chain_settings(settings: &FitSettings, k: usize) -> FitSettings {
    let mut s = settings.clone();
    s.chains = 1;
    s.chain.seed = RngStream::derive_seed(settings.chain.seed, k as u64);
    s
}

pub fn chain_dir(out: &Path, k: usize) -> PathBuf {
    out.join(format!("chain_{k}"))
}

/// Fit `data_path` and write every output under `out`. With `chains > 1`
/// each chain gets its own `chain_<k>` directory and `out` receives the
/// pooled `m` posterior.
pub fn cmd_fit(data_path: &Path, settings: &FitSettings, out: &Path) -> Result<FitRun> {
    settings.validate()?;
    let input = load_input(data_path, settings)?;
    if settings.chains == 1 {
        let outcome = fit_chain(&input, settings, out)?;
        return Ok(FitRun {
            chains: vec![outcome],
            merged_m_posterior: None,
        });
    }

    let start = Instant::now();
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let results: Vec<Result<FitOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..settings.chains)
            .map(|k| {
                let input = &input;
                scope.spawn(move || {
                    fit_chain(input, &chain_settings(settings, k), &chain_dir(out, k))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| bail!("chain thread panicked")))
            .collect()
    });
    let chains = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut merged = BTreeMap::new();
    for c in &chains {
        for (m, p) in &c.report.m_posterior {
            *merged.entry(*m).or_insert(0.0) += p / chains.len() as f64;
        }
    }
    let text = io::format_m_posterior(&merged);
    io::write_atomic(&out.join(io::M_POSTERIOR), text.as_bytes())?;
    let mut outputs = vec![(io::M_POSTERIOR.to_string(), sha256_hex(text.as_bytes()))];
    for k in 0..chains.len() {
        let name = format!("chain_{k}/{MANIFEST}");
        outputs.push((name.clone(), sha256_file(&out.join(&name))?));
    }
    RunManifest {
        version: VERSION.to_string(),
        input: input.path.clone(),
        input_sha256: input.sha256.clone(),
        settings: settings.clone(),
        runtime_seconds: start.elapsed().as_secs_f64(),
        zero_weight_events: chains.iter().map(|c| c.trace.zero_weight_events).sum(),
        reassignments: chains.iter().map(|c| c.trace.reassignments).sum(),
        outputs,
    }
    .write(out)?;
    Ok(FitRun {
        chains,
        merged_m_posterior: Some(merged),
    })
}

/// Repeat the run recorded in `manifest` (a file or a run directory),
/// checking that the input file is unchanged.
pub fn cmd_rerun(manifest: &Path, out: &Path) -> Result<FitRun> {
    let m = RunManifest::load(manifest)?;
    let digest = sha256_file(&m.input)?;
    if digest != m.input_sha256 {
        bail!(
            "{}: input changed since the recorded run (checksum mismatch)",
            m.input.display()
        );
    }
    cmd_fit(&m.input, &m.settings, out)
}

/// Stored trace of a single-chain run directory.
pub fn load_run(dir: &Path) -> Result<(RunManifest, Vec<f64>, Trace)> {
    let m = RunManifest::load(dir)?;
    if m.settings.chains != 1 {
        bail!(
            "{} holds {} chains; summarize one of its chain_<k> directories",
            dir.display(),
            m.settings.chains
        );
    }
    let data = io::read_data(&dir.join(io::DATA), false)?;
    let trace = io::parse_trace(
        &Table::read(&dir.join(io::TRACE_CLUSTERS))?,
        &Table::read(&dir.join(io::TRACE_ASSIGNMENTS))?,
        &Table::read(&dir.join(io::TRACE_LATENTS))?,
        &data,
    )?;
    m.verify_outputs(dir)?;
    Ok((m, data, trace))
}

/// Recompute the fit report from a run directory without sampling.
pub fn cmd_summarize(dir: &Path) -> Result<FitReport> {
    let (m, data, trace) = load_run(dir)?;
    let expected = m.settings.chain.retained_count();
    if trace.len() != expected {
        bail!(
            "trace holds {} iterations, the recorded settings retain {expected}",
            trace.len()
        );
    }
    Ok(fit_report(
        &trace,
        &data,
        m.settings.chain.model,
        m.settings.cpo,
    )?)
}
