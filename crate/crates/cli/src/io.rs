//! Readers and writers for every file the CLI produces.
//!
//! Tables are comma-separated with one header line. Floating-point values
//! are written in the shortest form that parses back to the same bits, so
//! anything recomputed from the files matches the original run exactly.
//!
//! | file | columns |
//! |------|---------|
//! | `data.txt` | one observation per line, after scaling |
//! | `report.csv` | `key,value` |
//! | `density.csv` | `x,mean,lower,upper` |
//! | `alpha_hist.csv`, `mu_hist.csv` | `lower,upper,count`; the last row holds the overflow with `upper = inf` |
//! | `acceptance.csv` | `batch,family,rate,delta` |
//! | `trace_clusters.csv` | `iteration,nu,cluster,size,mu,gamma,alpha,beta`, one row per cluster |
//! | `trace_assignments.csv` | `iteration,x0,x1,...`, cluster label of every observation |
//! | `trace_latents.csv` | `iteration,x0,x1,...`, latent rate of every observation |

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use sggmix::diagnostics::{Histogram, IntervalSummary};
use sggmix::distributions::SggParams;
use sggmix::sampler::{BatchRecord, ClusterDraw, Family, IterationSample};
use sggmix::{FitReport, PredictiveBand, Trace};

pub const DATA: &str = "data.txt";
pub const REPORT: &str = "report.csv";
pub const DENSITY: &str = "density.csv";
pub const ALPHA_HIST: &str = "alpha_hist.csv";
pub const MU_HIST: &str = "mu_hist.csv";
pub const ACCEPTANCE: &str = "acceptance.csv";
pub const TRACE_CLUSTERS: &str = "trace_clusters.csv";
pub const TRACE_ASSIGNMENTS: &str = "trace_assignments.csv";
pub const TRACE_LATENTS: &str = "trace_latents.csv";
pub const M_POSTERIOR: &str = "m_posterior.csv";

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| anyhow!("{} is not a file path", path.display()))?;
    let tmp: PathBuf = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f =
            fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(contents)
            .and_then(|_| f.sync_all())
            .with_context(|| format!("writing {}", tmp.display()))?;
    }
    fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} to {}", tmp.display(), path.display()))
}

/// Newline-delimited numbers. Blank lines are skipped; with `header` the
/// first nonblank line is too.
pub fn parse_data(text: &str, header: bool) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut skip = header;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if skip {
            skip = false;
            continue;
        }
        let x: f64 = line
            .parse()
            .map_err(|_| anyhow!("line {}: `{line}` is not a number", i + 1))?;
        if !x.is_finite() {
            bail!("line {}: `{line}` is not finite", i + 1);
        }
        out.push(x);
    }
    if out.is_empty() {
        bail!("no observations");
    }
    Ok(out)
}

pub fn read_data(path: &Path, header: bool) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_data(&text, header).with_context(|| format!("in {}", path.display()))
}

pub fn format_column(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 20);
    for v in values {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}

/// A parsed table: header names and rows of raw fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    source: String,
}

impl Table {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .ok_or_else(|| anyhow!("{source}: empty file"))?
            .split(',')
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row: Vec<String> = line.split(',').map(str::to_string).collect();
            if row.len() != header.len() {
                bail!(
                    "{source}:{}: expected {} fields, found {} (truncated or corrupt file)",
                    i + 2,
                    header.len(),
                    row.len()
                );
            }
            rows.push(row);
        }
        if !text.ends_with('\n') {
            bail!("{source}: last line is not terminated (truncated file)");
        }
        Ok(Self {
            header,
            rows,
            source: source.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn expect_header(&self, names: &[&str]) -> Result<()> {
        if self.header != names {
            bail!(
                "{}: expected columns {}, found {}",
                self.source,
                names.join(","),
                self.header.join(",")
            );
        }
        Ok(())
    }

    pub fn get<T: std::str::FromStr>(&self, row: usize, col: usize) -> Result<T> {
        let raw = &self.rows[row][col];
        raw.parse().map_err(|_| {
            anyhow!(
                "{}:{}: cannot parse `{raw}` in column `{}`",
                self.source,
                row + 2,
                self.header[col]
            )
        })
    }
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn row(fields: &[&dyn Display]) -> Vec<String> {
    fields.iter().map(|f| f.to_string()).collect()
}

// ---- report ---------------------------------------------------------------

pub fn format_report(r: &FitReport) -> String {
    let mut rows = vec![
        row(&[&"retained", &r.retained]),
        row(&[&"lpml", &r.lpml]),
        row(&[&"aic", &r.aic]),
        row(&[&"bic", &r.bic]),
        row(&[&"m_mode", &r.m_mode]),
        row(&[&"nu_mean", &r.nu.mean]),
        row(&[&"nu_lower", &r.nu.lower]),
        row(&[&"nu_upper", &r.nu.upper]),
        row(&[&"p_alpha_below_1", &r.tail_probs[0]]),
        row(&[&"p_alpha_1_to_2", &r.tail_probs[1]]),
        row(&[&"p_alpha_from_2", &r.tail_probs[2]]),
        row(&[&"cpo_zero_count", &r.cpo_zero_count]),
    ];
    for (m, p) in &r.m_posterior {
        rows.push(vec![format!("p_m_{m}"), p.to_string()]);
    }
    table(&["key", "value"], rows)
}

pub fn parse_report(text: &str, source: &str) -> Result<FitReport> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["key", "value"])?;
    let mut fields = BTreeMap::new();
    let mut m_posterior = BTreeMap::new();
    for (i, r) in t.rows.iter().enumerate() {
        if let Some(m) = r[0].strip_prefix("p_m_") {
            let m: usize = m
                .parse()
                .map_err(|_| anyhow!("{source}: bad key `{}`", r[0]))?;
            m_posterior.insert(m, t.get::<f64>(i, 1)?);
        } else {
            fields.insert(r[0].as_str(), i);
        }
    }
    let f = |key: &str| -> Result<f64> {
        let i = *fields
            .get(key)
            .ok_or_else(|| anyhow!("{source}: missing key `{key}`"))?;
        t.get(i, 1)
    };
    let u = |key: &str| -> Result<usize> {
        let i = *fields
            .get(key)
            .ok_or_else(|| anyhow!("{source}: missing key `{key}`"))?;
        t.get(i, 1)
    };
    Ok(FitReport {
        retained: u("retained")?,
        lpml: f("lpml")?,
        aic: f("aic")?,
        bic: f("bic")?,
        m_mode: u("m_mode")?,
        m_posterior,
        nu: IntervalSummary {
            mean: f("nu_mean")?,
            lower: f("nu_lower")?,
            upper: f("nu_upper")?,
        },
        tail_probs: [
            f("p_alpha_below_1")?,
            f("p_alpha_1_to_2")?,
            f("p_alpha_from_2")?,
        ],
        cpo_zero_count: u("cpo_zero_count")?,
    })
}

pub fn format_m_posterior(p: &BTreeMap<usize, f64>) -> String {
    table(&["m", "probability"], p.iter().map(|(m, q)| row(&[m, q])))
}

pub fn parse_m_posterior(text: &str, source: &str) -> Result<BTreeMap<usize, f64>> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["m", "probability"])?;
    (0..t.rows.len())
        .map(|i| Ok((t.get(i, 0)?, t.get(i, 1)?)))
        .collect()
}

// ---- density and histograms -----------------------------------------------

pub fn format_density(b: &PredictiveBand) -> String {
    table(
        &["x", "mean", "lower", "upper"],
        (0..b.grid.len())
            .map(|k| row(&[&b.grid[k], &b.mean_density[k], &b.lower95[k], &b.upper95[k]])),
    )
}

pub fn parse_density(text: &str, source: &str) -> Result<PredictiveBand> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["x", "mean", "lower", "upper"])?;
    let col = |c: usize| -> Result<Vec<f64>> { (0..t.rows.len()).map(|i| t.get(i, c)).collect() };
    Ok(PredictiveBand {
        grid: col(0)?,
        mean_density: col(1)?,
        lower95: col(2)?,
        upper95: col(3)?,
    })
}

pub fn format_histogram(h: &Histogram) -> String {
    let mut rows: Vec<Vec<String>> = h
        .counts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let lo = h.lower + h.width * k as f64;
            row(&[&lo, &(lo + h.width), c])
        })
        .collect();
    let top = h.lower + h.width * h.counts.len() as f64;
    rows.push(row(&[&top, &f64::INFINITY, &h.overflow]));
    table(&["lower", "upper", "count"], rows)
}

pub fn parse_histogram(text: &str, source: &str) -> Result<Histogram> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["lower", "upper", "count"])?;
    let n = t.rows.len();
    if n < 2 {
        bail!("{source}: a histogram needs at least one bin and the overflow row");
    }
    let lower: f64 = t.get(0, 0)?;
    let width = t.get::<f64>(0, 1)? - lower;
    let counts = (0..n - 1)
        .map(|i| t.get(i, 2))
        .collect::<Result<Vec<u64>>>()?;
    if t.get::<f64>(n - 1, 1)? != f64::INFINITY {
        bail!("{source}: last row must be the overflow row");
    }
    Ok(Histogram {
        lower,
        width,
        counts,
        overflow: t.get(n - 1, 2)?,
    })
}

// ---- acceptance -----------------------------------------------------------

pub fn format_acceptance(records: &[BatchRecord]) -> String {
    table(
        &["batch", "family", "rate", "delta"],
        records
            .iter()
            .map(|r| row(&[&r.batch, &r.family, &r.rate, &r.delta])),
    )
}

pub fn parse_family(s: &str) -> Option<Family> {
    Family::ALL.into_iter().find(|f| f.name() == s)
}

pub fn parse_acceptance(text: &str, source: &str) -> Result<Vec<BatchRecord>> {
    let t = Table::parse(text, source)?;
    t.expect_header(&["batch", "family", "rate", "delta"])?;
    (0..t.rows.len())
        .map(|i| {
            Ok(BatchRecord {
                batch: t.get(i, 0)?,
                family: parse_family(&t.rows[i][1]).ok_or_else(|| {
                    anyhow!("{source}:{}: unknown family `{}`", i + 2, t.rows[i][1])
                })?,
                rate: t.get(i, 2)?,
                delta: t.get(i, 3)?,
            })
        })
        .collect()
}

// ---- trace ----------------------------------------------------------------

fn observation_header(n: usize) -> Vec<String> {
    std::iter::once("iteration".to_string())
        .chain((0..n).map(|i| format!("x{i}")))
        .collect()
}

/// The three trace tables: clusters, assignments, latents.
pub fn format_trace(trace: &Trace, n: usize) -> [String; 3] {
    let clusters = table(
        &[
            "iteration",
            "nu",
            "cluster",
            "size",
            "mu",
            "gamma",
            "alpha",
            "beta",
        ],
        trace.samples.iter().flat_map(|s| {
            s.clusters.iter().enumerate().map(|(j, c)| {
                let p = &c.params;
                row(&[
                    &s.iteration,
                    &s.nu,
                    &j,
                    &c.size,
                    &p.mu,
                    &p.gamma,
                    &p.alpha,
                    &p.beta,
                ])
            })
        }),
    );
    let header = observation_header(n);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let per_obs = |f: &dyn Fn(&IterationSample) -> Vec<String>| {
        table(
            &header,
            trace.samples.iter().map(|s| {
                let mut r = vec![s.iteration.to_string()];
                r.extend(f(s));
                r
            }),
        )
    };
    let assignments = per_obs(&|s| s.assignment.iter().map(u32::to_string).collect());
    let latents = per_obs(&|s| s.latents.iter().map(f64::to_string).collect());
    [clusters, assignments, latents]
}

/// Rebuild a trace from its three tables. Per-observation likelihood terms
/// are recomputed against `data`.
pub fn parse_trace(
    clusters: &Table,
    assignments: &Table,
    latents: &Table,
    data: &[f64],
) -> Result<Trace> {
    clusters.expect_header(&[
        "iteration",
        "nu",
        "cluster",
        "size",
        "mu",
        "gamma",
        "alpha",
        "beta",
    ])?;
    let header = observation_header(data.len());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    assignments.expect_header(&header)?;
    latents.expect_header(&header)?;
    if assignments.rows.len() != latents.rows.len() {
        bail!(
            "trace files disagree: {} assignment rows, {} latent rows",
            assignments.rows.len(),
            latents.rows.len()
        );
    }

    let mut draws: Vec<(usize, f64, Vec<ClusterDraw>)> = Vec::new();
    for i in 0..clusters.rows.len() {
        let it: usize = clusters.get(i, 0)?;
        let j: usize = clusters.get(i, 2)?;
        let params = SggParams::new(
            clusters.get(i, 4)?,
            clusters.get(i, 5)?,
            clusters.get(i, 6)?,
            clusters.get(i, 7)?,
        )
        .with_context(|| format!("trace_clusters row {}", i + 2))?;
        let draw = ClusterDraw {
            params,
            size: clusters.get(i, 3)?,
        };
        match draws.last_mut() {
            Some((last, _, cl)) if *last == it => {
                if j != cl.len() {
                    bail!("trace_clusters row {}: cluster {j} out of order", i + 2);
                }
                cl.push(draw);
            }
            _ => {
                if j != 0 {
                    bail!(
                        "trace_clusters row {}: iteration {it} does not start at cluster 0",
                        i + 2
                    );
                }
                draws.push((it, clusters.get(i, 1)?, vec![draw]));
            }
        }
    }
    if draws.len() != assignments.rows.len() {
        bail!(
            "trace files disagree: {} iterations of clusters, {} of assignments",
            draws.len(),
            assignments.rows.len()
        );
    }

    let mut samples = Vec::with_capacity(draws.len());
    for (l, (it, nu, cl)) in draws.into_iter().enumerate() {
        if assignments.get::<usize>(l, 0)? != it || latents.get::<usize>(l, 0)? != it {
            bail!("trace files disagree at iteration {it}");
        }
        let assignment = (1..=data.len())
            .map(|c| assignments.get(l, c))
            .collect::<Result<Vec<u32>>>()?;
        let ys = (1..=data.len())
            .map(|c| latents.get(l, c))
            .collect::<Result<Vec<f64>>>()?;
        samples.push(IterationSample::new(it, nu, cl, assignment, ys, data)?);
    }
    Ok(Trace {
        samples,
        ..Default::default()
    })
}
