use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use sggmix_cli::{cmd_fit, cmd_rerun, cmd_simulate, cmd_summarize, io, FitSettings};

#[derive(Parser)]
#[command(
    name = "sggmix",
    version,
    about = "Nonparametric SGG mixtures for heavy-tailed data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample from a finite SGG mixture.
    Simulate {
        /// Mixture table with columns weight,mu,gamma,alpha,beta.
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the sampler and write reports, density, histograms and trace.
    Fit {
        /// Newline-delimited observations.
        data: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
        /// Settings file of key = value lines.
        #[arg(short, long)]
        config: Option<PathBuf>,
        /// Repeat the run recorded in a manifest instead.
        #[arg(long, conflicts_with_all = ["data", "config"])]
        from_manifest: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Divide every observation by this value.
        #[arg(long)]
        scale: Option<f64>,
        /// The data file starts with a header line.
        #[arg(long)]
        header: bool,
        #[arg(long)]
        chains: Option<usize>,
        /// Override any setting, e.g. `--set nu_fixed=0.05`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Recompute the report of a fit directory from its stored trace.
    Summarize { dir: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { spec, n, seed, out } => cmd_simulate(&spec, n, seed, &out),
        Command::Fit {
            data,
            out,
            config,
            from_manifest,
            seed,
            scale,
            header,
            chains,
            overrides,
        } => {
            if let Some(m) = from_manifest {
                cmd_rerun(&m, &out)?;
                return Ok(());
            }
            let Some(data) = data else {
                anyhow::bail!("fit needs a data file or --from-manifest");
            };
            let mut settings = match config {
                Some(path) => FitSettings::load(&path)?,
                None => FitSettings::default(),
            };
            if let Some(s) = seed {
                settings.chain.seed = s;
            }
            if let Some(s) = scale {
                settings.apply("data_scale", &s.to_string())?;
            }
            if header {
                settings.header = true;
            }
            if let Some(k) = chains {
                settings.chains = k;
            }
            for o in &overrides {
                settings.apply_assignment(o)?;
            }
            let run = cmd_fit(&data, &settings, &out)?;
            for c in &run.chains {
                let r = &c.report;
                println!(
                    "{}: m_mode={} lpml={} nu_mean={}",
                    c.dir.display(),
                    r.m_mode,
                    r.lpml,
                    r.nu.mean
                );
            }
            Ok(())
        }
        Command::Summarize { dir } => {
            let report = cmd_summarize(&dir)?;
            print!("{}", io::format_report(&report));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
