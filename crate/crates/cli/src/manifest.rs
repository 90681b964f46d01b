//! `manifest.txt`: everything needed to repeat a run, as `key = value` text.
//!
//! Settings are stored under `config.<key>` and each output file under
//! `output.<file name>` with its SHA-256 digest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use sha2::{Digest, Sha256};

use crate::config::{key_values, FitSettings};
use crate::io::write_atomic;

pub const MANIFEST: &str = "manifest.txt";

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub version: String,
    pub input: PathBuf,
    pub input_sha256: String,
    pub settings: FitSettings,
    pub runtime_seconds: f64,
    pub zero_weight_events: u64,
    pub reassignments: u64,
    /// `(file name, sha256)` in the run directory.
    pub outputs: Vec<(String, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

impl RunManifest {
    pub fn to_text(&self) -> String {
        let mut s = String::from("# sggmix run manifest\n");
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            writeln!(s, "{k} = {v}").expect("writing to a String")
        };
        kv("version", &self.version);
        kv("input", &self.input.display());
        kv("input_sha256", &self.input_sha256);
        kv("runtime_seconds", &self.runtime_seconds);
        kv("zero_weight_events", &self.zero_weight_events);
        kv("reassignments", &self.reassignments);
        for (k, v) in self.settings.entries() {
            kv(&format!("config.{k}"), &v);
        }
        for (name, digest) in &self.outputs {
            kv(&format!("output.{name}"), digest);
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut settings = FitSettings::default();
        let mut outputs = Vec::new();
        let (mut version, mut input, mut input_sha256) = (None, None, None);
        let (mut runtime, mut zero, mut reassign) = (None, None, None);
        for (k, v, line) in key_values(text)? {
            let at = || format!("manifest line {line}");
            if let Some(key) = k.strip_prefix("config.") {
                settings.apply(key, &v).with_context(at)?;
            } else if let Some(name) = k.strip_prefix("output.") {
                outputs.push((name.to_string(), v));
            } else {
                match k.as_str() {
                    "version" => version = Some(v),
                    "input" => input = Some(PathBuf::from(v)),
                    "input_sha256" => input_sha256 = Some(v),
                    "runtime_seconds" => runtime = Some(v.parse().with_context(at)?),
                    "zero_weight_events" => zero = Some(v.parse().with_context(at)?),
                    "reassignments" => reassign = Some(v.parse().with_context(at)?),
                    _ => bail!("manifest line {line}: unknown key `{k}`"),
                }
            }
        }
        let missing = |k: &str| anyhow!("manifest has no `{k}`");
        Ok(Self {
            version: version.ok_or_else(|| missing("version"))?,
            input: input.ok_or_else(|| missing("input"))?,
            input_sha256: input_sha256.ok_or_else(|| missing("input_sha256"))?,
            settings,
            runtime_seconds: runtime.ok_or_else(|| missing("runtime_seconds"))?,
            zero_weight_events: zero.ok_or_else(|| missing("zero_weight_events"))?,
            reassignments: reassign.ok_or_else(|| missing("reassignments"))?,
            outputs,
        })
    }

    pub fn load(dir_or_file: &Path) -> Result<Self> {
        let path = if dir_or_file.is_dir() {
            dir_or_file.join(MANIFEST)
        } else {
            dir_or_file.to_path_buf()
        };
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_atomic(&dir.join(MANIFEST), self.to_text().as_bytes())
    }

    /// Check the digest of every listed output under `dir`.
    pub fn verify_outputs(&self, dir: &Path) -> Result<()> {
        for (name, digest) in &self.outputs {
            let actual = sha256_file(&dir.join(name))?;
            if &actual != digest {
                bail!("{name}: checksum mismatch with the manifest (file modified or corrupt)");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut settings = FitSettings::default();
        settings.apply("nu_fixed", "0.05").unwrap();
        let m = RunManifest {
            version: "0.1.0".into(),
            input: PathBuf::from("/tmp/data.txt"),
            input_sha256: sha256_hex(b"1\n2\n"),
            settings,
            runtime_seconds: 1.25,
            zero_weight_events: 3,
            reassignments: 1000,
            outputs: vec![("report.csv".into(), sha256_hex(b"x"))],
        };
        assert_eq!(RunManifest::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
