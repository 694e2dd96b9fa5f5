//! Declarative run configuration: a TOML file merged with flag overrides.
//! The effective config round-trips losslessly through its serialized form
//! and its hash is stamped into every CSV provenance header.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tzl_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Sieve table size; 0 sizes the table from the command's needs.
    pub sieve_limit: u64,
    pub segment_size: u64,
    pub s_grid: Vec<f64>,
    pub n_grid: Vec<u64>,
    pub tuples: Vec<String>,
    pub format: OutputFormat,
    /// Output path; "-" writes to stdout.
    pub output: String,
    /// Permit s ≤ 1 in series commands (truncations stay finite).
    pub force_s: bool,
    /// Permit non-power pairs in the gcd shift audit.
    pub force: bool,
    /// Worker cap; 0 leaves the rayon default.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sieve_limit: 0,
            segment_size: 1 << 20,
            s_grid: vec![1.5, 1.2, 1.1, 1.05, 1.02, 1.01],
            n_grid: vec![1_000, 10_000, 100_000, 1_000_000],
            tuples: vec!["0,2".to_string()],
            format: OutputFormat::Csv,
            output: "-".to_string(),
            force_s: false,
            force: false,
            threads: 0,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::domain(format!("bad config file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// First 16 hex chars of the SHA-256 of the serialized config.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        let mut hex = String::with_capacity(16);
        for byte in &digest[..8] {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }
}

/// Parse an unsigned integer allowing underscores and scientific shorthand
/// ("1e6", "2.5e7").
pub fn parse_count(text: &str) -> std::result::Result<u64, String> {
    let cleaned = text.trim().replace('_', "");
    if cleaned.is_empty() {
        return Err("empty number".into());
    }
    if cleaned.contains(['e', 'E']) {
        let value: f64 = cleaned
            .parse()
            .map_err(|e| format!("bad number {text:?}: {e}"))?;
        if value < 0.0 || value.fract() != 0.0 || value > u64::MAX as f64 {
            return Err(format!("{text:?} is not a nonnegative integer"));
        }
        Ok(value as u64)
    } else {
        cleaned
            .parse()
            .map_err(|e| format!("bad number {text:?}: {e}"))
    }
}

/// Comma-separated list of counts.
pub fn parse_count_grid(text: &str) -> std::result::Result<Vec<u64>, String> {
    text.split(',').map(parse_count).collect()
}

/// Comma-separated list of reals.
pub fn parse_real_grid(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad real {part:?}: {e}"))
        })
        .collect()
}

/// Comma-separated count grid as a single CLI value (e.g. "1e3,1e4,1e5").
#[derive(Debug, Clone)]
pub struct CountGrid(pub Vec<u64>);

impl std::str::FromStr for CountGrid {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_count_grid(s).map(CountGrid)
    }
}

/// Comma-separated real grid as a single CLI value (e.g. "1.5,1.2,1.1").
#[derive(Debug, Clone)]
pub struct RealGrid(pub Vec<f64>);

impl std::str::FromStr for RealGrid {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_real_grid(s).map(RealGrid)
    }
}
