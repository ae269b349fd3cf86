//! Reproducible output plumbing: the run configuration embedded in every
//! file, the content hash of the input graph, locale-independent float
//! formatting, and whole-file writes (never partial results).

use std::fs;
use std::path::{Path, PathBuf};

use anticross_core::graphs::{serialize_edge_list, Graph};
use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Everything needed to reproduce a run, serialized into each output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    /// Input file path or generator spec.
    pub graph_source: String,
    pub fixed_node: usize,
    pub out_dir: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enum_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(
        subcommand: &str,
        graph_source: String,
        fixed_node: usize,
        out_dir: &Path,
        seed: u64,
    ) -> Self {
        RunConfig {
            subcommand: subcommand.to_string(),
            graph_source,
            fixed_node,
            out_dir: out_dir.display().to_string(),
            seed,
            enum_cap: None,
            grid: None,
            refine: None,
            t_max: None,
            dt: None,
            vary: None,
            range: None,
            jobs: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("run config serializes")
    }
}

/// `sha256:<hex>` over the canonical edge-list text, so the hash is
/// independent of the input file's comments and edge order.
pub fn graph_hash(graph: &Graph) -> String {
    let digest = Sha256::digest(serialize_edge_list(graph).as_bytes());
    let mut hex = String::with_capacity(7 + 64);
    hex.push_str("sha256:");
    for b in digest {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

/// 17 significant digits, locale-independent: round-trips every f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// The two provenance comment lines heading every CSV.
pub fn csv_header(config: &RunConfig, hash: &str) -> String {
    format!(
        "# run_config: {}\n# graph_hash: {}\n",
        config.to_json(),
        hash
    )
}

/// Writes via a temporary sibling then renames, so a failed run never leaves
/// a partial file at the destination.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating output directory {}", parent.display()))?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("moving {} into place", path.display()))?;
    Ok(())
}

/// JSON payloads get the config and hash as their first fields.
#[derive(Serialize)]
pub struct JsonEnvelope<T: Serialize> {
    pub run_config: RunConfig,
    pub graph_hash: String,
    #[serde(flatten)]
    pub payload: T,
}

pub fn write_json<T: Serialize>(
    path: &Path,
    config: &RunConfig,
    hash: &str,
    payload: T,
) -> Result<()> {
    let envelope = JsonEnvelope {
        run_config: config.clone(),
        graph_hash: hash.to_string(),
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope).context("serializing JSON output")?;
    text.push('\n');
    write_atomic(path, &text)
}
