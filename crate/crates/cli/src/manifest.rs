use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::failure::Failure;

pub const SCHEMA: &str = include_str!("../schema/run-manifest.schema.json");
pub const SCHEMA_VERSION: u32 = 1;

/// Record of one run; `args` alone reproduces it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub subcommand: String,
    /// Command line after the program name, with the seed made explicit.
    pub args: Vec<String>,
    /// The flags of `args` as a key/value map.
    pub config: BTreeMap<String, Value>,
    pub seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub wall_time_seconds: f64,
    /// Files written; `-` stands for standard output.
    pub outputs: Vec<String>,
}

/// `--key value` pairs as a map; bare flags map to `true`.
pub fn config_echo(args: &[String]) -> BTreeMap<String, Value> {
    let mut map = BTreeMap::new();
    let mut k = 0;
    while k < args.len() {
        if let Some(name) = args[k].strip_prefix("--") {
            if let Some((key, v)) = name.split_once('=') {
                map.insert(key.to_string(), Value::String(v.to_string()));
            } else if args.get(k + 1).is_some_and(|v| !v.starts_with("--")) {
                map.insert(name.to_string(), Value::String(args[k + 1].clone()));
                k += 1;
            } else {
                map.insert(name.to_string(), Value::Bool(true));
            }
        }
        k += 1;
    }
    map
}

pub fn write(m: &RunManifest, path: &Path) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(m).map_err(|e| Failure::io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure::io(format!("cannot write manifest {}: {e}", path.display())))
}

pub fn read(path: &Path) -> Result<RunManifest, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read manifest {}: {e}", path.display())))?;
    let m: RunManifest =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("malformed manifest {}: {e}", path.display())))?;
    if m.schema_version != SCHEMA_VERSION {
        return Err(Failure::usage(format!(
            "manifest schema version {} is not supported (expected {SCHEMA_VERSION})",
            m.schema_version
        )));
    }
    if m.args.first() != Some(&m.subcommand) {
        return Err(Failure::usage("manifest args do not start with its subcommand"));
    }
    Ok(m)
}
