use crate::UsageError;
use anyhow::{Context, Result};
use mahler_core::numeric::QuadratureSpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Settings shared by every command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub precision_bits: u32,
    pub series_order: usize,
    pub quadrature: QuadratureSpec,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(UsageError(format!(
                "precision_bits = {} is below 64",
                self.precision_bits
            ))
            .into());
        }
        if self.series_order < 16 {
            return Err(
                UsageError(format!("series_order = {} is below 16", self.series_order)).into(),
            );
        }
        Ok(())
    }

    /// Overlay the keys of a JSON file on top of this configuration.
    pub fn with_file(self, path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let overlay: Value = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("config file {}: {e}", path.display())))?;
        let mut base = serde_json::to_value(&self)?;
        merge(&mut base, overlay);
        serde_json::from_value(base)
            .map_err(|e| UsageError(format!("config file {}: {e}", path.display())).into())
    }
}

fn merge(base: &mut Value, overlay: Value) {
    match (base, overlay) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Config {
        Config {
            precision_bits: 256,
            series_order: 200,
            quadrature: QuadratureSpec::for_precision(256),
            output: OutputFormat::Json,
            seed: 1,
        }
    }

    #[test]
    fn nested_keys_merge() {
        let mut v = serde_json::to_value(base()).unwrap();
        merge(
            &mut v,
            serde_json::json!({"quadrature": {"max_level": 9}, "seed": 7}),
        );
        let c: Config = serde_json::from_value(v).unwrap();
        assert_eq!(c.quadrature.max_level, 9);
        assert_eq!(c.quadrature.tail_order, base().quadrature.tail_order);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn bounds_enforced() {
        let mut c = base();
        c.precision_bits = 32;
        assert!(c.validate().is_err());
        let mut c = base();
        c.series_order = 8;
        assert!(c.validate().is_err());
    }
}
