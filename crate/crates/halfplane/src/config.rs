//! Run configuration: quadrature tolerances, the search region, search
//! knobs, probe depth and the RNG seed.
//!
//! The config file is JSON with flat dotted keys, the same keys echoed back
//! inside every report:
//!
//! ```json
//! { "quad.rel_tol": 1e-10, "region.y_min": 1e-6, "seed": 424242 }
//! ```
//!
//! CLI flags (`--set key=value`, `--seed`, `--jobs`, ...) override file
//! values. Every numeric field is validated at load time and an invalid
//! value is reported with its field name.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;

use crate::domain::SearchRegion;
use crate::error::ConfigError;
use crate::quad::QuadConfig;
use crate::search::SearchOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(ConfigError::new("format", "expected `json` or `csv`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub quad: QuadConfig,
    pub region: SearchRegion,
    /// Divergence factor between the two largest region scales.
    pub tau: f64,
    pub search_levels: usize,
    pub refine_rounds: usize,
    pub top_cells: usize,
    pub golden_iters: usize,
    /// Hardy-norm height set: log-spaced count in [height_min, height_max].
    pub hardy_height_min: f64,
    pub hardy_height_max: f64,
    pub hardy_heights: usize,
    pub probe_levels: usize,
    pub radii_count: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad: QuadConfig::default(),
            region: SearchRegion::default_region(),
            tau: 1.5,
            search_levels: 6,
            refine_rounds: 3,
            top_cells: 5,
            golden_iters: 24,
            hardy_height_min: 1e-4,
            hardy_height_max: 1e3,
            hardy_heights: 41,
            probe_levels: 16,
            radii_count: 21,
            seed: 424242,
            jobs: 1,
        }
    }
}

fn as_f64(key: &str, v: &Value) -> Result<f64, ConfigError> {
    v.as_f64()
        .ok_or_else(|| ConfigError::new(key, format!("expected a number, got {v}")))
}

fn as_usize(key: &str, v: &Value) -> Result<usize, ConfigError> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| ConfigError::new(key, format!("expected a nonnegative integer, got {v}")))
}

impl RunConfig {
    /// Apply one dotted-key override.
    pub fn apply(&mut self, key: &str, value: &Value) -> Result<(), ConfigError> {
        match key {
            "quad.rel_tol" => self.quad.rel_tol = as_f64(key, value)?,
            "quad.abs_tol" => self.quad.abs_tol = as_f64(key, value)?,
            "quad.max_depth" => self.quad.max_depth = as_usize(key, value)?,
            "quad.gauss_order" => self.quad.gauss_order = as_usize(key, value)?,
            "quad.circle_nodes" => self.quad.circle_nodes = as_usize(key, value)?,
            "quad.circle_ratio" => self.quad.circle_ratio = as_f64(key, value)?,
            "region.y_min" => self.region.y_min = as_f64(key, value)?,
            "region.y_max" => self.region.y_max = as_f64(key, value)?,
            "region.x_max" => self.region.x_max = as_f64(key, value)?,
            "region.y_grid" => self.region.y_grid = as_usize(key, value)?,
            "region.x_grid" => self.region.x_grid = as_usize(key, value)?,
            "search.tau" => self.tau = as_f64(key, value)?,
            "search.levels" => self.search_levels = as_usize(key, value)?,
            "search.refine_rounds" => self.refine_rounds = as_usize(key, value)?,
            "search.top_cells" => self.top_cells = as_usize(key, value)?,
            "search.golden_iters" => self.golden_iters = as_usize(key, value)?,
            "hardy.height_min" => self.hardy_height_min = as_f64(key, value)?,
            "hardy.height_max" => self.hardy_height_max = as_f64(key, value)?,
            "hardy.heights" => self.hardy_heights = as_usize(key, value)?,
            "probe.levels" => self.probe_levels = as_usize(key, value)?,
            "vanishing.radii" => self.radii_count = as_usize(key, value)?,
            "seed" => {
                self.seed = value
                    .as_u64()
                    .ok_or_else(|| ConfigError::new(key, "expected a nonnegative integer"))?
            }
            "jobs" => self.jobs = as_usize(key, value)?,
            _ => return Err(ConfigError::new(key, "unknown configuration key")),
        }
        Ok(())
    }

    /// Load overrides from a flat dotted-key JSON file.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            ConfigError::new("config", format!("cannot read {}: {e}", path.display()))
        })?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| ConfigError::new("config", format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| ConfigError::new("config", "top level must be a JSON object"))?;
        for (k, v) in obj {
            self.apply(k, v)?;
        }
        Ok(())
    }

    /// Apply a `key=value` override from the command line.
    pub fn apply_kv(&mut self, pair: &str) -> Result<(), ConfigError> {
        let (key, raw) = pair
            .split_once('=')
            .ok_or_else(|| ConfigError::new("set", format!("expected key=value, got `{pair}`")))?;
        let value: Value = serde_json::from_str(raw)
            .map_err(|e| ConfigError::new(key, format!("invalid value `{raw}`: {e}")))?;
        self.apply(key, &value)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.quad.validate()?;
        self.region
            .validate()
            .map_err(|e| ConfigError::new("region", e.to_string()))?;
        if !self.tau.is_finite() || self.tau <= 1.0 {
            return Err(ConfigError::new("search.tau", "must exceed 1"));
        }
        if self.search_levels == 0 {
            return Err(ConfigError::new("search.levels", "must be >= 1"));
        }
        if self.golden_iters == 0 {
            return Err(ConfigError::new("search.golden_iters", "must be >= 1"));
        }
        if !(self.hardy_height_min > 0.0 && self.hardy_height_max >= self.hardy_height_min) {
            return Err(ConfigError::new(
                "hardy.height_min",
                "need 0 < height_min <= height_max",
            ));
        }
        if self.hardy_heights == 0 {
            return Err(ConfigError::new("hardy.heights", "must be >= 1"));
        }
        if self.probe_levels < 4 {
            return Err(ConfigError::new("probe.levels", "must be >= 4"));
        }
        if self.radii_count < 6 {
            return Err(ConfigError::new("vanishing.radii", "must be >= 6"));
        }
        if self.jobs == 0 {
            return Err(ConfigError::new("jobs", "must be >= 1"));
        }
        Ok(())
    }

    /// The search knobs bundled for the sweep engine.
    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            expansion_levels: self.search_levels,
            tau: self.tau,
            refine_rounds: self.refine_rounds,
            top_cells: self.top_cells,
            golden_iters: self.golden_iters,
            near_density: 1,
            seeds: Vec::new(),
            jobs: self.jobs,
        }
    }

    pub fn hardy_height_set(&self) -> Vec<f64> {
        crate::domain::log_heights(
            self.hardy_height_min,
            self.hardy_height_max,
            self.hardy_heights,
        )
    }

    /// Flat dotted-key echo embedded in every report.
    pub fn to_flat_map(&self) -> BTreeMap<String, Value> {
        let f = |v: f64| serde_json::json!(v);
        let u = |v: usize| serde_json::json!(v);
        let mut m = BTreeMap::new();
        m.insert("quad.rel_tol".into(), f(self.quad.rel_tol));
        m.insert("quad.abs_tol".into(), f(self.quad.abs_tol));
        m.insert("quad.max_depth".into(), u(self.quad.max_depth));
        m.insert("quad.gauss_order".into(), u(self.quad.gauss_order));
        m.insert("quad.circle_nodes".into(), u(self.quad.circle_nodes));
        m.insert("quad.circle_ratio".into(), f(self.quad.circle_ratio));
        m.insert("region.y_min".into(), f(self.region.y_min));
        m.insert("region.y_max".into(), f(self.region.y_max));
        m.insert("region.x_max".into(), f(self.region.x_max));
        m.insert("region.y_grid".into(), u(self.region.y_grid));
        m.insert("region.x_grid".into(), u(self.region.x_grid));
        m.insert("search.tau".into(), f(self.tau));
        m.insert("search.levels".into(), u(self.search_levels));
        m.insert("search.refine_rounds".into(), u(self.refine_rounds));
        m.insert("search.top_cells".into(), u(self.top_cells));
        m.insert("search.golden_iters".into(), u(self.golden_iters));
        m.insert("hardy.height_min".into(), f(self.hardy_height_min));
        m.insert("hardy.height_max".into(), f(self.hardy_height_max));
        m.insert("hardy.heights".into(), u(self.hardy_heights));
        m.insert("probe.levels".into(), u(self.probe_levels));
        m.insert("vanishing.radii".into(), u(self.radii_count));
        m.insert("seed".into(), serde_json::json!(self.seed));
        m.insert("jobs".into(), u(self.jobs));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_validates() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn unknown_key_is_rejected_with_its_name() {
        let mut cfg = RunConfig::default();
        let err = cfg
            .apply("quad.reltol", &serde_json::json!(1e-8))
            .unwrap_err();
        assert_eq!(err.field, "quad.reltol");
    }

    #[test]
    fn invalid_value_names_the_field() {
        let mut cfg = RunConfig::default();
        cfg.apply("quad.circle_ratio", &serde_json::json!(1.5))
            .unwrap();
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.field, "quad.circle_ratio");
    }

    #[test]
    fn kv_overrides_parse_json_values() {
        let mut cfg = RunConfig::default();
        cfg.apply_kv("quad.rel_tol=1e-8").unwrap();
        assert_eq!(cfg.quad.rel_tol, 1e-8);
        cfg.apply_kv("region.y_grid=31").unwrap();
        assert_eq!(cfg.region.y_grid, 31);
        assert!(cfg.apply_kv("no-equals-sign").is_err());
    }

    #[test]
    fn flat_map_round_trips_through_apply() {
        let cfg = RunConfig::default();
        let mut rebuilt = RunConfig::default();
        rebuilt.quad.rel_tol = 123.0; // perturb
        for (k, v) in cfg.to_flat_map() {
            rebuilt.apply(&k, &v).unwrap();
        }
        assert_eq!(cfg, rebuilt);
    }
}
