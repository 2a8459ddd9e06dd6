//! Run configuration: flat `key = value` files with dotted sections,
//! overridden field-by-field from command-line flags.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

/// A coupling: either a single value or a uniform grid.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum KappaSpec {
    Single(f64),
    Grid { start: f64, stop: f64, count: usize },
}

impl KappaSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            KappaSpec::Single(k) => Ok(vec![k]),
            KappaSpec::Grid { start, stop, count } => {
                if count == 0 {
                    return Err(CliError::Config("kappa.count must be positive".into()));
                }
                if count == 1 {
                    return Ok(vec![start]);
                }
                let step = (stop - start) / (count - 1) as f64;
                Ok((0..count).map(|i| start + step * i as f64).collect())
            }
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            KappaSpec::Single(k) => format!("{k}"),
            KappaSpec::Grid { start, stop, count } => format!("{start}:{stop}:{count}"),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeasurementConfig {
    pub n: Option<u32>,
    pub theta1_0: Option<f64>,
    pub perfect: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveConfig {
    pub t_max: Option<f64>,
    pub frames: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PartitionConfig {
    pub n_bins: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub directory: Option<PathBuf>,
    pub format: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawConfig {
    pub q: Option<u32>,
    pub kappa: Option<KappaSpec>,
    pub p_min: Option<i32>,
    pub p_max: Option<i32>,
    pub p: Option<i32>,
    pub n_basis: Option<usize>,
    pub n_grid: Option<usize>,
    pub measurement: MeasurementConfig,
    pub evolve: EvolveConfig,
    pub partition: PartitionConfig,
    pub output: OutputConfig,
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::MissingInput(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Field-wise override: values set in `other` win.
    pub fn merge(mut self, other: RawConfig) -> Self {
        macro_rules! take {
            ($($field:ident).+) => {
                if other.$($field).+.is_some() {
                    self.$($field).+ = other.$($field).+;
                }
            };
        }
        take!(q);
        take!(kappa);
        take!(p_min);
        take!(p_max);
        take!(p);
        take!(n_basis);
        take!(n_grid);
        take!(measurement.n);
        take!(measurement.theta1_0);
        take!(measurement.perfect);
        take!(evolve.t_max);
        take!(evolve.frames);
        take!(partition.n_bins);
        take!(output.directory);
        take!(output.format);
        self
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let q = self.q.unwrap_or(1);
        if q == 0 {
            return Err(CliError::Config("q must be at least 1".into()));
        }
        let p_min = self.p_min.unwrap_or(-6);
        let p_max = self.p_max.unwrap_or(6);
        if p_min > p_max {
            return Err(CliError::Config(format!(
                "empty momentum window {p_min}..{p_max}"
            )));
        }
        let n_grid = self.n_grid.unwrap_or(256);
        if !n_grid.is_power_of_two() {
            return Err(CliError::Config(format!(
                "n_grid must be a power of two, got {n_grid}"
            )));
        }
        let format = self.output.format.unwrap_or_else(|| "csv".into());
        if format != "csv" && format != "json" {
            return Err(CliError::Config(format!(
                "output.format must be csv or json, got {format}"
            )));
        }
        let frames = self.evolve.frames.unwrap_or(65);
        if frames < 2 {
            return Err(CliError::Config("evolve.frames must be at least 2".into()));
        }
        Ok(RunConfig {
            q,
            kappa: self.kappa,
            p_min,
            p_max,
            p: self.p,
            n_basis: self
                .n_basis
                .unwrap_or_else(|| gauge_ring::default_basis_size(q)),
            n_grid,
            measure_n: self.measurement.n.unwrap_or(1),
            theta1_0: self.measurement.theta1_0.unwrap_or(0.0),
            perfect: self.measurement.perfect.unwrap_or(false),
            t_max: self.evolve.t_max.unwrap_or(2.0 * PI),
            frames,
            n_bins: self.partition.n_bins.unwrap_or(64),
            directory: self.output.directory.unwrap_or_else(|| PathBuf::from(".")),
            format,
        })
    }
}

/// Fully resolved configuration with defaults applied.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub q: u32,
    pub kappa: Option<KappaSpec>,
    pub p_min: i32,
    pub p_max: i32,
    pub p: Option<i32>,
    pub n_basis: usize,
    pub n_grid: usize,
    pub measure_n: u32,
    pub theta1_0: f64,
    pub perfect: bool,
    pub t_max: f64,
    pub frames: usize,
    pub n_bins: usize,
    pub directory: PathBuf,
    pub format: String,
}

impl RunConfig {
    pub fn single_kappa(&self) -> Result<f64, CliError> {
        match &self.kappa {
            None => Ok(3.8),
            Some(KappaSpec::Single(k)) => Ok(*k),
            Some(KappaSpec::Grid { .. }) => Err(CliError::Config(
                "this command needs a single kappa, not a grid".into(),
            )),
        }
    }

    pub fn kappa_grid(&self, default_start: f64, default_stop: f64, default_count: usize) -> Result<Vec<f64>, CliError> {
        match &self.kappa {
            None => KappaSpec::Grid {
                start: default_start,
                stop: default_stop,
                count: default_count,
            }
            .values(),
            Some(spec) => {
                let values = spec.values()?;
                if values.is_empty() {
                    return Err(CliError::Config("empty kappa grid".into()));
                }
                Ok(values)
            }
        }
    }

    pub fn table_format(&self) -> Result<crate::io::TableFormat, CliError> {
        crate::io::TableFormat::from_name(&self.format)
    }

    pub fn kappa_description(&self) -> String {
        self.kappa
            .as_ref()
            .map(|k| k.describe())
            .unwrap_or_else(|| "default".into())
    }
}
