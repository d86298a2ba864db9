//! Configuration, sweeps, presets and result emission.

pub mod config;
pub mod emit;
pub mod presets;
pub mod sweep;

pub use config::{parse_config, Axis, BaseParams, Config, ConfigError, Grid, Output, SweepSpec};
pub use emit::{render, to_csv, to_json, Format};
pub use presets::Preset;
pub use sweep::{evaluate, resolve, run_points, run_sweep, RowStatus, SweepResult, SweepRow};
