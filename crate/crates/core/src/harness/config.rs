//! Flat `key = value` run configuration.
//!
//! One key per line, `#` starts a comment, units are part of the key name.
//! Frequencies are ordinary frequencies (`*_over_2pi_Hz`); detunings are
//! given in units of ω_m (`*_over_omega_m`).
//!
//! | key | mode | meaning |
//! |---|---|---|
//! | `mode` | all | `physical` (default) or `effective` |
//! | `omega_m_over_2pi_Hz` | all | mechanical frequency |
//! | `quality_factor` | all | Q = ω_m/γ_m |
//! | `G_a_over_2pi_Hz` | all | collective atom-field coupling |
//! | `gamma_a_over_2pi_Hz` | all | atomic linewidth |
//! | `Delta_a_over_omega_m` | all | atomic detuning |
//! | `temperature_K` | all | reservoir temperature (effective mode: or `nbar`) |
//! | `mass_kg`, `cavity_length_m`, `laser_wavelength_m`, `laser_power_W` | physical | |
//! | `finesse` or `kappa_over_2pi_Hz` | physical | exactly one |
//! | `Delta_f_over_omega_m` or `Delta_over_omega_m` | physical | bare or effective detuning, exactly one |
//! | `g_over_2pi_Hz` | physical, optional | single-atom coupling for the validity check |
//! | `atom_backaction` | physical, optional | `true` (default) or `false` |
//! | `kappa_over_2pi_Hz`, `Delta_over_omega_m`, `G_m_over_2pi_Hz` | effective | |
//! | `nbar` | effective, optional | thermal occupation instead of `temperature_K` |
//! | `sweep_axis` | sweep | `Delta/omega_m`, `Delta_a/omega_m` or `temperature_K` |
//! | `sweep_start`, `sweep_stop` | sweep | inclusive range |
//! | `sweep_count` | sweep, optional | grid points, default 201 |
//! | `sweep_hold_working_point` | sweep, optional | `true`: solve the working point once at the base parameters and only substitute the swept value into the rates (default `false`) |
//! | `outputs` | optional | comma list of `E_mf,E_ma,E_af,n_eff,tripartite,max_real_part` |
//!
//! The key swept by `sweep_axis` may be omitted from the base parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::constants::TWO_PI;
use crate::model::{thermal_occupation, CavityLoss, Detuning, EffectiveParams, PhysicalParams};

pub const DEFAULT_COUNT: usize = 201;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate key `{key}` on lines {first} and {second}")]
    Duplicate {
        key: String,
        first: usize,
        second: usize,
    },
    #[error("invalid configuration:\n{}", format_issues(.0))]
    Schema(Vec<SchemaIssue>),
}

fn format_issues(issues: &[SchemaIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchemaIssue {
    Missing(&'static str),
    Unknown {
        key: String,
        line: usize,
    },
    Invalid {
        key: String,
        line: usize,
        reason: String,
    },
    Conflict(String),
}

impl SchemaIssue {
    /// Key the issue is about, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            SchemaIssue::Missing(k) => Some(k),
            SchemaIssue::Unknown { key, .. } | SchemaIssue::Invalid { key, .. } => Some(key),
            SchemaIssue::Conflict(_) => None,
        }
    }
}

impl fmt::Display for SchemaIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaIssue::Missing(k) => write!(f, "missing required key `{k}`"),
            SchemaIssue::Unknown { key, line } => write!(f, "line {line}: unknown key `{key}`"),
            SchemaIssue::Invalid { key, line, reason } => {
                write!(f, "line {line}: invalid value for `{key}`: {reason}")
            }
            SchemaIssue::Conflict(msg) => f.write_str(msg),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    #[serde(rename = "Delta/omega_m")]
    Delta,
    #[serde(rename = "Delta_a/omega_m")]
    DeltaA,
    #[serde(rename = "temperature_K")]
    Temperature,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Delta => "Delta/omega_m",
            Axis::DeltaA => "Delta_a/omega_m",
            Axis::Temperature => "temperature_K",
        }
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Delta/omega_m" | "Delta_over_omega_m" => Ok(Axis::Delta),
            "Delta_a/omega_m" | "Delta_a_over_omega_m" => Ok(Axis::DeltaA),
            "temperature_K" => Ok(Axis::Temperature),
            _ => Err(format!(
                "expected one of Delta/omega_m, Delta_a/omega_m, temperature_K; got `{s}`"
            )),
        }
    }
}

/// Inclusive linear grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Output {
    #[serde(rename = "E_mf")]
    EMf,
    #[serde(rename = "E_ma")]
    EMa,
    #[serde(rename = "E_af")]
    EAf,
    #[serde(rename = "n_eff")]
    NEff,
    #[serde(rename = "tripartite")]
    Tripartite,
    #[serde(rename = "max_real_part")]
    MaxRealPart,
}

impl Output {
    pub const ALL: [Output; 6] = [
        Output::EMf,
        Output::EMa,
        Output::EAf,
        Output::NEff,
        Output::Tripartite,
        Output::MaxRealPart,
    ];
}

impl FromStr for Output {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "E_mf" => Ok(Output::EMf),
            "E_ma" => Ok(Output::EMa),
            "E_af" => Ok(Output::EAf),
            "n_eff" => Ok(Output::NEff),
            "tripartite" | "class" => Ok(Output::Tripartite),
            "max_real_part" => Ok(Output::MaxRealPart),
            _ => Err(format!("unknown output `{s}`")),
        }
    }
}

/// Rates given directly, bypassing the working-point solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveInput {
    /// `nbar` is overwritten from `temperature` when that is set.
    pub params: EffectiveParams,
    pub temperature: Option<f64>,
}

impl EffectiveInput {
    pub fn resolved(&self) -> EffectiveParams {
        let mut p = self.params;
        if let Some(t) = self.temperature {
            p.nbar = thermal_occupation(t, p.omega_m);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BaseParams {
    Physical(PhysicalParams),
    Effective(EffectiveInput),
}

impl BaseParams {
    pub fn omega_m(&self) -> f64 {
        match self {
            BaseParams::Physical(p) => p.omega_m,
            BaseParams::Effective(e) => e.params.omega_m,
        }
    }

    /// Copy with the swept quantity set to `value` (detunings in units of ω_m).
    pub fn with_axis(&self, axis: Axis, value: f64) -> BaseParams {
        let wm = self.omega_m();
        match self.clone() {
            BaseParams::Physical(mut p) => {
                match axis {
                    Axis::Delta => p.detuning = Detuning::Effective(value * wm),
                    Axis::DeltaA => p.detuning_a = value * wm,
                    Axis::Temperature => p.temperature = value,
                }
                BaseParams::Physical(p)
            }
            BaseParams::Effective(mut e) => {
                match axis {
                    Axis::Delta => e.params.delta = value * wm,
                    Axis::DeltaA => e.params.delta_a = value * wm,
                    Axis::Temperature => e.temperature = Some(value),
                }
                BaseParams::Effective(e)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub axis: Axis,
    pub grid: Grid,
    pub hold_working_point: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub base: BaseParams,
    pub sweep: Option<Sweep>,
    pub outputs: Vec<Output>,
}

/// Everything needed to run one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: BaseParams,
    pub axis: Axis,
    pub grid: Grid,
    /// Solve the working point once at `base` instead of at every grid value.
    /// Temperature sweeps always behave this way.
    pub hold_working_point: bool,
    pub outputs: Vec<Output>,
}

impl Config {
    pub fn into_sweep(self) -> Result<SweepSpec, ConfigError> {
        match self.sweep {
            Some(Sweep {
                axis,
                grid,
                hold_working_point,
            }) => Ok(SweepSpec {
                base: self.base,
                axis,
                grid,
                hold_working_point,
                outputs: self.outputs,
            }),
            None => Err(ConfigError::Schema(vec![
                SchemaIssue::Missing("sweep_axis"),
                SchemaIssue::Missing("sweep_start"),
                SchemaIssue::Missing("sweep_stop"),
            ])),
        }
    }
}

const COMMON_KEYS: &[&str] = &[
    "mode",
    "omega_m_over_2pi_Hz",
    "quality_factor",
    "G_a_over_2pi_Hz",
    "gamma_a_over_2pi_Hz",
    "Delta_a_over_omega_m",
    "temperature_K",
    "kappa_over_2pi_Hz",
    "Delta_over_omega_m",
    "sweep_axis",
    "sweep_start",
    "sweep_stop",
    "sweep_count",
    "sweep_hold_working_point",
    "outputs",
];
const PHYSICAL_KEYS: &[&str] = &[
    "mass_kg",
    "cavity_length_m",
    "finesse",
    "laser_wavelength_m",
    "laser_power_W",
    "Delta_f_over_omega_m",
    "g_over_2pi_Hz",
    "atom_backaction",
];
const EFFECTIVE_KEYS: &[&str] = &["G_m_over_2pi_Hz", "nbar"];

struct Entry {
    value: String,
    line: usize,
}

/// Collects typed values and schema issues while walking the key set.
struct Reader {
    entries: BTreeMap<String, Entry>,
    issues: Vec<SchemaIssue>,
}

impl Reader {
    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn raw(&self, key: &str) -> Option<(&str, usize)> {
        self.entries.get(key).map(|e| (e.value.as_str(), e.line))
    }

    fn parsed<T: FromStr>(&mut self, key: &'static str) -> Option<T>
    where
        T::Err: fmt::Display,
    {
        let (value, line) = self.raw(key)?;
        match value.parse::<T>() {
            Ok(v) => Some(v),
            Err(e) => {
                self.issues.push(SchemaIssue::Invalid {
                    key: key.into(),
                    line,
                    reason: e.to_string(),
                });
                None
            }
        }
    }

    fn number(&mut self, key: &'static str) -> Option<f64> {
        let v: f64 = self.parsed(key)?;
        if v.is_finite() {
            Some(v)
        } else {
            let line = self.entries[key].line;
            self.issues.push(SchemaIssue::Invalid {
                key: key.into(),
                line,
                reason: "must be a finite number".into(),
            });
            None
        }
    }

    fn required(&mut self, key: &'static str, optional: bool) -> Option<f64> {
        if !self.has(key) {
            if !optional {
                self.issues.push(SchemaIssue::Missing(key));
            }
            return None;
        }
        self.number(key)
    }

    /// Exactly one of two alternative keys.
    fn one_of(&mut self, a: &'static str, b: &'static str, optional: bool) -> Option<(usize, f64)> {
        match (self.has(a), self.has(b)) {
            (true, true) => {
                self.issues.push(SchemaIssue::Conflict(format!(
                    "give only one of `{a}` and `{b}`"
                )));
                None
            }
            (true, false) => self.number(a).map(|v| (0, v)),
            (false, true) => self.number(b).map(|v| (1, v)),
            (false, false) => {
                if !optional {
                    self.issues.push(SchemaIssue::Missing(a));
                }
                None
            }
        }
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Parse {
                line,
                message: "empty key or value".into(),
            });
        }
        if let Some(prev) = entries.get(key) {
            return Err(ConfigError::Duplicate {
                key: key.into(),
                first: prev.line,
                second: line,
            });
        }
        entries.insert(
            key.into(),
            Entry {
                value: value.into(),
                line,
            },
        );
    }

    let mut r = Reader {
        entries,
        issues: Vec::new(),
    };

    let effective = match r.raw("mode").map(|(v, l)| (v.to_string(), l)) {
        None => false,
        Some((m, _)) if m == "physical" => false,
        Some((m, _)) if m == "effective" => true,
        Some((other, line)) => {
            let reason = format!("expected `physical` or `effective`, got `{other}`");
            r.issues.push(SchemaIssue::Invalid {
                key: "mode".into(),
                line,
                reason,
            });
            false
        }
    };

    let allowed: Vec<&str> = COMMON_KEYS
        .iter()
        .chain(if effective {
            EFFECTIVE_KEYS
        } else {
            PHYSICAL_KEYS
        })
        .copied()
        .collect();
    let unknown: Vec<SchemaIssue> = r
        .entries
        .iter()
        .filter(|(k, _)| !allowed.contains(&k.as_str()))
        .map(|(k, e)| SchemaIssue::Unknown {
            key: k.clone(),
            line: e.line,
        })
        .collect();
    r.issues.extend(unknown);

    // sweep first: the swept key becomes optional in the base parameters
    let axis: Option<Axis> = if r.has("sweep_axis") {
        r.parsed("sweep_axis")
    } else {
        None
    };
    let sweep_keys = [
        "sweep_start",
        "sweep_stop",
        "sweep_count",
        "sweep_hold_working_point",
    ];
    let sweep = if r.has("sweep_axis") {
        let start = r.required("sweep_start", false);
        let stop = r.required("sweep_stop", false);
        let count = if r.has("sweep_count") {
            r.parsed::<usize>("sweep_count")
        } else {
            Some(DEFAULT_COUNT)
        };
        let hold = if r.has("sweep_hold_working_point") {
            r.parsed::<bool>("sweep_hold_working_point")
        } else {
            Some(false)
        };
        match (axis, start, stop, count, hold) {
            (Some(axis), Some(start), Some(stop), Some(count), Some(hold_working_point)) => {
                if count < 2 {
                    r.issues.push(SchemaIssue::Conflict(format!(
                        "sweep_count must be >= 2, got {count}"
                    )));
                }
                if !(start < stop) {
                    r.issues.push(SchemaIssue::Conflict(format!(
                        "sweep_start ({start}) must be < sweep_stop ({stop})"
                    )));
                }
                Some(Sweep {
                    axis,
                    grid: Grid { start, stop, count },
                    hold_working_point,
                })
            }
            _ => None,
        }
    } else {
        for key in sweep_keys {
            if let Some((_, line)) = r.raw(key) {
                r.issues.push(SchemaIssue::Invalid {
                    key: key.into(),
                    line,
                    reason: "sweep settings need `sweep_axis`".into(),
                });
            }
        }
        None
    };
    let swept = |a: Axis| axis == Some(a);

    let outputs = match r.raw("outputs").map(|(v, l)| (v.to_string(), l)) {
        None => Output::ALL.to_vec(),
        Some((list, line)) => {
            let list = list.as_str();
            let mut out = Vec::new();
            for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match item.parse::<Output>() {
                    Ok(o) if !out.contains(&o) => out.push(o),
                    Ok(_) => {}
                    Err(reason) => r.issues.push(SchemaIssue::Invalid {
                        key: "outputs".into(),
                        line,
                        reason,
                    }),
                }
            }
            out
        }
    };

    let f_m = r.required("omega_m_over_2pi_Hz", false);
    let q = r.required("quality_factor", false);
    let g_a = r.required("G_a_over_2pi_Hz", false);
    let gamma_a = r.required("gamma_a_over_2pi_Hz", false);
    let delta_a = r.required("Delta_a_over_omega_m", swept(Axis::DeltaA));

    let base = if effective {
        let kappa = r.required("kappa_over_2pi_Hz", false);
        let delta = r.required("Delta_over_omega_m", swept(Axis::Delta));
        let g_m = r.required("G_m_over_2pi_Hz", false);
        let thermal = r.one_of("temperature_K", "nbar", swept(Axis::Temperature));
        let (f_m, q, kappa, g_m, g_a, gamma_a) = match (f_m, q, kappa, g_m, g_a, gamma_a) {
            (Some(a), Some(b), Some(c), Some(d), Some(e), Some(f)) => (a, b, c, d, e, f),
            _ => return Err(ConfigError::Schema(r.issues)),
        };
        let omega_m = TWO_PI * f_m;
        let (nbar, temperature) = match thermal {
            Some((0, t)) => (thermal_occupation(t, omega_m), Some(t)),
            Some((_, n)) => (n, None),
            None => (0.0, None),
        };
        BaseParams::Effective(EffectiveInput {
            params: EffectiveParams {
                omega_m,
                gamma_m: omega_m / q,
                kappa: TWO_PI * kappa,
                delta: delta.unwrap_or(0.0) * omega_m,
                g_m: TWO_PI * g_m,
                g_a: TWO_PI * g_a,
                gamma_a: TWO_PI * gamma_a,
                delta_a: delta_a.unwrap_or(0.0) * omega_m,
                nbar,
            },
            temperature,
        })
    } else {
        let mass = r.required("mass_kg", false);
        let length = r.required("cavity_length_m", false);
        let loss = r.one_of("finesse", "kappa_over_2pi_Hz", false);
        let wavelength = r.required("laser_wavelength_m", false);
        let power = r.required("laser_power_W", false);
        let detuning = r.one_of(
            "Delta_f_over_omega_m",
            "Delta_over_omega_m",
            swept(Axis::Delta),
        );
        let temperature = r.required("temperature_K", swept(Axis::Temperature));
        let g = r.required("g_over_2pi_Hz", true);
        let backaction = if r.has("atom_backaction") {
            r.parsed::<bool>("atom_backaction")
        } else {
            Some(true)
        };
        let (f_m, q, mass, length, loss, wavelength, power, g_a, gamma_a, backaction) = match (
            f_m, q, mass, length, loss, wavelength, power, g_a, gamma_a, backaction,
        ) {
            (
                Some(a),
                Some(b),
                Some(c),
                Some(d),
                Some(e),
                Some(f),
                Some(g),
                Some(h),
                Some(i),
                Some(j),
            ) => (a, b, c, d, e, f, g, h, i, j),
            _ => return Err(ConfigError::Schema(r.issues)),
        };
        let omega_m = TWO_PI * f_m;
        BaseParams::Physical(PhysicalParams {
            omega_m,
            quality_factor: q,
            mass,
            cavity_length: length,
            loss: match loss {
                (0, f) => CavityLoss::Finesse(f),
                (_, k) => CavityLoss::Kappa(TWO_PI * k),
            },
            laser_wavelength: wavelength,
            laser_power: power,
            detuning: match detuning {
                Some((0, d)) => Detuning::Bare(d * omega_m),
                Some((_, d)) => Detuning::Effective(d * omega_m),
                None => Detuning::Effective(omega_m),
            },
            atom_coupling: TWO_PI * g_a,
            atom_linewidth: TWO_PI * gamma_a,
            detuning_a: delta_a.unwrap_or(0.0) * omega_m,
            temperature: temperature.unwrap_or(0.0),
            single_atom_g: g.map(|g| TWO_PI * g),
            atom_backaction: backaction,
        })
    };

    if !r.issues.is_empty() {
        return Err(ConfigError::Schema(r.issues));
    }

    // range checks that do not need a solve
    let check = match &base {
        BaseParams::Physical(p) => p.validate().map(|_| ()),
        BaseParams::Effective(e) => e.resolved().validate(),
    };
    if let Err(e) = check {
        return Err(ConfigError::Schema(vec![SchemaIssue::Conflict(
            e.to_string(),
        )]));
    }

    Ok(Config {
        base,
        sweep,
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHYSICAL_REQUIRED: &[&str] = &[
        "omega_m_over_2pi_Hz",
        "quality_factor",
        "G_a_over_2pi_Hz",
        "gamma_a_over_2pi_Hz",
        "Delta_a_over_omega_m",
        "mass_kg",
        "cavity_length_m",
        "finesse",
        "laser_wavelength_m",
        "laser_power_W",
        "Delta_f_over_omega_m",
        "temperature_K",
    ];

    fn missing(err: ConfigError) -> Vec<String> {
        match err {
            ConfigError::Schema(issues) => issues
                .iter()
                .filter(|i| matches!(i, SchemaIssue::Missing(_)))
                .map(|i| i.key().unwrap().to_string())
                .collect(),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_lists_every_required_key() {
        let mut got = missing(parse_config("").unwrap_err());
        let mut want: Vec<String> = PHYSICAL_REQUIRED.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn duplicate_key_names_both_lines() {
        let text = "quality_factor = 1e5\n# comment\nquality_factor = 2e5\n";
        assert_eq!(
            parse_config(text).unwrap_err(),
            ConfigError::Duplicate {
                key: "quality_factor".into(),
                first: 1,
                second: 3
            }
        );
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse_config("mode = physical\nthis is not a pair\n").unwrap_err() {
            ConfigError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_and_invalid_keys_reported_together() {
        let text = include_str!("../../presets/fig2b.conf").to_string()
            + "\nbogus_key = 1\nlaser_power_W_typo = 3\n";
        let text = text.replace("quality_factor = 1e5", "quality_factor = lots");
        match parse_config(&text).unwrap_err() {
            ConfigError::Schema(issues) => {
                let keys: Vec<_> = issues.iter().filter_map(|i| i.key()).collect();
                assert!(keys.contains(&"bogus_key"));
                assert!(keys.contains(&"laser_power_W_typo"));
                assert!(keys.contains(&"quality_factor"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn alternatives_conflict() {
        let text =
            include_str!("../../presets/fig2b.conf").to_string() + "\nkappa_over_2pi_Hz = 5e6\n";
        assert!(matches!(parse_config(&text), Err(ConfigError::Schema(_))));
    }

    #[test]
    fn effective_mode() {
        let text = "mode = effective
omega_m_over_2pi_Hz = 1e7
quality_factor = 1e5
kappa_over_2pi_Hz = 5e6
Delta_over_omega_m = 1
G_m_over_2pi_Hz = 8e6
G_a_over_2pi_Hz = 6e6
gamma_a_over_2pi_Hz = 5e6
Delta_a_over_omega_m = -1
nbar = 0
";
        let cfg = parse_config(text).unwrap();
        let BaseParams::Effective(e) = cfg.base else {
            panic!()
        };
        assert_eq!(e.params.g_m, TWO_PI * 8e6);
        assert_eq!(e.params.delta, TWO_PI * 1e7);
        assert_eq!(e.params.gamma_m, TWO_PI * 1e7 / 1e5);
        assert_eq!(e.resolved().nbar, 0.0);
        assert!(cfg.sweep.is_none());

        // physical-only keys are unknown in effective mode
        let bad = text.to_string() + "mass_kg = 1e-11\n";
        assert!(matches!(parse_config(&bad), Err(ConfigError::Schema(_))));
    }

    #[test]
    fn sweep_validation() {
        let base = include_str!("../../presets/fig2b.conf");
        let bad = base.replace("sweep_count = 301", "sweep_count = 1");
        assert!(parse_config(&bad).is_err());
        let bad = base.replace("sweep_start = -3", "sweep_start = 4");
        assert!(parse_config(&bad).is_err());
    }

    #[test]
    fn grid_is_inclusive() {
        let g = Grid {
            start: -3.0,
            stop: 3.0,
            count: 301,
        };
        let v = g.values();
        assert_eq!(v.len(), 301);
        assert_eq!((v[0], v[300]), (-3.0, 3.0));
        assert!((v[100] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_value_is_schema_error() {
        let text =
            include_str!("../../presets/fig2b.conf").replace("mass_kg = 10e-12", "mass_kg = -1");
        match parse_config(&text).unwrap_err() {
            ConfigError::Schema(issues) => assert!(issues[0].to_string().contains("mass")),
            other => panic!("{other:?}"),
        }
    }
}
