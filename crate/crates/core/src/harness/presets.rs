//! Configuration files shipped with the crate.

use std::fmt;
use std::str::FromStr;

use super::config::{parse_config, ConfigError, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Cooling without atoms, swept over Δ/ω_m.
    Fig2a,
    /// Entanglement sharing, swept over Δ_a/ω_m.
    Fig2b,
    /// Temperature robustness at Δ_a = −ω_m.
    Fig2d,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2a, Preset::Fig2b, Preset::Fig2d];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2d => "fig2d",
        }
    }

    /// Raw configuration text.
    pub fn source(self) -> &'static str {
        match self {
            Preset::Fig2a => include_str!("../../presets/fig2a.conf"),
            Preset::Fig2b => include_str!("../../presets/fig2b.conf"),
            Preset::Fig2d => include_str!("../../presets/fig2d.conf"),
        }
    }

    pub fn spec(self) -> Result<SweepSpec, ConfigError> {
        parse_config(self.source())?.into_sweep()
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (fig2a|fig2b|fig2d)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::TWO_PI;
    use crate::harness::config::{Axis, BaseParams};
    use crate::model::{CavityLoss, Detuning};

    #[test]
    fn presets_hold_the_reference_values() {
        for preset in Preset::ALL {
            let spec = preset.spec().unwrap();
            let BaseParams::Physical(p) = &spec.base else {
                panic!("{preset} should be physical")
            };
            assert_eq!(p.omega_m, TWO_PI * 1e7);
            assert_eq!(p.quality_factor, 1e5);
            assert_eq!(p.mass, 10e-12);
            assert_eq!(p.laser_power, 35e-3);
            assert_eq!(p.laser_wavelength, 1064e-9);
            assert_eq!(p.cavity_length, 1e-3);
            assert_eq!(p.loss, CavityLoss::Finesse(3e4));
            assert_eq!(p.atom_linewidth, TWO_PI * 5e6);
            if preset != Preset::Fig2d {
                assert_eq!(p.temperature, 0.6);
            }
            if preset == Preset::Fig2a {
                assert_eq!(p.atom_coupling, 0.0);
            } else {
                assert_eq!(p.atom_coupling, TWO_PI * 6e6);
                assert_eq!(p.detuning, Detuning::Effective(p.omega_m));
            }
        }
    }

    #[test]
    fn preset_axes() {
        let b = Preset::Fig2b.spec().unwrap();
        assert_eq!(b.axis, Axis::DeltaA);
        assert_eq!((b.grid.start, b.grid.stop), (-3.0, 3.0));
        let a = Preset::Fig2a.spec().unwrap();
        assert_eq!((a.axis, a.grid.start, a.grid.stop), (Axis::Delta, 0.2, 2.0));
        let d = Preset::Fig2d.spec().unwrap();
        assert_eq!(
            (d.axis, d.grid.start, d.grid.stop),
            (Axis::Temperature, 0.6, 24.0)
        );
        assert_eq!("fig2d".parse::<Preset>().unwrap(), Preset::Fig2d);
        assert!("fig2c".parse::<Preset>().is_err());
    }
}
