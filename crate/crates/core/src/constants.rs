//! Physical constants (CODATA 2018 exact/recommended values, SI units).

/// Label written into sweep metadata so results can be traced to this table.
pub const TABLE_VERSION: &str = "CODATA-2018";

/// Reduced Planck constant ħ (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant k_B (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light in vacuum c (m/s).
pub const C: f64 = 299_792_458.0;
/// Vacuum permittivity ε₀ (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_values() {
        assert_eq!(HBAR, 1.054571817e-34);
        assert_eq!(K_B, 1.380649e-23);
        assert_eq!(C, 299792458.0);
        assert_eq!(EPSILON_0, 8.8541878128e-12);
    }
}
