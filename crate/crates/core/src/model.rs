//! Laboratory parameters to linearized model.
//!
//! [`PhysicalParams`] holds what an experimentalist would quote (mirror
//! frequency and mass, cavity length and finesse, laser power and wavelength,
//! atomic coupling, temperature). [`solve_working_point`] finds the
//! semiclassical steady state, [`effective_params`] packages the rates that
//! enter the fluctuation dynamics, and [`DriftDiffusion`] holds the 6×6
//! drift and diffusion matrices built from them.
//!
//! All frequencies and rates are angular (rad/s).

use std::fmt;

use nalgebra::Matrix6;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{C, HBAR, K_B, TWO_PI};
use crate::{cubic, dynamics, Error, Result};

/// Smallest quality factor accepted; the Markovian Brownian-noise limit needs Q ≫ 1.
pub const MIN_QUALITY_FACTOR: f64 = 100.0;
/// Below this quality factor a warning is attached.
pub const WARN_QUALITY_FACTOR: f64 = 1e4;
/// Single-atom excitation probability above which a warning is attached.
pub const EXCITATION_WARN: f64 = 0.01;
/// Single-atom excitation probability at which the bosonic description is rejected.
pub const EXCITATION_ERROR: f64 = 0.1;

const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// How the cavity loss is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CavityLoss {
    /// Finesse F; κ = πc/(LF).
    Finesse(f64),
    /// Amplitude decay rate κ (rad/s).
    Kappa(f64),
}

/// How the cavity-laser detuning is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detuning {
    /// Bare detuning Δ_f = ω_c − ω_l. The intracavity intensity solves a cubic
    /// and may be bistable.
    Bare(f64),
    /// Target effective detuning Δ = Δ_f − G_m²/(2ω_m). The intensity is then
    /// unique and Δ_f follows from it.
    Effective(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Mechanical angular frequency ω_m.
    pub omega_m: f64,
    /// Q = ω_m/γ_m.
    pub quality_factor: f64,
    /// Effective mass of the mechanical mode (kg).
    pub mass: f64,
    /// Cavity length L (m).
    pub cavity_length: f64,
    pub loss: CavityLoss,
    /// Laser wavelength λ_l (m).
    pub laser_wavelength: f64,
    /// Input power P_l (W).
    pub laser_power: f64,
    pub detuning: Detuning,
    /// Collective atom-field coupling G_a = g√N_a.
    pub atom_coupling: f64,
    /// Atomic polarization decay rate γ_a.
    pub atom_linewidth: f64,
    /// Δ_a = ω_a − ω_l.
    pub detuning_a: f64,
    /// Mirror reservoir temperature (K).
    pub temperature: f64,
    /// Single-atom coupling g, only used for the excitation-probability check.
    pub single_atom_g: Option<f64>,
    /// Whether the atomic dispersive shift G_a²/(γ_a+iΔ_a) enters the
    /// intracavity-field equation. With `false` the working point (G_m, Δ) is
    /// that of the empty optomechanical cavity and the atoms are added on top.
    pub atom_backaction: bool,
}

impl PhysicalParams {
    /// Parameters of the reference setup: a 10 ng, 10 MHz mirror with Q = 10⁵
    /// in a 1 mm cavity of finesse 3×10⁴, driven with 35 mW at 1064 nm and
    /// held at the anti-Stokes resonance Δ = ω_m; atoms with
    /// G_a/2π = 6 MHz, γ_a/2π = 5 MHz on the Stokes sideband Δ_a = −ω_m;
    /// reservoir at 0.6 K. G_m and Δ come from the atom-free cavity.
    pub fn reference() -> Self {
        let omega_m = TWO_PI * 1e7;
        PhysicalParams {
            omega_m,
            quality_factor: 1e5,
            mass: 10e-12,
            cavity_length: 1e-3,
            loss: CavityLoss::Finesse(3e4),
            laser_wavelength: 1064e-9,
            laser_power: 35e-3,
            detuning: Detuning::Effective(omega_m),
            atom_coupling: TWO_PI * 6e6,
            atom_linewidth: TWO_PI * 5e6,
            detuning_a: -omega_m,
            temperature: 0.6,
            single_atom_g: None,
            atom_backaction: false,
        }
    }

    /// Checks field invariants. Returns the non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<Warning>> {
        positive("omega_m", self.omega_m)?;
        positive("quality_factor", self.quality_factor)?;
        if self.quality_factor < MIN_QUALITY_FACTOR {
            return Err(Error::invalid(
                "quality_factor",
                format!(
                    "Q = {} is below {MIN_QUALITY_FACTOR}; the Markovian bath limit needs Q >> 1",
                    self.quality_factor
                ),
            ));
        }
        positive("mass", self.mass)?;
        positive("cavity_length", self.cavity_length)?;
        match self.loss {
            CavityLoss::Finesse(f) => positive("finesse", f)?,
            CavityLoss::Kappa(k) => positive("kappa", k)?,
        }
        positive("laser_wavelength", self.laser_wavelength)?;
        positive("laser_power", self.laser_power)?;
        match self.detuning {
            Detuning::Bare(d) => finite("detuning_f", d)?,
            Detuning::Effective(d) => finite("detuning", d)?,
        }
        non_negative("atom_coupling", self.atom_coupling)?;
        non_negative("atom_linewidth", self.atom_linewidth)?;
        finite("detuning_a", self.detuning_a)?;
        non_negative("temperature", self.temperature)?;
        if let Some(g) = self.single_atom_g {
            non_negative("single_atom_g", g)?;
        }
        check_atoms_damped(self.atom_coupling, self.atom_linewidth, self.detuning_a)?;

        let mut warnings = Vec::new();
        if self.quality_factor < WARN_QUALITY_FACTOR {
            warnings.push(Warning::LowQualityFactor(self.quality_factor));
        }
        Ok(warnings)
    }

    fn omega_l(&self) -> f64 {
        TWO_PI * C / self.laser_wavelength
    }

    fn kappa(&self) -> f64 {
        match self.loss {
            CavityLoss::Finesse(f) => std::f64::consts::PI * C / (self.cavity_length * f),
            CavityLoss::Kappa(k) => k,
        }
    }

    /// G_0 for a given cavity frequency.
    fn g0_at(&self, omega_c: f64) -> f64 {
        (omega_c / self.cavity_length) * (HBAR / (self.mass * self.omega_m)).sqrt()
    }

    /// Atomic dispersive term G_a²/(γ_a+iΔ_a) entering the field equation.
    fn atomic_susceptibility(&self) -> Complex64 {
        if !self.atom_backaction || self.atom_coupling == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let g2 = self.atom_coupling * self.atom_coupling;
        Complex64::new(g2, 0.0) / Complex64::new(self.atom_linewidth, self.detuning_a)
    }
}

fn finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite, got {v}")))
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            format!("must be finite and > 0, got {v}"),
        ))
    }
}

fn non_negative(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            format!("must be finite and >= 0, got {v}"),
        ))
    }
}

fn check_atoms_damped(g_a: f64, gamma_a: f64, delta_a: f64) -> Result<()> {
    if g_a > 0.0 && gamma_a == 0.0 && delta_a == 0.0 {
        return Err(Error::invalid(
            "atom_linewidth",
            "undamped atoms on resonance with the laser (γ_a = Δ_a = 0) have no steady state",
        ));
    }
    Ok(())
}

/// Non-fatal diagnostics attached to a working point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Warning {
    LowQualityFactor(f64),
    ExcitationProbability(f64),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::LowQualityFactor(q) => write!(
                f,
                "quality factor {q} < {WARN_QUALITY_FACTOR}: Markovian bath approximation is marginal"
            ),
            Warning::ExcitationProbability(p) => write!(
                f,
                "single-atom excitation probability {p:.3e} >= {EXCITATION_WARN}: bosonic approximation is marginal"
            ),
        }
    }
}

/// Constants derived from the laboratory parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub omega_c: f64,
    /// Bare detuning Δ_f = ω_c − ω_l (given, or resolved from the Δ target).
    pub delta_f: f64,
    pub omega_l: f64,
    /// Radiation-pressure coupling G_0 = (ω_c/L)√(ħ/mω_m).
    pub g0: f64,
    /// Drive amplitude |E_l| = √(2P_lκ/ħω_l).
    pub drive: f64,
    pub kappa: f64,
    pub gamma_m: f64,
}

/// ω_l, ω_c, G_0, |E_l|, κ and γ_m.
///
/// With an effective-detuning target the bare detuning (and hence ω_c) is
/// found self-consistently with the working point.
pub fn derive_constants(p: &PhysicalParams) -> Result<DerivedConstants> {
    p.validate()?;
    let omega_l = p.omega_l();
    let kappa = p.kappa();
    if !(kappa > 0.0) {
        let field = match p.loss {
            CavityLoss::Finesse(_) => "finesse",
            CavityLoss::Kappa(_) => "kappa",
        };
        return Err(Error::invalid(
            field,
            format!("derived κ = {kappa} is not positive"),
        ));
    }
    let gamma_m = p.omega_m / p.quality_factor;
    let drive = (2.0 * p.laser_power * kappa / (HBAR * omega_l)).sqrt();

    let delta_f = match p.detuning {
        Detuning::Bare(d) => d,
        Detuning::Effective(target) => {
            let intensity = intensity_at_effective_detuning(p, kappa, drive, target);
            // G_0 depends on ω_c = ω_l + Δ_f and Δ_f on G_0; the coupling is
            // ~1e-7 relative so the fixed point settles in two or three passes.
            let mut delta_f = target;
            for _ in 0..16 {
                let g0 = p.g0_at(omega_l + delta_f);
                let next = target + g0 * g0 * intensity / p.omega_m;
                let done = (next - delta_f).abs() <= 1e-15 * next.abs().max(p.omega_m);
                delta_f = next;
                if done {
                    break;
                }
            }
            delta_f
        }
    };

    let omega_c = omega_l + delta_f;
    if !(omega_c > 0.0) {
        return Err(Error::invalid(
            "detuning_f",
            format!("cavity frequency ω_c = {omega_c} is not positive"),
        ));
    }
    let g0 = p.g0_at(omega_c);
    for (field, v) in [("gamma_m", gamma_m), ("drive", drive), ("g0", g0)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(
                field,
                format!("derived rate {v} is not positive"),
            ));
        }
    }
    Ok(DerivedConstants {
        omega_c,
        delta_f,
        omega_l,
        g0,
        drive,
        kappa,
        gamma_m,
    })
}

fn intensity_at_effective_detuning(p: &PhysicalParams, kappa: f64, drive: f64, delta: f64) -> f64 {
    let bracket = Complex64::new(kappa, delta) + p.atomic_susceptibility();
    drive * drive / bracket.norm_sqr()
}

/// Bose occupation of the mechanical mode. T = 0 gives exactly 0.
pub fn thermal_occupation(temperature: f64, omega_m: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_m / (K_B * temperature);
    1.0 / x.exp_m1()
}

/// Semiclassical steady state around which the dynamics is linearized.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkingPoint {
    /// Intracavity amplitude, real and non-negative by choice of phase.
    pub alpha_s: f64,
    pub photon_number: f64,
    /// Stationary mirror displacement (dimensionless).
    pub q_s: f64,
    /// Stationary atomic amplitude.
    #[serde(serialize_with = "serialize_complex")]
    pub c_s: Complex64,
    /// Effective optomechanical coupling G_m = G_0 α_s √2.
    pub g_m: f64,
    /// Effective detuning Δ = Δ_f − G_m²/(2ω_m).
    pub delta: f64,
    /// Bare detuning Δ_f.
    pub delta_f: f64,
    pub bistable: bool,
    /// Every admissible |α_s|², ascending.
    pub all_roots: Vec<f64>,
    /// Max Re λ of the drift matrix at the selected root.
    pub max_real_part: f64,
    pub excitation_probability: Option<f64>,
    pub warnings: Vec<Warning>,
    pub constants: DerivedConstants,
}

fn serialize_complex<S: serde::Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

/// Solves α_s[κ + iΔ_f − iG_0²|α_s|²/ω_m + G_a²/(γ_a+iΔ_a)] = E_l.
///
/// With a bare detuning the squared modulus is a real cubic in |α_s|²; every
/// non-negative root is kept and the smallest one with a stable drift matrix
/// is selected. With an effective-detuning target the equation is linear in
/// |α_s|².
pub fn solve_working_point(p: &PhysicalParams) -> Result<WorkingPoint> {
    let mut warnings = p.validate()?;
    let k = derive_constants(p)?;
    let chi = p.atomic_susceptibility();
    let beta = k.g0 * k.g0 / p.omega_m;
    let e2 = k.drive * k.drive;
    let kappa_tot = k.kappa + chi.re;

    let (roots, delta_f) = match p.detuning {
        Detuning::Effective(target) => {
            let i = intensity_at_effective_detuning(p, k.kappa, k.drive, target);
            (vec![i], k.delta_f)
        }
        Detuning::Bare(delta_f) => {
            let dt = delta_f + chi.im;
            (intensity_roots(kappa_tot, dt, beta, e2), delta_f)
        }
    };

    let roots: Vec<f64> = roots
        .into_iter()
        .filter(|&i| {
            i.is_finite() && i >= 0.0 && {
                let d = delta_f + chi.im - beta * i;
                let lhs = i * (kappa_tot * kappa_tot + d * d);
                (lhs - e2).abs() <= ROOT_RESIDUAL_TOL * e2
            }
        })
        .collect();
    if roots.is_empty() {
        return Err(Error::NoAdmissibleRoot);
    }

    let nbar = thermal_occupation(p.temperature, p.omega_m);
    let mut worst = f64::NEG_INFINITY;
    for &intensity in &roots {
        let alpha = intensity.sqrt();
        let g_m = k.g0 * alpha * std::f64::consts::SQRT_2;
        let delta = match p.detuning {
            Detuning::Effective(target) => target,
            Detuning::Bare(df) => df - g_m * g_m / (2.0 * p.omega_m),
        };
        let eff = EffectiveParams {
            omega_m: p.omega_m,
            gamma_m: k.gamma_m,
            kappa: k.kappa,
            delta,
            g_m,
            g_a: p.atom_coupling,
            gamma_a: p.atom_linewidth,
            delta_a: p.detuning_a,
            nbar,
        };
        let stability = dynamics::is_stable(&build_drift(&eff))?;
        if !stability.stable {
            worst = worst.max(stability.max_real_part);
            continue;
        }

        let excitation_probability = p.single_atom_g.map(|g| {
            g * g * intensity / (p.detuning_a * p.detuning_a + p.atom_linewidth * p.atom_linewidth)
        });
        if let Some(prob) = excitation_probability {
            if !(prob < EXCITATION_ERROR) {
                return Err(Error::BosonicApproximation { probability: prob });
            }
            if prob >= EXCITATION_WARN {
                warnings.push(Warning::ExcitationProbability(prob));
            }
        }
        for w in &warnings {
            log::warn!("{w}");
        }

        let c_s = if p.atom_coupling == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -p.atom_coupling * alpha)
                / Complex64::new(p.atom_linewidth, p.detuning_a)
        };
        return Ok(WorkingPoint {
            alpha_s: alpha,
            photon_number: intensity,
            q_s: k.g0 * intensity / p.omega_m,
            c_s,
            g_m,
            delta,
            delta_f,
            bistable: roots.len() > 1,
            all_roots: roots.clone(),
            max_real_part: stability.max_real_part,
            excitation_probability,
            warnings,
            constants: k,
        });
    }
    Err(Error::UnstableWorkingPoint {
        max_real_part: worst,
    })
}

/// Real roots of I[κ² + (Δ − βI)²] = E², ascending.
fn intensity_roots(kappa: f64, delta: f64, beta: f64, e2: f64) -> Vec<f64> {
    if beta == 0.0 {
        return vec![e2 / (kappa * kappa + delta * delta)];
    }
    // In x = βI (rad/s): x³ − 2Δx² + (κ²+Δ²)x − βE² = 0, then scale x = s·y.
    let forcing = beta * e2;
    let s = kappa.max(delta.abs()).max(forcing.cbrt());
    let (dn, kn) = (delta / s, kappa / s);
    cubic::real_roots(-2.0 * dn, kn * kn + dn * dn, -forcing / (s * s * s))
        .into_iter()
        .map(|y| y * s / beta)
        .collect()
}

/// Rates that fully determine the drift and diffusion matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub omega_m: f64,
    pub gamma_m: f64,
    pub kappa: f64,
    /// Effective cavity detuning Δ.
    pub delta: f64,
    /// Effective optomechanical coupling G_m.
    pub g_m: f64,
    pub g_a: f64,
    pub gamma_a: f64,
    pub delta_a: f64,
    /// Mean thermal phonon number of the mirror reservoir.
    pub nbar: f64,
}

impl EffectiveParams {
    pub fn validate(&self) -> Result<()> {
        positive("omega_m", self.omega_m)?;
        positive("gamma_m", self.gamma_m)?;
        positive("kappa", self.kappa)?;
        finite("delta", self.delta)?;
        finite("g_m", self.g_m)?;
        non_negative("g_a", self.g_a)?;
        non_negative("gamma_a", self.gamma_a)?;
        finite("delta_a", self.delta_a)?;
        non_negative("nbar", self.nbar)?;
        check_atoms_damped(self.g_a, self.gamma_a, self.delta_a)
    }

    /// Multiplies every rate by `s`; n̄ is unchanged.
    pub fn scaled(&self, s: f64) -> Self {
        EffectiveParams {
            omega_m: self.omega_m * s,
            gamma_m: self.gamma_m * s,
            kappa: self.kappa * s,
            delta: self.delta * s,
            g_m: self.g_m * s,
            g_a: self.g_a * s,
            gamma_a: self.gamma_a * s,
            delta_a: self.delta_a * s,
            nbar: self.nbar,
        }
    }
}

/// Packages the working point with the remaining rates and n̄(T).
pub fn effective_params(p: &PhysicalParams, w: &WorkingPoint) -> EffectiveParams {
    EffectiveParams {
        omega_m: p.omega_m,
        gamma_m: w.constants.gamma_m,
        kappa: w.constants.kappa,
        delta: w.delta,
        g_m: w.g_m,
        g_a: p.atom_coupling,
        gamma_a: p.atom_linewidth,
        delta_a: p.detuning_a,
        nbar: thermal_occupation(p.temperature, p.omega_m),
    }
}

/// Drift matrix over `(δq, δp, δX, δY, δx, δy)`.
pub fn build_drift(e: &EffectiveParams) -> Matrix6<f64> {
    #[rustfmt::skip]
    let a = Matrix6::new(
        0.0,        e.omega_m,   0.0,      0.0,      0.0,        0.0,
        -e.omega_m, -e.gamma_m,  e.g_m,    0.0,      0.0,        0.0,
        0.0,        0.0,         -e.kappa, e.delta,  0.0,        e.g_a,
        e.g_m,      0.0,         -e.delta, -e.kappa, -e.g_a,     0.0,
        0.0,        0.0,         0.0,      e.g_a,    -e.gamma_a, e.delta_a,
        0.0,        0.0,         -e.g_a,   0.0,      -e.delta_a, -e.gamma_a,
    );
    a
}

/// D = diag[0, γ_m(2n̄+1), κ, κ, γ_a, γ_a].
pub fn build_diffusion(e: &EffectiveParams) -> Matrix6<f64> {
    Matrix6::from_diagonal(&nalgebra::Vector6::new(
        0.0,
        e.gamma_m * (2.0 * e.nbar + 1.0),
        e.kappa,
        e.kappa,
        e.gamma_a,
        e.gamma_a,
    ))
}

/// Quadrature labels in matrix order.
pub const QUADRATURES: [&str; 6] = ["q", "p", "X", "Y", "x", "y"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftDiffusion {
    pub drift: Matrix6<f64>,
    pub diffusion: Matrix6<f64>,
}

impl DriftDiffusion {
    pub fn new(e: &EffectiveParams) -> Self {
        DriftDiffusion {
            drift: build_drift(e),
            diffusion: build_diffusion(e),
        }
    }
}
