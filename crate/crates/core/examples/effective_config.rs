//! Drive the model directly with effective rates from a config string and
//! print the sweep as JSON.

use hybrid_cavity::harness::{parse_config, run_sweep, to_json};

const CONFIG: &str = "
mode = effective
omega_m_over_2pi_Hz = 1e7
quality_factor = 1e5
kappa_over_2pi_Hz = 5e6
Delta_over_omega_m = 1
G_a_over_2pi_Hz = 6e6
gamma_a_over_2pi_Hz = 5e6
Delta_a_over_omega_m = -1
G_m_over_2pi_Hz = 8e6
nbar = 1250

sweep_axis = Delta/omega_m
sweep_start = 0.5
sweep_stop = 1.5
sweep_count = 5
outputs = E_mf, E_ma, n_eff
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_config(CONFIG)?.into_sweep()?;
    let result = run_sweep(&spec, 2)?;
    print!("{}", to_json(&result)?);
    Ok(())
}
