//! Semiclassical working point for the reference setup, then a bare-detuning
//! scan that crosses into the bistable region of the intracavity intensity.

use hybrid_cavity::constants::TWO_PI;
use hybrid_cavity::model::{solve_working_point, Detuning, PhysicalParams};

fn main() -> hybrid_cavity::Result<()> {
    let p = PhysicalParams::reference();
    let w = solve_working_point(&p)?;
    let k = w.constants;
    println!("κ/2π      = {:.4} MHz", k.kappa / TWO_PI / 1e6);
    println!("G_0       = {:.2} s⁻¹", k.g0);
    println!("|α_s|²    = {:.4e}", w.photon_number);
    println!("G_m/2π    = {:.4} MHz", w.g_m / TWO_PI / 1e6);
    println!("Δ_f/ω_m   = {:.4}", w.delta_f / p.omega_m);
    println!();

    println!("{:>8} {:>14} {:>6}  roots", "Δ_f/ω_m", "|α_s|²", "bistable");
    let mut scan = p.clone();
    scan.atom_coupling = 0.0;
    for step in 0..=8 {
        let df = 0.5 + 0.5 * step as f64;
        scan.detuning = Detuning::Bare(df * p.omega_m);
        match solve_working_point(&scan) {
            Ok(w) => println!(
                "{df:>8.2} {:>14.4e} {:>6}  {:?}",
                w.photon_number,
                w.bistable,
                w.all_roots
                    .iter()
                    .map(|r| format!("{r:.3e}"))
                    .collect::<Vec<_>>()
            ),
            Err(e) => println!("{df:>8.2}  {e}"),
        }
    }
    Ok(())
}
