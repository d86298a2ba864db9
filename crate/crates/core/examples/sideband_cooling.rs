//! Mirror occupation and mirror-field entanglement against the cavity detuning
//! with the atoms removed.

use hybrid_cavity::harness::{run_sweep, Preset};

fn main() -> hybrid_cavity::Result<()> {
    let result = run_sweep(&Preset::Fig2a.spec().expect("shipped preset"), 0)?;
    println!("{:>8} {:>10} {:>10}", "Δ/ω_m", "n_eff", "E_mf");
    for (x, r) in result.reports().step_by(10) {
        println!("{x:>8.2} {:>10.4} {:>10.4}", r.n_eff, r.e_mf);
    }
    let (x, best) = result
        .reports()
        .min_by(|a, b| a.1.n_eff.total_cmp(&b.1.n_eff))
        .unwrap();
    println!("coldest: n_eff = {:.4} at Δ/ω_m = {x:.2}", best.n_eff);
    Ok(())
}
