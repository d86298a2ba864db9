//! How far up in temperature the mirror-atom entanglement and full
//! inseparability survive, with the atoms on the Stokes sideband.

use hybrid_cavity::entanglement::TripartiteClass;
use hybrid_cavity::harness::{run_sweep, Preset};

fn main() -> hybrid_cavity::Result<()> {
    let result = run_sweep(&Preset::Fig2d.spec().expect("shipped preset"), 0)?;
    for (t, r) in result.reports().step_by(20) {
        println!(
            "T = {t:>5.1} K  E_ma = {:.4}  E_mf = {:.4}  {}",
            r.e_ma, r.e_mf, r.tripartite.class
        );
    }
    if let Some((t, _)) = result.reports().find(|(_, r)| r.e_ma == 0.0) {
        println!("E_ma first vanishes at {t:.1} K");
    }
    match result
        .reports()
        .find(|(_, r)| r.tripartite.class != TripartiteClass::FullyInseparable)
    {
        Some((t, _)) => println!("full inseparability lost at {t:.1} K"),
        None => println!("fully inseparable over the whole range"),
    }
    Ok(())
}
