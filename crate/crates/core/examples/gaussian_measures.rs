//! Symplectic spectra and logarithmic negativity of textbook Gaussian states.

use hybrid_cavity::entanglement::{
    log_negativity_2mode, pt_min_eigenvalue_2mode, symplectic_eigenvalues,
};
use hybrid_cavity::gaussian::{
    beam_splitter, block_diag, thermal, transform, two_mode_squeezed, vacuum,
};

fn main() -> hybrid_cavity::Result<()> {
    println!(
        "vacuum:          ν = {:.6?}",
        symplectic_eigenvalues(&vacuum(2))?
    );
    println!(
        "thermal (1, 3):  ν = {:.6?}",
        symplectic_eigenvalues(&thermal(&[1.0, 3.0]))?
    );

    println!("\n   r    E_N      ν̃_min");
    for r in [0.1, 0.5, 1.0, 2.0] {
        let v = two_mode_squeezed(r);
        println!(
            "{r:>4}  {:.6}  {:.6}",
            log_negativity_2mode(&v)?,
            pt_min_eigenvalue_2mode(&v)?
        );
    }

    // thermal noise mixed into one arm degrades the entanglement
    println!("\n  n_noise   E_N");
    for n in [0.0, 0.1, 0.5, 1.0, 2.0] {
        let noisy = block_diag(&[two_mode_squeezed(0.5), thermal(&[n])]);
        let mixed = transform(&beam_splitter(3, 1, 2, 0.3), &noisy);
        let pair = mixed.view((0, 0), (4, 4)).into_owned();
        println!("{n:>9}  {:.6}", log_negativity_2mode(&pair)?);
    }
    Ok(())
}
