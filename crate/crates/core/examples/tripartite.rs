//! Tripartite inseparability class of the reference steady state and of a few
//! constructed three-mode states.

use hybrid_cavity::dynamics::{steady_state, CovarianceMatrix};
use hybrid_cavity::entanglement::{tripartite_class, Mode};
use hybrid_cavity::gaussian::{block_diag, two_mode_squeezed, vacuum};
use hybrid_cavity::model::{effective_params, solve_working_point, PhysicalParams};
use nalgebra::{DMatrix, Matrix6};

fn cm(m: DMatrix<f64>) -> hybrid_cavity::Result<CovarianceMatrix> {
    CovarianceMatrix::new(Matrix6::from_iterator(m.iter().copied()))
}

fn main() -> hybrid_cavity::Result<()> {
    let states = [
        ("three-mode vacuum", cm(vacuum(3))?),
        (
            "squeezed mirror-cavity pair",
            cm(block_diag(&[two_mode_squeezed(1.0), vacuum(1)]))?,
        ),
    ];
    for (name, v) in states {
        let t = tripartite_class(&v)?;
        println!("{name:<28} {}  ν̃ = {:.4?}", t.class, t.pt_min);
    }

    let p = PhysicalParams::reference();
    let e = effective_params(&p, &solve_working_point(&p)?);
    let v = steady_state(&e)?.solution.covariance;
    let t = tripartite_class(&v)?;
    println!("{:<28} {}", "reference steady state", t.class);
    for (m, nu) in Mode::ALL.iter().zip(t.pt_min) {
        println!("  {m:>7} | rest: ν̃_min = {nu:.4}");
    }
    Ok(())
}
