//! Steady-state covariance at the reference working point, checked against
//! direct time integration of the covariance equation.

use hybrid_cavity::dynamics::{integrate_covariance, steady_state, CovarianceMatrix};
use hybrid_cavity::model::{
    build_diffusion, build_drift, effective_params, solve_working_point, PhysicalParams,
};

fn main() -> hybrid_cavity::Result<()> {
    let p = PhysicalParams::reference();
    let e = effective_params(&p, &solve_working_point(&p)?);
    let ss = steady_state(&e)?;
    let v = ss.solution.covariance;

    println!("max Re λ = {:.4e} rad/s", ss.stability.max_real_part);
    println!(
        "residual = {:.2e}, condition = {:.2e}",
        ss.solution.residual, ss.solution.condition
    );
    println!("V =");
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| format!("{:>11.5}", v[(i, j)])).collect();
        println!("  {}", row.join(""));
    }
    println!("ν_min = {:.6}", v.min_symplectic_eigenvalue().unwrap());

    let (a, d) = (build_drift(&e), build_diffusion(&e));
    for periods in [1.0, 5.0, 40.0] {
        let t = periods / e.kappa;
        let vt = integrate_covariance(&a, &d, &CovarianceMatrix::vacuum(), t)?;
        println!(
            "t = {periods:>4}/κ: max |V(t) − V| = {:.3e}",
            (vt.matrix() - v.matrix()).amax()
        );
    }
    Ok(())
}
