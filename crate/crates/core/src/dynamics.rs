//! Stability of the linearized dynamics and its steady-state covariance.
//!
//! The steady state solves `AV + VAᵀ = −D`. [`solve_lyapunov`] does it as a
//! dense linear system over the 21 independent entries of the symmetric `V`;
//! [`integrate_covariance`] propagates `V̇ = AV + VAᵀ + D` in time and serves
//! as an independent check of the algebraic route.
//!
//! Both routines divide every rate by the largest drift entry before doing any
//! arithmetic. `V` is dimensionless, so the scaling is invisible to callers.

use nalgebra::{DMatrix, DVector, Matrix6};
use serde::Serialize;

use crate::entanglement;
use crate::model::{build_diffusion, build_drift, EffectiveParams};
use crate::{Error, Result};

/// Relative margin (against the spectral radius) required of max Re λ.
pub const STABILITY_EPS: f64 = 1e-9;
/// Lyapunov solves above this condition estimate are flagged.
pub const CONDITION_WARN: f64 = 1e12;
/// Tolerance on symplectic eigenvalues ≥ 1/2.
pub const PHYSICALITY_TOL: f64 = 1e-9;

const SYMMETRY_TOL: f64 = 1e-12;
const N: usize = 6;
const UNKNOWNS: usize = N * (N + 1) / 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stability {
    pub stable: bool,
    /// Largest real part among the eigenvalues of `A` (rad/s).
    pub max_real_part: f64,
    pub spectral_radius: f64,
}

/// Hurwitz test: stable iff max Re λ < −ε·ρ(A).
pub fn is_stable(a: &Matrix6<f64>) -> Result<Stability> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "drift matrix has non-finite entries".into(),
        ));
    }
    let schur = a
        .try_schur(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("eigenvalue iteration did not converge".into()))?;
    let eigs = schur.complex_eigenvalues();
    let max_real_part = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let spectral_radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(Stability {
        stable: max_real_part < -STABILITY_EPS * spectral_radius,
        max_real_part,
        spectral_radius,
    })
}

/// Symmetric 6×6 covariance over `(δq, δp, δX, δY, δx, δy)`,
/// `V_ij = ⟨u_i u_j + u_j u_i⟩/2`, vacuum `I/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix6<f64>);

impl Serialize for CovarianceMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<[f64; N]> = (0..N)
            .map(|i| std::array::from_fn(|j| self.0[(i, j)]))
            .collect();
        rows.serialize(s)
    }
}

impl CovarianceMatrix {
    /// Rejects matrices that are not symmetric to 1e-12 relative.
    pub fn new(m: Matrix6<f64>) -> Result<Self> {
        let scale = m.amax().max(f64::MIN_POSITIVE);
        let asym = (m - m.transpose()).amax();
        if !(asym <= SYMMETRY_TOL * scale) {
            return Err(Error::InvalidArgument(format!(
                "covariance matrix is not symmetric (max |V - Vᵀ| = {asym:.3e})"
            )));
        }
        Ok(CovarianceMatrix(symmetrize(&m)))
    }

    /// Three-mode vacuum.
    pub fn vacuum() -> Self {
        CovarianceMatrix(Matrix6::identity() * 0.5)
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_iterator(N, N, self.0.iter().copied())
    }

    /// Smallest symplectic eigenvalue; `None` if `V` is not positive definite.
    pub fn min_symplectic_eigenvalue(&self) -> Option<f64> {
        entanglement::symplectic_eigenvalues(&self.to_dmatrix())
            .ok()
            .map(|nu| nu[0])
    }

    /// V + iΩ/2 ≥ 0 up to [`PHYSICALITY_TOL`].
    pub fn is_physical(&self) -> bool {
        self.min_symplectic_eigenvalue()
            .is_some_and(|nu| nu >= 0.5 - PHYSICALITY_TOL)
    }
}

impl std::ops::Index<(usize, usize)> for CovarianceMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

fn symmetrize(m: &Matrix6<f64>) -> Matrix6<f64> {
    (m + m.transpose()) * 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovSolution {
    pub covariance: CovarianceMatrix,
    /// ‖AV + VAᵀ + D‖_max / ‖D‖_max.
    pub residual: f64,
    /// 2-norm condition estimate of the vectorized system.
    pub condition: f64,
    pub ill_conditioned: bool,
}

fn upper_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * N - i * (i + 1) / 2 + j
}

fn upper_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..N).flat_map(|i| (i..N).map(move |j| (i, j)))
}

fn drift_scale(a: &Matrix6<f64>) -> f64 {
    let s = a.amax();
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

fn check_diffusion(d: &Matrix6<f64>) -> Result<()> {
    let scale = d.amax();
    if d.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "diffusion matrix has non-finite entries".into(),
        ));
    }
    if (d - d.transpose()).amax() > SYMMETRY_TOL * scale {
        return Err(Error::InvalidArgument(
            "diffusion matrix is not symmetric".into(),
        ));
    }
    let min_eig = d.symmetric_eigenvalues().min();
    if min_eig < -SYMMETRY_TOL * scale {
        return Err(Error::InvalidArgument(format!(
            "diffusion matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})"
        )));
    }
    Ok(())
}

fn lyapunov_residual(a: &Matrix6<f64>, v: &Matrix6<f64>, d: &Matrix6<f64>) -> Matrix6<f64> {
    a * v + v * a.transpose() + d
}

/// Unique symmetric solution of `AV + VAᵀ = −D` for Hurwitz `A`.
pub fn solve_lyapunov(a: &Matrix6<f64>, d: &Matrix6<f64>) -> Result<LyapunovSolution> {
    let stability = is_stable(a)?;
    if !stability.stable {
        return Err(Error::Unstable {
            max_real_part: stability.max_real_part,
        });
    }
    check_diffusion(d)?;

    let s = drift_scale(a);
    let a_s = a / s;
    let d_s = d / s;

    let mut m = DMatrix::<f64>::zeros(UNKNOWNS, UNKNOWNS);
    for (row, (i, j)) in upper_pairs().enumerate() {
        for k in 0..N {
            m[(row, upper_index(k, j))] += a_s[(i, k)];
            m[(row, upper_index(i, k))] += a_s[(j, k)];
        }
    }
    let rhs = DVector::from_iterator(UNKNOWNS, upper_pairs().map(|(i, j)| -d_s[(i, j)]));

    let lu = m.clone().lu();
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular Lyapunov system".into()))?;

    let unpack = |x: &DVector<f64>| Matrix6::from_fn(|i, j| x[upper_index(i, j)]);
    let d_norm = d_s.amax();
    let rel_residual = |v: &Matrix6<f64>| {
        let r = lyapunov_residual(&a_s, v, &d_s).amax();
        if d_norm > 0.0 {
            r / d_norm
        } else {
            r
        }
    };

    // two rounds of iterative refinement are plenty at this size
    let mut v = unpack(&x);
    for _ in 0..2 {
        if rel_residual(&v) < 1e-14 {
            break;
        }
        let r = lyapunov_residual(&a_s, &v, &d_s);
        let r_vec = DVector::from_iterator(UNKNOWNS, upper_pairs().map(|(i, j)| -r[(i, j)]));
        if let Some(dx) = lu.solve(&r_vec) {
            x += dx;
            v = unpack(&x);
        }
    }
    let v = symmetrize(&v);
    let residual = rel_residual(&v);

    let sv = m.singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    let ill_conditioned = condition > CONDITION_WARN || residual >= 1e-10;
    if ill_conditioned {
        log::warn!(
            "Lyapunov solve ill-conditioned: cond = {condition:.3e}, residual = {residual:.3e}"
        );
    }

    Ok(LyapunovSolution {
        covariance: CovarianceMatrix(v),
        residual,
        condition,
        ill_conditioned,
    })
}

/// Time integration of `V̇ = AV + VAᵀ + D` from `V0` over `t` seconds.
///
/// Dormand–Prince 5(4) with local relative tolerance 1e-9.
pub fn integrate_covariance(
    a: &Matrix6<f64>,
    d: &Matrix6<f64>,
    v0: &CovarianceMatrix,
    t: f64,
) -> Result<CovarianceMatrix> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "integration time must be >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(*v0);
    }
    let s = drift_scale(a);
    let a_s = a / s;
    let d_s = d / s;
    let v = dopri5(
        |v| lyapunov_residual(&a_s, v, &d_s),
        v0.0,
        t * s,
        1e-9,
        1e-12,
    )?;
    Ok(CovarianceMatrix(symmetrize(&v)))
}

#[rustfmt::skip]
mod tableau {
    pub const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    pub const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    /// 5th-order minus embedded 4th-order weights.
    pub const E: [f64; 7] = [
        71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
        -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0,
    ];
}

fn dopri5<F>(f: F, y0: Matrix6<f64>, t_end: f64, rtol: f64, atol: f64) -> Result<Matrix6<f64>>
where
    F: Fn(&Matrix6<f64>) -> Matrix6<f64>,
{
    use tableau::{A, C, E};
    debug_assert_eq!(C[6], 1.0);

    let mut t = 0.0;
    let mut y = y0;
    let mut k = [Matrix6::zeros(); 7];
    k[0] = f(&y);

    // initial step from the derivative magnitude
    let d0 = y.amax().max(atol);
    let d1 = k[0].amax().max(f64::MIN_POSITIVE);
    let mut h = (0.01 * d0 / d1).min(t_end).max(1e-6 * t_end);

    let mut steps = 0usize;
    while t < t_end {
        steps += 1;
        if steps > 50_000_000 {
            return Err(Error::Numerical(
                "integrator exceeded its step budget".into(),
            ));
        }
        if t + h > t_end {
            h = t_end - t;
        }
        if h <= 1e-15 * t_end.max(1.0) {
            return Err(Error::Numerical(format!(
                "step-size underflow at t = {t:.6e}"
            )));
        }

        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let coef = A[stage][j];
                if coef != 0.0 {
                    ys += kj * (h * coef);
                }
            }
            k[stage] = f(&ys);
        }
        // 5th-order solution equals the last stage's input (FSAL)
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let coef = A[6][j];
            if coef != 0.0 {
                y_new += kj * (h * coef);
            }
        }
        let mut err_vec = Matrix6::zeros();
        for (j, kj) in k.iter().enumerate() {
            if E[j] != 0.0 {
                err_vec += kj * (h * E[j]);
            }
        }
        let err = err_vec
            .iter()
            .zip(y.iter().zip(y_new.iter()))
            .map(|(e, (a, b))| e.abs() / (atol + rtol * a.abs().max(b.abs())))
            .fold(0.0, f64::max);

        if err <= 1.0 {
            t += h;
            y = y_new;
            k[0] = k[6];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(y)
}

/// Steady state of the linearized model for one set of effective rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    pub stability: Stability,
    pub solution: LyapunovSolution,
}

/// Builds A and D, checks stability, solves the Lyapunov equation and checks
/// that the result is a physical quantum state.
pub fn steady_state(e: &EffectiveParams) -> Result<SteadyState> {
    e.validate()?;
    let a = build_drift(e);
    let d = build_diffusion(e);
    let stability = is_stable(&a)?;
    if !stability.stable {
        return Err(Error::Unstable {
            max_real_part: stability.max_real_part,
        });
    }
    let solution = solve_lyapunov(&a, &d)?;
    let nu_min = solution
        .covariance
        .min_symplectic_eigenvalue()
        .ok_or_else(|| {
            Error::Numerical("steady-state covariance is not positive definite".into())
        })?;
    if nu_min < 0.5 - PHYSICALITY_TOL {
        return Err(Error::Unphysical { nu_min });
    }
    Ok(SteadyState {
        stability,
        solution,
    })
}
