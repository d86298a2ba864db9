//! Gaussian entanglement measures on the steady-state covariance.
//!
//! Partial transposition of a Gaussian state flips the sign of one mode's
//! momentum quadrature. A cut is entangled iff the transposed covariance has
//! a symplectic eigenvalue below 1/2; the logarithmic negativity is
//! `max(0, −ln 2ν̃_min)` (natural log).

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::{CovarianceMatrix, Stability, PHYSICALITY_TOL};
use crate::gaussian::symplectic_form;
use crate::{Error, Result};

/// Values within this distance of zero are reported as exactly zero.
pub const ZERO_FLOOR: f64 = 1e-9;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Mirror,
    Cavity,
    Atoms,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Mirror, Mode::Cavity, Mode::Atoms];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Mirror => "mirror",
            Mode::Cavity => "cavity",
            Mode::Atoms => "atoms",
        })
    }
}

/// Covariance of the selected modes (Gaussian partial trace), kept in
/// mirror, cavity, atoms order whatever the order of `modes`.
pub fn reduce(v: &CovarianceMatrix, modes: &[Mode]) -> Result<DMatrix<f64>> {
    if modes.is_empty() {
        return Err(Error::InvalidArgument("reduce: no modes selected".into()));
    }
    let mut keep: Vec<Mode> = modes.to_vec();
    keep.sort();
    keep.dedup();
    let idx: Vec<usize> = keep
        .iter()
        .flat_map(|m| [2 * m.index(), 2 * m.index() + 1])
        .collect();
    Ok(DMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        v[(idx[i], idx[j])]
    }))
}

fn check_square_even(v: &DMatrix<f64>) -> Result<usize> {
    let n = v.nrows();
    if n == 0 || n != v.ncols() || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "expected a 2n×2n covariance matrix, got {}×{}",
            v.nrows(),
            v.ncols()
        )));
    }
    Ok(n / 2)
}

/// Williamson spectrum ν₁ ≤ … ≤ νₙ.
///
/// Computed as the singular values of `V^{1/2} Ω V^{1/2}`, which come in
/// equal pairs.
pub fn symplectic_eigenvalues(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let modes = check_square_even(v)?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "covariance has non-finite entries".into(),
        ));
    }
    let scale = v.amax();
    if (v - v.transpose()).amax() > SYMMETRY_TOL * scale {
        return Err(Error::InvalidArgument(
            "covariance matrix is not symmetric".into(),
        ));
    }
    let sym = (v + v.transpose()) * 0.5;
    if sym.clone().cholesky().is_none() {
        return Err(Error::InvalidArgument(
            "covariance matrix is not positive definite".into(),
        ));
    }
    let eig = sym.symmetric_eigen();
    let sqrt_vals = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let root =
        &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
    let m = &root * symplectic_form(modes) * &root;
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(f64::total_cmp);
    Ok(sv.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Spectrum, or an error when ν_min < 1/2 − tolerance.
pub fn check_physical(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let nu = symplectic_eigenvalues(v)?;
    if nu[0] < 0.5 - PHYSICALITY_TOL {
        return Err(Error::Unphysical { nu_min: nu[0] });
    }
    Ok(nu)
}

/// `PVP` with `P` flipping the momentum of mode `mode`.
pub fn partial_transpose(v: &DMatrix<f64>, mode: usize) -> Result<DMatrix<f64>> {
    let modes = check_square_even(v)?;
    if mode >= modes {
        return Err(Error::InvalidArgument(format!(
            "mode index {mode} out of range for a {modes}-mode state"
        )));
    }
    let p = 2 * mode + 1;
    let mut out = v.clone();
    for k in 0..2 * modes {
        if k != p {
            out[(p, k)] = -out[(p, k)];
            out[(k, p)] = -out[(k, p)];
        }
    }
    Ok(out)
}

fn negativity_from_nu(nu_min: f64) -> f64 {
    floor(-(2.0 * nu_min).ln())
}

fn floor(x: f64) -> f64 {
    if x < ZERO_FLOOR {
        0.0
    } else {
        x
    }
}

fn det2(v: &DMatrix<f64>, r: usize, c: usize) -> f64 {
    v[(r, c)] * v[(r + 1, c + 1)] - v[(r, c + 1)] * v[(r + 1, c)]
}

/// Smallest partially-transposed symplectic eigenvalue of a two-mode state
/// from its block determinants.
pub fn pt_min_eigenvalue_2mode(v4: &DMatrix<f64>) -> Result<f64> {
    if v4.shape() != (4, 4) {
        return Err(Error::InvalidArgument(format!(
            "two-mode covariance must be 4×4, got {:?}",
            v4.shape()
        )));
    }
    let sigma = det2(v4, 0, 0) + det2(v4, 2, 2) - 2.0 * det2(v4, 0, 2);
    let det = v4.determinant();
    let disc = (sigma * sigma - 4.0 * det).max(0.0);
    // (Σ − √disc)/2 rewritten to avoid cancellation
    let eta_sq = 2.0 * det / (sigma + disc.sqrt());
    Ok(eta_sq.max(0.0).sqrt())
}

/// Logarithmic negativity of a two-mode state (block-determinant formula).
pub fn log_negativity_2mode(v4: &DMatrix<f64>) -> Result<f64> {
    if v4.shape() != (4, 4) {
        return Err(Error::InvalidArgument(format!(
            "two-mode covariance must be 4×4, got {:?}",
            v4.shape()
        )));
    }
    check_physical(v4)?;
    let eta = pt_min_eigenvalue_2mode(v4)?;
    debug_assert!({
        let spectral = symplectic_eigenvalues(&partial_transpose(v4, 1)?)?[0];
        (spectral - eta).abs() <= 1e-7 * eta.max(1e-3)
    });
    Ok(negativity_from_nu(eta))
}

/// Logarithmic negativity of a two-mode state from the transposed spectrum.
pub fn log_negativity_2mode_spectral(v4: &DMatrix<f64>) -> Result<f64> {
    if v4.shape() != (4, 4) {
        return Err(Error::InvalidArgument(format!(
            "two-mode covariance must be 4×4, got {:?}",
            v4.shape()
        )));
    }
    check_physical(v4)?;
    let nu = symplectic_eigenvalues(&partial_transpose(v4, 1)?)?;
    Ok(negativity_from_nu(nu[0]))
}

/// ν̃_min for the cut separating `mode` from the other two.
pub fn pt_min_eigenvalue(v: &CovarianceMatrix, mode: Mode) -> Result<f64> {
    let pt = partial_transpose(&v.to_dmatrix(), mode.index())?;
    Ok(symplectic_eigenvalues(&pt)?[0])
}

/// Negativity of `mode` versus the other two modes.
pub fn log_negativity_1v2(v: &CovarianceMatrix, mode: Mode) -> Result<f64> {
    check_physical(&v.to_dmatrix())?;
    Ok(negativity_from_nu(pt_min_eigenvalue(v, mode)?))
}

/// Negativity between two of the three modes after tracing out the third.
pub fn bipartite_negativity(v: &CovarianceMatrix, a: Mode, b: Mode) -> Result<f64> {
    if a == b {
        return Err(Error::InvalidArgument(
            "bipartite negativity needs two distinct modes".into(),
        ));
    }
    log_negativity_2mode(&reduce(v, &[a, b])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class", content = "mode")]
pub enum TripartiteClass {
    /// NPT across every 1|2 cut (class 1).
    FullyInseparable,
    /// PPT only across the cut of the named mode (class 2).
    OneModeBiseparable(Mode),
    /// PPT across exactly two cuts (class 3).
    TwoModeBiseparable,
    /// PPT across every cut: bound entangled or fully separable (classes 4, 5).
    NotClass1To3,
}

impl fmt::Display for TripartiteClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripartiteClass::FullyInseparable => f.write_str("fully_inseparable"),
            TripartiteClass::OneModeBiseparable(m) => write!(f, "one_mode_biseparable({m})"),
            TripartiteClass::TwoModeBiseparable => f.write_str("two_mode_biseparable"),
            TripartiteClass::NotClass1To3 => f.write_str("not_class_1_3"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tripartite {
    pub class: TripartiteClass,
    /// ν̃_min for the mirror|rest, cavity|rest and atoms|rest cuts.
    pub pt_min: [f64; 3],
}

pub fn tripartite_class(v: &CovarianceMatrix) -> Result<Tripartite> {
    check_physical(&v.to_dmatrix())?;
    let mut pt_min = [0.0; 3];
    for mode in Mode::ALL {
        pt_min[mode.index()] = pt_min_eigenvalue(v, mode)?;
    }
    let separable: Vec<Mode> = Mode::ALL
        .into_iter()
        .filter(|m| pt_min[m.index()] >= 0.5 - PHYSICALITY_TOL)
        .collect();
    let class = match separable[..] {
        [] => TripartiteClass::FullyInseparable,
        [m] => TripartiteClass::OneModeBiseparable(m),
        [_, _] => TripartiteClass::TwoModeBiseparable,
        _ => TripartiteClass::NotClass1To3,
    };
    Ok(Tripartite { class, pt_min })
}

/// Mean phonon number (V₁₁ + V₂₂ − 1)/2 of the mirror block.
pub fn effective_occupation(v: &CovarianceMatrix) -> f64 {
    let n = 0.5 * (v[(0, 0)] + v[(1, 1)] - 1.0);
    if n.abs() < ZERO_FLOOR {
        0.0
    } else {
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub e_mf: f64,
    pub e_ma: f64,
    pub e_af: f64,
    pub n_eff: f64,
    pub tripartite: Tripartite,
    pub stable: bool,
    pub max_real_part: f64,
}

/// All measures for one steady state.
pub fn report(v: &CovarianceMatrix, stability: &Stability) -> Result<EntanglementReport> {
    check_physical(&v.to_dmatrix())?;
    Ok(EntanglementReport {
        e_mf: bipartite_negativity(v, Mode::Mirror, Mode::Cavity)?,
        e_ma: bipartite_negativity(v, Mode::Mirror, Mode::Atoms)?,
        e_af: bipartite_negativity(v, Mode::Atoms, Mode::Cavity)?,
        n_eff: effective_occupation(v),
        tripartite: tripartite_class(v)?,
        stable: stability.stable,
        max_real_part: stability.max_real_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{block_diag, thermal, two_mode_squeezed, vacuum};
    use nalgebra::Matrix6;

    fn cm(m: DMatrix<f64>) -> CovarianceMatrix {
        CovarianceMatrix::new(Matrix6::from_iterator(m.iter().copied())).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let m = thermal(&[3.0]);
        let rest = two_mode_squeezed(0.3);
        let v = cm(block_diag(&[m.clone(), rest]));
        assert_eq!(reduce(&v, &Mode::ALL).unwrap(), v.to_dmatrix());
        assert_eq!(reduce(&v, &[Mode::Mirror]).unwrap(), m);
        // order of the request does not matter
        assert_eq!(
            reduce(&v, &[Mode::Atoms, Mode::Mirror]).unwrap(),
            reduce(&v, &[Mode::Mirror, Mode::Atoms]).unwrap()
        );
        assert!(reduce(&v, &[]).is_err());
    }

    #[test]
    fn spectra_of_reference_states() {
        let nu = symplectic_eigenvalues(&vacuum(3)).unwrap();
        assert!(nu.iter().all(|x| (x - 0.5).abs() < 1e-15));

        let nu = symplectic_eigenvalues(&thermal(&[0.0, 2.0, 7.5])).unwrap();
        for (got, want) in nu.iter().zip([0.5, 2.5, 8.0]) {
            assert!((got - want).abs() < 1e-13);
        }

        for r in [0.1, 1.0, 2.5] {
            let nu = symplectic_eigenvalues(&two_mode_squeezed(r)).unwrap();
            assert!(nu.iter().all(|x| (x - 0.5).abs() < 1e-10), "r={r}: {nu:?}");
        }
    }

    #[test]
    fn spectrum_rejects_bad_input() {
        let mut asym = vacuum(2);
        asym[(0, 1)] = 0.2;
        assert!(symplectic_eigenvalues(&asym).is_err());
        assert!(symplectic_eigenvalues(&(vacuum(2) * -1.0)).is_err());
        assert!(symplectic_eigenvalues(&DMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn partial_transpose_examples() {
        let v = two_mode_squeezed(0.7);
        let twice = partial_transpose(&partial_transpose(&v, 0).unwrap(), 0).unwrap();
        assert_eq!(twice, v);
        for r in [0.1, 0.5, 1.0, 1.5, 2.0] {
            for mode in 0..2 {
                let pt = partial_transpose(&two_mode_squeezed(r), mode).unwrap();
                let nu = symplectic_eigenvalues(&pt).unwrap()[0];
                let want = (-2.0 * r).exp() / 2.0;
                assert!((nu - want).abs() < 1e-10 * want.max(1.0) + 1e-12, "r={r}");
            }
        }
        // product state: transposing the product mode stays physical
        let product = block_diag(&[thermal(&[1.0]), two_mode_squeezed(1.0)]);
        let nu = symplectic_eigenvalues(&partial_transpose(&product, 0).unwrap()).unwrap();
        assert!(nu[0] >= 0.5 - 1e-12);
        assert!(partial_transpose(&product, 3).is_err());
    }

    #[test]
    fn two_mode_negativity() {
        assert_eq!(log_negativity_2mode(&vacuum(2)).unwrap(), 0.0);
        let e = log_negativity_2mode(&two_mode_squeezed(0.5)).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
        let e = log_negativity_2mode_spectral(&two_mode_squeezed(0.5)).unwrap();
        assert!((e - 1.0).abs() < 1e-10);
        assert!(log_negativity_2mode(&vacuum(3)).is_err());
        assert!(matches!(
            log_negativity_2mode(&(vacuum(2) * 0.9)),
            Err(Error::Unphysical { .. })
        ));
    }

    #[test]
    fn one_versus_two() {
        let vac = CovarianceMatrix::vacuum();
        for m in Mode::ALL {
            assert_eq!(log_negativity_1v2(&vac, m).unwrap(), 0.0);
        }
        let r = 0.6;
        let v = cm(block_diag(&[two_mode_squeezed(r), vacuum(1)]));
        assert_eq!(log_negativity_1v2(&v, Mode::Atoms).unwrap(), 0.0);
        assert!((log_negativity_1v2(&v, Mode::Mirror).unwrap() - 2.0 * r).abs() < 1e-10);
        assert!((log_negativity_1v2(&v, Mode::Cavity).unwrap() - 2.0 * r).abs() < 1e-10);
    }

    #[test]
    fn classification_examples() {
        let t = tripartite_class(&CovarianceMatrix::vacuum()).unwrap();
        assert_eq!(t.class, TripartiteClass::NotClass1To3);

        let v = cm(block_diag(&[two_mode_squeezed(1.0), vacuum(1)]));
        let t = tripartite_class(&v).unwrap();
        assert_eq!(t.class, TripartiteClass::OneModeBiseparable(Mode::Atoms));

        // cavity half of a two-mode squeezed pair split onto cavity and atoms,
        // then noise on both: only the mirror|rest cut stays NPT
        // (ν̃ ≈ 0.424, 0.542, 0.542)
        use crate::gaussian::{beam_splitter, transform};
        let base = block_diag(&[two_mode_squeezed(1.0), vacuum(1)]);
        let mut mixed = transform(&beam_splitter(3, 1, 2, std::f64::consts::FRAC_PI_4), &base);
        for k in 2..6 {
            mixed[(k, k)] += 0.8;
        }
        let t = tripartite_class(&cm(mixed)).unwrap();
        assert_eq!(t.class, TripartiteClass::TwoModeBiseparable);
        assert!(t.pt_min[0] < 0.43 && t.pt_min[1] > 0.54 && t.pt_min[2] > 0.54);
    }

    #[test]
    fn occupation() {
        assert_eq!(effective_occupation(&CovarianceMatrix::vacuum()), 0.0);
        let v = cm(thermal(&[4.25, 0.0, 0.0]));
        assert!((effective_occupation(&v) - 4.25).abs() < 1e-15);
    }

    #[test]
    fn vacuum_report() {
        let stability = Stability {
            stable: true,
            max_real_part: -1.0,
            spectral_radius: 1.0,
        };
        let r = report(&CovarianceMatrix::vacuum(), &stability).unwrap();
        assert_eq!((r.e_mf, r.e_ma, r.e_af, r.n_eff), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.tripartite.class, TripartiteClass::NotClass1To3);
    }

    #[test]
    fn class_names() {
        assert_eq!(
            TripartiteClass::OneModeBiseparable(Mode::Atoms).to_string(),
            "one_mode_biseparable(atoms)"
        );
        assert_eq!(
            TripartiteClass::FullyInseparable.to_string(),
            "fully_inseparable"
        );
    }
}
