//! Covariance matrices of standard Gaussian states and symplectic maps, with
//! quadratures interleaved per mode as `(q₁, p₁, q₂, p₂, …)` and vacuum `I/2`.

use nalgebra::DMatrix;

/// Ω = ⊕ [[0, 1], [−1, 0]].
pub fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

pub fn vacuum(modes: usize) -> DMatrix<f64> {
    DMatrix::identity(2 * modes, 2 * modes) * 0.5
}

/// Product of thermal states with the given mean occupations.
pub fn thermal(occupations: &[f64]) -> DMatrix<f64> {
    let diag: Vec<f64> = occupations
        .iter()
        .flat_map(|n| [n + 0.5, n + 0.5])
        .collect();
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

/// Two-mode squeezed vacuum with squeezing parameter `r`.
pub fn two_mode_squeezed(r: f64) -> DMatrix<f64> {
    let c = (2.0 * r).cosh() / 2.0;
    let s = (2.0 * r).sinh() / 2.0;
    #[rustfmt::skip]
    let v = DMatrix::from_row_slice(4, 4, &[
        c,   0.0, s,   0.0,
        0.0, c,   0.0, -s,
        s,   0.0, c,   0.0,
        0.0, -s,  0.0, c,
    ]);
    v
}

pub fn block_diag(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((at, at), (k, k)).copy_from(b);
        at += k;
    }
    out
}

/// Phase-space rotation by `theta` on one mode.
pub fn phase_rotation(modes: usize, mode: usize, theta: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    let (sin, cos) = theta.sin_cos();
    let i = 2 * mode;
    s[(i, i)] = cos;
    s[(i, i + 1)] = sin;
    s[(i + 1, i)] = -sin;
    s[(i + 1, i + 1)] = cos;
    s
}

/// Single-mode squeezer diag(e^{−r}, e^{r}) on one mode.
pub fn single_mode_squeezer(modes: usize, mode: usize, r: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    s[(2 * mode, 2 * mode)] = (-r).exp();
    s[(2 * mode + 1, 2 * mode + 1)] = r.exp();
    s
}

/// Beam splitter with mixing angle `theta` between modes `i` and `j`.
pub fn beam_splitter(modes: usize, i: usize, j: usize, theta: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    let (sin, cos) = theta.sin_cos();
    for quad in 0..2 {
        let (a, b) = (2 * i + quad, 2 * j + quad);
        s[(a, a)] = cos;
        s[(a, b)] = sin;
        s[(b, a)] = -sin;
        s[(b, b)] = cos;
    }
    s
}

/// S V Sᵀ.
pub fn transform(s: &DMatrix<f64>, v: &DMatrix<f64>) -> DMatrix<f64> {
    s * v * s.transpose()
}
