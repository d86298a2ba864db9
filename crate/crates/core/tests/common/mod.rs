#![allow(dead_code)]

use hybrid_cavity::dynamics::CovarianceMatrix;
use hybrid_cavity::gaussian::{
    beam_splitter, phase_rotation, single_mode_squeezer, thermal, transform,
};
use nalgebra::{DMatrix, Matrix6, Vector6};
use rand::Rng;

pub fn to_cm(m: &DMatrix<f64>) -> CovarianceMatrix {
    CovarianceMatrix::new(Matrix6::from_iterator(m.iter().copied())).unwrap()
}

/// Random symplectic map built from rotations, squeezers and beam splitters.
pub fn random_symplectic<R: Rng>(rng: &mut R, modes: usize) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * modes, 2 * modes);
    for _ in 0..3 {
        for k in 0..modes {
            s = phase_rotation(modes, k, rng.gen_range(0.0..std::f64::consts::TAU)) * s;
            s = single_mode_squeezer(modes, k, rng.gen_range(-1.0..1.0)) * s;
        }
        for i in 0..modes {
            for j in i + 1..modes {
                s = beam_splitter(modes, i, j, rng.gen_range(0.0..std::f64::consts::PI)) * s;
            }
        }
    }
    s
}

/// Random physical CM: a symplectic image of a thermal state.
pub fn random_physical_cm<R: Rng>(rng: &mut R, modes: usize) -> DMatrix<f64> {
    let occupations: Vec<f64> = (0..modes)
        .map(|_| {
            if rng.gen_bool(0.3) {
                0.0
            } else {
                rng.gen_range(0.0..2.0)
            }
        })
        .collect();
    transform(&random_symplectic(rng, modes), &thermal(&occupations))
}

/// Random matrix shifted so its rightmost eigenvalue sits at −margin.
pub fn random_stable<R: Rng>(rng: &mut R) -> (Matrix6<f64>, f64) {
    let m = Matrix6::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    let rightmost = m
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let margin = rng.gen_range(0.1..1.0);
    (m - Matrix6::identity() * (rightmost + margin), margin)
}

pub fn random_diffusion<R: Rng>(rng: &mut R) -> Matrix6<f64> {
    Matrix6::from_diagonal(&Vector6::from_fn(|_, _| {
        if rng.gen_bool(0.2) {
            0.0
        } else {
            rng.gen_range(0.0..2.0)
        }
    }))
}
