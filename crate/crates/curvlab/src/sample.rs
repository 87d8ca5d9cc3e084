//! Seeded random inputs for experiments and property checks.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::Normal;

use crate::curvature::{bianchi_project, weyl_part, CurvatureOperator, SymmetricOperator};
use crate::lie::{pair_count, Bivector};

/// Deterministic generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut SeededRng) -> f64 {
    rng.sample(Normal::new(0.0, 1.0).expect("standard normal"))
}

pub fn gaussian_vector(rng: &mut SeededRng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| gaussian(rng))
}

pub fn unit_vector(rng: &mut SeededRng, len: usize) -> DVector<f64> {
    loop {
        let v = gaussian_vector(rng, len);
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

pub fn bivector(rng: &mut SeededRng, n: usize) -> Bivector {
    Bivector { dim: n, coords: gaussian_vector(rng, pair_count(n)) }
}

/// Haar-distributed element of SO(n), from the QR factorization of a Gaussian matrix.
pub fn rotation(rng: &mut SeededRng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

pub fn symmetric_matrix(rng: &mut SeededRng, size: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(size, size, |_, _| gaussian(rng));
    (&a + a.transpose()) * 0.5
}

pub fn symmetric(rng: &mut SeededRng, n: usize) -> SymmetricOperator {
    SymmetricOperator::new_unchecked(n, symmetric_matrix(rng, pair_count(n)))
}

pub fn curvature(rng: &mut SeededRng, n: usize) -> CurvatureOperator {
    bianchi_project(&symmetric(rng, n))
}

/// Curvature operator diagonal in the wedge basis.
pub fn pure_curvature(rng: &mut SeededRng, n: usize) -> CurvatureOperator {
    let d = gaussian_vector(rng, pair_count(n));
    CurvatureOperator::new_unchecked(n, DMatrix::from_diagonal(&d))
}

/// Weyl operator of unit norm.
pub fn unit_weyl(rng: &mut SeededRng, n: usize) -> CurvatureOperator {
    loop {
        let w = weyl_part(&curvature(rng, n)).expect("n >= 4");
        let norm = w.norm();
        if norm > 1e-6 {
            return w.scale(1.0 / norm);
        }
    }
}
