//! Seeded random draws of states, unitaries, Hermitian matrices and subspaces.
//!
//! Unit vectors are normalized standard complex Gaussians, which makes them
//! Haar-distributed on the unit sphere.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::numeric::{CMatrix, CVector, Subspace, Tolerance, C64};

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_vec_unchecked((0..dim).map(|_| gaussian_c64(rng)).collect())
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let g = gaussian_vector(rng, dim);
        let n = g.norm();
        if n > 1e-6 {
            return g.scale(C64::new(1.0 / n, 0.0));
        }
    }
}

/// Haar-like unit vector inside `subspace` (random Gaussian combination of
/// its basis). `None` for the zero subspace.
pub fn random_unit_vector_in<R: Rng + ?Sized>(rng: &mut R, subspace: &Subspace) -> Option<CVector> {
    if subspace.is_zero() {
        return None;
    }
    let mut v = CVector::zeros(subspace.ambient_dim());
    for b in subspace.basis() {
        v.axpy(gaussian_c64(rng), b);
    }
    let n = v.norm();
    (n > 1e-12).then(|| v.scale(C64::new(1.0 / n, 0.0)))
}

/// Random `k`-dimensional subspace of `C^dim`.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, dim: usize, k: usize) -> Subspace {
    loop {
        let vectors: Vec<CVector> = (0..k).map(|_| gaussian_vector(rng, dim)).collect();
        let s = Subspace::span(dim, &vectors, Tolerance::default()).expect("valid dimension");
        if s.dim() == k {
            return s;
        }
    }
}

/// Random unitary from the orthonormalized columns of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let basis = random_subspace(rng, dim, dim);
    CMatrix::from_columns(basis.basis()).expect("square by construction")
}

/// Random Hermitian matrix `(G + G†)/2` with Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
        for j in (i + 1)..dim {
            let z = gaussian_c64(rng) * std::f64::consts::FRAC_1_SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
