//! Small dense complex linear algebra: vectors, square matrices, a Hermitian
//! Jacobi eigensolver and the subspace calculus built on top of it.
//!
//! Everything here targets tiny dimensions (at most [`MAX_DIM`]). Every
//! rank, membership or containment decision is thresholded by a single
//! [`Tolerance`].

mod eigen;
mod subspace;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub use eigen::{hermitian_eig, EigenPair, MAX_SWEEPS};
pub use subspace::{gram_schmidt, Subspace};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Largest ambient dimension the kernel accepts.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is outside the supported range 1..={MAX_DIM}")]
    UnsupportedDimension(usize),
    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("basis is not orthonormal within tolerance")]
    NotOrthonormal,
    #[error("vector has (near) zero norm")]
    ZeroVector,
    #[error("empty vector list; use Subspace::zero for the zero subspace")]
    EmptyInput,
    #[error("tolerance {0:e} is outside (0, 1e-3)")]
    InvalidTolerance(f64),
}

pub type Result<T> = std::result::Result<T, NumericError>;

/// Threshold for every numerical decision. Defaults to `1e-9`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 && eps < 1e-3 {
            Ok(Tolerance(eps))
        } else {
            Err(NumericError::InvalidTolerance(eps))
        }
    }

    #[inline]
    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.0)
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(NumericError::UnsupportedDimension(dim))
    }
}

fn check_same(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(NumericError::DimensionMismatch { expected, found })
    }
}

/// A column vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    components: Vec<C64>,
}

impl CVector {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        if components.is_empty() {
            return Err(NumericError::UnsupportedDimension(0));
        }
        if components.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        Ok(CVector { components })
    }

    /// Builds a vector from real components.
    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::new(components.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        CVector { components: vec![C64::new(0.0, 0.0); dim.max(1)] }
    }

    /// The `k`-th standard basis vector of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.components[k] = C64::new(1.0, 0.0);
        v
    }

    pub(crate) fn from_vec_unchecked(components: Vec<C64>) -> Self {
        CVector { components }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<C64> {
        self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: C64) -> CVector {
        CVector { components: self.components.iter().map(|c| c * factor).collect() }
    }

    /// Returns `self / ‖self‖`, or an error when the norm is below `eps`.
    pub fn normalized(&self, eps: Tolerance) -> Result<CVector> {
        let n = self.norm();
        if n < eps.eps() {
            return Err(NumericError::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    /// `self + factor * other`, dimensions assumed equal.
    pub(crate) fn axpy(&mut self, factor: C64, other: &CVector) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += factor * b;
        }
    }

    /// Multiplies by a unit phase so the first component with modulus above
    /// `threshold` is real and positive.
    pub fn fix_phase(&self, threshold: f64) -> CVector {
        match self.components.iter().find(|c| c.norm() > threshold) {
            Some(c) => {
                let phase = c.conj() / c.norm();
                self.scale(phase)
            }
            None => self.clone(),
        }
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        self.components.iter().zip(&other.components).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.components[i]
    }
}

impl Add for &CVector {
    type Output = CVector;
    fn add(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        CVector::from_vec_unchecked(self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CVector {
    type Output = CVector;
    fn sub(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        CVector::from_vec_unchecked(self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect())
    }
}

/// `⟨u, v⟩`, conjugate-linear in the first argument.
pub fn inner(u: &CVector, v: &CVector) -> Result<C64> {
    check_same(u.dim(), v.dim())?;
    Ok(inner_unchecked(u, v))
}

#[inline]
pub(crate) fn inner_unchecked(u: &CVector, v: &CVector) -> C64 {
    u.components.iter().zip(&v.components).map(|(a, b)| a.conj() * b).sum()
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(NumericError::UnsupportedDimension(0));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(NumericError::NotSquare { rows: n, cols: row.len() });
            }
            data.extend(row);
        }
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        Ok(CMatrix { n, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[CVector]) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zeros(n);
        for (j, col) in columns.iter().enumerate() {
            check_same(n, col.dim())?;
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("static matrix")
    }

    pub fn pauli_y() -> Self {
        let i = C64::new(0.0, 1.0);
        let z = C64::new(0.0, 0.0);
        Self::from_rows(vec![vec![z, -i], vec![i, z]]).expect("static matrix")
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[1.0, -1.0])
    }

    /// Outer product `Σ b b†` over the given vectors.
    pub fn projector(dim: usize, basis: &[CVector]) -> Self {
        let mut m = Self::zeros(dim);
        for b in basis {
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += b[i] * b[j].conj();
                }
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::from_vec_unchecked((0..self.n).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &CVector) -> Result<CVector> {
        check_same(self.n, v.dim())?;
        Ok(CVector::from_vec_unchecked((0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum()).collect()))
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `‖M − M†‖_max`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, eps: Tolerance) -> bool {
        self.hermitian_deviation() < eps.eps()
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}
