use super::{
    check_dim, check_same, hermitian_eig, inner_unchecked, CMatrix, CVector, NumericError, Result, Tolerance, C64,
};

/// A subspace of `C^n`, held as an orthonormal basis.
///
/// Invariants (within the tolerance it was built with): unit-norm basis
/// vectors, pairwise inner products below `eps`, at most `ambient_dim`
/// vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<CVector>,
}

/// Orthonormalizes `vectors` (classical Gram-Schmidt, applied twice per
/// vector). Vectors whose residual norm after projection falls below `eps`
/// are dropped.
///
/// An empty list is an error because it carries no ambient dimension; use
/// [`Subspace::zero`] or [`Subspace::span`] instead.
pub fn gram_schmidt(vectors: &[CVector], eps: Tolerance) -> Result<Subspace> {
    let first = vectors.first().ok_or(NumericError::EmptyInput)?;
    Subspace::span(first.dim(), vectors, eps)
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Result<Self> {
        check_dim(ambient_dim)?;
        Ok(Subspace { ambient_dim, basis: Vec::new() })
    }

    pub fn full(ambient_dim: usize) -> Result<Self> {
        check_dim(ambient_dim)?;
        let basis = (0..ambient_dim).map(|k| CVector::basis(ambient_dim, k)).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of `vectors` inside `C^ambient_dim`; an empty list gives the zero subspace.
    pub fn span(ambient_dim: usize, vectors: &[CVector], eps: Tolerance) -> Result<Self> {
        check_dim(ambient_dim)?;
        let mut basis: Vec<CVector> = Vec::new();
        for v in vectors {
            check_same(ambient_dim, v.dim())?;
            if basis.len() == ambient_dim {
                break;
            }
            let mut r = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let c = inner_unchecked(b, &r);
                    r.axpy(-c, b);
                }
            }
            let n = r.norm();
            if n >= eps.eps() {
                basis.push(r.scale(C64::new(1.0 / n, 0.0)));
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Wraps an already orthonormal basis after checking the invariants.
    pub fn from_orthonormal(ambient_dim: usize, basis: Vec<CVector>, eps: Tolerance) -> Result<Self> {
        check_dim(ambient_dim)?;
        for b in &basis {
            check_same(ambient_dim, b.dim())?;
        }
        let s = Subspace { ambient_dim, basis };
        if s.is_orthonormal(eps) {
            Ok(s)
        } else {
            Err(NumericError::NotOrthonormal)
        }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Checks the orthonormality invariants.
    pub fn is_orthonormal(&self, eps: Tolerance) -> bool {
        if self.basis.len() > self.ambient_dim {
            return false;
        }
        for (i, b) in self.basis.iter().enumerate() {
            if (b.norm() - 1.0).abs() >= eps.eps() {
                return false;
            }
            if self.basis[i + 1..].iter().any(|c| inner_unchecked(b, c).norm() >= eps.eps()) {
                return false;
            }
        }
        true
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::projector(self.ambient_dim, &self.basis)
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &CVector) -> Result<CVector> {
        check_same(self.ambient_dim, v.dim())?;
        let mut p = CVector::zeros(self.ambient_dim);
        for b in &self.basis {
            p.axpy(inner_unchecked(b, v), b);
        }
        Ok(p)
    }

    /// `v − P v`.
    pub fn residual(&self, v: &CVector) -> Result<CVector> {
        Ok(v - &self.project(v)?)
    }

    /// Membership: `‖v − P v‖ < eps·‖v‖`.
    pub fn contains(&self, v: &CVector, eps: Tolerance) -> Result<bool> {
        let norm = v.norm();
        check_same(self.ambient_dim, v.dim())?;
        if norm <= eps.eps() {
            return Err(NumericError::ZeroVector);
        }
        Ok(self.residual(v)?.norm() < eps.eps() * norm)
    }

    pub fn is_subset_of(&self, other: &Subspace, eps: Tolerance) -> Result<bool> {
        check_same(self.ambient_dim, other.ambient_dim)?;
        for b in &self.basis {
            if !other.contains(b, eps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mutual containment.
    pub fn same_as(&self, other: &Subspace, eps: Tolerance) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.is_subset_of(other, eps)? && other.is_subset_of(self, eps)?)
    }

    /// True when every cross inner product of basis vectors is below `eps`.
    pub fn is_orthogonal_to(&self, other: &Subspace, eps: Tolerance) -> Result<bool> {
        check_same(self.ambient_dim, other.ambient_dim)?;
        Ok(self.basis.iter().all(|a| other.basis.iter().all(|b| inner_unchecked(a, b).norm() < eps.eps())))
    }

    /// Intersection, read off as the eigenvalue-2 eigenspace of `P_S + P_T`
    /// (eigenvalues above `2 − eps`).
    pub fn intersect(&self, other: &Subspace, eps: Tolerance) -> Result<Subspace> {
        check_same(self.ambient_dim, other.ambient_dim)?;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let sum = &self.projector() + &other.projector();
        let vectors: Vec<CVector> =
            hermitian_eig(&sum, eps)?.into_iter().filter(|p| p.value > 2.0 - eps.eps()).map(|p| p.vector).collect();
        Ok(Subspace::span(self.ambient_dim, &vectors, eps)?.canonical())
    }

    /// Span of the union of both bases.
    pub fn join(&self, other: &Subspace, eps: Tolerance) -> Result<Subspace> {
        check_same(self.ambient_dim, other.ambient_dim)?;
        let all: Vec<CVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient_dim, &all, eps)
    }

    pub fn orthocomplement(&self) -> Subspace {
        let complement = &CMatrix::identity(self.ambient_dim) - &self.projector();
        Self::from_projector_columns(&complement)
    }

    /// Canonical basis for the same subspace: the columns of its projector,
    /// orthonormalized in order, each phase-fixed so its first significant
    /// component is real positive. Independent of which basis was stored.
    pub fn canonical(&self) -> Subspace {
        Self::from_projector_columns(&self.projector())
    }

    fn from_projector_columns(p: &CMatrix) -> Subspace {
        let n = p.dim();
        // Columns of an exact projector either carry a residual of at least
        // 1/sqrt(n) in a missing direction or are pure rounding noise.
        let threshold = 0.5 / (n as f64).sqrt();
        let mut basis: Vec<CVector> = Vec::new();
        for j in 0..n {
            let mut r = p.column(j);
            for _ in 0..2 {
                for b in &basis {
                    let c = inner_unchecked(b, &r);
                    r.axpy(-c, b);
                }
            }
            let norm = r.norm();
            if norm >= threshold {
                basis.push(r.scale(C64::new(1.0 / norm, 0.0)).fix_phase(1e-12));
            }
        }
        Subspace { ambient_dim: n, basis }
    }

    /// Image under a (unitary) matrix, re-orthonormalized.
    pub fn transformed(&self, u: &CMatrix, eps: Tolerance) -> Result<Subspace> {
        check_same(self.ambient_dim, u.dim())?;
        let images = self.basis.iter().map(|b| u.mul_vec(b)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.ambient_dim, &images, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_subspace, random_unit_vector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn eps() -> Tolerance {
        Tolerance::default()
    }

    fn v(xs: &[f64]) -> CVector {
        CVector::from_real(xs).unwrap()
    }

    fn line(xs: &[f64]) -> Subspace {
        gram_schmidt(&[v(xs)], eps()).unwrap()
    }

    #[test]
    fn gram_schmidt_examples() {
        let full = gram_schmidt(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], eps()).unwrap();
        assert!(full.is_full());

        let dep = gram_schmidt(&[v(&[1.0, 0.0]), v(&[2.0, 0.0])], eps()).unwrap();
        assert_eq!(dep.dim(), 1);
        assert_eq!(dep.basis()[0], v(&[1.0, 0.0]));

        let hd = gram_schmidt(&[v(&[1.0, 1.0]), v(&[1.0, -1.0])], eps()).unwrap();
        assert_eq!(hd.dim(), 2);
        assert!(hd.basis()[0].max_abs_diff(&v(&[S, S])) < 1e-15);
        assert!(hd.basis()[1].max_abs_diff(&v(&[S, -S])) < 1e-15);
    }

    #[test]
    fn gram_schmidt_rejects_empty_and_mismatched() {
        assert_eq!(gram_schmidt(&[], eps()), Err(NumericError::EmptyInput));
        let r = gram_schmidt(&[v(&[1.0, 0.0]), v(&[1.0, 0.0, 0.0])], eps());
        assert!(matches!(r, Err(NumericError::DimensionMismatch { .. })));
        assert!(Subspace::span(2, &[], eps()).unwrap().is_zero());
        assert!(Subspace::zero(2).unwrap().is_zero());
    }

    #[test]
    fn contains_examples() {
        let s = line(&[1.0, 0.0]);
        assert!(s.contains(&v(&[1.0, 0.0]), eps()).unwrap());
        assert!(!s.contains(&v(&[0.0, 1.0]), eps()).unwrap());
        assert!(!s.contains(&v(&[S, S]), eps()).unwrap());
        assert_eq!(s.contains(&v(&[0.0, 0.0]), eps()), Err(NumericError::ZeroVector));
    }

    #[test]
    fn subset_examples() {
        let zero = Subspace::zero(2).unwrap();
        let full = Subspace::full(2).unwrap();
        let e1 = line(&[1.0, 0.0]);
        assert!(zero.is_subset_of(&e1, eps()).unwrap());
        assert!(zero.is_subset_of(&zero, eps()).unwrap());
        assert!(e1.is_subset_of(&full, eps()).unwrap());
        assert!(!e1.is_subset_of(&line(&[1.0, 1.0]), eps()).unwrap());
        assert!(e1.is_subset_of(&Subspace::full(3).unwrap(), eps()).is_err());
    }

    #[test]
    fn intersect_examples() {
        let e1 = line(&[1.0, 0.0]);
        let e2 = line(&[0.0, 1.0]);
        assert!(e1.intersect(&e2, eps()).unwrap().is_zero());
        assert!(e1.intersect(&e1, eps()).unwrap().same_as(&e1, eps()).unwrap());

        let s12 = gram_schmidt(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], eps()).unwrap();
        let s23 = gram_schmidt(&[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], eps()).unwrap();
        let meet = s12.intersect(&s23, eps()).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.basis()[0].max_abs_diff(&v(&[0.0, 1.0, 0.0])) < 1e-12);
    }

    #[test]
    fn join_complement_examples() {
        let e1 = line(&[1.0, 0.0]);
        let e2 = line(&[0.0, 1.0]);
        assert!(e1.join(&e2, eps()).unwrap().is_full());
        let perp = line(&[1.0, 1.0]).orthocomplement();
        assert_eq!(perp.dim(), 1);
        assert!(perp.basis()[0].max_abs_diff(&v(&[S, -S])) < 1e-15);
        assert!(Subspace::full(2).unwrap().orthocomplement().is_zero());
        assert!(Subspace::zero(3).unwrap().orthocomplement().is_full());
    }

    #[test]
    fn complement_laws_on_random_subspaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let k = rng.random_range(0..=n);
            let s = random_subspace(&mut rng, n, k);
            let perp = s.orthocomplement();
            assert!(perp.is_orthonormal(eps()));
            assert!(s.join(&perp, eps()).unwrap().is_full());
            assert!(s.intersect(&perp, eps()).unwrap().is_zero());
            let u = random_unit_vector(&mut rng, n);
            assert!(!(s.contains(&u, eps()).unwrap() && perp.contains(&u, eps()).unwrap()));
            for b in s.basis() {
                assert!(!perp.contains(b, eps()).unwrap());
            }
        }
    }

    #[test]
    fn modular_law_on_common_orthogonal_family() {
        // Subspaces spanned by subsets of one orthonormal family.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(2..=5);
            let family = random_subspace(&mut rng, n, n);
            let pick = |rng: &mut ChaCha8Rng| -> Subspace {
                let chosen: Vec<CVector> = family.basis().iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
                Subspace::span(n, &chosen, eps()).unwrap()
            };
            let s = pick(&mut rng);
            let t = pick(&mut rng);
            let meet = s.intersect(&t, eps()).unwrap();
            let join = s.join(&t, eps()).unwrap();
            assert_eq!(meet.dim() + join.dim(), s.dim() + t.dim());
            assert!(meet.is_subset_of(&s, eps()).unwrap());
            assert!(meet.is_subset_of(&t, eps()).unwrap());
        }
    }

    #[test]
    fn canonical_basis_does_not_depend_on_stored_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = random_subspace(&mut rng, 4, 2);
        let mixed = Subspace::span(4, &[&s.basis()[0] + &s.basis()[1], &s.basis()[0] - &s.basis()[1]], eps()).unwrap();
        let a = s.canonical();
        let b = mixed.canonical();
        for (x, y) in a.basis().iter().zip(b.basis()) {
            assert!(x.max_abs_diff(y) < 1e-12);
        }
    }

    #[test]
    fn vector_sum_is_not_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            let psi = random_unit_vector(&mut rng, n);
            let doubled = &psi + &psi;
            assert!((doubled.norm() - 2.0 * psi.norm()).abs() < 1e-12);
            assert!(doubled.max_abs_diff(&psi) > 0.1);
        }
    }

    #[test]
    fn transformed_preserves_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = crate::sampling::random_unitary(&mut rng, 3);
        let s = random_subspace(&mut rng, 3, 2);
        let t = s.transformed(&u, eps()).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.is_orthonormal(eps()));
    }
}
