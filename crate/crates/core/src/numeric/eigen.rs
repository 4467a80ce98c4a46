use std::cmp::Ordering;

use super::{check_dim, CMatrix, CVector, NumericError, Result, Tolerance, C64};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

const POLISH_SWEEPS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: CVector,
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back ascending. Within a run of eigenvalues closer than
/// `eps`, eigenvectors are ordered by their components (real part, then
/// imaginary part, larger first). Every eigenvector has its first component
/// above `eps` rotated to the positive real axis.
pub fn hermitian_eig(m: &CMatrix, eps: Tolerance) -> Result<Vec<EigenPair>> {
    let n = m.dim();
    check_dim(n)?;
    let deviation = m.hermitian_deviation();
    if deviation.is_nan() || deviation >= eps.eps() {
        return Err(NumericError::NotHermitian { deviation });
    }

    // Work on the exactly Hermitian part so rounding in the input cannot
    // leave an imaginary diagonal behind.
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = CMatrix::identity(n);

    let scale = a.frobenius_sqr().max(1.0);
    let target = eps.eps() * eps.eps() * scale;
    let mut converged = off_diagonal_mass(&a) < target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(NumericError::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_mass(&a) < target;
    }
    // Eigenvector error scales with the remaining off-diagonal mass, so a
    // few more sweeps take it from eps down to rounding level.
    let floor = (f64::EPSILON * f64::EPSILON) * scale;
    for _ in 0..POLISH_SWEEPS {
        if off_diagonal_mass(&a) <= floor {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<EigenPair> =
        (0..n).map(|k| EigenPair { value: a[(k, k)].re, vector: v.column(k).fix_phase(eps.eps()) }).collect();
    sort_pairs(&mut pairs, eps);
    Ok(pairs)
}

fn off_diagonal_mass(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Annihilates `a[p][q]` with the unitary `J = D R`, where `D` strips the
/// phase of `a[p][q]` and `R` is the real Jacobi rotation, then updates
/// `a ← J† a J` and `v ← v J`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.dim();
    // a ← a J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // a ← J† a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // v ← v J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

fn sort_pairs(pairs: &mut [EigenPair], eps: Tolerance) {
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].value - pairs[end - 1].value < eps.eps() {
            end += 1;
        }
        pairs[start..end].sort_by(|x, y| compare_components(&x.vector, &y.vector));
        start = end;
    }
}

fn compare_components(x: &CVector, y: &CVector) -> Ordering {
    for (a, b) in x.components().iter().zip(y.components()) {
        let ord = b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}
