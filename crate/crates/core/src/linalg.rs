//! Dense complex linear algebra at interferometer scale.
//!
//! Everything here is sized for matrices of side at most a few tens
//! (mode counts and tensor unfoldings), so the solvers favour robustness
//! and genericity over asymptotics: Hermitian eigenvalues come from a
//! cyclic complex Jacobi iteration and QR from modified Gram-Schmidt.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{s, Real, C};

pub type CMatrix<S> = Array2<Complex<S>>;
pub type CVector<S> = Array1<Complex<S>>;

pub fn identity<S: Real>(m: usize) -> CMatrix<S> {
    Array2::from_shape_fn((m, m), |(i, j)| if i == j { C::one() } else { C::zero() })
}

pub fn adjoint<S: Real>(a: &CMatrix<S>) -> CMatrix<S> {
    let mut out = a.t().to_owned();
    out.mapv_inplace(|z| z.conj());
    out
}

/// Max entrywise modulus of `A†A - 1`.
pub fn unitarity_deviation<S: Real>(a: &CMatrix<S>) -> S {
    let product = adjoint(a).dot(a);
    let m = a.nrows();
    let mut worst = S::zero();
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { C::one() } else { C::zero() };
            let dev = (product[[i, j]] - target).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// Max entrywise modulus of `A - A†`.
pub fn hermiticity_deviation<S: Real>(a: &CMatrix<S>) -> S {
    let m = a.nrows();
    let mut worst = S::zero();
    for i in 0..m {
        for j in 0..m {
            let dev = (a[[i, j]] - a[[j, i]].conj()).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

pub fn max_abs_diff<S: Real>(a: &CMatrix<S>, b: &CMatrix<S>) -> S {
    let mut worst = S::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        let dev = (*x - *y).norm();
        if dev > worst {
            worst = dev;
        }
    }
    worst
}

pub fn frobenius_norm<S: Real>(a: &CMatrix<S>) -> S {
    a.iter().map(|z| z.norm_sqr()).fold(S::zero(), |acc, x| acc + x).sqrt()
}

/// Kronecker product `a ⊗ b`.
pub fn kron<S: Real>(a: &CMatrix<S>, b: &CMatrix<S>) -> CMatrix<S> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            for p in 0..br {
                for q in 0..bc {
                    out[[i * br + p, j * bc + q]] = a[[i, j]] * b[[p, q]];
                }
            }
        }
    }
    out
}

/// QR factorisation by twice-iterated modified Gram-Schmidt.
///
/// Returns `Q` with orthonormal columns and the diagonal of `R`, which is
/// real and strictly positive by construction. Fails if the input columns
/// are numerically dependent.
pub fn gram_schmidt_qr<S: Real>(a: &CMatrix<S>) -> Result<(CMatrix<S>, Vec<S>)> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    let mut q: CMatrix<S> = a.clone();
    let mut rdiag = vec![S::zero(); n];
    for k in 0..n {
        // Second orthogonalisation pass controls cancellation.
        for _ in 0..2 {
            for j in 0..k {
                let mut overlap = C::zero();
                for r in 0..n {
                    overlap = overlap + q[[r, j]].conj() * q[[r, k]];
                }
                for r in 0..n {
                    let correction = q[[r, j]] * overlap;
                    q[[r, k]] = q[[r, k]] - correction;
                }
            }
        }
        let norm_sqr: S = (0..n).map(|r| q[[r, k]].norm_sqr()).sum();
        let norm = norm_sqr.sqrt();
        if norm < s::<S>(1e-300) || !norm.is_finite() {
            return Err(Error::parse("gram_schmidt_qr", "columns are numerically dependent"));
        }
        for r in 0..n {
            q[[r, k]] = q[[r, k]] / Complex::new(norm, S::zero());
        }
        rdiag[k] = norm;
    }
    Ok((q, rdiag))
}

/// Eigen-decomposition of a Hermitian matrix.
pub struct Eigh<S: Real> {
    /// Eigenvalues in ascending order.
    pub values: Vec<S>,
    /// Unit eigenvectors, column `i` pairing with `values[i]`.
    pub vectors: CMatrix<S>,
}

/// Hermitian eigen-decomposition by cyclic complex Jacobi rotations.
///
/// The input is symmetrised as `(A + A†)/2` before iterating, so callers are
/// responsible for rejecting matrices that are meaningfully non-Hermitian.
pub fn eigh<S: Real>(a: &CMatrix<S>) -> Result<Eigh<S>> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    let half = s::<S>(0.5);
    let mut m: CMatrix<S> = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = (a[[i, j]] + a[[j, i]].conj()) * Complex::new(half, S::zero());
        }
    }
    let mut vectors = identity::<S>(n);
    let scale = frobenius_norm(&m);
    if scale == S::zero() {
        return Ok(Eigh {
            values: vec![S::zero(); n],
            vectors,
        });
    }
    let tol = S::epsilon() * scale * s::<S>(n as f64);
    for _sweep in 0..100 {
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m[[p, q]];
                let babs = b.norm();
                if babs <= S::epsilon() * scale {
                    continue;
                }
                let phase = b / Complex::new(babs, S::zero());
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                // Rotation angle t zeroing the (p,q) entry of J† M J with
                // J = [[c, -s·e^{iβ}], [s·e^{-iβ}, c]], tan solving
                // t² - 2dt - 1 = 0 for d = (aqq - app)/(2|b|).
                let d = (aqq - app) / (s::<S>(2.0) * babs);
                let t = if d >= S::zero() {
                    -S::one() / (d + (S::one() + d * d).sqrt())
                } else {
                    S::one() / (-d + (S::one() + d * d).sqrt())
                };
                let cth = S::one() / (S::one() + t * t).sqrt();
                let sth = t * cth;
                let cc = Complex::new(cth, S::zero());
                let sp = phase * Complex::new(sth, S::zero()); // s·e^{iβ}
                let sm = sp.conj(); // s·e^{-iβ}

                // M ← J† M J applied as row then column updates.
                for r in 0..n {
                    let mp = m[[p, r]];
                    let mq = m[[q, r]];
                    m[[p, r]] = mp * cc + mq * sp;
                    m[[q, r]] = mq * cc - mp * sm;
                }
                for r in 0..n {
                    let mp = m[[r, p]];
                    let mq = m[[r, q]];
                    m[[r, p]] = mp * cc + mq * sm;
                    m[[r, q]] = mq * cc - mp * sp;
                }
                for r in 0..n {
                    let vp = vectors[[r, p]];
                    let vq = vectors[[r, q]];
                    vectors[[r, p]] = vp * cc + vq * sm;
                    vectors[[r, q]] = vq * cc - vp * sp;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<S> = (0..n).map(|i| m[[i, i]].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));
    let values: Vec<S> = order.iter().map(|&i| diag[i]).collect();
    let mut sorted_vectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vectors[[r, dst]] = vectors[[r, src]];
        }
    }
    Ok(Eigh {
        values,
        vectors: sorted_vectors,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<S: Real>(a: &CMatrix<S>) -> Result<Vec<S>> {
    eigh(a).map(|e| e.values)
}
