//! Mode-space unitaries: construction, sampling, and the two-mode building
//! blocks used by meshes and measurement stages.
//!
//! # Convention
//!
//! A [`ModeUnitary`] `U` is the transfer matrix on *creation operators*: the
//! evolved operator of mode `j` is `a'†_j = Σ_k U[j][k] a†_k`. All other
//! modules (Fock evolution, measurement circuits, coherency transport) are
//! phrased in this one convention. Mode indices are 0-based in the API and
//! 1-based in every file format and report.

use ndarray::Array2;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::{c, s, Real, C};

/// An `m x m` unitary acting on the mode creation operators.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeUnitary<S: Real> {
    mat: CMatrix<S>,
}

impl<S: Real> ModeUnitary<S> {
    /// Validate and wrap a matrix. Rejects non-square, empty, or non-unitary
    /// (beyond the per-type tolerance) inputs.
    pub fn new(mat: CMatrix<S>) -> Result<Self> {
        Self::with_tolerance(mat, S::unitarity_tol())
    }

    pub fn with_tolerance(mat: CMatrix<S>, tol: S) -> Result<Self> {
        let (rows, cols) = mat.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let deviation = linalg::unitarity_deviation(&mat);
        if deviation > tol {
            return Err(Error::NotUnitary {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { mat })
    }

    /// Wrap a matrix known to be unitary by construction.
    pub(crate) fn new_unchecked(mat: CMatrix<S>) -> Self {
        debug_assert!(linalg::unitarity_deviation(&mat) <= s::<S>(1e-8));
        Self { mat }
    }

    pub fn identity(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self {
            mat: linalg::identity(m),
        })
    }

    /// Haar-distributed random unitary: complex Ginibre matrix followed by
    /// QR with a phase-normalised `R` diagonal. Deterministic given `seed`.
    pub fn haar_random(m: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let ginibre: CMatrix<S> = Array2::from_shape_fn((m, m), |_| {
            let re: f64 = standard_normal(&mut rng);
            let im: f64 = standard_normal(&mut rng);
            c::<S>(re, im)
        });
        let (q, rdiag) = linalg::gram_schmidt_qr(&ginibre)?;
        // Gram-Schmidt leaves the R diagonal real and positive, so the
        // normalisation Λ = diag(r/|r|) is the identity; applying it keeps
        // the construction literal.
        let mut u = q;
        for k in 0..m {
            let lambda = Complex::new(rdiag[k] / rdiag[k].abs(), S::zero());
            for r in 0..m {
                u[[r, k]] = u[[r, k]] * lambda;
            }
        }
        Ok(Self { mat: u })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.mat
    }

    pub fn get(&self, j: usize, k: usize) -> C<S> {
        self.mat[[j, k]]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: linalg::adjoint(&self.mat),
        }
    }

    /// Matrix product `self · rhs` (apply `rhs` first, then `self`).
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::ShapeMismatch {
                context: "unitary product",
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        Ok(Self {
            mat: self.mat.dot(&rhs.mat),
        })
    }

    pub fn unitarity_deviation(&self) -> S {
        linalg::unitarity_deviation(&self.mat)
    }

    /// Embed a 2x2 unitary `core` on modes `j < k` of an `m`-mode identity.
    pub fn two_mode_embed(m: usize, j: usize, k: usize, core: &CMatrix<S>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if j >= k || k >= m {
            return Err(Error::InvalidMode { j, k, dim: m });
        }
        if core.dim() != (2, 2) {
            return Err(Error::ShapeMismatch {
                context: "two-mode core",
                expected: 2,
                found: core.nrows(),
            });
        }
        let deviation = linalg::unitarity_deviation(core);
        if deviation > S::unitarity_tol() {
            return Err(Error::NotUnitary {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tol: S::unitarity_tol().to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut mat = linalg::identity::<S>(m);
        mat[[j, j]] = core[[0, 0]];
        mat[[j, k]] = core[[0, 1]];
        mat[[k, j]] = core[[1, 0]];
        mat[[k, k]] = core[[1, 1]];
        Ok(Self { mat })
    }

    /// Exact swap of modes `j` and `k`.
    pub fn swap(m: usize, j: usize, k: usize) -> Result<Self> {
        let mut core: CMatrix<S> = Array2::zeros((2, 2));
        core[[0, 1]] = C::one();
        core[[1, 0]] = C::one();
        Self::two_mode_embed(m, j, k, &core)
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller keeps the draw count per sample fixed, which pins the
    // stream layout for reproducibility across versions of rand_distr.
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        if u > f64::MIN_POSITIVE {
            return (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos();
        }
    }
}

/// Which two-mode interference core a measurement setting uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MeasurementKind {
    X,
    Y,
}

/// The exact two-mode measurement cores
/// `T_x = (1/√2)[[1,1],[1,-1]]` and `T_y = (1/√2)[[i,1],[i,-1]]`.
pub fn measurement_core<S: Real>(kind: MeasurementKind) -> CMatrix<S> {
    let inv_sqrt2 = s::<S>(std::f64::consts::FRAC_1_SQRT_2);
    let mut m: CMatrix<S> = Array2::zeros((2, 2));
    match kind {
        MeasurementKind::X => {
            m[[0, 0]] = Complex::new(inv_sqrt2, S::zero());
            m[[0, 1]] = Complex::new(inv_sqrt2, S::zero());
            m[[1, 0]] = Complex::new(inv_sqrt2, S::zero());
            m[[1, 1]] = Complex::new(-inv_sqrt2, S::zero());
        }
        MeasurementKind::Y => {
            m[[0, 0]] = Complex::new(S::zero(), inv_sqrt2);
            m[[0, 1]] = Complex::new(inv_sqrt2, S::zero());
            m[[1, 0]] = Complex::new(S::zero(), inv_sqrt2);
            m[[1, 1]] = Complex::new(-inv_sqrt2, S::zero());
        }
    }
    m
}

/// Symmetric directional coupler with reflectivity `r`:
/// `[[√r, i√(1-r)], [i√(1-r), √r]]`.
pub fn directional_coupler<S: Real>(r: S) -> Result<CMatrix<S>> {
    if r <= S::zero() || r >= S::one() {
        return Err(Error::InvalidConfig(format!(
            "coupler reflectivity must lie in (0,1), got {r}"
        )));
    }
    let t = (S::one() - r).sqrt();
    let r = r.sqrt();
    let mut m: CMatrix<S> = Array2::zeros((2, 2));
    m[[0, 0]] = Complex::new(r, S::zero());
    m[[0, 1]] = Complex::new(S::zero(), t);
    m[[1, 0]] = Complex::new(S::zero(), t);
    m[[1, 1]] = Complex::new(r, S::zero());
    Ok(m)
}

/// Mach-Zehnder cell: coupler · phase(θ) · coupler · phase(φ), with the
/// internal phase θ on the upper arm and the external phase φ on the upper
/// input. With ideal 50:50 couplers this evaluates to
/// `i·e^{iθ/2} [[e^{iφ}·sin(θ/2), cos(θ/2)], [e^{iφ}·cos(θ/2), -sin(θ/2)]]`,
/// so θ = π/2 is a balanced splitter, θ = 0 a cross, and θ = π a bar.
pub fn mzi_cell<S: Real>(theta: S, phi: S) -> CMatrix<S> {
    mzi_cell_with_coupler(s::<S>(0.5), theta, phi).expect("0.5 is a valid reflectivity")
}

/// Mach-Zehnder cell built from two couplers of reflectivity `r`.
pub fn mzi_cell_with_coupler<S: Real>(r: S, theta: S, phi: S) -> Result<CMatrix<S>> {
    let dc = directional_coupler(r)?;
    let phase = |angle: S| -> CMatrix<S> {
        let mut p: CMatrix<S> = Array2::zeros((2, 2));
        p[[0, 0]] = Complex::from_polar(S::one(), angle);
        p[[1, 1]] = C::one();
        p
    };
    Ok(dc.dot(&phase(theta)).dot(&dc).dot(&phase(phi)))
}
