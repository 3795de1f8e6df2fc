//! Rectangular mesh decomposition of mode unitaries into Mach-Zehnder cells.
//!
//! The cell convention is the one fixed by [`crate::unitary::mzi_cell`]:
//! internal phase θ (θ = π/2 is a balanced splitter), external phase φ on
//! the upper input, and a final column of per-mode output phases. The
//! contract is the compose/decompose round trip; the phase parametrisation
//! itself is an internal convention.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::unitary::{mzi_cell, ModeUnitary};
use crate::{s, Real, C};

/// One two-mode cell acting on the adjacent pair `(mode, mode + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshCell<S: Real> {
    /// Column of the rectangular arrangement the cell falls in.
    pub layer: usize,
    /// Lower mode of the adjacent pair, 0-based.
    pub mode: usize,
    /// Internal phase in radians.
    pub theta: S,
    /// External phase in radians.
    pub phi: S,
}

/// A full mesh: cells listed in application order (first cell acts first on
/// the input modes) plus output phases.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshSettings<S: Real> {
    pub dim: usize,
    pub cells: Vec<MeshCell<S>>,
    pub output_phases: Vec<S>,
}

impl<S: Real> MeshSettings<S> {
    /// Multiply the mesh out into a [`ModeUnitary`].
    pub fn compose(&self) -> Result<ModeUnitary<S>> {
        if self.dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if self.output_phases.len() != self.dim {
            return Err(Error::ShapeMismatch {
                context: "mesh output phases",
                expected: self.dim,
                found: self.output_phases.len(),
            });
        }
        let mut mat = crate::linalg::identity::<S>(self.dim);
        for cell in &self.cells {
            if cell.mode + 1 >= self.dim {
                return Err(Error::InvalidMode {
                    j: cell.mode,
                    k: cell.mode + 1,
                    dim: self.dim,
                });
            }
            apply_cell_left(&mut mat, cell.mode, cell.theta, cell.phi);
        }
        for (r, &alpha) in self.output_phases.iter().enumerate() {
            let phase = Complex::from_polar(S::one(), alpha);
            for col in 0..self.dim {
                mat[[r, col]] = mat[[r, col]] * phase;
            }
        }
        ModeUnitary::new(mat)
    }
}

/// Left-multiply `mat` by the cell embedded on rows `(q, q+1)`.
fn apply_cell_left<S: Real>(mat: &mut CMatrix<S>, q: usize, theta: S, phi: S) {
    let cell = mzi_cell(theta, phi);
    let n = mat.ncols();
    for col in 0..n {
        let top = mat[[q, col]];
        let bottom = mat[[q + 1, col]];
        mat[[q, col]] = cell[[0, 0]] * top + cell[[0, 1]] * bottom;
        mat[[q + 1, col]] = cell[[1, 0]] * top + cell[[1, 1]] * bottom;
    }
}

/// Right-multiply `mat` by the adjoint of the cell embedded on columns `(q, q+1)`.
fn apply_cell_adjoint_right<S: Real>(mat: &mut CMatrix<S>, q: usize, theta: S, phi: S) {
    let cell = mzi_cell(theta, phi);
    let n = mat.nrows();
    for row in 0..n {
        let left = mat[[row, q]];
        let right = mat[[row, q + 1]];
        mat[[row, q]] = left * cell[[0, 0]].conj() + right * cell[[0, 1]].conj();
        mat[[row, q + 1]] = left * cell[[1, 0]].conj() + right * cell[[1, 1]].conj();
    }
}

fn wrap_angle<S: Real>(angle: S) -> S {
    let tau = S::PI() + S::PI();
    let mut a = angle % tau;
    if a > S::PI() {
        a -= tau;
    }
    if a <= -S::PI() {
        a += tau;
    }
    a
}

/// Decompose a unitary into `m(m-1)/2` adjacent-pair cells and output phases.
///
/// Nulling sweeps alternate between column operations (from the right, on
/// even diagonals) and row operations (from the left, on odd diagonals);
/// the left factors are then commuted through the residual diagonal so the
/// result is a pure product `diag(e^{iα}) · Π cells`.
pub fn clements_decompose<S: Real>(u: &ModeUnitary<S>) -> Result<MeshSettings<S>> {
    let m = u.dim();
    let mut v = u.matrix().clone();
    // (q, theta, phi) in chronological order of application to v.
    let mut right: Vec<(usize, S, S)> = Vec::new();
    let mut left: Vec<(usize, S, S)> = Vec::new();
    let negligible = S::epsilon() * s::<S>(64.0);

    for i in 0..m.saturating_sub(1) {
        for j in 0..=i {
            if i % 2 == 0 {
                // Zero v[m-1-j, i-j] by mixing columns (q, q+1).
                let row = m - 1 - j;
                let q = i - j;
                let a = v[[row, q]];
                let b = v[[row, q + 1]];
                let (theta, phi) = if a.norm() <= negligible {
                    (S::PI(), S::zero())
                } else if b.norm() <= negligible {
                    (S::zero(), S::zero())
                } else {
                    let theta = s::<S>(2.0) * b.norm().atan2(a.norm());
                    let phi = a.arg() - (-b).arg();
                    (theta, wrap_angle(phi))
                };
                apply_cell_adjoint_right(&mut v, q, theta, phi);
                right.push((q, theta, phi));
            } else {
                // Zero v[m-1-i+j, j] by mixing rows (q, q+1); the target sits
                // in the lower row of the pair.
                let col = j;
                let q = m - 2 - i + j;
                let a = v[[q, col]];
                let b = v[[q + 1, col]];
                let (theta, phi) = if b.norm() <= negligible {
                    (S::PI(), S::zero())
                } else if a.norm() <= negligible {
                    (S::zero(), S::zero())
                } else {
                    let theta = s::<S>(2.0) * a.norm().atan2(b.norm());
                    let phi = b.arg() - a.arg();
                    (theta, wrap_angle(phi))
                };
                apply_cell_left(&mut v, q, theta, phi);
                left.push((q, theta, phi));
            }
        }
    }

    // v is now diagonal: U = L₁†···L_p† · diag · R_q···R₁.
    let mut phases: Vec<S> = (0..m).map(|r| v[[r, r]].arg()).collect();

    // Commute each left factor (innermost first) through the diagonal:
    // C(θ,φ)† · diag(e^{iα₁}, e^{iα₂}) = diag(e^{iβ₁}, e^{iβ₂}) · C(θ, α₁-α₂)
    // with β₁ = α₂ - φ - θ - π and β₂ = α₂ - θ - π.
    let mut commuted: Vec<(usize, S, S)> = Vec::with_capacity(left.len());
    for &(q, theta, phi) in left.iter().rev() {
        let a1 = phases[q];
        let a2 = phases[q + 1];
        let phi_new = wrap_angle(a1 - a2);
        phases[q] = wrap_angle(a2 - phi - theta - S::PI());
        phases[q + 1] = wrap_angle(a2 - theta - S::PI());
        commuted.push((q, theta, phi_new));
    }

    // Application order: the right factors first (chronological), then the
    // commuted left factors in the order they were produced.
    let ordered = right.into_iter().chain(commuted);
    let mut busy = vec![0usize; m];
    let mut cells = Vec::with_capacity(m * (m - 1) / 2);
    for (q, theta, phi) in ordered {
        let layer = busy[q].max(busy[q + 1]);
        busy[q] = layer + 1;
        busy[q + 1] = layer + 1;
        cells.push(MeshCell {
            layer,
            mode: q,
            theta,
            phi,
        });
    }
    debug_assert_eq!(cells.len(), m * (m - 1) / 2);

    Ok(MeshSettings {
        dim: m,
        cells,
        output_phases: phases.into_iter().map(wrap_angle).collect(),
    })
}
