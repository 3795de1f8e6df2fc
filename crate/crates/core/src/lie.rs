//! The Lie observable basis, its expectation values, the scalar invariant
//! `I(ρ)`, the coherency matrix, and the spectral quantities of the
//! projected operator `ρ_T`.
//!
//! The `m²` observables are `O_j^z = n_j`,
//! `O_jk^x = (a†_j a_k + a†_k a_j)/√2`, and
//! `O_jk^y = i(a†_j a_k - a†_k a_j)/√2` for `j < k`. Two measurement routes
//! are implemented: the interferometric one (balanced-splitter cores plus
//! photon-number differences, mirroring the physical circuits) and a direct
//! ladder-operator evaluation used as its oracle.

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{ladder_expectation, PureState};
use crate::linalg::{self, CMatrix};
use crate::unitary::{measurement_core, MeasurementKind, ModeUnitary};
use crate::{s, Real, C};

/// Which observable of the `m²`-element basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ObservableKind {
    Z,
    X,
    Y,
}

/// Index into the Lie observable basis. `k == j` for `Z`, `j < k` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieObservableIndex {
    pub kind: ObservableKind,
    pub j: usize,
    pub k: usize,
}

/// The deterministic basis ordering: all `Z` by mode, then `X` by `(j,k)`
/// lexicographic, then `Y` likewise. Exactly `m²` entries.
pub fn lie_basis(m: usize) -> Vec<LieObservableIndex> {
    let mut out = Vec::with_capacity(m * m);
    for j in 0..m {
        out.push(LieObservableIndex {
            kind: ObservableKind::Z,
            j,
            k: j,
        });
    }
    for kind in [ObservableKind::X, ObservableKind::Y] {
        for j in 0..m {
            for k in (j + 1)..m {
                out.push(LieObservableIndex { kind, j, k });
            }
        }
    }
    out
}

/// The `m²` measured expectation values `⟨O_i⟩`, in [`lie_basis`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationRecord<S: Real> {
    m: usize,
    values: Vec<S>,
}

impl<S: Real> ExpectationRecord<S> {
    pub fn new(m: usize, values: Vec<S>) -> Result<Self> {
        if values.len() != m * m {
            return Err(Error::ShapeMismatch {
                context: "expectation record",
                expected: m * m,
                found: values.len(),
            });
        }
        Ok(Self { m, values })
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    fn xy_offset(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < k && k < self.m);
        // Position of (j,k) in the lexicographic pair listing.
        let mut pos = 0;
        for a in 0..j {
            pos += self.m - 1 - a;
        }
        pos + (k - j - 1)
    }

    /// `N_j = ⟨O_j^z⟩`.
    pub fn z(&self, j: usize) -> S {
        self.values[j]
    }

    pub fn x(&self, j: usize, k: usize) -> S {
        self.values[self.m + self.xy_offset(j, k)]
    }

    pub fn y(&self, j: usize, k: usize) -> S {
        let pairs = self.m * (self.m - 1) / 2;
        self.values[self.m + pairs + self.xy_offset(j, k)]
    }

    /// `R_jk = (⟨O^x_jk⟩ + i⟨O^y_jk⟩)/√2 = ⟨a†_k a_j⟩`.
    pub fn r(&self, j: usize, k: usize) -> C<S> {
        let inv_sqrt2 = s::<S>(std::f64::consts::FRAC_1_SQRT_2);
        Complex::new(self.x(j, k) * inv_sqrt2, self.y(j, k) * inv_sqrt2)
    }

    /// `Σ_j N_j`, the mean total photon number.
    pub fn total_photons(&self) -> S {
        (0..self.m).map(|j| self.z(j)).sum()
    }
}

/// `I = Σ_i ⟨O_i⟩²`, the purity of the projection on the observable basis.
pub fn invariant_i<S: Real>(record: &ExpectationRecord<S>) -> S {
    record.values.iter().map(|&v| v * v).sum()
}

/// Bounds `(N̄²/m, N̄²)` on the invariant at fixed mean photon number.
pub fn invariant_bounds<S: Real>(m: usize, total_photons: S) -> (S, S) {
    let sq = total_photons * total_photons;
    (sq / s::<S>(m as f64), sq)
}

/// Evaluate every `⟨O_i⟩` through the measurement circuits: `Z` from the
/// output photon numbers, `X`/`Y` from the photon-number difference after
/// interfering modes `(j,k)` on the corresponding two-mode core.
pub fn measure_expectations_circuit<S: Real>(state: &PureState<S>) -> Result<ExpectationRecord<S>> {
    let m = state.basis().modes();
    let inv_sqrt2 = s::<S>(std::f64::consts::FRAC_1_SQRT_2);
    let mut values = Vec::with_capacity(m * m);
    values.extend(state.mean_photon_numbers());
    for kind in [MeasurementKind::X, MeasurementKind::Y] {
        let core = measurement_core::<S>(kind);
        for j in 0..m {
            for k in (j + 1)..m {
                let stage = ModeUnitary::two_mode_embed(m, j, k, &core)?;
                let rotated = crate::fock::evolve_state(&stage, state)?;
                let means = rotated.mean_photon_numbers();
                values.push((means[j] - means[k]) * inv_sqrt2);
            }
        }
    }
    ExpectationRecord::new(m, values)
}

/// Evaluate every `⟨O_i⟩` directly from ladder monomials. Serves as the
/// independent oracle for [`measure_expectations_circuit`].
pub fn measure_expectations_direct<S: Real>(state: &PureState<S>) -> Result<ExpectationRecord<S>> {
    let m = state.basis().modes();
    let sqrt2 = s::<S>(std::f64::consts::SQRT_2);
    let mut values = Vec::with_capacity(m * m);
    for j in 0..m {
        values.push(ladder_expectation(state, &[j], &[j])?.re);
    }
    let mut hopping = Vec::with_capacity(m * (m - 1) / 2);
    for j in 0..m {
        for k in (j + 1)..m {
            hopping.push(ladder_expectation(state, &[j], &[k])?);
        }
    }
    for z in &hopping {
        values.push(sqrt2 * z.re);
    }
    for z in &hopping {
        values.push(-sqrt2 * z.im);
    }
    ExpectationRecord::new(m, values)
}

/// The quantum optical coherency matrix `Γ_jk = ⟨a†_j a_k⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherencyMatrix<S: Real> {
    mat: CMatrix<S>,
}

impl<S: Real> CoherencyMatrix<S> {
    pub fn new(mat: CMatrix<S>) -> Result<Self> {
        let (rows, cols) = mat.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let deviation = linalg::hermiticity_deviation(&mat);
        if deviation > S::hermiticity_tol() {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tol: S::hermiticity_tol().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.mat
    }

    pub fn modes(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> S {
        (0..self.modes()).map(|j| self.mat[[j, j]].re).sum()
    }

    /// `Tr[Γ†Γ] = Σ |Γ_jk|²`, the squared Frobenius norm.
    pub fn frobenius_sqr(&self) -> S {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Smallest eigenvalue; a well-formed coherency matrix has it ≥ -tol.
    pub fn min_eigenvalue(&self) -> Result<S> {
        Ok(linalg::eigvalsh(&self.mat)?[0])
    }
}

/// Assemble the coherency matrix from measured expectations:
/// `Γ_jj = ⟨O_j^z⟩`, `Γ_jk = (⟨O^x_jk⟩ - i⟨O^y_jk⟩)/√2` for `j < k`,
/// Hermitian completion below the diagonal.
pub fn coherency_from_expectations<S: Real>(record: &ExpectationRecord<S>) -> CoherencyMatrix<S> {
    let m = record.modes();
    let inv_sqrt2 = s::<S>(std::f64::consts::FRAC_1_SQRT_2);
    let mut mat: CMatrix<S> = Array2::zeros((m, m));
    for j in 0..m {
        mat[[j, j]] = Complex::new(record.z(j), S::zero());
    }
    for j in 0..m {
        for k in (j + 1)..m {
            let entry = Complex::new(record.x(j, k) * inv_sqrt2, -record.y(j, k) * inv_sqrt2);
            mat[[j, k]] = entry;
            mat[[k, j]] = entry.conj();
        }
    }
    CoherencyMatrix { mat }
}

/// Coherency matrix straight from a state via ladder expectations.
pub fn coherency_of_state<S: Real>(state: &PureState<S>) -> Result<CoherencyMatrix<S>> {
    let m = state.basis().modes();
    let mut mat: CMatrix<S> = Array2::zeros((m, m));
    for j in 0..m {
        for k in j..m {
            let entry = ladder_expectation(state, &[j], &[k])?;
            mat[[j, k]] = entry;
            mat[[k, j]] = entry.conj();
        }
    }
    Ok(CoherencyMatrix { mat })
}

/// Closed-form spectrum of the `n`-photon block of `ρ_T` for two modes:
/// `λ_n^j = (n/2)(N₁+N₂) + j·√((N₁-N₂)² + 4|R₁₂|²)` with `j` ranging over
/// `{-n/2, …, n/2}` in unit steps. Sorted ascending.
pub fn rho_t_spectrum_two_modes<S: Real>(n1: S, n2: S, r12: C<S>, n: u32) -> Vec<S> {
    let q = ((n1 - n2) * (n1 - n2) + s::<S>(4.0) * r12.norm_sqr()).sqrt();
    let center = s::<S>(n as f64 / 2.0) * (n1 + n2);
    let half = s::<S>(n as f64 / 2.0);
    (0..=n)
        .map(|i| center + (s::<S>(i as f64) - half) * q)
        .collect()
}

/// `Q = √((N₁-N₂)² + 4|R₁₂|²)`, the non-trivial two-mode spectral invariant.
pub fn quantity_q<S: Real>(record: &ExpectationRecord<S>) -> Result<S> {
    if record.modes() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            found: record.modes(),
        });
    }
    let n1 = record.z(0);
    let n2 = record.z(1);
    let r12 = record.r(0, 1);
    Ok(((n1 - n2) * (n1 - n2) + s::<S>(4.0) * r12.norm_sqr()).sqrt())
}

/// Eigenvalues of the coherency matrix, ascending. These are the `n = 1`
/// block eigenvalues of `ρ_T` (the matrix `M` of that block is the complex
/// conjugate of `Γ^(1)` and shares its spectrum) and the principal-mode
/// populations.
pub fn block1_eigenvalues<S: Real>(gamma: &CoherencyMatrix<S>) -> Result<Vec<S>> {
    let deviation = linalg::hermiticity_deviation(gamma.matrix());
    if deviation > S::hermiticity_tol() {
        return Err(Error::NotHermitian {
            deviation: deviation.to_f64().unwrap_or(f64::NAN),
            tol: S::hermiticity_tol().to_f64().unwrap_or(f64::NAN),
        });
    }
    linalg::eigvalsh(gamma.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{evolve, FockBasis, OccupationVector};
    use std::sync::Arc;

    fn fock_state(occ: &[u32]) -> PureState<f64> {
        let occ = OccupationVector::new(occ.to_vec()).unwrap();
        let basis = FockBasis::enumerate(occ.modes(), occ.total()).unwrap();
        PureState::fock(basis, &occ).unwrap()
    }

    #[test]
    fn basis_counts() {
        assert_eq!(lie_basis(2).len(), 4);
        assert_eq!(lie_basis(3).len(), 9);
        let b4 = lie_basis(4);
        assert_eq!(b4.len(), 16);
        assert_eq!(
            b4.iter().filter(|o| o.kind == ObservableKind::X).count(),
            6
        );
        // m=2 ordering: Z1, Z2, X12, Y12.
        let b2 = lie_basis(2);
        assert_eq!(b2[0].kind, ObservableKind::Z);
        assert_eq!(b2[2].kind, ObservableKind::X);
        assert_eq!((b2[3].j, b2[3].k), (0, 1));
    }

    #[test]
    fn fock_states_have_no_coherences() {
        for occ in [&[1u32, 1, 1][..], &[1, 1, 0], &[1, 0][..]] {
            let state = fock_state(occ);
            let record = measure_expectations_circuit(&state).unwrap();
            let m = occ.len();
            for j in 0..m {
                assert!((record.z(j) - occ[j] as f64).abs() < 1e-12);
                for k in (j + 1)..m {
                    assert!(record.x(j, k).abs() < 1e-12);
                    assert!(record.y(j, k).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn single_photon_record() {
        let record = measure_expectations_direct(&fock_state(&[1, 0])).unwrap();
        assert_eq!(record.values(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn plus_superposition_expectations() {
        let basis = FockBasis::enumerate(2, 1).unwrap();
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        let state = PureState::new(
            Arc::clone(&basis),
            vec![Complex::new(amp, 0.0), Complex::new(amp, 0.0)],
        )
        .unwrap();
        let record = measure_expectations_circuit(&state).unwrap();
        assert!((record.x(0, 1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(record.y(0, 1).abs() < 1e-12);
        assert!((record.z(0) - 0.5).abs() < 1e-12);
        assert!((record.z(1) - 0.5).abs() < 1e-12);

        let gamma = coherency_from_expectations(&record);
        for entry in gamma.matrix().iter() {
            assert!((entry - Complex::new(0.5, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn circuit_and_direct_routes_agree() {
        for seed in 0..20 {
            let m = 2 + (seed as usize % 3);
            let n = 1 + (seed as u32 % 3);
            let mut occ = vec![0u32; m];
            let mut left = n;
            let mut j = 0;
            while left > 0 {
                occ[j % m] += 1;
                left -= 1;
                j += 1;
            }
            let u = ModeUnitary::<f64>::haar_random(m, 300 + seed).unwrap();
            let state = evolve(&u, &OccupationVector::new(occ).unwrap()).unwrap();
            let circuit = measure_expectations_circuit(&state).unwrap();
            let direct = measure_expectations_direct(&state).unwrap();
            for (a, b) in circuit.values().iter().zip(direct.values()) {
                assert!((a - b).abs() < 1e-9, "m={m} n={n} seed={seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn invariant_on_fock_inputs() {
        let record = measure_expectations_direct(&fock_state(&[1, 1, 1, 1])).unwrap();
        assert!((invariant_i(&record) - 4.0).abs() < 1e-12);
        let record = measure_expectations_direct(&fock_state(&[0, 3, 0])).unwrap();
        assert!((invariant_i(&record) - 9.0).abs() < 1e-12);
        let record = measure_expectations_direct(&fock_state(&[1, 0, 2])).unwrap();
        assert!((invariant_i(&record) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn frobenius_identity() {
        for seed in 0..10 {
            let u = ModeUnitary::<f64>::haar_random(3, 400 + seed).unwrap();
            let state = evolve(&u, &OccupationVector::new(vec![1, 0, 2]).unwrap()).unwrap();
            let record = measure_expectations_circuit(&state).unwrap();
            let gamma = coherency_from_expectations(&record);
            assert!((gamma.frobenius_sqr() - invariant_i(&record)).abs() < 1e-9);
        }
    }

    #[test]
    fn coherency_transport_is_conjugation() {
        // Γ[Uψ] = U Γ[ψ] U†
        let u = ModeUnitary::<f64>::haar_random(3, 77).unwrap();
        let state = evolve(
            &ModeUnitary::<f64>::haar_random(3, 78).unwrap(),
            &OccupationVector::new(vec![1, 1, 0]).unwrap(),
        )
        .unwrap();
        let before = coherency_of_state(&state).unwrap();
        let after = coherency_of_state(&crate::fock::evolve_state(&u, &state).unwrap()).unwrap();
        let expected = u
            .matrix()
            .dot(before.matrix())
            .dot(&crate::linalg::adjoint(u.matrix()));
        assert!(crate::linalg::max_abs_diff(after.matrix(), &expected) < 1e-9);
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(invariant_bounds::<f64>(2, 2.0), (2.0, 4.0));
        assert_eq!(invariant_bounds::<f64>(4, 4.0), (4.0, 16.0));
        assert_eq!(invariant_bounds::<f64>(5, 0.0), (0.0, 0.0));
    }

    #[test]
    fn two_mode_spectrum_examples() {
        let zero = Complex::new(0.0, 0.0);
        let flat = rho_t_spectrum_two_modes(1.0, 1.0, zero, 2);
        assert_eq!(flat, vec![2.0, 2.0, 2.0]);
        let spread = rho_t_spectrum_two_modes(2.0, 0.0, zero, 2);
        assert_eq!(spread, vec![0.0, 2.0, 4.0]);
        let empty = rho_t_spectrum_two_modes(1.5, 0.5, zero, 0);
        assert_eq!(empty, vec![0.0]);
    }

    #[test]
    fn quantity_q_examples() {
        for (occ, expected) in [(&[1u32, 1][..], 0.0), (&[2, 0][..], 2.0)] {
            for seed in 0..10 {
                let u = ModeUnitary::<f64>::haar_random(2, 500 + seed).unwrap();
                let state = evolve(&u, &OccupationVector::new(occ.to_vec()).unwrap()).unwrap();
                let record = measure_expectations_circuit(&state).unwrap();
                let q = quantity_q(&record).unwrap();
                assert!((q - expected).abs() < 1e-9, "Q = {q} for {occ:?}");
                // Q² = 2I - (N₁+N₂)²
                let total = record.total_photons();
                let identity = 2.0 * invariant_i(&record) - total * total;
                assert!((q * q - identity).abs() < 1e-9);
            }
        }
        let record3 = measure_expectations_direct(&fock_state(&[1, 1, 1])).unwrap();
        assert!(matches!(quantity_q(&record3), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn block1_eigenvalue_examples() {
        for (occ, expected) in [
            (&[1u32, 1, 0][..], vec![0.0, 1.0, 1.0]),
            (&[1, 0, 2][..], vec![0.0, 1.0, 2.0]),
        ] {
            for seed in 0..5 {
                let u = ModeUnitary::<f64>::haar_random(3, 600 + seed).unwrap();
                let state = evolve(&u, &OccupationVector::new(occ.to_vec()).unwrap()).unwrap();
                let gamma = coherency_of_state(&state).unwrap();
                let eigs = block1_eigenvalues(&gamma).unwrap();
                for (e, x) in eigs.iter().zip(&expected) {
                    assert!((e - x).abs() < 1e-9, "{occ:?}: {eigs:?}");
                }
            }
        }
        // Diagonal Γ = diag(3,0,0) has spectrum {0,0,3}.
        let mut mat: CMatrix<f64> = Array2::zeros((3, 3));
        mat[[0, 0]] = Complex::new(3.0, 0.0);
        let eigs = block1_eigenvalues(&CoherencyMatrix::new(mat).unwrap()).unwrap();
        assert_eq!(eigs, vec![0.0, 0.0, 3.0]);
    }
}
