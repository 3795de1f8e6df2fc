//! Fixed-photon-number Fock bases, exact multi-photon evolution, ladder
//! monomials, and post-selected state preparation.
//!
//! Amplitudes are computed state-by-state through matrix permanents rather
//! than by materialising the full Fock-space unitary: with `U` the
//! creation-operator transfer matrix (see [`crate::unitary`]), the evolved
//! amplitude on outcome `t` for input `s` is
//! `per(conj(U)[t,s]) / √(Π_j s_j! · Π_i t_i!)`,
//! where `conj(U)[t,s]` repeats column `j` `s_j` times and row `i` `t_i`
//! times. The conjugation is what makes the measurement-circuit identities
//! for the `T_y` core and the coherency-matrix transport `Γ → U Γ U†` come
//! out right in this convention.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::permanent::permanent;
use crate::unitary::ModeUnitary;
use crate::{Real, C};

/// Exact factorials up to 20!, the largest that fits in a `u64`.
pub(crate) const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

/// The Fock label `|n₁…n_m⟩`: photon occupations per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(occupations: Vec<u32>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::EmptyOccupation);
        }
        Ok(Self(occupations))
    }

    /// Single photon in mode `j` of `m` modes.
    pub fn single(m: usize, j: usize) -> Result<Self> {
        if j >= m || m == 0 {
            return Err(Error::InvalidMode { j, k: j, dim: m });
        }
        let mut occ = vec![0u32; m];
        occ[j] = 1;
        Ok(Self(occ))
    }

    pub fn vacuum(m: usize) -> Result<Self> {
        Self::new(vec![0; m])
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, mode: usize) -> u32 {
        self.0[mode]
    }

    /// Π_j n_j!, exact.
    pub fn factorial_product(&self) -> u64 {
        self.0
            .iter()
            .map(|&n| FACTORIALS[n as usize])
            .product()
    }

    /// The modes of the individual photons, in mode order: `(1,0,2)` gives
    /// `[0, 2, 2]`.
    pub fn photon_modes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (j, &n) in self.0.iter().enumerate() {
            for _ in 0..n {
                out.push(j);
            }
        }
        out
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// The ordered basis of all `m`-mode occupations with a fixed total `n`.
///
/// States are listed in lexicographically descending occupation order and
/// the index map is the exact inverse of the listing. Bases are immutable
/// and shared behind `Arc`.
#[derive(Debug)]
pub struct FockBasis {
    m: usize,
    n: u32,
    states: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
    factorial_products: Vec<u64>,
}

impl FockBasis {
    pub fn enumerate(m: usize, n: u32) -> Result<Arc<Self>> {
        if m == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if n as usize >= FACTORIALS.len() {
            return Err(Error::InvalidConfig(format!(
                "photon number {n} exceeds the exact-factorial cap of {}",
                FACTORIALS.len() - 1
            )));
        }
        let mut states = Vec::new();
        let mut current = vec![0u32; m];
        fill_descending(&mut states, &mut current, 0, n);
        debug_assert_eq!(states.len(), binomial(m as u64 + n as u64 - 1, n as u64) as usize);
        let index: HashMap<OccupationVector, usize> = states
            .iter()
            .enumerate()
            .map(|(i, occ)| (occ.clone(), i))
            .collect();
        let factorial_products = states.iter().map(|occ| occ.factorial_product()).collect();
        Ok(Arc::new(Self {
            m,
            n,
            states,
            index,
            factorial_products,
        }))
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn photons(&self) -> u32 {
        self.n
    }

    /// Basis dimension `D = binom(m+n-1, n)`.
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &OccupationVector {
        &self.states[index]
    }

    pub fn index_of(&self, occ: &OccupationVector) -> Option<usize> {
        self.index.get(occ).copied()
    }

    fn factorial_product_at(&self, index: usize) -> u64 {
        self.factorial_products[index]
    }
}

fn fill_descending(out: &mut Vec<OccupationVector>, current: &mut Vec<u32>, mode: usize, left: u32) {
    let m = current.len();
    if mode == m - 1 {
        current[mode] = left;
        out.push(OccupationVector(current.clone()));
        return;
    }
    for take in (0..=left).rev() {
        current[mode] = take;
        fill_descending(out, current, mode + 1, left - take);
    }
    current[mode] = 0;
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// A pure state over a fixed-photon-number Fock basis.
#[derive(Debug, Clone)]
pub struct PureState<S: Real> {
    basis: Arc<FockBasis>,
    amplitudes: Vec<C<S>>,
}

impl<S: Real> PureState<S> {
    /// Wrap amplitudes, requiring normalisation within the per-type tolerance.
    pub fn new(basis: Arc<FockBasis>, amplitudes: Vec<C<S>>) -> Result<Self> {
        let state = Self::new_unnormalized(basis, amplitudes)?;
        let norm = state.norm_sqr();
        if (norm - S::one()).abs() > S::unitarity_tol() {
            return Err(Error::UnnormalizedState {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Wrap amplitudes without the normalisation check (post-selection
    /// intermediates and ladder-monomial images are legitimately
    /// unnormalised).
    pub fn new_unnormalized(basis: Arc<FockBasis>, amplitudes: Vec<C<S>>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::ShapeMismatch {
                context: "state amplitudes",
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { basis, amplitudes })
    }

    /// The Fock state `|occ⟩` as a basis vector.
    pub fn fock(basis: Arc<FockBasis>, occ: &OccupationVector) -> Result<Self> {
        let idx = basis.index_of(occ).ok_or(Error::ShapeMismatch {
            context: "fock occupation",
            expected: basis.photons() as usize,
            found: occ.total() as usize,
        })?;
        let mut amplitudes = vec![C::zero(); basis.dim()];
        amplitudes[idx] = Complex::new(S::one(), S::zero());
        Ok(Self { basis, amplitudes })
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[C<S>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, occ: &OccupationVector) -> Option<C<S>> {
        self.basis.index_of(occ).map(|i| self.amplitudes[i])
    }

    pub fn norm_sqr(&self) -> S {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == S::zero() {
            return Err(Error::ZeroProbability);
        }
        let inv = Complex::new(S::one() / norm, S::zero());
        Ok(Self {
            basis: Arc::clone(&self.basis),
            amplitudes: self.amplitudes.iter().map(|a| *a * inv).collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C<S> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    /// `|α_k|²` aligned with the basis ordering.
    pub fn probabilities(&self) -> Vec<S> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probabilities keyed by occupation, dropping exact zeros.
    pub fn probability_map(&self) -> std::collections::BTreeMap<OccupationVector, S> {
        self.basis
            .states()
            .iter()
            .zip(&self.amplitudes)
            .filter(|(_, a)| !a.is_zero())
            .map(|(occ, a)| (occ.clone(), a.norm_sqr()))
            .collect()
    }

    /// `⟨n_j⟩ = Σ_k |α_k|² n_j^(k)` for every mode.
    pub fn mean_photon_numbers(&self) -> Vec<S> {
        let m = self.basis.modes();
        let mut means = vec![S::zero(); m];
        for (occ, amp) in self.basis.states().iter().zip(&self.amplitudes) {
            let p = amp.norm_sqr();
            if p.is_zero() {
                continue;
            }
            for j in 0..m {
                means[j] += p * S::from_u32(occ.get(j)).expect("small integer");
            }
        }
        means
    }
}

/// Amplitude `⟨t|Û|s⟩` for the transfer matrix `U`.
fn transition_amplitude<S: Real>(
    conj_u: &CMatrix<S>,
    input: &OccupationVector,
    output: &OccupationVector,
    norm_product: u128,
) -> C<S> {
    let n = input.total() as usize;
    if n == 0 {
        return Complex::new(S::one(), S::zero());
    }
    let cols = input.photon_modes();
    let rows = output.photon_modes();
    let sub = Array2::from_shape_fn((n, n), |(r, c)| conj_u[[rows[r], cols[c]]]);
    let per = permanent(sub.view()).expect("square by construction");
    let norm = S::from_u128(norm_product)
        .expect("factorial product fits the scalar")
        .sqrt();
    per / Complex::new(norm, S::zero())
}

/// Evolve the Fock input `|s⟩` through `u`, expanding over the output basis.
pub fn evolve<S: Real>(u: &ModeUnitary<S>, input: &OccupationVector) -> Result<PureState<S>> {
    let basis = FockBasis::enumerate(u.dim(), input.total())?;
    evolve_in(u, input, &basis)
}

/// [`evolve`] into a caller-provided basis (shared across many calls).
pub fn evolve_in<S: Real>(
    u: &ModeUnitary<S>,
    input: &OccupationVector,
    basis: &Arc<FockBasis>,
) -> Result<PureState<S>> {
    if u.dim() != input.modes() {
        return Err(Error::ShapeMismatch {
            context: "evolve input modes",
            expected: u.dim(),
            found: input.modes(),
        });
    }
    if basis.modes() != u.dim() || basis.photons() != input.total() {
        return Err(Error::ShapeMismatch {
            context: "evolve basis",
            expected: u.dim(),
            found: basis.modes(),
        });
    }
    let mut conj_u = u.matrix().clone();
    conj_u.mapv_inplace(|z| z.conj());
    let input_fact = input.factorial_product() as u128;
    let amplitudes: Vec<C<S>> = basis
        .states()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            transition_amplitude(&conj_u, input, t, input_fact * basis.factorial_product_at(k) as u128)
        })
        .collect();
    PureState::new_unnormalized(Arc::clone(basis), amplitudes)
}

/// Apply `u` to an arbitrary superposition, column by column.
pub fn evolve_state<S: Real>(u: &ModeUnitary<S>, state: &PureState<S>) -> Result<PureState<S>> {
    let basis = state.basis();
    if u.dim() != basis.modes() {
        return Err(Error::ShapeMismatch {
            context: "evolve_state modes",
            expected: basis.modes(),
            found: u.dim(),
        });
    }
    let mut conj_u = u.matrix().clone();
    conj_u.mapv_inplace(|z| z.conj());
    let mut out = vec![C::<S>::zero(); basis.dim()];
    for (s_idx, alpha) in state.amplitudes().iter().enumerate() {
        if alpha.is_zero() {
            continue;
        }
        let input = basis.state(s_idx);
        let input_fact = basis.factorial_product_at(s_idx) as u128;
        for (t_idx, t) in basis.states().iter().enumerate() {
            let phi = transition_amplitude(
                &conj_u,
                input,
                t,
                input_fact * basis.factorial_product_at(t_idx) as u128,
            );
            out[t_idx] = out[t_idx] + phi * *alpha;
        }
    }
    PureState::new_unnormalized(Arc::clone(basis), out)
}

/// Evolve `input` through `prep` and project on the target Fock state.
///
/// Returns the renormalised (single-component) prepared state together with
/// the post-selection success probability `|α_target|²`.
pub fn prepare_by_postselection<S: Real>(
    prep: &ModeUnitary<S>,
    input: &OccupationVector,
    target: &OccupationVector,
) -> Result<(PureState<S>, S)> {
    if input.total() != target.total() {
        return Err(Error::ShapeMismatch {
            context: "post-selection totals",
            expected: input.total() as usize,
            found: target.total() as usize,
        });
    }
    let evolved = evolve(prep, input)?;
    let amplitude = evolved.amplitude(target).ok_or(Error::ZeroProbability)?;
    let probability = amplitude.norm_sqr();
    // Symmetry-suppressed amplitudes cancel to machine-epsilon level; the
    // cutoff separates those from genuinely small success probabilities.
    if probability <= crate::s::<S>(1e-20) {
        return Err(Error::ZeroProbability);
    }
    let state = PureState::fock(Arc::clone(evolved.basis()), target)?;
    Ok((state, probability))
}

/// Apply a photon-number-conserving ladder monomial
/// `a†_{c₁}…a†_{c_n} a_{d₁}…a_{d_n}` to a state, with exact √-factors.
///
/// The result is an unnormalised vector over the same basis; basis states
/// annihilated along the way simply contribute nothing.
pub fn apply_ladder_monomial<S: Real>(
    state: &PureState<S>,
    creators: &[usize],
    annihilators: &[usize],
) -> Result<PureState<S>> {
    if creators.len() != annihilators.len() {
        return Err(Error::ShapeMismatch {
            context: "ladder monomial (must conserve photon number)",
            expected: creators.len(),
            found: annihilators.len(),
        });
    }
    let basis = state.basis();
    let m = basis.modes();
    for &mode in creators.iter().chain(annihilators) {
        if mode >= m {
            return Err(Error::InvalidMode {
                j: mode,
                k: mode,
                dim: m,
            });
        }
    }
    let mut out = vec![C::<S>::zero(); basis.dim()];
    let mut occ = vec![0u32; m];
    'states: for (idx, amp) in state.amplitudes().iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        occ.copy_from_slice(basis.state(idx).occupations());
        let mut factor_sqr: u64 = 1;
        // Annihilators act first, rightmost first.
        for &mode in annihilators.iter().rev() {
            if occ[mode] == 0 {
                continue 'states;
            }
            factor_sqr *= occ[mode] as u64;
            occ[mode] -= 1;
        }
        for &mode in creators.iter().rev() {
            factor_sqr *= (occ[mode] + 1) as u64;
            occ[mode] += 1;
        }
        let target = OccupationVector(occ.clone());
        let t_idx = basis.index_of(&target).expect("monomial conserves the total");
        let factor = S::from_u64(factor_sqr).expect("small integer").sqrt();
        out[t_idx] = out[t_idx] + *amp * Complex::new(factor, S::zero());
    }
    PureState::new_unnormalized(Arc::clone(basis), out)
}

/// `⟨ψ| a†_{c₁}…a†_{c_n} a_{d₁}…a_{d_n} |ψ⟩`.
pub fn ladder_expectation<S: Real>(
    state: &PureState<S>,
    creators: &[usize],
    annihilators: &[usize],
) -> Result<C<S>> {
    let image = apply_ladder_monomial(state, creators, annihilators)?;
    Ok(state.inner(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{measurement_core, MeasurementKind};

    fn basis(m: usize, n: u32) -> Arc<FockBasis> {
        FockBasis::enumerate(m, n).unwrap()
    }

    #[test]
    fn enumeration_matches_binomials() {
        let b = basis(2, 2);
        assert_eq!(b.dim(), 3);
        let expected: Vec<Vec<u32>> = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
        for (state, exp) in b.states().iter().zip(expected) {
            assert_eq!(state.occupations(), &exp[..]);
        }
        assert_eq!(basis(3, 2).dim(), 6);
        assert_eq!(basis(4, 4).dim(), 35);
    }

    #[test]
    fn enumeration_index_map_is_inverse() {
        let b = basis(3, 3);
        for (i, state) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(state), Some(i));
        }
        assert!(FockBasis::enumerate(0, 2).is_err());
    }

    #[test]
    fn identity_evolution_is_trivial() {
        let u = ModeUnitary::<f64>::identity(3).unwrap();
        let input = OccupationVector::new(vec![1, 0, 1]).unwrap();
        let state = evolve(&u, &input).unwrap();
        assert!((state.amplitude(&input).unwrap().norm() - 1.0).abs() < 1e-14);
        assert!((state.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hong_ou_mandel_suppression() {
        let tx = ModeUnitary::<f64>::two_mode_embed(2, 0, 1, &measurement_core(MeasurementKind::X))
            .unwrap();
        let input = OccupationVector::new(vec![1, 1]).unwrap();
        let state = evolve(&tx, &input).unwrap();
        let p11 = state
            .amplitude(&OccupationVector::new(vec![1, 1]).unwrap())
            .unwrap()
            .norm_sqr();
        let p20 = state
            .amplitude(&OccupationVector::new(vec![2, 0]).unwrap())
            .unwrap()
            .norm_sqr();
        let p02 = state
            .amplitude(&OccupationVector::new(vec![0, 2]).unwrap())
            .unwrap()
            .norm_sqr();
        assert!(p11 < 1e-28);
        assert!((p20 - 0.5).abs() < 1e-12);
        assert!((p02 - 0.5).abs() < 1e-12);
        let means = state.mean_photon_numbers();
        assert!((means[0] - 1.0).abs() < 1e-12 && (means[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_evolution_is_normalized() {
        for seed in 0..10 {
            let u = ModeUnitary::<f64>::haar_random(3, seed).unwrap();
            let input = OccupationVector::new(vec![1, 1, 1]).unwrap();
            let state = evolve(&u, &input).unwrap();
            assert!(
                (state.norm_sqr() - 1.0).abs() < 1e-9,
                "norm {} at seed {seed}",
                state.norm_sqr()
            );
        }
    }

    #[test]
    fn mean_photon_numbers_of_superposition() {
        let b = basis(2, 1);
        let amp = 1.0 / 2.0f64.sqrt();
        let state = PureState::new(
            Arc::clone(&b),
            vec![Complex::new(amp, 0.0), Complex::new(amp, 0.0)],
        )
        .unwrap();
        let means = state.mean_photon_numbers();
        assert!((means[0] - 0.5).abs() < 1e-14);
        assert!((means[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn postselection_success_probabilities() {
        let tx = ModeUnitary::<f64>::two_mode_embed(2, 0, 1, &measurement_core(MeasurementKind::X))
            .unwrap();
        let input = OccupationVector::new(vec![1, 1]).unwrap();
        let target = OccupationVector::new(vec![2, 0]).unwrap();
        let (state, p) = prepare_by_postselection(&tx, &input, &target).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((state.amplitude(&target).unwrap().norm() - 1.0).abs() < 1e-14);

        let id = ModeUnitary::<f64>::identity(2).unwrap();
        let twozero = OccupationVector::new(vec![2, 0]).unwrap();
        let (_, p) = prepare_by_postselection(&id, &twozero, &twozero).unwrap();
        assert!((p - 1.0).abs() < 1e-14);

        // HOM suppression makes (1,1) unreachable through a balanced splitter.
        let suppressed = prepare_by_postselection(&tx, &input, &input);
        assert!(matches!(suppressed, Err(Error::ZeroProbability)));
    }

    #[test]
    fn ladder_monomial_examples() {
        let b = basis(2, 2);
        let ket11 = PureState::<f64>::fock(
            Arc::clone(&b),
            &OccupationVector::new(vec![1, 1]).unwrap(),
        )
        .unwrap();
        // a†₁a₂ |1,1⟩ = √2 |2,0⟩
        let image = apply_ladder_monomial(&ket11, &[0], &[1]).unwrap();
        let expect = OccupationVector::new(vec![2, 0]).unwrap();
        assert!((image.amplitude(&expect).unwrap().re - 2.0f64.sqrt()).abs() < 1e-14);

        // a†₁a₁ |3,0⟩ = 3 |3,0⟩
        let b3 = basis(2, 3);
        let ket30 = PureState::<f64>::fock(
            Arc::clone(&b3),
            &OccupationVector::new(vec![3, 0]).unwrap(),
        )
        .unwrap();
        let number = apply_ladder_monomial(&ket30, &[0], &[0]).unwrap();
        assert!(
            (number
                .amplitude(&OccupationVector::new(vec![3, 0]).unwrap())
                .unwrap()
                .re
                - 3.0)
                .abs()
                < 1e-14
        );
    }

    #[test]
    fn ladder_commutator_is_identity() {
        // (a†₁a₂)(a†₂a₁) and (a†₂a₁)(a†₁a₂) on |1,0⟩ differ by exactly
        // |1,0⟩: the inner pair realises [a₂, a†₂] = 1.
        let b = basis(2, 1);
        let ket10 = OccupationVector::new(vec![1, 0]).unwrap();
        let ket = PureState::<f64>::fock(Arc::clone(&b), &ket10).unwrap();
        let hop = apply_ladder_monomial(&ket, &[1], &[0]).unwrap(); // |0,1⟩
        let forward = apply_ladder_monomial(&hop, &[0], &[1]).unwrap();
        let hop_back = apply_ladder_monomial(&ket, &[0], &[1]).unwrap(); // zero
        let backward = apply_ladder_monomial(&hop_back, &[1], &[0]).unwrap();
        assert!((forward.amplitude(&ket10).unwrap().re - 1.0).abs() < 1e-15);
        assert!(backward.norm_sqr() < 1e-30);
    }

    #[test]
    fn ladder_rejects_unbalanced_monomial() {
        let b = basis(2, 1);
        let ket = PureState::<f64>::fock(
            Arc::clone(&b),
            &OccupationVector::new(vec![1, 0]).unwrap(),
        )
        .unwrap();
        assert!(apply_ladder_monomial(&ket, &[0], &[]).is_err());
    }

    #[test]
    fn evolution_is_a_homomorphism() {
        // evolve(U₂·U₁, s) = evolve_state(U₂, evolve(U₁, s))
        for seed in 0..5 {
            let u1 = ModeUnitary::<f64>::haar_random(3, seed).unwrap();
            let u2 = ModeUnitary::<f64>::haar_random(3, seed + 100).unwrap();
            let input = OccupationVector::new(vec![1, 1, 0]).unwrap();
            let direct = evolve(&u2.product(&u1).unwrap(), &input).unwrap();
            let staged = evolve_state(&u2, &evolve(&u1, &input).unwrap()).unwrap();
            for (a, b) in direct.amplitudes().iter().zip(staged.amplitudes()) {
                assert!((*a - *b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn heisenberg_relation_for_fock_inputs() {
        for seed in 0..5 {
            let u = ModeUnitary::<f64>::haar_random(4, seed).unwrap();
            let input = OccupationVector::new(vec![2, 1, 0, 1]).unwrap();
            let state = evolve(&u, &input).unwrap();
            let means = state.mean_photon_numbers();
            for j in 0..4 {
                let expected: f64 = (0..4)
                    .map(|k| u.get(j, k).norm_sqr() * input.get(k) as f64)
                    .sum();
                assert!((means[j] - expected).abs() < 1e-9);
            }
        }
    }
}
