//! Higher-order correlation tensors `Γ^(n)`, their transformation law,
//! the Frobenius-norm invariant, and the Hermitian matrix unfolding with
//! its eigenvalue invariants.

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{ladder_expectation, PureState};
use crate::linalg::{self, CMatrix};
use crate::unitary::ModeUnitary;
use crate::{Real, C};

/// Highest supported correlation order; `m^{2n}` growth makes larger orders
/// pointless at desk scale.
pub const ORDER_CAP: usize = 3;

/// Order-`2n` tensor of `n`-th order correlation functions
/// `Γ^(n)(s₁…s₂ₙ) = ⟨a†_{s₁}…a†_{s_n} a_{s_{n+1}}…a_{s_{2n}}⟩`,
/// stored densely with `s_i ∈ {0…m-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor<S: Real> {
    m: usize,
    order: usize,
    entries: Vec<C<S>>,
}

impl<S: Real> CorrelationTensor<S> {
    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[C<S>] {
        &self.entries
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), 2 * self.order);
        idx.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn get(&self, idx: &[usize]) -> C<S> {
        self.entries[self.flat_index(idx)]
    }

    /// Iterate all index tuples in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let slots = 2 * self.order;
        let m = self.m;
        let total = self.entries.len();
        (0..total).map(move |mut flat| {
            let mut idx = vec![0usize; slots];
            for slot in (0..slots).rev() {
                idx[slot] = flat % m;
                flat /= m;
            }
            idx
        })
    }

    /// Max deviation from the Glauber conjugation symmetry
    /// `Γ(s₁…s_n, s_{n+1}…s_{2n}) = conj(Γ(s_{2n}…s_{n+1}, s_n…s₁))`.
    pub fn glauber_deviation(&self) -> S {
        let mut worst = S::zero();
        for idx in self.indices() {
            // Full reversal swaps the two index groups and reverses each.
            let mirrored: Vec<usize> = idx.iter().rev().copied().collect();
            let dev = (self.get(&idx) - self.get(&mirrored).conj()).norm();
            if dev > worst {
                worst = dev;
            }
        }
        worst
    }
}

/// Compute `Γ^(order)` of a state through ladder monomials.
pub fn correlation_tensor<S: Real>(state: &PureState<S>, order: usize) -> Result<CorrelationTensor<S>> {
    if order == 0 || order > ORDER_CAP {
        return Err(Error::OrderCap {
            order,
            cap: ORDER_CAP,
        });
    }
    let m = state.basis().modes();
    let slots = 2 * order;
    let total = m.pow(slots as u32);
    let mut entries = vec![C::<S>::zero(); total];
    let mut idx = vec![0usize; slots];
    for (flat, entry) in entries.iter_mut().enumerate() {
        let mut rest = flat;
        for slot in (0..slots).rev() {
            idx[slot] = rest % m;
            rest /= m;
        }
        *entry = ladder_expectation(state, &idx[..order], &idx[order..])?;
    }
    Ok(CorrelationTensor { m, order, entries })
}

/// Transform the tensor under the mode-basis change induced by `u`:
/// `U` contracts the first `n` (creation) slots and `conj(U)` the last `n`.
///
/// Orientation: `transform_tensor(Γ[ψ], U) = Γ[evolve(U†, ψ)]`, i.e. the
/// transformed tensor is the one measured in the rotated operator basis.
pub fn transform_tensor<S: Real>(
    tensor: &CorrelationTensor<S>,
    u: &ModeUnitary<S>,
) -> Result<CorrelationTensor<S>> {
    if u.dim() != tensor.m {
        return Err(Error::ShapeMismatch {
            context: "tensor transform",
            expected: tensor.m,
            found: u.dim(),
        });
    }
    let m = tensor.m;
    let order = tensor.order;
    let slots = 2 * order;
    let mut current = tensor.entries.clone();
    // Contract one slot at a time; stride arithmetic over the dense layout.
    for slot in 0..slots {
        let conjugate = slot >= order;
        let stride = m.pow((slots - 1 - slot) as u32);
        let block = stride * m;
        let mut next = vec![C::<S>::zero(); current.len()];
        for (flat, value) in next.iter_mut().enumerate() {
            let base = flat / block * block + flat % stride;
            let s_i = (flat / stride) % m;
            let mut acc = C::<S>::zero();
            for t_i in 0..m {
                let coeff = if conjugate {
                    u.get(s_i, t_i).conj()
                } else {
                    u.get(s_i, t_i)
                };
                acc = acc + coeff * current[base + t_i * stride];
            }
            *value = acc;
        }
        current = next;
    }
    Ok(CorrelationTensor {
        m,
        order,
        entries: current,
    })
}

/// `Σ |Γ|²` over all `m^{2n}` entries: the squared Frobenius norm,
/// invariant under [`transform_tensor`].
pub fn tensor_frobenius<S: Real>(tensor: &CorrelationTensor<S>) -> S {
    tensor.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian matrix unfolding of an even-order tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedMatrix<S: Real> {
    mat: CMatrix<S>,
}

impl<S: Real> UnfoldedMatrix<S> {
    pub fn side(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.mat
    }

    pub fn hermiticity_deviation(&self) -> S {
        linalg::hermiticity_deviation(&self.mat)
    }

    /// Eigenvalues, ascending; invariants of the tensor under basis changes.
    pub fn eigenvalues(&self) -> Result<Vec<S>> {
        linalg::eigvalsh(&self.mat)
    }
}

/// Unfold the tensor into the `m^n x m^n` matrix
/// `M(h,k) = Γ(s'₁…s'_n, s'_{n+1}…s'_{2n})` with `h`, `k` the base-`m`
/// encodings of the primed index groups. `permutation` relabels the `n`
/// slots (identically on both groups) before encoding; `None` keeps the
/// natural ordering.
pub fn unfold<S: Real>(
    tensor: &CorrelationTensor<S>,
    permutation: Option<&[usize]>,
) -> Result<UnfoldedMatrix<S>> {
    let n = tensor.order;
    let m = tensor.m;
    let identity: Vec<usize> = (0..n).collect();
    let perm: &[usize] = permutation.unwrap_or(&identity);
    if perm.len() != n {
        return Err(Error::ShapeMismatch {
            context: "unfolding permutation",
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidConfig(format!(
                "unfolding permutation {perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    let side = m.pow(n as u32);
    let mut idx = vec![0usize; 2 * n];
    let mut mat: CMatrix<S> = Array2::zeros((side, side));
    for h in 0..side {
        for k in 0..side {
            // Digits of h and k are the primed indices; the permutation maps
            // primed slot i back to tensor slot perm[i].
            let mut rest = h;
            for i in (0..n).rev() {
                idx[perm[i]] = rest % m;
                rest /= m;
            }
            let mut rest = k;
            for i in (0..n).rev() {
                idx[n + perm[i]] = rest % m;
                rest /= m;
            }
            mat[[h, k]] = tensor.get(&idx);
        }
    }
    Ok(UnfoldedMatrix { mat })
}

/// The single basis change `V` of the unfolded matrix equivalent to a mode
/// basis change `U` of the tensor: `V = (P_S · U_B)^n` with `U_B` the
/// `m^{n-1}`-fold block-diagonal repetition of `U` and `P_S` the cyclic
/// index shift. Satisfies `unfold(transform(t, U)) = V · unfold(t) · V†`.
pub fn unfolding_basis_change<S: Real>(u: &ModeUnitary<S>, order: usize) -> Result<CMatrix<S>> {
    if order == 0 || order > ORDER_CAP {
        return Err(Error::OrderCap {
            order,
            cap: ORDER_CAP,
        });
    }
    let m = u.dim();
    let side = m.pow(order as u32);
    let blocks = m.pow(order as u32 - 1);
    let u_block = linalg::kron(&linalg::identity::<S>(blocks), u.matrix());
    // P_S: basis vector of digits (s₁…s_n) maps to (s₂…s_n s₁).
    let mut shift: CMatrix<S> = Array2::zeros((side, side));
    for col in 0..side {
        let mut digits = vec![0usize; order];
        let mut rest = col;
        for i in (0..order).rev() {
            digits[i] = rest % m;
            rest /= m;
        }
        digits.rotate_left(1);
        let row = digits.iter().fold(0, |acc, &d| acc * m + d);
        shift[[row, col]] = Complex::new(S::one(), S::zero());
    }
    let step = shift.dot(&u_block);
    let mut v = linalg::identity::<S>(side);
    for _ in 0..order {
        v = step.dot(&v);
    }
    Ok(v)
}
