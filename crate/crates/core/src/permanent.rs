//! Matrix permanent via Gray-code Ryser iteration.

use ndarray::ArrayView2;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Real, C};

/// Permanent of a square complex matrix in `O(2^k · k)`.
///
/// Ryser's formula with Gray-code subset iteration: row sums over the active
/// column subset are updated one column per step instead of being rebuilt.
/// The empty matrix has permanent 1.
pub fn permanent<S: Real>(a: ArrayView2<C<S>>) -> Result<C<S>> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    if n == 0 {
        return Ok(C::one());
    }
    assert!(n < 64, "permanent is limited to matrices of side < 64");

    let mut row_sums = vec![C::<S>::zero(); n];
    let mut total = C::<S>::zero();
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let next = k ^ (k >> 1);
        let changed = (gray ^ next).trailing_zeros() as usize;
        if next & (1 << changed) != 0 {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum = *sum + a[[i, changed]];
            }
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum = *sum - a[[i, changed]];
            }
        }
        gray = next;
        let mut product = C::<S>::one();
        for sum in &row_sums {
            product = product * *sum;
        }
        // (-1)^n (-1)^{|subset|}
        if (n as u32).wrapping_sub(next.count_ones()) % 2 == 0 {
            total = total + product;
        } else {
            total = total - product;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use ndarray::Array2;

    /// Brute-force permanent summing over all permutations.
    fn permanent_naive(a: &Array2<C<f64>>) -> C<f64> {
        let n = a.nrows();
        let mut total = C::new(0.0, 0.0);
        for perm in (0..n).permutations(n) {
            let mut product = C::new(1.0, 0.0);
            for (i, &j) in perm.iter().enumerate() {
                product *= a[[i, j]];
            }
            total += product;
        }
        total
    }

    #[test]
    fn empty_matrix_has_permanent_one() {
        let a: Array2<C<f64>> = Array2::zeros((0, 0));
        assert_eq!(permanent(a.view()).unwrap(), C::new(1.0, 0.0));
    }

    #[test]
    fn identity_has_permanent_one() {
        let a = crate::linalg::identity::<f64>(3);
        let p = permanent(a.view()).unwrap();
        assert!((p - C::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn all_ones_3x3_is_six() {
        let a = Array2::from_elem((3, 3), C::new(1.0, 0.0));
        let p = permanent(a.view()).unwrap();
        assert!((p - C::new(6.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn matches_naive_oracle_on_random_4x4() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = Array2::from_shape_fn((4, 4), |_| {
                C::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let fast = permanent(a.view()).unwrap();
            let slow = permanent_naive(&a);
            assert!(
                (fast - slow).norm() <= 1e-10 * slow.norm().max(1.0),
                "fast {fast} vs naive {slow}"
            );
        }
    }

    #[test]
    fn multilinear_in_rows() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(6);
        let a = Array2::from_shape_fn((4, 4), |_| {
            C::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let scale = C::new(rng.random::<f64>() + 0.5, rng.random::<f64>());
        let mut scaled = a.clone();
        for j in 0..4 {
            scaled[[2, j]] *= scale;
        }
        let lhs = permanent(scaled.view()).unwrap();
        let rhs = permanent(a.view()).unwrap() * scale;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_square() {
        let a: Array2<C<f64>> = Array2::zeros((2, 3));
        assert!(matches!(permanent(a.view()), Err(Error::NotSquare { .. })));
    }
}
