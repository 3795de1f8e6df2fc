//! Numerical workbench for few-photon Fock states evolving through
//! programmable linear-optical interferometers.
//!
//! The crate covers the full chain of a linear-optics experiment on a desk:
//! mode transformations ([`unitary`], [`mesh`]), exact multi-photon evolution
//! in Fock space ([`fock`]), the Lie observable basis and its conserved
//! quantities ([`lie`]), higher-order correlation tensors ([`tensor`]),
//! a pseudo-photon-number-resolving detection chain ([`pnr`]), imperfection
//! channels ([`noise`]), and a configuration-driven campaign runner
//! ([`campaign`]).
//!
//! All numerics are generic over the scalar type through the [`Real`] trait;
//! `f64` is the working precision and the type aliases at the crate root
//! (e.g. [`ModeUnitary64`]) pin it.

pub mod campaign;
pub mod error;
pub mod files;
pub mod fock;
pub mod lie;
pub mod linalg;
pub mod mesh;
pub mod noise;
pub mod permanent;
pub mod pnr;
pub mod report;
pub mod tensor;
pub mod unitary;

use std::fmt;
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub use error::{Error, Result};

/// Floating-point scalar the core math is generic over.
///
/// The default tolerances are per-type: the spec-level guarantees hold for
/// `f64`; `f32` gets proportionally looser defaults and is supported for
/// smoke-level use.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Entrywise tolerance for `U†U = 1` checks on constructed unitaries.
    fn unitarity_tol() -> Self;
    /// Entrywise tolerance for Hermiticity / positive-semidefiniteness checks.
    fn hermiticity_tol() -> Self;
}

impl Real for f64 {
    fn unitarity_tol() -> Self {
        1e-10
    }
    fn hermiticity_tol() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn unitarity_tol() -> Self {
        1e-4
    }
    fn hermiticity_tol() -> Self {
        1e-3
    }
}

/// Complex number over a [`Real`] scalar.
pub type C<S> = Complex<S>;

/// Convert an `f64` literal into the working scalar type.
pub(crate) fn s<S: Real>(x: f64) -> S {
    S::from_f64(x).expect("literal must be representable in the scalar type")
}

/// Build a complex number from `f64` literals.
pub(crate) fn c<S: Real>(re: f64, im: f64) -> C<S> {
    Complex::new(s(re), s(im))
}

// Concrete aliases at working precision.
pub type C64 = Complex<f64>;
pub type ModeUnitary64 = unitary::ModeUnitary<f64>;
pub type MeshSettings64 = mesh::MeshSettings<f64>;
pub type PureState64 = fock::PureState<f64>;
pub type ExpectationRecord64 = lie::ExpectationRecord<f64>;
pub type CoherencyMatrix64 = lie::CoherencyMatrix<f64>;
pub type CorrelationTensor64 = tensor::CorrelationTensor<f64>;
pub type EfficiencyVector64 = pnr::EfficiencyVector<f64>;
pub type ClickTally64 = pnr::ClickTally;
pub type GramMatrix64 = noise::GramMatrix<f64>;
pub type NoiseConfig64 = noise::NoiseConfig<f64>;
pub type CampaignConfig64 = campaign::CampaignConfig<f64>;
pub type CampaignReport64 = report::CampaignReport<f64>;

/// Derive a child seed from a master seed and a path of stream indices.
///
/// Campaign workers use this so that parallel and serial execution draw
/// identical random streams: the derived seed depends only on the logical
/// position in the run, never on scheduling order.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut state = master;
    for &index in path {
        state = splitmix64(state ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    }
    splitmix64(state)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
