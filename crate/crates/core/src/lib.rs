//! Trigonometric approximation in weighted variable-exponent sequence spaces.
//!
//! Functions are finitely supported Fourier-coefficient maps
//! ([`SpectralFunction`]); a space is a pair of exponent and weight sequences
//! ([`ExponentWeightPair`]). On top of the Luxemburg and Orlicz norms the
//! crate provides best approximations, fractional moduli of smoothness,
//! Jackson-kernel approximants, K-functionals, and a harness that turns the
//! direct and inverse approximation inequalities into checkable verdicts.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases fix the common case.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod error;
pub mod harness;
pub mod io;
pub mod scalar;
pub mod seq_norms;
pub mod smoothness;
pub mod spectral;

pub use approx::Kernel;
pub use error::{Error, Result};
pub use scalar::Real;
pub use seq_norms::{ExponentWeightPair, Moduli, NormQuery, SpectralFunction};
pub use smoothness::{SupEstimate, SupSearchPolicy};
pub use spectral::{FractionalOrder, PsiWeights};

pub type SpectralFunctionF64 = SpectralFunction<f64>;
pub type ExponentWeightPairF64 = ExponentWeightPair<f64>;
pub type NormQueryF64 = NormQuery<f64>;
pub type FractionalOrderF64 = FractionalOrder<f64>;
pub type PsiWeightsF64 = PsiWeights<f64>;
pub type KernelF64 = Kernel<f64>;
pub type SupSearchPolicyF64 = SupSearchPolicy<f64>;
