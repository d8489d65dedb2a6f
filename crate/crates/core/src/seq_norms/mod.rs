//! Luxemburg and Orlicz norms of finitely supported coefficient sequences in
//! weighted variable-exponent sequence spaces.

mod function;
mod norms;
mod space;

pub use function::SpectralFunction;
pub use norms::{
    dual_exponents, luxemburg_norm, modular_sum, orlicz_norm, ModulusEntry, Moduli, NormQuery,
};
pub use space::ExponentWeightPair;
