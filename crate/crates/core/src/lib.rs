//! Exponential sums with Kasami-Welch type exponents over GF(2^n), the cyclic
//! codes and low-correlation sequence families they describe, and exhaustive
//! checks of their closed-form value distributions.

pub mod bits;
pub mod closed_form;
pub mod codes;
pub mod context;
pub mod distributions;
pub mod error;
pub mod exp_sums;
pub mod field;
pub mod linearized;
pub mod params;
pub mod sequences;
pub mod verify;

pub use context::Context;
pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec};
pub use params::{validate_params, ParamSet, ParamsHeader};
