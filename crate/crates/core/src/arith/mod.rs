//! Exact arithmetic: Q and F_p, univariate polynomials, simple extensions
//! and dense linear algebra.

mod extension;
mod field;
mod matrix;
mod upoly;

pub use extension::{make_extension, ExtElem, ExtensionField, Irreducibility};
pub use field::{BaseField, Field, Ring, Scalar};
pub use matrix::{
    embed_matrix, extend_vector, restrict_scalars_matrix, restrict_vector, solve_linear, Matrix, Solution,
};
pub use upoly::{cyclotomic_polynomial, default_modulus, UniPoly};
