pub mod arith;
pub mod error;
pub mod finite;
pub mod flat;
pub mod galois;
pub mod poly;
pub mod points;
pub mod descent;
pub mod samples;
pub mod semilinear;
pub mod weil;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/semilinear.md")]
    mod semilinear {}
    #[doc = include_str!("../../../book/src/affine.md")]
    mod affine {}
    #[doc = include_str!("../../../book/src/weil.md")]
    mod weil {}
    #[doc = include_str!("../../../book/src/flat.md")]
    mod flat {}
}
