pub mod cexp;
pub mod cyclic;
pub mod error;
pub mod expr;
pub mod fock;
pub mod gramcert;
pub mod l5;
pub mod linalg;
pub mod linform;
pub mod matalg;
pub mod numfield;
pub mod polyalg;
pub mod qmod;
pub mod reproduce;
pub mod sample;
pub mod scalar;
pub mod upoly;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/fock.md")]
    mod fock {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/lower-bound.md")]
    mod lower_bound {}
    #[doc = include_str!("../../../book/src/projections.md")]
    mod projections {}
    #[doc = include_str!("../../../book/src/number-fields.md")]
    mod number_fields {}
    #[doc = include_str!("../../../book/src/cyclic.md")]
    mod cyclic {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/quadratic-modules.md")]
    mod quadratic_modules {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
