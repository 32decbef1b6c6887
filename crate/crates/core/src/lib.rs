//! Exact computation in the integral group ring of `G = *_i (C_{r_i} x Z)`
//! with pairwise coprime `r_i`: normal forms, Fox calculus, the relation
//! module in its embedding into `C_1`, and re-checkable certificates that
//! `X_1, ..., X_{n+1}` generate it.

pub mod certificate;
pub mod error;
pub mod foxcomplex;
pub mod freewords;
pub mod groupring;
pub mod normalform;
pub mod relmodule;
pub mod sample;
pub mod text;

pub use error::{Error, Result};
pub use freewords::{FreeWord, GenKind, Generator, Params};
pub use groupring::RingElement;
pub use normalform::GroupElement;
