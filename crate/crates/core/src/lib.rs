//! Exact tools for factorizations `Z_ω = A + B` of finite cyclic groups and
//! multiplier splittings `G \ {0} = MS`, with exhaustive scan harnesses that
//! check the structural claims about them on bounded ranges.

pub mod character;
pub mod cyclic;
pub mod error;
pub mod factorization;
pub mod harness;
pub mod splitting;

pub use cyclic::{Modulus, PrimeSignature, ResidueSet};
pub use error::{Error, Result};
