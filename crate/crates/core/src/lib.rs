//! Exact mixing criteria for sequences of toral automorphisms in SL(2,Z),
//! with a character-based correlation oracle to check every verdict.
//!
//! The core is generic over the integer type ([`IntScalar`]) and, where
//! floating point is unavoidable, the real type ([`Real`]). The aliases
//! below fix the arbitrary-precision choices used by the CLI.

pub mod algebra;
pub mod decide;
pub mod error;
pub mod family;
pub mod lab;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod scalar;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use scalar::{IntScalar, Real};

pub type Mat2Z = algebra::Mat2<BigInt>;
pub type QuadValQ = algebra::QuadVal<BigInt>;
pub type EigenDataQ = algebra::EigenData<BigInt>;
pub type IntPolyZ = family::IntPoly<BigInt>;
pub type PolyMatFamilyZ = family::PolyMatFamily<BigInt>;
pub type PowerFamilyZ = family::PowerFamily<BigInt>;
pub type FamilyTupleZ = family::FamilyTuple<BigInt>;
