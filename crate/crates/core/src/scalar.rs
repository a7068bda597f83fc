//! Scalar traits the exact and floating layers are generic over.
//!
//! Exact code is written against [`IntScalar`] (implemented for `BigInt`,
//! `i64` and `i128`); floating code against [`Real`] (`f32`, `f64`). The
//! arbitrary-precision instantiations are exported as aliases at the crate
//! root and are what the deciders use. Fixed-width instantiations are for
//! quick experiments; the workspace builds with overflow checks enabled in
//! every profile, so an overflow panics rather than wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{float::FloatConst, Float, FromPrimitive, Signed, ToPrimitive};

/// Integer ring element usable as a matrix, polynomial or rational entry.
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Lossless widening into an arbitrary-precision integer.
    fn to_bigint(&self) -> BigInt;

    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every IntScalar")
    }
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl IntScalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Floating scalar for the numeric estimators.
pub trait Real: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    fn from_f64(v: f64) -> Self;
}

impl Real for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widening_is_lossless() {
        assert_eq!(i64::MIN.to_bigint(), BigInt::from(i64::MIN));
        assert_eq!(i128::MAX.to_bigint(), BigInt::from(i128::MAX));
        assert_eq!(<i64 as IntScalar>::int(-7), -7);
    }
}
