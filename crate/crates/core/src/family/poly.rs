use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::IntScalar;

/// Integer polynomial in the index variable `n`, coefficients low degree first.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntPoly<T> {
    coeffs: Vec<T>,
}

impl<T: IntScalar> IntPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| T::int(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        IntPoly::new(vec![c])
    }

    /// The polynomial `n`.
    pub fn var() -> Self {
        IntPoly::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `n^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, n: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * n.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly::constant(T::one()), |acc, _| acc * self.clone())
    }

    /// Parity of `p(n)` is the same for every integer `n` iff `p(0) ≡ p(1) (mod 2)`.
    pub fn constant_parity(&self) -> Option<bool> {
        let two = T::int(2);
        let at0 = self.eval(&T::zero()).mod_floor(&two);
        let at1 = self.eval(&T::one()).mod_floor(&two);
        (at0 == at1).then(|| at0.is_one())
    }
}

impl<T: IntScalar> Add for IntPoly<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..len).map(|j| self.coeff(j) + o.coeff(j)).collect())
    }
}

impl<T: IntScalar> Sub for IntPoly<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: IntScalar> Neg for IntPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: IntScalar> Mul for IntPoly<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        IntPoly::new(out)
    }
}

impl<T: IntScalar> fmt::Display for IntPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = j == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 if show_mag => write!(f, "*n")?,
                1 => write!(f, "n")?,
                _ if show_mag => write!(f, "*n^{j}")?,
                _ => write!(f, "n^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    type P = IntPoly<BigInt>;

    #[test]
    fn trims_and_degrees() {
        let p = P::from_i64(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(P::zero().degree(), None);
        assert!(P::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic_and_eval() {
        let n = P::var();
        let p = n.clone() * n.clone() - P::constant(1.into());
        assert_eq!(p, P::from_i64(&[-1, 0, 1]));
        assert_eq!(p.eval(&BigInt::from(4)), BigInt::from(15));
        assert_eq!((n.clone() + P::constant(5.into())).eval(&BigInt::from(-5)), BigInt::zero());
        assert_eq!(n.pow(3).eval(&BigInt::from(-2)), BigInt::from(-8));
    }

    #[test]
    fn display_round_trip_shape() {
        assert_eq!(P::from_i64(&[-1, 0, 1]).to_string(), "n^2 - 1");
        assert_eq!(P::from_i64(&[0, -2, 3]).to_string(), "3*n^2 - 2*n");
        assert_eq!(P::from_i64(&[7]).to_string(), "7");
        assert_eq!(P::from_i64(&[0, -1]).to_string(), "-n");
    }

    #[test]
    fn parity() {
        assert_eq!(P::from_i64(&[0, 1, 1]).constant_parity(), Some(false));
        assert_eq!(P::from_i64(&[0, 2]).constant_parity(), Some(false));
        assert_eq!(P::from_i64(&[1, 2]).constant_parity(), Some(true));
        assert_eq!(P::var().constant_parity(), None);
    }
}
