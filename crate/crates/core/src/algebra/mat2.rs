use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Commutative ring element with owned arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<E> Ring for E where
    E: Clone
        + PartialEq
        + fmt::Debug
        + Add<Output = E>
        + Sub<Output = E>
        + Mul<Output = E>
        + Neg<Output = E>
{
}

/// 2×2 matrix `[[a, b], [c, d]]` over a ring.
///
/// The same type carries integer group elements, quadratic-field spectral
/// projections and polynomial families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E> Mat2<E> {
    pub const fn new(a: E, b: E, c: E, d: E) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn map<F, G: FnMut(&E) -> F>(&self, mut f: G) -> Mat2<F> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn entries(&self) -> [&E; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl<E: Ring> Mat2<E> {
    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn det(&self) -> E {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> E {
        self.a.clone() + self.d.clone()
    }

    /// `[[d, -b], [-c, a]]`; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn scale(&self, s: &E) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn apply(&self, v: &[E; 2]) -> [E; 2] {
        [
            self.a.clone() * v[0].clone() + self.b.clone() * v[1].clone(),
            self.c.clone() * v[0].clone() + self.d.clone() * v[1].clone(),
        ]
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }
}

impl<'a, E: Ring> Mul for &'a Mat2<E> {
    type Output = Mat2<E>;

    fn mul(self, o: &'a Mat2<E>) -> Mat2<E> {
        let m = |x: &E, y: &E, z: &E, w: &E| x.clone() * y.clone() + z.clone() * w.clone();
        Mat2::new(
            m(&self.a, &o.a, &self.b, &o.c),
            m(&self.a, &o.b, &self.b, &o.d),
            m(&self.c, &o.a, &self.d, &o.c),
            m(&self.c, &o.b, &self.d, &o.d),
        )
    }
}

impl<E: Ring> Mul for Mat2<E> {
    type Output = Mat2<E>;
    fn mul(self, o: Mat2<E>) -> Mat2<E> {
        &self * &o
    }
}

impl<'a, E: Ring> Add for &'a Mat2<E> {
    type Output = Mat2<E>;
    fn add(self, o: &'a Mat2<E>) -> Mat2<E> {
        Mat2::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.c.clone() + o.c.clone(),
            self.d.clone() + o.d.clone(),
        )
    }
}

impl<'a, E: Ring> Sub for &'a Mat2<E> {
    type Output = Mat2<E>;
    fn sub(self, o: &'a Mat2<E>) -> Mat2<E> {
        Mat2::new(
            self.a.clone() - o.a.clone(),
            self.b.clone() - o.b.clone(),
            self.c.clone() - o.c.clone(),
            self.d.clone() - o.d.clone(),
        )
    }
}

impl<E: Ring> Neg for Mat2<E> {
    type Output = Mat2<E>;
    fn neg(self) -> Mat2<E> {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<E: Ring> Neg for &Mat2<E> {
    type Output = Mat2<E>;
    fn neg(self) -> Mat2<E> {
        -(self.clone())
    }
}

impl<E: fmt::Display> fmt::Display for Mat2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl<T: IntScalar> Mat2<T> {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(T::int(a), T::int(b), T::int(c), T::int(d))
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// True for `I` and `-I`.
    pub fn is_plus_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a.abs().is_one()
    }

    /// Max-norm: largest absolute entry.
    pub fn norm(&self) -> T {
        self.entries()
            .into_iter()
            .map(|e| e.abs())
            .max()
            .expect("four entries")
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    pub fn ensure_unimodular(&self) -> Result<()> {
        if self.is_unimodular() {
            Ok(())
        } else {
            Err(Error::NonUnimodular(self.to_string()))
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Self {
        debug_assert!(self.is_unimodular(), "inverse of non-unimodular {self}");
        self.adjugate()
    }

    pub fn to_big(&self) -> Mat2<BigInt> {
        self.map(|e| e.to_bigint())
    }

    /// Exact power by binary exponentiation; negative exponents use the adjugate.
    pub fn pow(&self, k: i64) -> Self {
        self.pow_big(&BigInt::from(k))
    }

    pub fn pow_big(&self, k: &BigInt) -> Self {
        let base = if k.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = k.abs();
        let mut acc = Self::identity();
        let mut sq = base;
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = &acc * &sq;
            }
            e = e.div_floor(&two);
            if !e.is_zero() {
                sq = &sq * &sq;
            }
        }
        acc
    }
}

/// Integer vector in Z².
pub type Vec2<T> = [T; 2];

pub fn vec_is_zero<T: IntScalar>(v: &Vec2<T>) -> bool {
    v[0].is_zero() && v[1].is_zero()
}

pub fn vec_add<T: IntScalar>(u: &Vec2<T>, v: &Vec2<T>) -> Vec2<T> {
    [u[0].clone() + v[0].clone(), u[1].clone() + v[1].clone()]
}

pub fn vec_neg<T: IntScalar>(u: &Vec2<T>) -> Vec2<T> {
    [-u[0].clone(), -u[1].clone()]
}

pub fn vec_scale<T: IntScalar>(u: &Vec2<T>, s: &T) -> Vec2<T> {
    [u[0].clone() * s.clone(), u[1].clone() * s.clone()]
}

/// Divides by the content and makes the first nonzero coordinate positive.
pub fn primitive<T: IntScalar>(v: &Vec2<T>) -> Vec2<T> {
    let g = v[0].gcd(&v[1]);
    if g.is_zero() {
        return v.clone();
    }
    let mut w = [v[0].clone() / g.clone(), v[1].clone() / g];
    let first = if w[0].is_zero() { &w[1] } else { &w[0] };
    if first.is_negative() {
        w = vec_neg(&w);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Mat2<BigInt>;

    fn m(a: i64, b: i64, c: i64, d: i64) -> M {
        Mat2::from_i64(a, b, c, d)
    }

    #[test]
    fn shear_power() {
        assert_eq!(m(1, 1, 0, 1).pow(5), m(1, 5, 0, 1));
    }

    #[test]
    fn cat_map_inverse_and_square() {
        let t = m(2, 1, 1, 1);
        assert_eq!(t.pow(-1), m(1, -1, -1, 2));
        assert_eq!(t.pow(2), m(5, 3, 3, 2));
        assert_eq!(t.pow(0), M::identity());
        assert_eq!(&t.pow(7) * &t.pow(-7), M::identity());
    }

    #[test]
    fn generic_over_fixed_width() {
        let t: Mat2<i64> = Mat2::from_i64(2, 1, 1, 1);
        assert_eq!(t.pow(10).to_big(), m(2, 1, 1, 1).pow(10));
        assert_eq!(t.norm(), 2);
    }

    #[test]
    fn norm_and_display() {
        let t = m(-7, 3, 2, -1);
        assert_eq!(t.norm(), BigInt::from(7));
        assert_eq!(t.to_string(), "[[-7,3],[2,-1]]");
    }

    #[test]
    fn primitive_normalizes_sign() {
        let v = [BigInt::from(-6), BigInt::from(-2)];
        assert_eq!(primitive(&v), [BigInt::from(3), BigInt::from(1)]);
        let w = [BigInt::from(0), BigInt::from(-4)];
        assert_eq!(primitive(&w), [BigInt::from(0), BigInt::from(1)]);
    }
}
