//! Arithmetic in a real quadratic field `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::IntScalar;

/// `n = s² · d` with `d` square-free. Requires `n > 0`.
pub fn square_free_decomposition<T: IntScalar>(n: &T) -> (T, T) {
    assert!(n.is_positive(), "square-free decomposition of non-positive {n}");
    let mut rest = n.clone();
    let mut square_root = T::one();
    let mut d = T::one();
    let mut p = T::int(2);
    while p.clone() * p.clone() <= rest {
        let mut e = 0u32;
        while (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            e += 1;
        }
        for _ in 0..e / 2 {
            square_root = square_root * p.clone();
        }
        if e % 2 == 1 {
            d = d * p.clone();
        }
        p = if p == T::int(2) {
            T::int(3)
        } else {
            p + T::int(2)
        };
    }
    // whatever remains is 1 or a prime
    (square_root, d * rest)
}

/// The number `p + q·√d` with rational `p`, `q` and square-free `d ≥ 1`.
///
/// Operands of a binary operation must share `d` unless one of them is
/// rational (`q = 0`), in which case it is lifted into the other's field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadVal<T: IntScalar> {
    pub p: Ratio<T>,
    pub q: Ratio<T>,
    pub d: T,
}

impl<T: IntScalar> QuadVal<T> {
    pub fn new(p: Ratio<T>, q: Ratio<T>, d: T) -> Self {
        debug_assert!(d.is_positive());
        QuadVal { p, q, d }
    }

    pub fn rational(p: Ratio<T>, d: T) -> Self {
        QuadVal::new(p, Ratio::zero(), d)
    }

    pub fn from_int(v: T, d: T) -> Self {
        QuadVal::rational(Ratio::from_integer(v), d)
    }

    pub fn zero(d: T) -> Self {
        QuadVal::rational(Ratio::zero(), d)
    }

    pub fn one(d: T) -> Self {
        QuadVal::rational(Ratio::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `p - q√d`.
    pub fn conj(&self) -> Self {
        QuadVal::new(self.p.clone(), -self.q.clone(), self.d.clone())
    }

    /// Field norm `p² - d·q²`.
    pub fn norm(&self) -> Ratio<T> {
        self.p.clone() * self.p.clone()
            - Ratio::from_integer(self.d.clone()) * self.q.clone() * self.q.clone()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(√{})", self.d);
        QuadVal::new(self.p.clone() / n.clone(), -self.q.clone() / n, self.d.clone())
    }

    /// Exact sign of the real number.
    pub fn signum(&self) -> Ordering {
        let zero = Ratio::zero();
        let sp = self.p.cmp(&zero);
        let sq = self.q.cmp(&zero);
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let p2 = self.p.clone() * self.p.clone();
                let dq2 = Ratio::from_integer(self.d.clone()) * self.q.clone() * self.q.clone();
                match p2.cmp(&dq2) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = QuadVal::one(self.d.clone());
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }

    fn common_d(&self, o: &Self) -> T {
        if self.d == o.d || o.q.is_zero() {
            self.d.clone()
        } else if self.q.is_zero() {
            o.d.clone()
        } else {
            panic!("mixing Q(√{}) and Q(√{})", self.d, o.d)
        }
    }

    /// Rational bounds `lo ≤ value ≤ hi` from dyadic bounds on `√d` with
    /// `bits` fractional bits.
    pub fn enclosure(&self, bits: u32) -> (Ratio<BigInt>, Ratio<BigInt>) {
        let p = big_ratio(&self.p);
        let q = big_ratio(&self.q);
        if q.is_zero() {
            return (p.clone(), p);
        }
        let (lo, hi) = sqrt_enclosure(&self.d.to_bigint(), bits);
        if q.is_positive() {
            (p.clone() + q.clone() * lo, p + q * hi)
        } else {
            (p.clone() + q.clone() * hi, p + q * lo)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        let mid = (lo + hi) / Ratio::from_integer(BigInt::from(2));
        ratio_to_f64(&mid)
    }
}

pub(crate) fn big_ratio<T: IntScalar>(r: &Ratio<T>) -> Ratio<BigInt> {
    Ratio::new(r.numer().to_bigint(), r.denom().to_bigint())
}

pub(crate) fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    // scale so that the integer division keeps ~60 significant bits
    let n = r.numer();
    let d = r.denom();
    let shift = 64i64 - (n.bits() as i64 - d.bits() as i64);
    let scaled = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// `lo ≤ √n < hi` with dyadic endpoints of `bits` fractional bits.
pub fn sqrt_enclosure(n: &BigInt, bits: u32) -> (Ratio<BigInt>, Ratio<BigInt>) {
    let scale = BigInt::one() << (2 * bits as usize);
    let s = (n * &scale).sqrt();
    let den = BigInt::one() << bits as usize;
    let exact = &s * &s == n * &scale;
    let hi = if exact { s.clone() } else { &s + 1 };
    (Ratio::new(s, den.clone()), Ratio::new(hi, den))
}

/// Compares two quadratic irrationals that may live in different fields by
/// refining dyadic enclosures. Terminates only when the values differ, so
/// callers decide equality algebraically first.
pub fn compare_distinct<T: IntScalar>(x: &QuadVal<T>, y: &QuadVal<T>) -> Ordering {
    if x.d == y.d || x.is_rational() || y.is_rational() {
        let diff = x.clone() - y.clone();
        return diff.signum();
    }
    let mut bits = 32;
    loop {
        let (xl, xh) = x.enclosure(bits);
        let (yl, yh) = y.enclosure(bits);
        if xh < yl {
            return Ordering::Less;
        }
        if yh < xl {
            return Ordering::Greater;
        }
        bits *= 2;
    }
}

impl<T: IntScalar> Add for QuadVal<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.common_d(&o);
        QuadVal::new(self.p + o.p, self.q + o.q, d)
    }
}

impl<T: IntScalar> Sub for QuadVal<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = self.common_d(&o);
        QuadVal::new(self.p - o.p, self.q - o.q, d)
    }
}

impl<T: IntScalar> Mul for QuadVal<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.common_d(&o);
        let dr = Ratio::from_integer(d.clone());
        let p = self.p.clone() * o.p.clone() + dr * self.q.clone() * o.q.clone();
        let q = self.p * o.q + self.q * o.p;
        QuadVal::new(p, q, d)
    }
}

impl<T: IntScalar> Div for QuadVal<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<T: IntScalar> Neg for QuadVal<T> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadVal::new(-self.p, -self.q, self.d)
    }
}

impl<T: IntScalar> fmt::Display for QuadVal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "({})√{}", self.q, self.d)
        } else {
            write!(f, "{} + ({})√{}", self.p, self.q, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: (i64, i64), s: (i64, i64), d: i64) -> QuadVal<BigInt> {
        QuadVal::new(
            Ratio::new(BigInt::from(p.0), BigInt::from(p.1)),
            Ratio::new(BigInt::from(s.0), BigInt::from(s.1)),
            BigInt::from(d),
        )
    }

    #[test]
    fn square_free_parts() {
        let cases = [(5, 1, 5), (12, 2, 3), (32, 4, 2), (45, 3, 5), (1, 1, 1), (49, 7, 1)];
        for (n, s, d) in cases {
            assert_eq!(square_free_decomposition(&(n as i64)), (s as i64, d as i64), "n={n}");
        }
    }

    #[test]
    fn golden_ratio_unit() {
        let lambda = q((3, 2), (1, 2), 5);
        let prod = lambda.clone() * lambda.conj();
        assert_eq!(prod, QuadVal::one(BigInt::from(5)));
        assert_eq!(lambda.inv(), lambda.conj());
        assert!((lambda.to_f64() - 2.618033988749895).abs() < 1e-14);
    }

    #[test]
    fn signs() {
        assert_eq!(q((3, 1), (-1, 1), 5).signum(), Ordering::Greater);
        assert_eq!(q((2, 1), (-1, 1), 5).signum(), Ordering::Less);
        assert_eq!(q((0, 1), (0, 1), 5).signum(), Ordering::Equal);
        assert_eq!(q((-1, 1), (1, 1), 2).signum(), Ordering::Greater);
    }

    #[test]
    fn cross_field_comparison() {
        // (3+√5)/2 ≈ 2.618 vs 2+√3 ≈ 3.732
        let a = q((3, 2), (1, 2), 5);
        let b = q((2, 1), (1, 1), 3);
        assert_eq!(compare_distinct(&a, &b), Ordering::Less);
        assert_eq!(compare_distinct(&b, &a), Ordering::Greater);
    }

    #[test]
    fn enclosure_contains_value() {
        let a = q((1, 3), (-2, 7), 7);
        let (lo, hi) = a.enclosure(40);
        let v = 1.0 / 3.0 - 2.0 / 7.0 * 7f64.sqrt();
        assert!(ratio_to_f64(&lo) <= v + 1e-15 && v - 1e-15 <= ratio_to_f64(&hi));
        assert!(hi - lo < Ratio::new(BigInt::one(), BigInt::from(1u64 << 38)));
    }
}
